#include "liecalc/cubic.hpp"

#include <algorithm>

namespace liecalc {

SubsetMask mask_expand(SubsetMask carrier, std::uint32_t rank) {
    SubsetMask out = 0;
    SubsetMask rest = carrier;
    while (rest) {
        SubsetMask low = rest & (~rest + 1);
        if (rank & 1) out |= low;
        rank >>= 1;
        rest &= rest - 1;
    }
    return out;
}

std::uint32_t mask_rank(SubsetMask carrier, SubsetMask subset) {
    std::uint32_t rank = 0;
    int pos = 0;
    SubsetMask rest = carrier;
    while (rest) {
        SubsetMask low = rest & (~rest + 1);
        if (subset & low) rank |= 1u << pos;
        ++pos;
        rest &= rest - 1;
    }
    return rank;
}

std::shared_ptr<const CubicParams> CubicParams::make(int order, std::vector<RingValue> t,
                                                     BackendTag backend) {
    if (order < 0 || order > 16) throw backend_error("cubic order out of range");
    if (static_cast<int>(t.size()) != order)
        throw backend_error("parameter vector length must equal the order");
    for (const auto& tk : t)
        if (!tk.tag().same_ring(backend)) throw backend_error("t entry on wrong backend");
    auto p = std::make_shared<CubicParams>();
    p->order = order;
    p->t = std::move(t);
    p->backend = backend;
    return p;
}

RingValue CubicParams::t_of(SubsetMask a) const {
    RingValue prod = RingValue::one(backend);
    for (int k = 1; k <= order; ++k)
        if (a & dir_bit(k)) prod *= t[static_cast<std::size_t>(k - 1)];
    return prod;
}

bool CubicParams::same(const CubicParams& o) const {
    if (order != o.order || !backend.same_ring(o.backend)) return false;
    for (int i = 0; i < order; ++i)
        if (!ring_eq(t[static_cast<std::size_t>(i)], o.t[static_cast<std::size_t>(i)],
                     backend.tol))
            return false;
    return true;
}

namespace {

void require_params(const CubicScalar& a, const CubicScalar& b) {
    if (a.carrier() != b.carrier()) throw backend_error("cubic carrier mismatch");
    if (a.params().get() != b.params().get() && !a.params()->same(*b.params()))
        throw backend_error("cubic params mismatch");
}

void require_carrier_dir(const CubicScalar& a, int k, bool inside) {
    if (k < 1 || k > a.params()->order) throw backend_error("direction out of range");
    const bool has = (a.carrier() & dir_bit(k)) != 0;
    if (has != inside)
        throw backend_error(inside ? "direction not in carrier" : "direction already in carrier");
}

}  // namespace

CubicScalar CubicScalar::constant(CubicParamsPtr params, SubsetMask carrier,
                                  const RingValue& c) {
    CubicScalar r = zero(params, carrier);
    r.coeffs_[0] = c;
    return r;
}

CubicScalar CubicScalar::zero(CubicParamsPtr params, SubsetMask carrier) {
    CubicScalar r;
    r.params_ = std::move(params);
    r.carrier_ = carrier;
    r.coeffs_.assign(std::size_t{1} << mask_size(carrier),
                     RingValue::zero(r.params_->backend));
    return r;
}

CubicScalar CubicScalar::one(CubicParamsPtr params, SubsetMask carrier) {
    auto backend = params->backend;
    return constant(std::move(params), carrier, RingValue::one(backend));
}

CubicScalar CubicScalar::basis(CubicParamsPtr params, SubsetMask carrier, SubsetMask a) {
    if (a & ~carrier) throw backend_error("basis subset outside carrier");
    CubicScalar r = zero(std::move(params), carrier);
    r.coeffs_[mask_rank(carrier, a)] = RingValue::one(r.params_->backend);
    return r;
}

CubicScalar CubicScalar::from_coeffs(CubicParamsPtr params, SubsetMask carrier,
                                     std::vector<RingValue> coeffs) {
    if (coeffs.size() != (std::size_t{1} << mask_size(carrier)))
        throw backend_error("coefficient count must be 2^|carrier|");
    for (const auto& c : coeffs)
        if (!c.tag().same_ring(params->backend))
            throw backend_error("coefficient on wrong backend");
    CubicScalar r;
    r.params_ = std::move(params);
    r.carrier_ = carrier;
    r.coeffs_ = std::move(coeffs);
    return r;
}

const RingValue& CubicScalar::coeff(SubsetMask a) const {
    if (a & ~carrier_) throw backend_error("coefficient subset outside carrier");
    return coeffs_[mask_rank(carrier_, a)];
}

CubicScalar CubicScalar::with_coeff(SubsetMask a, const RingValue& v) const {
    if (a & ~carrier_) throw backend_error("coefficient subset outside carrier");
    CubicScalar r = *this;
    r.coeffs_[mask_rank(carrier_, a)] = v;
    return r;
}

CubicScalar CubicScalar::operator+(const CubicScalar& o) const {
    require_params(*this, o);
    CubicScalar r = *this;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] += o.coeffs_[i];
    return r;
}

CubicScalar CubicScalar::operator-(const CubicScalar& o) const {
    require_params(*this, o);
    CubicScalar r = *this;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] -= o.coeffs_[i];
    return r;
}

CubicScalar CubicScalar::operator-() const {
    CubicScalar r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

CubicScalar CubicScalar::operator*(const CubicScalar& o) const {
    require_params(*this, o);
    CubicScalar r = zero(params_, carrier_);
    const std::size_t m = coeffs_.size();
    for (std::size_t i = 0; i < m; ++i) {
        if (coeffs_[i].is_zero()) continue;
        const SubsetMask a = mask_expand(carrier_, static_cast<std::uint32_t>(i));
        for (std::size_t j = 0; j < m; ++j) {
            if (o.coeffs_[j].is_zero()) continue;
            const SubsetMask b = mask_expand(carrier_, static_cast<std::uint32_t>(j));
            r.coeffs_[mask_rank(carrier_, a | b)] +=
                coeffs_[i] * o.coeffs_[j] * params_->t_of(a & b);
        }
    }
    return r;
}

std::string CubicScalar::str() const {
    std::string s;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (!s.empty()) s += " + ";
        s += coeffs_[i].str();
        const SubsetMask a = mask_expand(carrier_, static_cast<std::uint32_t>(i));
        if (a) s += "*e" + subset_name(a);
    }
    return s;
}

bool cs_eq(const CubicScalar& a, const CubicScalar& b, double tol) {
    if (a.carrier() != b.carrier() || !a.params()->same(*b.params())) return false;
    for (std::size_t i = 0; i < a.raw().size(); ++i)
        if (!ring_eq(a.raw()[i], b.raw()[i], tol)) return false;
    return true;
}

CubicScalar cs_source(const CubicScalar& a, int k) {
    require_carrier_dir(a, k, true);
    const SubsetMask small = a.carrier() & ~dir_bit(k);
    CubicScalar r = CubicScalar::zero(a.params(), small);
    for (SubsetMask m = small;; m = (m - 1) & small) {
        r = r.with_coeff(m, a.coeff(m));
        if (m == 0) break;
    }
    return r;
}

CubicScalar cs_target(const CubicScalar& a, int k) {
    require_carrier_dir(a, k, true);
    const SubsetMask small = a.carrier() & ~dir_bit(k);
    const RingValue& tk = a.params()->t[static_cast<std::size_t>(k - 1)];
    CubicScalar r = CubicScalar::zero(a.params(), small);
    for (SubsetMask m = small;; m = (m - 1) & small) {
        r = r.with_coeff(m, a.coeff(m) + tk * a.coeff(m | dir_bit(k)));
        if (m == 0) break;
    }
    return r;
}

CubicScalar cs_unit_embed(const CubicScalar& a, int k) {
    require_carrier_dir(a, k, false);
    const SubsetMask big = a.carrier() | dir_bit(k);
    CubicScalar r = CubicScalar::zero(a.params(), big);
    for (SubsetMask m = a.carrier();; m = (m - 1) & a.carrier()) {
        r = r.with_coeff(m, a.coeff(m));
        if (m == 0) break;
    }
    return r;
}

namespace {

bool is_permutation(const std::vector<int>& sigma, int n) {
    if (static_cast<int>(sigma.size()) != n) return false;
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int v : sigma) {
        if (v < 1 || v > n || seen[static_cast<std::size_t>(v - 1)]) return false;
        seen[static_cast<std::size_t>(v - 1)] = true;
    }
    return true;
}

SubsetMask apply_perm(SubsetMask a, const std::vector<int>& sigma) {
    SubsetMask out = 0;
    for (std::size_t k = 0; k < sigma.size(); ++k)
        if (a & dir_bit(static_cast<int>(k) + 1)) out |= dir_bit(sigma[k]);
    return out;
}

}  // namespace

CubicScalar cs_flip(const CubicScalar& a, const std::vector<int>& sigma) {
    const int n = a.params()->order;
    if (!is_permutation(sigma, n)) throw backend_error("malformed permutation");
    std::vector<RingValue> t_new(static_cast<std::size_t>(n), RingValue::zero(a.params()->backend));
    for (int k = 1; k <= n; ++k)
        t_new[static_cast<std::size_t>(sigma[static_cast<std::size_t>(k - 1)] - 1)] =
            a.params()->t[static_cast<std::size_t>(k - 1)];
    auto params = CubicParams::make(n, std::move(t_new), a.params()->backend);
    const SubsetMask carrier = apply_perm(a.carrier(), sigma);
    CubicScalar r = CubicScalar::zero(params, carrier);
    for (SubsetMask m = a.carrier();; m = (m - 1) & a.carrier()) {
        r = r.with_coeff(apply_perm(m, sigma), a.coeff(m));
        if (m == 0) break;
    }
    return r;
}

CubicScalar cs_rescale(const CubicScalar& a, const std::vector<RingValue>& s) {
    const int n = a.params()->order;
    if (static_cast<int>(s.size()) != n) throw backend_error("rescale vector length != order");
    std::vector<RingValue> t_new;
    t_new.reserve(s.size());
    for (int k = 0; k < n; ++k) {
        auto inv = try_invert(s[static_cast<std::size_t>(k)]);
        if (!inv) throw invert_error("rescale by a non-unit");
        t_new.push_back(a.params()->t[static_cast<std::size_t>(k)] * *inv);
    }
    auto params = CubicParams::make(n, std::move(t_new), a.params()->backend);
    CubicScalar r = CubicScalar::zero(params, a.carrier());
    for (SubsetMask m = a.carrier();; m = (m - 1) & a.carrier()) {
        RingValue factor = RingValue::one(a.params()->backend);
        for (int k = 1; k <= n; ++k)
            if (m & dir_bit(k)) factor *= s[static_cast<std::size_t>(k - 1)];
        r = r.with_coeff(m, a.coeff(m) * factor);
        if (m == 0) break;
    }
    return r;
}

std::vector<RingValue> cs_anchor_split(const CubicScalar& a) {
    const SubsetMask c = a.carrier();
    const std::size_t dim = std::size_t{1} << mask_size(c);
    std::vector<RingValue> out(dim, RingValue::zero(a.params()->backend));
    for (std::size_t rs = 0; rs < dim; ++rs) {
        const SubsetMask s = mask_expand(c, static_cast<std::uint32_t>(rs));
        RingValue acc = RingValue::zero(a.params()->backend);
        for (SubsetMask m = s;; m = (m - 1) & s) {
            acc += a.params()->t_of(m) * a.coeff(m);
            if (m == 0) break;
        }
        out[rs] = acc;
    }
    return out;
}

CubicScalar cs_anchor_unsplit(const std::vector<RingValue>& values, CubicParamsPtr params,
                              SubsetMask carrier) {
    const std::size_t dim = std::size_t{1} << mask_size(carrier);
    if (values.size() != dim) throw backend_error("character vector has wrong length");
    CubicScalar r = CubicScalar::zero(params, carrier);
    for (SubsetMask m = carrier;; m = (m - 1) & carrier) {
        auto t_inv = try_invert(params->t_of(m));
        if (!t_inv) throw invert_error("anchor inversion needs unit parameters");
        RingValue acc = RingValue::zero(params->backend);
        for (SubsetMask b = m;; b = (b - 1) & m) {
            const RingValue& chi = values[mask_rank(carrier, b)];
            acc += (mask_size(m & ~b) % 2 == 0) ? chi : -chi;
            if (b == 0) break;
        }
        r = r.with_coeff(m, *t_inv * acc);
        if (m == 0) break;
    }
    return r;
}

std::vector<CubicScalar> cs_partial_split(const CubicScalar& a, SubsetMask dirs) {
    if (dirs & ~a.carrier()) throw backend_error("split directions outside carrier");
    const SubsetMask keep = a.carrier() & ~dirs;
    const std::size_t count = std::size_t{1} << mask_size(dirs);
    std::vector<CubicScalar> out;
    out.reserve(count);
    for (std::size_t rs = 0; rs < count; ++rs) {
        const SubsetMask s = mask_expand(dirs, static_cast<std::uint32_t>(rs));
        CubicScalar comp = CubicScalar::zero(a.params(), keep);
        for (SubsetMask m = keep;; m = (m - 1) & keep) {
            RingValue acc = RingValue::zero(a.params()->backend);
            for (SubsetMask b = s;; b = (b - 1) & s) {
                acc += a.params()->t_of(b) * a.coeff(b | m);
                if (b == 0) break;
            }
            comp = comp.with_coeff(m, acc);
            if (m == 0) break;
        }
        out.push_back(std::move(comp));
    }
    return out;
}

CubicScalar cs_partial_unsplit(const std::vector<CubicScalar>& comps, CubicParamsPtr params,
                               SubsetMask carrier, SubsetMask dirs) {
    if (dirs & ~carrier) throw backend_error("split directions outside carrier");
    const SubsetMask keep = carrier & ~dirs;
    const std::size_t count = std::size_t{1} << mask_size(dirs);
    if (comps.size() != count) throw backend_error("component count mismatch");
    CubicScalar r = CubicScalar::zero(params, carrier);
    for (SubsetMask ad = dirs;; ad = (ad - 1) & dirs) {
        auto t_inv = try_invert(params->t_of(ad));
        if (!t_inv) throw invert_error("partial unsplit needs unit parameters");
        for (SubsetMask m = keep;; m = (m - 1) & keep) {
            RingValue acc = RingValue::zero(params->backend);
            for (SubsetMask b = ad;; b = (b - 1) & ad) {
                const RingValue& chi = comps[mask_rank(dirs, b)].coeff(m);
                acc += (mask_size(ad & ~b) % 2 == 0) ? chi : -chi;
                if (b == 0) break;
            }
            r = r.with_coeff(ad | m, *t_inv * acc);
            if (m == 0) break;
        }
        if (ad == 0) break;
    }
    return r;
}

std::optional<CubicScalar> cs_try_invert(const CubicScalar& a) {
    SubsetMask unit_dirs = 0, zero_dirs = 0;
    for (int k = 1; k <= a.params()->order; ++k) {
        if (!(a.carrier() & dir_bit(k))) continue;
        const RingValue& tk = a.params()->t[static_cast<std::size_t>(k - 1)];
        if (tk.is_zero())
            zero_dirs |= dir_bit(k);
        else if (try_invert(tk))
            unit_dirs |= dir_bit(k);
        else
            throw backend_error("non-zero non-unit parameter");
    }

    auto comps = cs_partial_split(a, unit_dirs);
    for (auto& comp : comps) {
        // comp lives on the zero-parameter sub-carrier: constant + nilpotent.
        auto c_inv = try_invert(comp.coeff(0));
        if (!c_inv) return std::nullopt;
        CubicScalar cinv = CubicScalar::constant(a.params(), zero_dirs, *c_inv);
        CubicScalar nil = comp.with_coeff(0, RingValue::zero(a.params()->backend));
        CubicScalar acc = CubicScalar::one(a.params(), zero_dirs);
        CubicScalar term = CubicScalar::one(a.params(), zero_dirs);
        for (int j = 0; j < mask_size(zero_dirs); ++j) {
            term = -(term * cinv * nil);
            acc = acc + term;
        }
        comp = acc * cinv;
    }
    if (unit_dirs == 0) return comps[0];
    return cs_partial_unsplit(comps, a.params(), a.carrier(), unit_dirs);
}

std::vector<SubsetMask> core_ideal_basis(SubsetMask b, SubsetMask c) {
    if (b == 0) throw backend_error("core ideal needs nonempty B");
    if (b & ~c) throw backend_error("core ideal needs B inside C");
    std::vector<SubsetMask> out;
    const SubsetMask free = c & ~b;
    for (SubsetMask m = free;; m = (m - 1) & free) {
        out.push_back(b | m);
        if (m == 0) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<SubsetMask> CubicRingDescriptor::vertices() const {
    std::vector<SubsetMask> out;
    const SubsetMask full = (SubsetMask{1} << params->order) - 1;
    for (SubsetMask m = 0; m <= full; ++m) out.push_back(m);
    return out;
}

std::vector<CubicRingDescriptor::Edge> CubicRingDescriptor::edges() const {
    std::vector<Edge> out;
    for (SubsetMask high : vertices())
        for (int k = 1; k <= params->order; ++k)
            if (high & dir_bit(k)) out.push_back({high & ~dir_bit(k), high, k});
    return out;
}

std::vector<CubicRingDescriptor::Face> CubicRingDescriptor::faces() const {
    std::vector<Face> out;
    for (SubsetMask base : vertices())
        for (int j = 1; j <= params->order; ++j)
            for (int k = j + 1; k <= params->order; ++k)
                if (!(base & dir_bit(j)) && !(base & dir_bit(k))) out.push_back({base, j, k});
    return out;
}

CubicScalar sample_cubic(Rng& rng, CubicParamsPtr params, SubsetMask carrier) {
    std::vector<RingValue> coeffs;
    const std::size_t dim = std::size_t{1} << mask_size(carrier);
    coeffs.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i)
        coeffs.push_back(sample_ring(rng.next(), params->backend, false));
    return CubicScalar::from_coeffs(std::move(params), carrier, std::move(coeffs));
}

std::string subset_name(SubsetMask a) {
    if (a == 0) return "∅";
    std::string s;
    for (int k = 1; k <= 16; ++k)
        if (a & dir_bit(k)) s += std::to_string(k);
    return s;
}

std::optional<SubsetMask> subset_from_name(const std::string& name) {
    if (name == "∅" || name.empty()) return SubsetMask{0};
    SubsetMask m = 0;
    for (char ch : name) {
        if (ch < '1' || ch > '9') return std::nullopt;
        const SubsetMask bit = dir_bit(ch - '0');
        if (m & bit) return std::nullopt;
        m |= bit;
    }
    return m;
}

}  // namespace liecalc
