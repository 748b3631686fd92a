#include "liecalc/calculus.hpp"

#include <cmath>

namespace liecalc {

namespace {

std::shared_ptr<const DomainSpec> default_domain(int dim,
                                                 std::shared_ptr<const DomainSpec> domain) {
    if (domain) {
        if (domain->dim() != dim) throw backend_error("domain dimension mismatch");
        return domain;
    }
    return std::make_shared<const DomainSpec>(DomainSpec::full_space(dim));
}

double factorial(int k) {
    double f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

double native_value(NativeKind k, double x) {
    switch (k) {
        case NativeKind::Exp: return std::exp(x);
        case NativeKind::Sin: return std::sin(x);
        case NativeKind::Cos: return std::cos(x);
        case NativeKind::Log:
            if (!(x > 0.0)) throw domain_error("log of a non-positive value");
            return std::log(x);
    }
    throw backend_error("unknown native");
}

// order-th derivative at x; tables go up to order 4.
double native_deriv(NativeKind k, int order, double x) {
    if (order == 0) return native_value(k, x);
    if (order > 4) throw backend_error("native derivative table capped at order 4");
    switch (k) {
        case NativeKind::Exp: return std::exp(x);
        case NativeKind::Sin:
            switch (order % 4) {
                case 0: return std::sin(x);
                case 1: return std::cos(x);
                case 2: return -std::sin(x);
                default: return -std::cos(x);
            }
        case NativeKind::Cos:
            switch (order % 4) {
                case 0: return std::cos(x);
                case 1: return -std::sin(x);
                case 2: return -std::cos(x);
                default: return std::sin(x);
            }
        case NativeKind::Log: {
            if (!(x > 0.0)) throw domain_error("log of a non-positive value");
            double v = factorial(order - 1) / std::pow(x, order);
            return (order % 2 == 1) ? v : -v;
        }
    }
    throw backend_error("unknown native");
}

NativeKind native_of(ExKind k) {
    switch (k) {
        case ExKind::Exp: return NativeKind::Exp;
        case ExKind::Sin: return NativeKind::Sin;
        case ExKind::Cos: return NativeKind::Cos;
        case ExKind::Log: return NativeKind::Log;
        default: throw backend_error("not a native primitive");
    }
}

}  // namespace

MapFn MapFn::from_expr(ExprVec f, std::shared_ptr<const DomainSpec> domain) {
    MapFn m;
    m.d_in = f.arity;
    m.d_out = static_cast<int>(f.comps.size());
    m.domain = default_domain(m.d_in, std::move(domain));
    m.body = std::move(f);
    return m;
}

MapFn MapFn::from_text(const std::string& text, int arity,
                       std::shared_ptr<const DomainSpec> domain) {
    auto r = parse(text, arity);
    if (auto* pe = std::get_if<ParseError>(&r))
        throw backend_error("parse error at " + std::to_string(pe->offset) + ": expected " +
                            pe->expected);
    return from_expr(std::get<ExprVec>(std::move(r)), std::move(domain));
}

MapFn MapFn::native(NativeKind kind, int dim, std::shared_ptr<const DomainSpec> domain) {
    MapFn m;
    m.d_in = m.d_out = dim;
    m.domain = default_domain(dim, std::move(domain));
    m.body = kind;
    return m;
}

Vec map_eval(const MapFn& f, const Vec& x, const BackendTag& tag) {
    if (static_cast<int>(x.size()) != f.d_in) throw backend_error("map input arity mismatch");
    if (f.is_expr()) return eval_scalar(f.expr(), x, tag);
    if (tag.kind != Backend::Float) throw backend_error("native map on an exact backend");
    Vec out;
    out.reserve(x.size());
    for (const auto& c : x)
        out.push_back(RingValue::floating(native_value(f.native_kind(), c.flt())));
    return out;
}

HyperPoint make_hyper(int order, std::vector<Vec> w, std::vector<RingValue> t,
                      std::shared_ptr<const DomainSpec> domain) {
    if (order < 0 || order > 16) throw backend_error("hyper point order out of range");
    const std::size_t dim = std::size_t{1} << order;
    if (w.size() != dim || t.size() != dim) throw backend_error("hyper point sizes");
    HyperPoint p;
    p.order = order;
    p.w = std::move(w);
    p.t = std::move(t);
    if (!p.t.empty()) p.t[0] = RingValue::one(p.t.size() > 1 ? p.t[1].tag()
                                                             : p.t[0].tag());
    p.domain = std::move(domain);
    return p;
}

namespace {

bool contains_rec(const DomainSpec& u, const std::vector<Vec>& w,
                  const std::vector<RingValue>& t, int n) {
    if (n == 0) return u.contains(w[0]);
    const std::size_t half = std::size_t{1} << (n - 1);
    const RingValue& tn = t[half];
    std::vector<Vec> w_shift(half);
    std::vector<RingValue> t_shift(half, RingValue::one(tn.tag()));
    for (std::size_t a = 0; a < half; ++a) {
        w_shift[a] = vec_add(w[a], vec_scale(tn, w[a + half]));
        if (a != 0) t_shift[a] = t[a] + tn * t[a + half];
    }
    std::vector<Vec> w_base(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(half));
    std::vector<RingValue> t_base(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(half));
    return contains_rec(u, w_base, t_base, n - 1) && contains_rec(u, w_shift, t_shift, n - 1);
}

}  // namespace

bool extended_contains(const DomainSpec& u, const HyperPoint& p) {
    return contains_rec(u, p.w, p.t, p.order);
}

bool sym_contains(const DomainSpec& u, const SymPoint& q) {
    const SubsetMask full = (SubsetMask{1} << q.order) - 1;
    auto params_t = [&](SubsetMask a) {
        RingValue prod = RingValue::one(q.t.empty() ? BackendTag::rational() : q.t[0].tag());
        for (int k = 1; k <= q.order; ++k)
            if (a & dir_bit(k)) prod *= q.t[static_cast<std::size_t>(k - 1)];
        return prod;
    };
    for (SubsetMask s = 0; s <= full; ++s) {
        Vec pt = q.base;
        for (SubsetMask a = s;; a = (a - 1) & s) {
            if (a != 0) pt = vec_add(pt, vec_scale(params_t(a), q.u[a]));
            if (a == 0) break;
        }
        if (!u.contains(pt)) return false;
    }
    return true;
}

// --- cubic evaluation -------------------------------------------------------

CubicScalar native_lift(ExKind kind, const CubicScalar& a) {
    if (a.params()->backend.kind != Backend::Float)
        throw backend_error("native primitive on an exact cubic carrier");
    const NativeKind nk = native_of(kind);
    SubsetMask unit_dirs = 0, zero_dirs = 0;
    for (int k = 1; k <= a.params()->order; ++k) {
        if (!(a.carrier() & dir_bit(k))) continue;
        const RingValue& tk = a.params()->t[static_cast<std::size_t>(k - 1)];
        if (tk.is_zero())
            zero_dirs |= dir_bit(k);
        else
            unit_dirs |= dir_bit(k);
    }
    const int jet_order = mask_size(zero_dirs);
    if (jet_order > 4) throw backend_error("native derivative table capped at order 4");

    auto comps = cs_partial_split(a, unit_dirs);
    for (auto& comp : comps) {
        const double c = comp.coeff(0).flt();
        CubicScalar nil = comp.with_coeff(0, RingValue::floating(0.0));
        CubicScalar acc =
            CubicScalar::constant(a.params(), zero_dirs, RingValue::floating(native_value(nk, c)));
        CubicScalar power = CubicScalar::one(a.params(), zero_dirs);
        for (int j = 1; j <= jet_order; ++j) {
            power = power * nil;
            const double coeff = native_deriv(nk, j, c) / factorial(j);
            acc = acc + CubicScalar::constant(a.params(), zero_dirs,
                                              RingValue::floating(coeff)) *
                            power;
        }
        comp = std::move(acc);
    }
    if (unit_dirs == 0) return comps[0];
    return cs_partial_unsplit(comps, a.params(), a.carrier(), unit_dirs);
}

namespace {

struct CubicOps {
    CubicParamsPtr params;
    SubsetMask carrier;

    CubicScalar constant(const mpq_class& q) const {
        return CubicScalar::constant(params, carrier, RingValue::from_mpq(q, params->backend));
    }
    CubicScalar add(const CubicScalar& a, const CubicScalar& b) const { return a + b; }
    CubicScalar sub(const CubicScalar& a, const CubicScalar& b) const { return a - b; }
    CubicScalar mul(const CubicScalar& a, const CubicScalar& b) const { return a * b; }
    CubicScalar neg(const CubicScalar& a) const { return -a; }
    CubicScalar invert(const CubicScalar& a) const {
        auto r = cs_try_invert(a);
        if (!r) throw invert_error("division by a non-unit cubic scalar");
        return *r;
    }
    CubicScalar native(ExKind kind, const CubicScalar& x) const { return native_lift(kind, x); }
};

}  // namespace

std::vector<CubicScalar> lift_sym(const MapFn& f, const std::vector<CubicScalar>& input,
                                  const CubicParamsPtr& params) {
    if (static_cast<int>(input.size()) != f.d_in)
        throw backend_error("lift input arity mismatch");
    for (const auto& c : input)
        if (!c.params()->same(*params) || c.carrier() != input.front().carrier())
            throw backend_error("lift inputs must share params and carrier");
    if (f.is_expr()) {
        const SubsetMask carrier = input.empty() ? 0 : input[0].carrier();
        CubicOps ops{params, carrier};
        std::vector<CubicScalar> out;
        out.reserve(f.expr().comps.size());
        for (const auto& comp : f.expr().comps)
            out.push_back(eval_expr<CubicScalar>(
                *comp, std::span<const CubicScalar>(input.data(), input.size()), ops));
        return out;
    }
    ExKind ek = ExKind::Exp;
    switch (f.native_kind()) {
        case NativeKind::Exp: ek = ExKind::Exp; break;
        case NativeKind::Sin: ek = ExKind::Sin; break;
        case NativeKind::Cos: ek = ExKind::Cos; break;
        case NativeKind::Log: ek = ExKind::Log; break;
    }
    std::vector<CubicScalar> out;
    out.reserve(input.size());
    for (const auto& c : input) out.push_back(native_lift(ek, c));
    return out;
}

std::vector<CubicScalar> lift_via_anchor(const MapFn& f, const std::vector<CubicScalar>& input,
                                         const CubicParamsPtr& params) {
    if (input.empty()) throw backend_error("anchor lift needs at least one input");
    const SubsetMask carrier = input[0].carrier();
    const std::size_t n_chars = std::size_t{1} << mask_size(carrier);
    std::vector<std::vector<RingValue>> chars;
    chars.reserve(input.size());
    for (const auto& c : input) chars.push_back(cs_anchor_split(c));
    std::vector<std::vector<RingValue>> out_vals(
        static_cast<std::size_t>(f.d_out),
        std::vector<RingValue>(n_chars, RingValue::zero(params->backend)));
    for (std::size_t s = 0; s < n_chars; ++s) {
        Vec env;
        env.reserve(input.size());
        for (const auto& ch : chars) env.push_back(ch[s]);
        Vec val = map_eval(f, env, params->backend);
        for (int j = 0; j < f.d_out; ++j) out_vals[static_cast<std::size_t>(j)][s] = val[static_cast<std::size_t>(j)];
    }
    std::vector<CubicScalar> out;
    out.reserve(out_vals.size());
    for (auto& vals : out_vals) out.push_back(cs_anchor_unsplit(vals, params, carrier));
    return out;
}

// --- slopes -----------------------------------------------------------------

Vec slope1(const MapFn& f, const Vec& x, const Vec& v, const RingValue& t) {
    if (static_cast<int>(x.size()) != f.d_in || x.size() != v.size())
        throw backend_error("slope input arity mismatch");
    const Vec shifted = vec_add(x, vec_scale(t, v));
    if (!f.domain->contains(x) || !f.domain->contains(shifted))
        throw domain_error("point outside the first extended domain");
    const BackendTag tag = t.tag();
    if (auto t_inv = try_invert(t)) {
        return vec_scale(*t_inv, vec_sub(map_eval(f, shifted, tag), map_eval(f, x, tag)));
    }
    if (!t.is_zero()) throw invert_error("t is neither a unit nor zero");
    auto params = CubicParams::make(1, {RingValue::zero(tag)}, tag);
    std::vector<CubicScalar> input;
    input.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        input.push_back(CubicScalar::from_coeffs(params, dir_bit(1), {x[i], v[i]}));
    auto lifted = lift_sym(f, input, params);
    Vec out;
    out.reserve(lifted.size());
    for (const auto& c : lifted) out.push_back(c.coeff(dir_bit(1)));
    return out;
}

std::pair<Vec, Vec> tangent_map_t(const MapFn& f, const RingValue& t, const Vec& x,
                                  const Vec& v) {
    return {map_eval(f, x, t.tag()), slope1(f, x, v, t)};
}

// --- the extension tower for full slopes of expression maps -----------------

namespace {

// K[e_n][e_{n-1}]...[e_1] with e_k^2 = tau_k e_k, tau_k living in the ring
// of the outer directions. Elements are dense mask-indexed vectors; the
// multiplication recursion peels off direction k as the low bit.
struct Tower {
    int order;
    BackendTag tag;
    const std::vector<RingValue>* t_by_mask;

    using Elem = std::vector<RingValue>;

    Elem constant(const mpq_class& q) const {
        Elem e(std::size_t{1} << order, RingValue::zero(tag));
        e[0] = RingValue::from_mpq(q, tag);
        return e;
    }
    Elem add(const Elem& a, const Elem& b) const {
        Elem r = a;
        for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
        return r;
    }
    Elem sub(const Elem& a, const Elem& b) const {
        Elem r = a;
        for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
        return r;
    }
    Elem neg(const Elem& a) const {
        Elem r = a;
        for (auto& c : r) c = -c;
        return r;
    }

    // tau_k as an element of the level-(k+1) ring: rank r over directions
    // {k+1..n} corresponds to the full subset (r << k) | {k}.
    Elem tau(int k) const {
        Elem e(std::size_t{1} << (order - k), RingValue::zero(tag));
        for (std::size_t r = 0; r < e.size(); ++r)
            e[r] = (*t_by_mask)[(r << k) | (std::size_t{1} << (k - 1))];
        return e;
    }

    static void split(const Elem& a, Elem& lo, Elem& hi) {
        const std::size_t half = a.size() / 2;
        lo.resize(half);
        hi.resize(half);
        for (std::size_t i = 0; i < half; ++i) {
            lo[i] = a[2 * i];
            hi[i] = a[2 * i + 1];
        }
    }
    static Elem merge(const Elem& lo, const Elem& hi) {
        Elem r(lo.size() * 2, lo.empty() ? RingValue() : lo[0]);
        for (std::size_t i = 0; i < lo.size(); ++i) {
            r[2 * i] = lo[i];
            r[2 * i + 1] = hi[i];
        }
        return r;
    }

    Elem mul(const Elem& a, const Elem& b) const { return mul_rec(a, b, 1); }

    Elem mul_rec(const Elem& a, const Elem& b, int k) const {
        if (a.size() == 1) return {a[0] * b[0]};
        Elem a0, a1, b0, b1;
        split(a, a0, a1);
        split(b, b0, b1);
        Elem lo = mul_rec(a0, b0, k + 1);
        Elem cross = add_sized(mul_rec(a0, b1, k + 1), mul_rec(a1, b0, k + 1));
        cross = add_sized(cross, mul_rec(mul_rec(a1, b1, k + 1), tau(k), k + 1));
        return merge(lo, cross);
    }

    static Elem add_sized(Elem a, const Elem& b) {
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
        return a;
    }

    Elem invert(const Elem& a) const {
        auto r = inv_rec(a, 1);
        if (!r) throw invert_error("division by a non-unit in the slope tower");
        return *r;
    }

    std::optional<Elem> inv_rec(const Elem& a, int k) const {
        if (a.size() == 1) {
            auto s = try_invert(a[0]);
            if (!s) return std::nullopt;
            return Elem{*s};
        }
        Elem a0, a1;
        split(a, a0, a1);
        auto b0 = inv_rec(a0, k + 1);
        if (!b0) return std::nullopt;
        Elem shifted = add_sized(a0, mul_rec(tau(k), a1, k + 1));
        auto si = inv_rec(shifted, k + 1);
        if (!si) return std::nullopt;
        Elem b1 = neg_sized(mul_rec(mul_rec(a1, *b0, k + 1), *si, k + 1));
        return merge(*b0, b1);
    }

    static Elem neg_sized(Elem a) {
        for (auto& c : a) c = -c;
        return a;
    }
};

struct TowerOps {
    const Tower* tower;
    Tower::Elem constant(const mpq_class& q) const { return tower->constant(q); }
    Tower::Elem add(const Tower::Elem& a, const Tower::Elem& b) const { return tower->add(a, b); }
    Tower::Elem sub(const Tower::Elem& a, const Tower::Elem& b) const { return tower->sub(a, b); }
    Tower::Elem mul(const Tower::Elem& a, const Tower::Elem& b) const { return tower->mul(a, b); }
    Tower::Elem neg(const Tower::Elem& a) const { return tower->neg(a); }
    Tower::Elem invert(const Tower::Elem& a) const { return tower->invert(a); }
    Tower::Elem native(ExKind, const Tower::Elem&) const {
        throw backend_error("native primitives need unit parameters beyond first order");
    }
};

Vec slope_full_tower(const MapFn& f, const HyperPoint& p) {
    const BackendTag tag = p.t[0].tag();
    Tower tower{p.order, tag, &p.t};
    std::vector<Tower::Elem> env;
    env.reserve(static_cast<std::size_t>(f.d_in));
    const std::size_t dim = std::size_t{1} << p.order;
    for (int i = 0; i < f.d_in; ++i) {
        Tower::Elem e(dim, RingValue::zero(tag));
        for (std::size_t mask = 0; mask < dim; ++mask) e[mask] = p.w[mask][static_cast<std::size_t>(i)];
        env.push_back(std::move(e));
    }
    TowerOps ops{&tower};
    Vec out;
    out.reserve(f.expr().comps.size());
    for (const auto& comp : f.expr().comps) {
        Tower::Elem val = eval_expr<Tower::Elem>(
            *comp, std::span<const Tower::Elem>(env.data(), env.size()), ops);
        out.push_back(val[dim - 1]);
    }
    return out;
}

Vec slope_rec(const MapFn& f, const std::vector<Vec>& w, const std::vector<RingValue>& t,
              int n, const BackendTag& tag) {
    if (n == 0) return map_eval(f, w[0], tag);
    if (n == 1) return slope1(f, w[0], w[1], t[1]);
    const std::size_t half = std::size_t{1} << (n - 1);
    const RingValue& tn = t[half];
    auto t_inv = try_invert(tn);
    if (!t_inv)
        throw invert_error("nested difference quotients need unit parameters beyond first order");
    std::vector<Vec> w_base(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(half));
    std::vector<RingValue> t_base(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(half));
    std::vector<Vec> w_shift(half);
    std::vector<RingValue> t_shift = t_base;
    for (std::size_t a = 0; a < half; ++a) {
        w_shift[a] = vec_add(w[a], vec_scale(tn, w[a + half]));
        if (a != 0) t_shift[a] = t[a] + tn * t[a + half];
    }
    return vec_scale(*t_inv, vec_sub(slope_rec(f, w_shift, t_shift, n - 1, tag),
                                     slope_rec(f, w_base, t_base, n - 1, tag)));
}

}  // namespace

Vec slope_n_recursive(const MapFn& f, const HyperPoint& p) {
    if (!extended_contains(*f.domain, p))
        throw domain_error("point outside the extended domain");
    return slope_rec(f, p.w, p.t, p.order, p.t[0].tag());
}

Vec slope_n_full(const MapFn& f, const HyperPoint& p) {
    if (p.order > 4) throw backend_error("full slopes supported up to order 4");
    if (!extended_contains(*f.domain, p))
        throw domain_error("point outside the extended domain");
    const BackendTag tag = p.t[0].tag();
    const bool tower_ok =
        f.is_expr() && !(tag.kind == Backend::Float &&
                         [&] {
                             for (const auto& c : f.expr().comps)
                                 if (uses_native(*c)) return true;
                             return false;
                         }());
    if (tower_ok) return slope_full_tower(f, p);
    return slope_rec(f, p.w, p.t, p.order, tag);
}

Vec slope2_full(const MapFn& f, const HyperPoint& p) {
    if (p.order != 2) throw backend_error("slope2_full needs an order-2 point");
    return slope_n_full(f, p);
}

Vec slope2_full_closed(const MapFn& f, const HyperPoint& p) {
    if (p.order != 2) throw backend_error("slope2_full_closed needs an order-2 point");
    if (!extended_contains(*f.domain, p))
        throw domain_error("point outside the extended domain");
    const BackendTag tag = p.t[0].tag();
    const Vec &v0 = p.w[0], &v1 = p.w[1], &v2 = p.w[2], &v12 = p.w[3];
    const RingValue &t1 = p.t[1], &t2 = p.t[2], &t12 = p.t[3];
    const RingValue a = t1 + t2 * t12;
    auto t1i = try_invert(t1), t2i = try_invert(t2), ai = try_invert(a);
    if (!t1i || !t2i || !ai)
        throw invert_error("closed second-order formula needs unit parameter combinations");
    const Vec base2 = vec_add(v0, vec_scale(t2, v2));
    const Vec top = vec_add(base2, vec_scale(a, vec_add(v1, vec_scale(t2, v12))));
    const Vec mid = vec_add(v0, vec_scale(t1, v1));
    Vec term1 = vec_scale(*t2i * *ai, vec_sub(map_eval(f, top, tag), map_eval(f, base2, tag)));
    Vec term2 = vec_scale(*t2i * *t1i, vec_sub(map_eval(f, mid, tag), map_eval(f, v0, tag)));
    return vec_sub(term1, term2);
}

Vec slope2_sym(const MapFn& f, const SymPoint& q) {
    if (q.order != 2) throw backend_error("slope2_sym needs an order-2 point");
    if (!sym_contains(*f.domain, q)) throw domain_error("point outside the symmetric domain");
    const RingValue &t1 = q.t[0], &t2 = q.t[1];
    auto t1i = try_invert(t1), t2i = try_invert(t2);
    if (!t1i || !t2i) throw invert_error("symmetric slope needs unit t1, t2");
    const BackendTag tag = t1.tag();
    const Vec& x = q.base;
    const Vec p1 = vec_add(x, vec_scale(t1, q.u[1]));
    const Vec p2 = vec_add(x, vec_scale(t2, q.u[2]));
    const Vec p12 = vec_add(vec_add(p1, vec_scale(t2, q.u[2])),
                            vec_scale(t1 * t2, q.u[3]));
    Vec num = vec_sub(vec_sub(map_eval(f, p12, tag), map_eval(f, p1, tag)),
                      vec_sub(map_eval(f, p2, tag), map_eval(f, x, tag)));
    return vec_scale(*t1i * *t2i, num);
}

// --- float convergence ------------------------------------------------------

ConvergenceTable estimate_limit_slope(const MapFn& f, const Vec& x, const Vec& v, double t0,
                                      int halvings) {
    if (halvings < 1) throw backend_error("need at least one halving");
    ConvergenceTable table;
    double t = t0;
    for (int k = 0; k <= halvings; ++k, t /= 2) {
        Vec s = slope1(f, x, v, RingValue::floating(t));
        ConvergenceRow row;
        row.t = t;
        for (const auto& c : s) row.slope.push_back(c.flt());
        table.rows.push_back(std::move(row));
    }
    const auto& last = table.rows[table.rows.size() - 1].slope;
    const auto& prev = table.rows[table.rows.size() - 2].slope;
    for (std::size_t i = 0; i < last.size(); ++i) table.limit.push_back(2 * last[i] - prev[i]);
    for (auto& row : table.rows) {
        double err = 0;
        for (std::size_t i = 0; i < row.slope.size(); ++i)
            err = std::max(err, std::abs(row.slope[i] - table.limit[i]));
        row.richardson_err = err;
    }
    return table;
}

std::string ConvergenceTable::csv() const {
    std::string out = "t";
    const std::size_t d = rows.empty() ? 0 : rows[0].slope.size();
    for (std::size_t i = 0; i < d; ++i) out += ",slope_" + std::to_string(i);
    out += ",richardson_err\n";
    char buf[64];
    for (const auto& row : rows) {
        std::snprintf(buf, sizeof buf, "%.17g", row.t);
        out += buf;
        for (double s : row.slope) {
            std::snprintf(buf, sizeof buf, ",%.17g", s);
            out += buf;
        }
        std::snprintf(buf, sizeof buf, ",%.17g\n", row.richardson_err);
        out += buf;
    }
    return out;
}

// --- law checks -------------------------------------------------------------

LawReport check_chain_rule(const MapFn& f, const MapFn& g, const BackendTag& tag,
                           std::uint64_t seed, std::uint64_t n_samples) {
    if (!f.is_expr() || !g.is_expr()) throw backend_error("chain rule check needs expression maps");
    if (g.d_in != f.d_out) throw backend_error("composition dimensions do not match");
    MapFn h = MapFn::from_expr(substitute(g.expr(), f.expr()));
    const double tol = tag.tol;
    return run_law("chain-rule", n_samples, [&](std::uint64_t i) {
        Rng rng(seed ^ (i * 0x9e3779b97f4a7c15ULL + 21));
        Vec x = sample_vec(rng, f.d_in, tag);
        Vec v = sample_vec(rng, f.d_in, tag);
        RingValue t = (rng.below(4) == 0) ? RingValue::zero(tag)
                                          : sample_ring(rng.next(), tag, true);
        auto [hx, hs] = tangent_map_t(h, t, x, v);
        auto [y, w] = tangent_map_t(f, t, x, v);
        auto [gy, gs] = tangent_map_t(g, t, y, w);
        if (vec_eq(hx, gy, tol) && vec_eq(hs, gs, tol)) return std::string();
        return "x=" + vec_str(x) + " v=" + vec_str(v) + " t=" + t.str();
    });
}

std::vector<LawReport> check_schwarz(const MapFn& f, const BackendTag& tag, std::uint64_t seed,
                                     std::uint64_t n_samples) {
    if (!f.is_expr()) throw backend_error("schwarz check needs an expression map");
    const double tol = tag.tol;
    std::vector<LawReport> out;

    out.push_back(run_law("schwarz/flip", n_samples, [&](std::uint64_t i) {
        Rng rng(seed ^ (i * 0x9e3779b97f4a7c15ULL + 31));
        SymPoint q = sample_sym(rng, 2, f.d_in, tag, f.domain, true);
        SymPoint flipped = q;
        std::swap(flipped.u[1], flipped.u[2]);
        std::swap(flipped.t[0], flipped.t[1]);
        if (vec_eq(slope2_sym(f, q), slope2_sym(f, flipped), tol)) return std::string();
        return "base=" + vec_str(q.base);
    }));

    out.push_back(run_law("schwarz/jet-flip", n_samples, [&](std::uint64_t i) {
        Rng rng(seed ^ (i * 0x9e3779b97f4a7c15ULL + 32));
        auto params = CubicParams::make(
            2, {RingValue::zero(tag), RingValue::zero(tag)}, tag);
        const SubsetMask carrier = 3;
        Vec x = sample_vec(rng, f.d_in, tag);
        Vec v1 = sample_vec(rng, f.d_in, tag);
        Vec v2 = sample_vec(rng, f.d_in, tag);
        Vec v12 = sample_vec(rng, f.d_in, tag);
        auto build = [&](const Vec& a, const Vec& b) {
            std::vector<CubicScalar> in;
            for (int j = 0; j < f.d_in; ++j)
                in.push_back(CubicScalar::from_coeffs(
                    params, carrier,
                    {x[static_cast<std::size_t>(j)], a[static_cast<std::size_t>(j)],
                     b[static_cast<std::size_t>(j)], v12[static_cast<std::size_t>(j)]}));
            return lift_sym(f, in, params);
        };
        auto lhs = build(v1, v2);
        auto rhs = build(v2, v1);
        for (std::size_t j = 0; j < lhs.size(); ++j)
            if (!ring_eq(lhs[j].coeff(3), rhs[j].coeff(3), tol))
                return "x=" + vec_str(x);
        return std::string();
    }));

    out.push_back(run_law("schwarz/sym-vs-full", n_samples, [&](std::uint64_t i) {
        Rng rng(seed ^ (i * 0x9e3779b97f4a7c15ULL + 33));
        SymPoint q = sample_sym(rng, 2, f.d_in, tag, f.domain, true);
        HyperPoint p = make_hyper(
            2, {q.base, q.u[1], q.u[2], q.u[3]},
            {RingValue::one(tag), q.t[0], q.t[1], RingValue::zero(tag)}, f.domain);
        if (vec_eq(slope2_sym(f, q), slope2_full(f, p), tol)) return std::string();
        return "base=" + vec_str(q.base);
    }));

    return out;
}

// --- samplers ---------------------------------------------------------------

HyperPoint sample_hyper(Rng& rng, int order, int dim, const BackendTag& tag,
                        std::shared_ptr<const DomainSpec> domain, bool unit_params) {
    domain = default_domain(dim, std::move(domain));
    const std::size_t count = std::size_t{1} << order;
    for (int tries = 0; tries < 1000; ++tries) {
        std::vector<Vec> w;
        std::vector<RingValue> t;
        for (std::size_t i = 0; i < count; ++i) {
            w.push_back(sample_vec(rng, dim, tag));
            if (i == 0)
                t.push_back(RingValue::one(tag));
            else if (unit_params || rng.below(4) != 0)
                t.push_back(sample_ring(rng.next(), tag, true));
            else
                t.push_back(RingValue::zero(tag));
        }
        HyperPoint p = make_hyper(order, std::move(w), std::move(t), domain);
        if (extended_contains(*domain, p)) return p;
    }
    throw domain_error("could not sample a point of the extended domain");
}

SymPoint sample_sym(Rng& rng, int order, int dim, const BackendTag& tag,
                    std::shared_ptr<const DomainSpec> domain, bool unit_params) {
    domain = default_domain(dim, std::move(domain));
    const std::size_t count = std::size_t{1} << order;
    for (int tries = 0; tries < 1000; ++tries) {
        SymPoint q;
        q.order = order;
        q.domain = domain;
        q.base = sample_vec(rng, dim, tag);
        q.u.resize(count);
        for (std::size_t i = 0; i < count; ++i) q.u[i] = sample_vec(rng, dim, tag);
        for (int k = 0; k < order; ++k) {
            if (unit_params || rng.below(4) != 0)
                q.t.push_back(sample_ring(rng.next(), tag, true));
            else
                q.t.push_back(RingValue::zero(tag));
        }
        if (sym_contains(*domain, q)) return q;
    }
    throw domain_error("could not sample a point of the symmetric domain");
}

}  // namespace liecalc
