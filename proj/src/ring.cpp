#include "liecalc/ring.hpp"

#include <cmath>
#include <sstream>

namespace liecalc {

namespace {

std::uint64_t pf_inv(std::uint64_t a, std::uint64_t p) {
    // Fermat: a^(p-2) mod p.
    std::uint64_t r = 1, base = a % p, e = p - 2;
    while (e) {
        if (e & 1) r = r * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return r;
}

[[noreturn]] void mixed() { throw backend_error("cross-backend ring operation"); }

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

BackendTag BackendTag::prime_field(std::uint32_t p) {
    if (p >= (1u << 31)) throw backend_error("p must be below 2^31");
    if (!is_prime(p)) throw backend_error("p is not prime: " + std::to_string(p));
    return {Backend::PrimeField, p, 0.0};
}

std::string BackendTag::name() const {
    switch (kind) {
        case Backend::Rational: return "rational";
        case Backend::Float: return "float";
        case Backend::PrimeField: return "fp:" + std::to_string(p);
    }
    return "?";
}

RingValue RingValue::rational(const mpq_class& q) {
    if (q.get_den() == 0) throw backend_error("rational with zero denominator");
    mpq_class c = q;
    c.canonicalize();
    return RingValue(std::move(c));
}

RingValue RingValue::rational(long num, long den) {
    if (den == 0) throw backend_error("rational with zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return RingValue(std::move(q));
}

RingValue RingValue::prime(std::uint64_t residue, std::uint32_t p) {
    if (p >= (1u << 31)) throw backend_error("p must be below 2^31");
    if (!is_prime(p)) throw backend_error("p is not prime: " + std::to_string(p));
    return RingValue(Pf{static_cast<std::uint32_t>(residue % p), p});
}

RingValue RingValue::from_mpq(const mpq_class& q, const BackendTag& tag) {
    switch (tag.kind) {
        case Backend::Rational: return rational(q);
        case Backend::Float: return floating(q.get_d());
        case Backend::PrimeField: {
            const std::uint32_t p = tag.p;
            mpz_class num = q.get_num(), den = q.get_den();
            std::uint64_t n = mpz_fdiv_ui(num.get_mpz_t(), p);
            std::uint64_t d = mpz_fdiv_ui(den.get_mpz_t(), p);
            if (d == 0) throw invert_error("constant denominator vanishes mod p");
            return prime(n * pf_inv(d, p) % p, p);
        }
    }
    mixed();
}

Backend RingValue::backend() const {
    if (std::holds_alternative<mpq_class>(v_)) return Backend::Rational;
    if (std::holds_alternative<double>(v_)) return Backend::Float;
    return Backend::PrimeField;
}

BackendTag RingValue::tag() const {
    switch (backend()) {
        case Backend::Rational: return BackendTag::rational();
        case Backend::Float: return BackendTag::floating();
        case Backend::PrimeField: return {Backend::PrimeField, pf().p, 0.0};
    }
    mixed();
}

bool RingValue::is_zero() const {
    switch (backend()) {
        case Backend::Rational: return rat() == 0;
        case Backend::Float: return flt() == 0.0;
        case Backend::PrimeField: return pf().residue == 0;
    }
    return false;
}

bool RingValue::is_one() const {
    switch (backend()) {
        case Backend::Rational: return rat() == 1;
        case Backend::Float: return flt() == 1.0;
        case Backend::PrimeField: return pf().residue == 1 % pf().p;
    }
    return false;
}

RingValue RingValue::operator+(const RingValue& o) const {
    if (backend() != o.backend()) mixed();
    switch (backend()) {
        case Backend::Rational: return RingValue(mpq_class(rat() + o.rat()));
        case Backend::Float: return RingValue(flt() + o.flt());
        case Backend::PrimeField: {
            if (pf().p != o.pf().p) mixed();
            return RingValue(Pf{static_cast<std::uint32_t>(
                                    (std::uint64_t(pf().residue) + o.pf().residue) % pf().p),
                                pf().p});
        }
    }
    mixed();
}

RingValue RingValue::operator-(const RingValue& o) const { return *this + (-o); }

RingValue RingValue::operator*(const RingValue& o) const {
    if (backend() != o.backend()) mixed();
    switch (backend()) {
        case Backend::Rational: return RingValue(mpq_class(rat() * o.rat()));
        case Backend::Float: return RingValue(flt() * o.flt());
        case Backend::PrimeField: {
            if (pf().p != o.pf().p) mixed();
            return RingValue(Pf{static_cast<std::uint32_t>(
                                    std::uint64_t(pf().residue) * o.pf().residue % pf().p),
                                pf().p});
        }
    }
    mixed();
}

RingValue RingValue::operator-() const {
    switch (backend()) {
        case Backend::Rational: return RingValue(mpq_class(-rat()));
        case Backend::Float: return RingValue(-flt());
        case Backend::PrimeField:
            return RingValue(Pf{static_cast<std::uint32_t>((pf().p - pf().residue) % pf().p),
                                pf().p});
    }
    mixed();
}

std::string RingValue::str() const {
    switch (backend()) {
        case Backend::Rational: return rat().get_str();
        case Backend::Float: {
            std::ostringstream os;
            os.precision(17);
            os << flt();
            return os.str();
        }
        case Backend::PrimeField: return std::to_string(pf().residue);
    }
    mixed();
}

std::optional<RingValue> try_invert(const RingValue& a) {
    switch (a.backend()) {
        case Backend::Rational:
            if (a.rat() == 0) return std::nullopt;
            return RingValue::rational(mpq_class(1) / a.rat());
        case Backend::Float:
            if (a.flt() == 0.0) return std::nullopt;
            return RingValue::floating(1.0 / a.flt());
        case Backend::PrimeField:
            if (a.pf().residue == 0) return std::nullopt;
            return RingValue::prime(pf_inv(a.pf().residue, a.pf().p), a.pf().p);
    }
    return std::nullopt;
}

bool ring_eq(const RingValue& a, const RingValue& b, double tol) {
    if (a.backend() != b.backend()) throw backend_error("ring_eq across backends");
    switch (a.backend()) {
        case Backend::Rational: return a.rat() == b.rat();
        case Backend::PrimeField:
            if (a.pf().p != b.pf().p) throw backend_error("ring_eq across prime fields");
            return a.pf().residue == b.pf().residue;
        case Backend::Float: {
            const double x = a.flt(), y = b.flt();
            const double scale = std::max({1.0, std::abs(x), std::abs(y)});
            return std::abs(x - y) <= tol * scale;
        }
    }
    return false;
}

RingValue sample_ring(std::uint64_t seed, const BackendTag& tag, bool want_unit) {
    Rng rng(seed * 0x51ed2701ab1cf6d5ULL + static_cast<std::uint64_t>(tag.kind) * 977 +
            tag.p);
    switch (tag.kind) {
        case Backend::Rational: {
            long num = static_cast<long>(rng.below(25)) - 12;
            long den = static_cast<long>(rng.below(8)) + 1;
            if (want_unit && num == 0) num = 1;
            return RingValue::rational(num, den);
        }
        case Backend::Float: {
            double x = (static_cast<double>(rng.next() >> 11) /
                        static_cast<double>(1ULL << 53)) *
                           20.0 -
                       10.0;
            if (want_unit && std::abs(x) < 0.5) x += (x < 0 ? -0.5 : 0.5);
            return RingValue::floating(x);
        }
        case Backend::PrimeField: {
            if (want_unit) return RingValue::prime(1 + rng.below(tag.p - 1), tag.p);
            return RingValue::prime(rng.below(tag.p), tag.p);
        }
    }
    throw backend_error("unknown backend");
}

Vec vec_add(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw backend_error("vector dimension mismatch");
    Vec r;
    r.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r.push_back(a[i] + b[i]);
    return r;
}

Vec vec_sub(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw backend_error("vector dimension mismatch");
    Vec r;
    r.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r.push_back(a[i] - b[i]);
    return r;
}

Vec vec_scale(const RingValue& s, const Vec& a) {
    Vec r;
    r.reserve(a.size());
    for (const auto& x : a) r.push_back(s * x);
    return r;
}

Vec vec_zero(int dim, const BackendTag& tag) {
    return Vec(static_cast<std::size_t>(dim), RingValue::zero(tag));
}

bool vec_eq(const Vec& a, const Vec& b, double tol) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!ring_eq(a[i], b[i], tol)) return false;
    return true;
}

Vec sample_vec(Rng& rng, int dim, const BackendTag& tag) {
    Vec r;
    r.reserve(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) r.push_back(sample_ring(rng.next(), tag, false));
    return r;
}

std::string vec_str(const Vec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].str();
    }
    return s + ")";
}

}  // namespace liecalc
