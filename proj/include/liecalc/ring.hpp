#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "liecalc/errors.hpp"

namespace liecalc {

enum class Backend { Rational, Float, PrimeField };

/// Selects which ring a computation runs over. `p` is consulted only for
/// PrimeField, `tol` only for Float.
struct BackendTag {
    Backend kind = Backend::Rational;
    std::uint32_t p = 0;
    double tol = 1e-9;

    static BackendTag rational() { return {Backend::Rational, 0, 0.0}; }
    static BackendTag floating(double tol = 1e-9) { return {Backend::Float, 0, tol}; }
    static BackendTag prime_field(std::uint32_t p);

    bool same_ring(const BackendTag& o) const {
        return kind == o.kind && (kind != Backend::PrimeField || p == o.p);
    }
    std::string name() const;
};

bool is_prime(std::uint64_t n);

/// One element of one of the three backends. Rationals are kept in lowest
/// terms with positive denominator (mpq_class canonical form), prime-field
/// residues in [0, p). Cross-backend arithmetic throws backend_error.
class RingValue {
  public:
    struct Pf {
        std::uint32_t residue;
        std::uint32_t p;
        bool operator==(const Pf&) const = default;
    };

    RingValue() : v_(mpq_class(0)) {}

    static RingValue rational(const mpq_class& q);
    static RingValue rational(long num, long den = 1);
    static RingValue floating(double x) { return RingValue(x); }
    static RingValue prime(std::uint64_t residue, std::uint32_t p);

    /// Additive/multiplicative identities of the tagged backend.
    static RingValue zero(const BackendTag& tag) { return from_mpq(0, tag); }
    static RingValue one(const BackendTag& tag) { return from_mpq(1, tag); }

    /// Embeds an exact rational constant into the tagged backend. For a prime
    /// field the denominator must be invertible mod p.
    static RingValue from_mpq(const mpq_class& q, const BackendTag& tag);

    Backend backend() const;
    BackendTag tag() const;

    bool is_zero() const;
    bool is_one() const;

    const mpq_class& rat() const { return std::get<mpq_class>(v_); }
    double flt() const { return std::get<double>(v_); }
    const Pf& pf() const { return std::get<Pf>(v_); }

    RingValue operator+(const RingValue& o) const;
    RingValue operator-(const RingValue& o) const;
    RingValue operator*(const RingValue& o) const;
    RingValue operator-() const;
    RingValue& operator+=(const RingValue& o) { return *this = *this + o; }
    RingValue& operator-=(const RingValue& o) { return *this = *this - o; }
    RingValue& operator*=(const RingValue& o) { return *this = *this * o; }

    std::string str() const;

  private:
    explicit RingValue(mpq_class q) : v_(std::move(q)) {}
    explicit RingValue(double x) : v_(x) {}
    explicit RingValue(Pf r) : v_(r) {}

    std::variant<mpq_class, double, Pf> v_;
};

/// Multiplicative inverse when the argument is a unit of its backend,
/// absent otherwise. Absence is the signal; this never throws.
std::optional<RingValue> try_invert(const RingValue& a);

/// Exact equality on the exact backends; |a-b| <= tol*max(1,|a|,|b|) on Float.
bool ring_eq(const RingValue& a, const RingValue& b, double tol = 1e-9);

/// Deterministic pseudo-random element: a pure function of the arguments.
/// Floats land in [-10, 10]; with want_unit the result is a unit.
RingValue sample_ring(std::uint64_t seed, const BackendTag& tag, bool want_unit);

/// SplitMix64; the one stream every sampler in the project derives from.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // in [0, bound)
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }
};

// --- module vectors -------------------------------------------------------

using Vec = std::vector<RingValue>;

Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scale(const RingValue& s, const Vec& a);
Vec vec_zero(int dim, const BackendTag& tag);
bool vec_eq(const Vec& a, const Vec& b, double tol = 1e-9);
Vec sample_vec(Rng& rng, int dim, const BackendTag& tag);
std::string vec_str(const Vec& v);

}  // namespace liecalc
