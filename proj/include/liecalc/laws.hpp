#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "liecalc/domain.hpp"
#include "liecalc/groupoid.hpp"

namespace liecalc {

/// Outcome of checking one algebraic law over a sample batch.
struct LawReport {
    std::string law;
    std::uint64_t samples = 0;
    std::uint64_t failures = 0;
    std::string counterexample;  // first one; empty iff failures == 0

    bool ok() const { return failures == 0; }
    void count(bool pass, const std::function<std::string()>& show) {
        ++samples;
        if (!pass) {
            if (failures == 0) counterexample = show();
            ++failures;
        }
    }
};

/// Runs `body` n times; body returns an empty string on pass, else the
/// counterexample description.
LawReport run_law(const std::string& name, std::uint64_t n,
                  const std::function<std::string(std::uint64_t)>& body);

/// Structure maps of a groupoid, type-erased so one checker serves both the
/// tangent groupoid and finite-table groupoids.
template <class A, class O>
struct GroupoidModel {
    std::function<bool(const A&, const A&)> arrow_eq;
    std::function<bool(const O&, const O&)> obj_eq;
    std::function<O(const A&)> source, target;
    std::function<A(const A&, const A&)> compose;  // a * b with alpha(a)=beta(b)
    std::function<A(const A&)> inverse;
    std::function<A(const O&)> unit;
    std::function<std::string(const A&)> show;
};

/// Source/target of composites, associativity, unit laws, inverse laws.
/// One report per law; pair/triple samplers must yield composable tuples.
template <class A, class O>
std::vector<LawReport> check_groupoid(const GroupoidModel<A, O>& m,
                                      const std::function<std::pair<A, A>(std::uint64_t)>& pair_at,
                                      const std::function<std::array<A, 3>(std::uint64_t)>& triple_at,
                                      std::uint64_t n_samples) {
    std::vector<LawReport> out;
    out.push_back(run_law("groupoid/projections", n_samples, [&](std::uint64_t i) {
        auto [a, b] = pair_at(i);
        A ab = m.compose(a, b);
        if (m.obj_eq(m.source(ab), m.source(b)) && m.obj_eq(m.target(ab), m.target(a)))
            return std::string();
        return "a=" + m.show(a) + " b=" + m.show(b);
    }));
    out.push_back(run_law("groupoid/associativity", n_samples, [&](std::uint64_t i) {
        auto [a, b, c] = triple_at(i);
        A lhs = m.compose(m.compose(a, b), c);
        A rhs = m.compose(a, m.compose(b, c));
        if (m.arrow_eq(lhs, rhs)) return std::string();
        return "a=" + m.show(a) + " b=" + m.show(b) + " c=" + m.show(c);
    }));
    out.push_back(run_law("groupoid/units", n_samples, [&](std::uint64_t i) {
        auto [a, b] = pair_at(i);
        A ua = m.unit(m.source(a));
        A ub = m.unit(m.target(b));
        const bool pass = m.arrow_eq(m.compose(a, ua), a) && m.arrow_eq(m.compose(ub, b), b) &&
                          m.obj_eq(m.source(ua), m.source(a)) &&
                          m.obj_eq(m.target(ua), m.source(a));
        if (pass) return std::string();
        return "a=" + m.show(a) + " b=" + m.show(b);
    }));
    out.push_back(run_law("groupoid/inverses", n_samples, [&](std::uint64_t i) {
        auto [a, b] = pair_at(i);
        (void)b;
        A ai = m.inverse(a);
        const bool pass = m.arrow_eq(m.compose(a, ai), m.unit(m.target(a))) &&
                          m.arrow_eq(m.compose(ai, a), m.unit(m.source(a))) &&
                          m.arrow_eq(m.inverse(ai), a);
        if (pass) return std::string();
        return "a=" + m.show(a);
    }));
    return out;
}

/// Deterministic arrow samplers for the tangent groupoid of a domain;
/// composable chains are built constructively, never by rejection on the
/// matching condition.
class TangentSampler {
  public:
    TangentSampler(std::shared_ptr<const DomainSpec> domain, BackendTag tag,
                   std::uint64_t seed, bool include_zero_t = true);

    RingValue sample_t(Rng& rng) const;
    Vec sample_point(Rng& rng) const;           // in U
    Vec sample_dir(Rng& rng, const Vec& x, const RingValue& t) const;  // x + t v in U
    Arrow1 arrow(Rng& rng) const;
    Arrow1 arrow_from(Rng& rng, const ObjPt& src) const;  // alpha = src
    std::pair<Arrow1, Arrow1> composable_pair(std::uint64_t i) const;
    std::array<Arrow1, 3> composable_triple(std::uint64_t i) const;
    /// Chain with alpha(u)=alpha(v), beta(v)=beta(w), alpha(w)=alpha(y), beta(y)=beta(z).
    std::array<Arrow1, 5> torsor_chain(std::uint64_t i) const;

    const std::shared_ptr<const DomainSpec>& domain() const { return domain_; }
    const BackendTag& tag() const { return tag_; }

  private:
    std::shared_ptr<const DomainSpec> domain_;
    BackendTag tag_;
    std::uint64_t seed_;
    bool include_zero_t_;
};

GroupoidModel<Arrow1, ObjPt> tangent_model(std::shared_ptr<const DomainSpec> domain,
                                           double tol = 1e-9);

/// Square of the double groupoid obtained by extending the fixed-t1 tangent
/// groupoid in a second direction with parameter t2.
struct Square {
    Vec x, v;    // base arrow (x, v) of U_t1
    Vec dx, dv;  // increment
};

struct DoubleGroupoidCtx {
    int dim;
    BackendTag tag;
    RingValue t1, t2;

    bool h_composable(const Square& a, const Square& b) const;  // a * b
    Square h_compose(const Square& a, const Square& b) const;
    bool v_composable(const Square& a, const Square& b) const;  // a . b
    Square v_compose(const Square& a, const Square& b) const;
    /// (a, b, c, d) with a.c, b.d, (a.c)*(b.d), a*b, c*d, (a*b).(c*d) defined.
    std::array<Square, 4> sample_quad(std::uint64_t seed) const;
};

bool square_eq(const Square& a, const Square& b, double tol = 1e-9);
std::string square_str(const Square& s);

/// (a . c) * (b . d) = (a * b) . (c * d), exact on exact backends.
LawReport check_interchange(const DoubleGroupoidCtx& ctx, std::uint64_t seed,
                            std::uint64_t n_samples);

}  // namespace liecalc
