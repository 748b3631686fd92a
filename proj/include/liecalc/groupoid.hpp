#pragma once

#include <memory>

#include "liecalc/domain.hpp"
#include "liecalc/ring.hpp"

namespace liecalc {

/// Object of the tangent groupoid: a base point together with the scalar.
struct ObjPt {
    Vec x;
    RingValue t;
};

bool obj_eq(const ObjPt& a, const ObjPt& b, double tol = 1e-9);

/// Arrow (x, v, t) with x in U and x + t v in U; both memberships are
/// enforced on construction and after every operation that builds one.
class Arrow1 {
  public:
    Arrow1(Vec x, Vec v, RingValue t, std::shared_ptr<const DomainSpec> domain);

    const Vec& x() const { return x_; }
    const Vec& v() const { return v_; }
    const RingValue& t() const { return t_; }
    const std::shared_ptr<const DomainSpec>& domain() const { return domain_; }

    Vec target_point() const { return vec_add(x_, vec_scale(t_, v_)); }

  private:
    Vec x_, v_;
    RingValue t_;
    std::shared_ptr<const DomainSpec> domain_;
};

ObjPt t1_source(const Arrow1& a);
ObjPt t1_target(const Arrow1& a);

/// (x',v',t) * (x,v,t) = (x, v+v', t) when x' = x + t v.
Arrow1 t1_compose(const Arrow1& a, const Arrow1& b);
Arrow1 t1_inverse(const Arrow1& a);
Arrow1 t1_unit(const ObjPt& o, std::shared_ptr<const DomainSpec> domain);

/// (target point, source point); for unit t an isomorphism onto the pair
/// groupoid of U at that t.
std::pair<Vec, Vec> t1_anchor(const Arrow1& a);

/// Inverse of the anchor at unit t: (z, x) -> ((z-x)/t, x).
Arrow1 t1_anchor_inverse(const Vec& z, const Vec& x, const RingValue& t,
                         std::shared_ptr<const DomainSpec> domain);

/// Phi_s(x, v, t) = (x, s v, t/s) for a unit s.
Arrow1 t1_rescale(const Arrow1& a, const RingValue& s);

/// (a b c) = a * b^{-1} * c on triples with alpha(a)=alpha(b), beta(b)=beta(c).
Arrow1 ternary(const Arrow1& a, const Arrow1& b, const Arrow1& c);

bool arrow_eq(const Arrow1& a, const Arrow1& b, double tol = 1e-9);

}  // namespace liecalc
