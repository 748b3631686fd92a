#include "liecalc/groupoid.hpp"

namespace liecalc {

bool obj_eq(const ObjPt& a, const ObjPt& b, double tol) {
    return vec_eq(a.x, b.x, tol) && ring_eq(a.t, b.t, tol);
}

Arrow1::Arrow1(Vec x, Vec v, RingValue t, std::shared_ptr<const DomainSpec> domain)
    : x_(std::move(x)), v_(std::move(v)), t_(std::move(t)), domain_(std::move(domain)) {
    if (x_.size() != v_.size()) throw backend_error("arrow component dimensions differ");
    if (!domain_->contains(x_)) throw domain_error("arrow base point outside U");
    if (!domain_->contains(target_point())) throw domain_error("arrow target outside U");
}

ObjPt t1_source(const Arrow1& a) { return {a.x(), a.t()}; }

ObjPt t1_target(const Arrow1& a) { return {a.target_point(), a.t()}; }

Arrow1 t1_compose(const Arrow1& a, const Arrow1& b) {
    if (!obj_eq(t1_source(a), t1_target(b))) throw domain_error("arrows not composable");
    return Arrow1(b.x(), vec_add(a.v(), b.v()), b.t(), b.domain());
}

Arrow1 t1_inverse(const Arrow1& a) {
    Vec neg;
    neg.reserve(a.v().size());
    for (const auto& c : a.v()) neg.push_back(-c);
    return Arrow1(a.target_point(), std::move(neg), a.t(), a.domain());
}

Arrow1 t1_unit(const ObjPt& o, std::shared_ptr<const DomainSpec> domain) {
    Vec zero = vec_zero(static_cast<int>(o.x.size()), o.t.tag());
    return Arrow1(o.x, std::move(zero), o.t, std::move(domain));
}

std::pair<Vec, Vec> t1_anchor(const Arrow1& a) { return {a.target_point(), a.x()}; }

Arrow1 t1_anchor_inverse(const Vec& z, const Vec& x, const RingValue& t,
                         std::shared_ptr<const DomainSpec> domain) {
    auto t_inv = try_invert(t);
    if (!t_inv) throw invert_error("anchor inverse needs a unit t");
    return Arrow1(x, vec_scale(*t_inv, vec_sub(z, x)), t, std::move(domain));
}

Arrow1 t1_rescale(const Arrow1& a, const RingValue& s) {
    auto s_inv = try_invert(s);
    if (!s_inv) throw invert_error("rescaling by a non-unit");
    return Arrow1(a.x(), vec_scale(s, a.v()), a.t() * *s_inv, a.domain());
}

Arrow1 ternary(const Arrow1& a, const Arrow1& b, const Arrow1& c) {
    if (!obj_eq(t1_source(a), t1_source(b)) || !obj_eq(t1_target(b), t1_target(c)))
        throw domain_error("incompatible ternary triple");
    return t1_compose(a, t1_compose(t1_inverse(b), c));
}

bool arrow_eq(const Arrow1& a, const Arrow1& b, double tol) {
    return vec_eq(a.x(), b.x(), tol) && vec_eq(a.v(), b.v(), tol) && ring_eq(a.t(), b.t(), tol);
}

}  // namespace liecalc
