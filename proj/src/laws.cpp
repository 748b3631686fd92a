#include "liecalc/laws.hpp"

namespace liecalc {

LawReport run_law(const std::string& name, std::uint64_t n,
                  const std::function<std::string(std::uint64_t)>& body) {
    LawReport r;
    r.law = name;
    for (std::uint64_t i = 0; i < n; ++i) {
        std::string cx = body(i);
        r.count(cx.empty(), [&] { return cx; });
    }
    return r;
}

TangentSampler::TangentSampler(std::shared_ptr<const DomainSpec> domain, BackendTag tag,
                               std::uint64_t seed, bool include_zero_t)
    : domain_(std::move(domain)), tag_(tag), seed_(seed), include_zero_t_(include_zero_t) {}

RingValue TangentSampler::sample_t(Rng& rng) const {
    if (include_zero_t_ && rng.below(4) == 0) return RingValue::zero(tag_);
    return sample_ring(rng.next(), tag_, true);
}

Vec TangentSampler::sample_point(Rng& rng) const {
    for (int tries = 0; tries < 1000; ++tries) {
        Vec x = sample_vec(rng, domain_->dim(), tag_);
        if (domain_->contains(x)) return x;
    }
    throw domain_error("could not sample a point of U");
}

Vec TangentSampler::sample_dir(Rng& rng, const Vec& x, const RingValue& t) const {
    for (int tries = 0; tries < 1000; ++tries) {
        Vec v = sample_vec(rng, domain_->dim(), tag_);
        if (domain_->contains(vec_add(x, vec_scale(t, v)))) return v;
    }
    throw domain_error("could not sample a direction staying in U");
}

Arrow1 TangentSampler::arrow(Rng& rng) const {
    Vec x = sample_point(rng);
    RingValue t = sample_t(rng);
    Vec v = sample_dir(rng, x, t);
    return Arrow1(std::move(x), std::move(v), std::move(t), domain_);
}

Arrow1 TangentSampler::arrow_from(Rng& rng, const ObjPt& src) const {
    Vec v = sample_dir(rng, src.x, src.t);
    return Arrow1(src.x, std::move(v), src.t, domain_);
}

std::pair<Arrow1, Arrow1> TangentSampler::composable_pair(std::uint64_t i) const {
    Rng rng(seed_ ^ (i * 0x9e3779b97f4a7c15ULL + 1));
    Arrow1 b = arrow(rng);
    Arrow1 a = arrow_from(rng, t1_target(b));
    return {std::move(a), std::move(b)};
}

std::array<Arrow1, 3> TangentSampler::composable_triple(std::uint64_t i) const {
    Rng rng(seed_ ^ (i * 0x9e3779b97f4a7c15ULL + 2));
    Arrow1 c = arrow(rng);
    Arrow1 b = arrow_from(rng, t1_target(c));
    Arrow1 a = arrow_from(rng, t1_target(b));
    return {std::move(a), std::move(b), std::move(c)};
}

std::array<Arrow1, 5> TangentSampler::torsor_chain(std::uint64_t i) const {
    Rng rng(seed_ ^ (i * 0x9e3779b97f4a7c15ULL + 3));
    Arrow1 v = arrow(rng);
    Arrow1 u = arrow_from(rng, t1_source(v));
    Arrow1 w = t1_inverse(arrow_from(rng, t1_target(v)));
    Arrow1 y = arrow_from(rng, t1_source(w));
    Arrow1 z = t1_inverse(arrow_from(rng, t1_target(y)));
    return {std::move(u), std::move(v), std::move(w), std::move(y), std::move(z)};
}

GroupoidModel<Arrow1, ObjPt> tangent_model(std::shared_ptr<const DomainSpec> domain,
                                           double tol) {
    GroupoidModel<Arrow1, ObjPt> m;
    m.arrow_eq = [tol](const Arrow1& a, const Arrow1& b) { return arrow_eq(a, b, tol); };
    m.obj_eq = [tol](const ObjPt& a, const ObjPt& b) { return obj_eq(a, b, tol); };
    m.source = [](const Arrow1& a) { return t1_source(a); };
    m.target = [](const Arrow1& a) { return t1_target(a); };
    m.compose = [](const Arrow1& a, const Arrow1& b) { return t1_compose(a, b); };
    m.inverse = [](const Arrow1& a) { return t1_inverse(a); };
    m.unit = [domain](const ObjPt& o) { return t1_unit(o, domain); };
    m.show = [](const Arrow1& a) {
        return "(" + vec_str(a.x()) + "," + vec_str(a.v()) + "," + a.t().str() + ")";
    };
    return m;
}

bool DoubleGroupoidCtx::h_composable(const Square& a, const Square& b) const {
    return vec_eq(a.x, vec_add(b.x, vec_scale(t1, b.v))) &&
           vec_eq(a.dx, vec_add(b.dx, vec_scale(t1, b.dv)));
}

Square DoubleGroupoidCtx::h_compose(const Square& a, const Square& b) const {
    if (!h_composable(a, b)) throw domain_error("squares not *-composable");
    return {b.x, vec_add(b.v, a.v), b.dx, vec_add(b.dv, a.dv)};
}

bool DoubleGroupoidCtx::v_composable(const Square& a, const Square& b) const {
    return vec_eq(a.x, vec_add(b.x, vec_scale(t2, b.dx))) &&
           vec_eq(a.v, vec_add(b.v, vec_scale(t2, b.dv)));
}

Square DoubleGroupoidCtx::v_compose(const Square& a, const Square& b) const {
    if (!v_composable(a, b)) throw domain_error("squares not .-composable");
    return {b.x, b.v, vec_add(b.dx, a.dx), vec_add(b.dv, a.dv)};
}

std::array<Square, 4> DoubleGroupoidCtx::sample_quad(std::uint64_t seed) const {
    Rng rng(seed);
    auto fresh = [&] { return sample_vec(rng, dim, tag); };
    Vec x = fresh(), v = fresh(), xd = fresh(), vd = fresh();
    Vec w = fresh(), wd = fresh(), xdd = fresh(), vdd = fresh(), ud = fresh();

    Square d{x, v, xd, vd};
    Square c{vec_add(x, vec_scale(t1, v)), w, vec_add(xd, vec_scale(t1, vd)), wd};
    Square b{vec_add(x, vec_scale(t2, xd)), vec_add(v, vec_scale(t2, vd)), xdd, vdd};
    Square a{vec_add(c.x, vec_scale(t2, c.dx)), vec_add(c.v, vec_scale(t2, c.dv)),
             vec_add(xdd, vec_scale(t1, vdd)), ud};
    return {std::move(a), std::move(b), std::move(c), std::move(d)};
}

bool square_eq(const Square& a, const Square& b, double tol) {
    return vec_eq(a.x, b.x, tol) && vec_eq(a.v, b.v, tol) && vec_eq(a.dx, b.dx, tol) &&
           vec_eq(a.dv, b.dv, tol);
}

std::string square_str(const Square& s) {
    return "[" + vec_str(s.x) + vec_str(s.v) + ";" + vec_str(s.dx) + vec_str(s.dv) + "]";
}

LawReport check_interchange(const DoubleGroupoidCtx& ctx, std::uint64_t seed,
                            std::uint64_t n_samples) {
    return run_law("interchange", n_samples, [&](std::uint64_t i) {
        auto [a, b, c, d] = ctx.sample_quad(seed ^ (i * 0x9e3779b97f4a7c15ULL + 11));
        Square lhs = ctx.h_compose(ctx.v_compose(a, c), ctx.v_compose(b, d));
        Square rhs = ctx.v_compose(ctx.h_compose(a, b), ctx.h_compose(c, d));
        if (square_eq(lhs, rhs)) return std::string();
        return "a=" + square_str(a) + " b=" + square_str(b) + " c=" + square_str(c) +
               " d=" + square_str(d);
    });
}

}  // namespace liecalc
