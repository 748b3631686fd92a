#include "liecalc/domain.hpp"

namespace liecalc {

DomainSpec DomainSpec::full_space(int dim) {
    DomainSpec d;
    d.dim_ = dim;
    d.shape_ = FullSpace{};
    return d;
}

DomainSpec DomainSpec::open_ball(Vec center, RingValue radius) {
    if (radius.backend() != Backend::Float) throw backend_error("open ball is Float-only");
    for (const auto& c : center)
        if (c.backend() != Backend::Float) throw backend_error("open ball is Float-only");
    if (!(radius.flt() > 0.0)) throw domain_error("open ball needs positive radius");
    DomainSpec d;
    d.dim_ = static_cast<int>(center.size());
    d.shape_ = OpenBall{std::move(center), radius};
    return d;
}

DomainSpec DomainSpec::finite_complement(int dim, std::vector<Vec> excluded) {
    for (const auto& pt : excluded) {
        if (static_cast<int>(pt.size()) != dim) throw backend_error("excluded point dimension");
        for (const auto& c : pt)
            if (c.backend() == Backend::Float)
                throw backend_error("finite complement is for exact backends");
    }
    DomainSpec d;
    d.dim_ = dim;
    d.shape_ = FiniteComplement{std::move(excluded)};
    return d;
}

DomainSpec DomainSpec::half_space_positive(int dim, int coord) {
    if (coord < 0 || coord >= dim) throw backend_error("half space coordinate out of range");
    DomainSpec d;
    d.dim_ = dim;
    d.shape_ = HalfSpacePositive{coord};
    return d;
}

bool DomainSpec::contains(const Vec& x) const {
    if (static_cast<int>(x.size()) != dim_) throw backend_error("point dimension mismatch");
    if (std::holds_alternative<FullSpace>(shape_)) return true;
    if (const auto* ball = std::get_if<OpenBall>(&shape_)) {
        double d2 = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double di = x[i].flt() - ball->center[i].flt();
            d2 += di * di;
        }
        const double r = ball->radius.flt();
        return d2 < r * r;
    }
    if (const auto* fc = std::get_if<FiniteComplement>(&shape_)) {
        for (const auto& pt : fc->excluded)
            if (vec_eq(pt, x)) return false;
        return true;
    }
    const auto& hs = std::get<HalfSpacePositive>(shape_);
    return x[static_cast<std::size_t>(hs.coord)].flt() > 0.0;
}

}  // namespace liecalc
