#include "liecalc/suites.hpp"

#include <algorithm>

namespace liecalc {

namespace {

RingValue mixed_t(Rng& rng, const BackendTag& tag) {
    if (rng.below(4) == 0) return RingValue::zero(tag);
    return sample_ring(rng.next(), tag, true);
}

MapFn random_poly_map(Rng& rng, int arity, int depth = 3) {
    ExprVec v;
    v.arity = arity;
    v.comps.push_back(sample_poly_expr(rng, arity, depth));
    return MapFn::from_expr(std::move(v));
}

}  // namespace

std::vector<LawReport> groupoid_axioms(std::shared_ptr<const DomainSpec> domain,
                                       const BackendTag& tag, std::uint64_t seed,
                                       std::uint64_t n, const std::string& label) {
    TangentSampler sampler(domain, tag, seed);
    auto model = tangent_model(domain, tag.tol);
    auto reports = check_groupoid<Arrow1, ObjPt>(
        model, [&](std::uint64_t i) { return sampler.composable_pair(i); },
        [&](std::uint64_t i) { return sampler.composable_triple(i); }, n);
    for (auto& r : reports) r.law += "[" + label + "]";
    return reports;
}

LawReport anchor_roundtrip(const BackendTag& tag, std::uint64_t seed, std::uint64_t n) {
    auto domain = std::make_shared<const DomainSpec>(DomainSpec::full_space(2));
    TangentSampler sampler(domain, tag, seed, /*include_zero_t=*/false);
    return run_law("anchor/roundtrip", n, [&](std::uint64_t i) {
        Rng rng(seed ^ (i * 0x9e3779b97f4a7c15ULL + 41));
        Arrow1 a = sampler.arrow(rng);
        auto [z, x] = t1_anchor(a);
        Arrow1 back = t1_anchor_inverse(z, x, a.t(), a.domain());
        // and the other way: a pair of points, through an arrow, and back
        Vec pz = sampler.sample_point(rng), px = sampler.sample_point(rng);
        auto [qz, qx] = t1_anchor(t1_anchor_inverse(pz, px, a.t(), a.domain()));
        if (arrow_eq(back, a, tag.tol) && vec_eq(qz, pz, tag.tol) && vec_eq(qx, px, tag.tol))
            return std::string();
        return "a=(" + vec_str(a.x()) + "," + vec_str(a.v()) + "," + a.t().str() + ")";
    });
}

LawReport anchor_functor(const BackendTag& tag, std::uint64_t seed, std::uint64_t n) {
    auto domain = std::make_shared<const DomainSpec>(DomainSpec::full_space(2));
    TangentSampler sampler(domain, tag, seed, /*include_zero_t=*/false);
    return run_law("anchor/pair-functor", n, [&](std::uint64_t i) {
        auto [a, b] = sampler.composable_pair(i);
        auto [z1, x1] = t1_anchor(t1_compose(a, b));
        // pair-groupoid composite of the two anchors: (beta(a), alpha(b)).
        const Vec expect_target = t1_target(a).x;
        const Vec expect_source = t1_source(b).x;
        if (vec_eq(z1, expect_target, tag.tol) && vec_eq(x1, expect_source, tag.tol))
            return std::string();
        return "a=(" + vec_str(a.x()) + "," + vec_str(a.v()) + ") b=(" + vec_str(b.x()) + "," +
               vec_str(b.v()) + ") t=" + b.t().str();
    });
}

LawReport rescale_automorphism(const BackendTag& tag, std::uint64_t seed, std::uint64_t n) {
    auto domain = std::make_shared<const DomainSpec>(DomainSpec::full_space(2));
    TangentSampler sampler(domain, tag, seed);
    return run_law("rescale/automorphism", n, [&](std::uint64_t i) {
        Rng rng(seed ^ (i * 0x9e3779b97f4a7c15ULL + 42));
        auto [a, b] = sampler.composable_pair(i);
        RingValue s = sample_ring(rng.next(), tag, true);
        Arrow1 lhs = t1_rescale(t1_compose(a, b), s);
        Arrow1 rhs = t1_compose(t1_rescale(a, s), t1_rescale(b, s));
        Arrow1 unit = t1_unit(t1_source(b), b.domain());
        Arrow1 unit_img = t1_rescale(unit, s);
        const bool unit_ok = vec_eq(unit_img.v(), vec_zero(2, tag), tag.tol);
        if (arrow_eq(lhs, rhs, tag.tol) && unit_ok) return std::string();
        return "s=" + s.str();
    });
}

LawReport rescale_composition(const BackendTag& tag, std::uint64_t seed, std::uint64_t n) {
    auto domain = std::make_shared<const DomainSpec>(DomainSpec::full_space(2));
    TangentSampler sampler(domain, tag, seed);
    return run_law("rescale/composition", n, [&](std::uint64_t i) {
        Rng rng(seed ^ (i * 0x9e3779b97f4a7c15ULL + 43));
        Arrow1 a = sampler.arrow(rng);
        RingValue s = sample_ring(rng.next(), tag, true);
        RingValue t = sample_ring(rng.next() + 1, tag, true);
        Arrow1 lhs = t1_rescale(a, s * t);
        Arrow1 rhs = t1_rescale(t1_rescale(a, t), s);
        Arrow1 id = t1_rescale(a, RingValue::one(tag));
        if (arrow_eq(lhs, rhs, tag.tol) && arrow_eq(id, a, tag.tol)) return std::string();
        return "s=" + s.str() + " t=" + t.str();
    });
}

std::vector<LawReport> chain_suite(const BackendTag& tag, std::uint64_t seed,
                                   std::uint64_t n_pairs, std::uint64_t n_samples) {
    LawReport agg;
    agg.law = "chain-rule";
    for (std::uint64_t p = 0; p < n_pairs; ++p) {
        Rng rng(seed ^ (p * 0x9e3779b97f4a7c15ULL + 51));
        const int mid = 1 + static_cast<int>(rng.below(2));
        ExprVec fe;
        fe.arity = 1 + static_cast<int>(rng.below(2));
        for (int j = 0; j < mid; ++j) fe.comps.push_back(sample_bounded_poly(rng, fe.arity, 4));
        ExprVec ge;
        ge.arity = mid;
        ge.comps.push_back(sample_bounded_poly(rng, mid, 4));
        MapFn f = MapFn::from_expr(std::move(fe));
        MapFn g = MapFn::from_expr(std::move(ge));
        LawReport r = check_chain_rule(f, g, tag, rng.next(), n_samples);
        agg.samples += r.samples;
        agg.failures += r.failures;
        if (agg.counterexample.empty()) agg.counterexample = r.counterexample;
    }
    return {agg};
}

LawReport interchange_suite(const BackendTag& tag, std::uint64_t seed, std::uint64_t n) {
    return run_law("interchange", n, [&](std::uint64_t i) {
        Rng rng(seed ^ (i * 0x9e3779b97f4a7c15ULL + 61));
        DoubleGroupoidCtx ctx;
        ctx.dim = 1 + static_cast<int>(rng.below(2));
        ctx.tag = tag;
        ctx.t1 = mixed_t(rng, tag);
        ctx.t2 = mixed_t(rng, tag);
        auto [a, b, c, d] = ctx.sample_quad(rng.next());
        Square lhs = ctx.h_compose(ctx.v_compose(a, c), ctx.v_compose(b, d));
        Square rhs = ctx.v_compose(ctx.h_compose(a, b), ctx.h_compose(c, d));
        if (square_eq(lhs, rhs, tag.tol)) return std::string();
        return "t1=" + ctx.t1.str() + " t2=" + ctx.t2.str() + " a=" + square_str(a);
    });
}

std::vector<LawReport> schwarz_suite(const BackendTag& tag, std::uint64_t seed,
                                     std::uint64_t n) {
    std::vector<LawReport> out;
    out.push_back(run_law("schwarz/flip", n, [&](std::uint64_t i) {
        Rng rng(seed ^ (i * 0x9e3779b97f4a7c15ULL + 71));
        const int arity = 1 + static_cast<int>(rng.below(2));
        MapFn f = random_poly_map(rng, arity);
        SymPoint q = sample_sym(rng, 2, arity, tag, f.domain, true);
        SymPoint flipped = q;
        std::swap(flipped.u[1], flipped.u[2]);
        std::swap(flipped.t[0], flipped.t[1]);
        if (vec_eq(slope2_sym(f, q), slope2_sym(f, flipped), tag.tol)) return std::string();
        return "f=" + pretty(f.expr());
    }));
    out.push_back(run_law("schwarz/jet-flip", n, [&](std::uint64_t i) {
        Rng rng(seed ^ (i * 0x9e3779b97f4a7c15ULL + 72));
        const int arity = 1 + static_cast<int>(rng.below(2));
        MapFn f = random_poly_map(rng, arity);
        auto params = CubicParams::make(2, {RingValue::zero(tag), RingValue::zero(tag)}, tag);
        Vec x = sample_vec(rng, arity, tag);
        Vec v1 = sample_vec(rng, arity, tag);
        Vec v2 = sample_vec(rng, arity, tag);
        auto lift_at = [&](const Vec& a, const Vec& b) {
            std::vector<CubicScalar> in;
            for (int j = 0; j < arity; ++j)
                in.push_back(CubicScalar::from_coeffs(
                    params, 3,
                    {x[static_cast<std::size_t>(j)], a[static_cast<std::size_t>(j)],
                     b[static_cast<std::size_t>(j)], RingValue::zero(tag)}));
            return lift_sym(f, in, params);
        };
        auto lhs = lift_at(v1, v2);
        auto rhs = lift_at(v2, v1);
        for (std::size_t j = 0; j < lhs.size(); ++j)
            if (!ring_eq(lhs[j].coeff(3), rhs[j].coeff(3), tag.tol))
                return "f=" + pretty(f.expr());
        return std::string();
    }));
    out.push_back(run_law("schwarz/sym-vs-full", n, [&](std::uint64_t i) {
        Rng rng(seed ^ (i * 0x9e3779b97f4a7c15ULL + 73));
        const int arity = 1 + static_cast<int>(rng.below(2));
        MapFn f = random_poly_map(rng, arity);
        SymPoint q = sample_sym(rng, 2, arity, tag, f.domain, true);
        HyperPoint p = make_hyper(2, {q.base, q.u[1], q.u[2], q.u[3]},
                                  {RingValue::one(tag), q.t[0], q.t[1], RingValue::zero(tag)},
                                  f.domain);
        if (vec_eq(slope2_sym(f, q), slope2_full(f, p), tag.tol)) return std::string();
        return "f=" + pretty(f.expr());
    }));
    return out;
}

std::vector<LawReport> additivity_suite(const BackendTag& tag, std::uint64_t seed,
                                        std::uint64_t n) {
    std::vector<LawReport> out;
    out.push_back(run_law("slope/additivity", n, [&](std::uint64_t i) {
        Rng rng(seed ^ (i * 0x9e3779b97f4a7c15ULL + 81));
        const int arity = 1 + static_cast<int>(rng.below(3));
        MapFn f = random_poly_map(rng, arity);
        Vec x = sample_vec(rng, arity, tag);
        Vec v = sample_vec(rng, arity, tag);
        Vec v2 = sample_vec(rng, arity, tag);
        RingValue t = mixed_t(rng, tag);
        Vec lhs = slope1(f, x, vec_add(v, v2), t);
        Vec rhs = vec_add(slope1(f, x, v, t),
                          slope1(f, vec_add(x, vec_scale(t, v)), v2, t));
        if (vec_eq(lhs, rhs, tag.tol)) return std::string();
        return "f=" + pretty(f.expr()) + " t=" + t.str();
    }));
    out.push_back(run_law("slope/homogeneity-at-0", n, [&](std::uint64_t i) {
        Rng rng(seed ^ (i * 0x9e3779b97f4a7c15ULL + 82));
        const int arity = 1 + static_cast<int>(rng.below(3));
        MapFn f = random_poly_map(rng, arity);
        Vec x = sample_vec(rng, arity, tag);
        Vec v = sample_vec(rng, arity, tag);
        RingValue s = sample_ring(rng.next(), tag, false);
        RingValue zero = RingValue::zero(tag);
        Vec lhs = slope1(f, x, vec_scale(s, v), zero);
        Vec rhs = vec_scale(s, slope1(f, x, v, zero));
        if (vec_eq(lhs, rhs, tag.tol)) return std::string();
        return "f=" + pretty(f.expr()) + " s=" + s.str();
    }));
    return out;
}

LawReport mul_slope_literal(const BackendTag& tag, std::uint64_t seed, std::uint64_t n) {
    MapFn mul = MapFn::from_text("x1*x2", 2);
    return run_law("slope/product-map", n, [&](std::uint64_t i) {
        Rng rng(seed ^ (i * 0x9e3779b97f4a7c15ULL + 91));
        RingValue x = sample_ring(rng.next(), tag, false);
        RingValue y = sample_ring(rng.next(), tag, false);
        RingValue u = sample_ring(rng.next(), tag, false);
        RingValue v = sample_ring(rng.next(), tag, false);
        RingValue t = mixed_t(rng, tag);
        Vec got = slope1(mul, {x, y}, {u, v}, t);
        RingValue want = u * y + x * v + t * u * v;
        if (ring_eq(got[0], want, tag.tol)) return std::string();
        return "x=" + x.str() + " y=" + y.str() + " u=" + u.str() + " v=" + v.str() +
               " t=" + t.str();
    });
}

LawReport full_slope_consistency(const BackendTag& tag, std::uint64_t seed, std::uint64_t n) {
    return run_law("slope2/closed-vs-recursion", n, [&](std::uint64_t i) {
        Rng rng(seed ^ (i * 0x9e3779b97f4a7c15ULL + 101));
        ExprVec fe;
        fe.arity = 1;
        fe.comps.push_back(sample_bounded_poly(rng, 1, 4));
        MapFn f = MapFn::from_expr(std::move(fe));
        for (int tries = 0; tries < 100; ++tries) {
            HyperPoint p = sample_hyper(rng, 2, 1, tag, f.domain, true);
            const RingValue a = p.t[1] + p.t[2] * p.t[3];
            if (!try_invert(a)) continue;
            Vec closed = slope2_full_closed(f, p);
            Vec rec = slope_n_recursive(f, p);
            Vec tower = slope2_full(f, p);
            if (vec_eq(closed, rec, tag.tol) && vec_eq(closed, tower, tag.tol))
                return std::string();
            return "f=" + pretty(f.expr());
        }
        return std::string("could not sample unit parameter combination");
    });
}

LawReport ad_first_order(const BackendTag& tag, std::uint64_t seed, std::uint64_t n) {
    return run_law("ad/first-order", n, [&](std::uint64_t i) {
        Rng rng(seed ^ (i * 0x9e3779b97f4a7c15ULL + 111));
        const int arity = 1 + static_cast<int>(rng.below(3));
        ExprVec fe;
        fe.arity = arity;
        fe.comps.push_back(sample_poly_expr(rng, arity, 3));
        MapFn f = MapFn::from_expr(fe);
        Vec x = sample_vec(rng, arity, tag);
        Vec v = sample_vec(rng, arity, tag);
        Vec got = slope1(f, x, v, RingValue::zero(tag));
        RingValue want = RingValue::zero(tag);
        for (int j = 0; j < arity; ++j) {
            ExprPtr dj = diff_symbolic(fe.comps[0], j);
            want += eval_scalar(*dj, x, tag) * v[static_cast<std::size_t>(j)];
        }
        if (ring_eq(got[0], want, tag.tol)) return std::string();
        return "f=" + pretty(*fe.comps[0]) + " x=" + vec_str(x);
    });
}

LawReport ad_second_order(const BackendTag& tag, std::uint64_t seed, std::uint64_t n) {
    return run_law("ad/second-order", n, [&](std::uint64_t i) {
        Rng rng(seed ^ (i * 0x9e3779b97f4a7c15ULL + 121));
        const int arity = 1 + static_cast<int>(rng.below(2));
        ExprVec fe;
        fe.arity = arity;
        fe.comps.push_back(sample_poly_expr(rng, arity, 3));
        MapFn f = MapFn::from_expr(fe);
        auto params = CubicParams::make(2, {RingValue::zero(tag), RingValue::zero(tag)}, tag);
        Vec x = sample_vec(rng, arity, tag);
        Vec v1 = sample_vec(rng, arity, tag);
        Vec v2 = sample_vec(rng, arity, tag);
        std::vector<CubicScalar> in;
        for (int j = 0; j < arity; ++j)
            in.push_back(CubicScalar::from_coeffs(
                params, 3,
                {x[static_cast<std::size_t>(j)], v1[static_cast<std::size_t>(j)],
                 v2[static_cast<std::size_t>(j)], RingValue::zero(tag)}));
        RingValue got = lift_sym(f, in, params)[0].coeff(3);
        RingValue want = RingValue::zero(tag);
        for (int a = 0; a < arity; ++a) {
            ExprPtr da = diff_symbolic(fe.comps[0], a);
            for (int b = 0; b < arity; ++b) {
                ExprPtr dab = diff_symbolic(da, b);
                want += eval_scalar(*dab, x, tag) * v1[static_cast<std::size_t>(a)] *
                        v2[static_cast<std::size_t>(b)];
            }
        }
        if (ring_eq(got, want, tag.tol)) return std::string();
        return "f=" + pretty(*fe.comps[0]) + " x=" + vec_str(x);
    });
}

std::vector<LawReport> torsor_suite(const BackendTag& tag, std::uint64_t seed,
                                    std::uint64_t n) {
    auto domain = std::make_shared<const DomainSpec>(DomainSpec::full_space(1));
    TangentSampler sampler(domain, tag, seed);
    std::vector<LawReport> out;

    out.push_back(run_law("torsor/idempotency", n, [&](std::uint64_t i) {
        Rng rng(seed ^ (i * 0x9e3779b97f4a7c15ULL + 131));
        Arrow1 a = sampler.arrow(rng);
        Arrow1 c_beta = t1_inverse(sampler.arrow_from(rng, t1_target(a)));
        Arrow1 c_alpha = sampler.arrow_from(rng, t1_source(a));
        const bool ok = arrow_eq(ternary(a, a, c_beta), c_beta, tag.tol) &&
                        arrow_eq(ternary(a, c_alpha, c_alpha), a, tag.tol);
        if (ok) return std::string();
        return "a=(" + vec_str(a.x()) + "," + vec_str(a.v()) + "," + a.t().str() + ")";
    }));

    out.push_back(run_law("torsor/para-associativity", n, [&](std::uint64_t i) {
        auto [u, v, w, y, z] = sampler.torsor_chain(i);
        Arrow1 lhs = ternary(ternary(u, v, w), y, z);
        Arrow1 mid = ternary(u, v, ternary(w, y, z));
        Arrow1 rhs = ternary(u, ternary(y, w, v), z);
        if (arrow_eq(lhs, mid, tag.tol) && arrow_eq(lhs, rhs, tag.tol)) return std::string();
        return "u=(" + vec_str(u.x()) + "," + vec_str(u.v()) + "," + u.t().str() + ")";
    }));

    out.push_back(run_law("torsor/bisection-group", 1, [&](std::uint64_t) {
        FiniteGroupoid pg = FiniteGroupoid::pair_groupoid(3);
        auto bis = all_bisections(pg);
        if (bis.size() != 6) return std::string("expected 6 bisections of PG({1,2,3})");
        const ArrowSet unit = unit_section(pg);
        std::set<std::vector<int>> bijections;
        for (const auto& s : bis) {
            if (rel_compose(pg, s, unit) != s || rel_compose(pg, unit, s) != s)
                return std::string("unit section is not neutral");
            const ArrowSet inv = invert_set(pg, s);
            if (rel_compose(pg, s, inv) != unit) return std::string("inverse law fails");
            bijections.insert(bisection_to_bijection(pg, s));
            for (const auto& r : bis) {
                const ArrowSet prod = rel_compose(pg, s, r);
                if (!is_bisection(prod, pg)) return std::string("product not a bisection");
                // anchor is a morphism: bijection of product = composite bijection
                auto fs = bisection_to_bijection(pg, s);
                auto fr = bisection_to_bijection(pg, r);
                auto fp = bisection_to_bijection(pg, prod);
                for (int obj = 0; obj < 3; ++obj)
                    if (fp[static_cast<std::size_t>(obj)] !=
                        fs[static_cast<std::size_t>(fr[static_cast<std::size_t>(obj)])])
                        return std::string("anchor is not a group morphism");
            }
        }
        if (bijections.size() != 6) return std::string("anchor not surjective onto S3");
        return std::string();
    }));

    return out;
}

std::vector<LawReport> ring_suite(const BackendTag& tag, std::uint64_t seed, std::uint64_t n) {
    std::vector<LawReport> out;

    auto fresh_params = [&](Rng& rng, int order) {
        std::vector<RingValue> t;
        for (int k = 0; k < order; ++k) t.push_back(mixed_t(rng, tag));
        return CubicParams::make(order, std::move(t), tag);
    };
    auto unit_params = [&](Rng& rng, int order) {
        std::vector<RingValue> t;
        for (int k = 0; k < order; ++k) t.push_back(sample_ring(rng.next(), tag, true));
        return CubicParams::make(order, std::move(t), tag);
    };

    for (int order = 1; order <= 3; ++order) {
        out.push_back(run_law("ring/axioms-n" + std::to_string(order), n, [&](std::uint64_t i) {
            Rng rng(seed ^ (i * 0x9e3779b97f4a7c15ULL + 200 + static_cast<std::uint64_t>(order)));
            auto params = fresh_params(rng, order);
            const SubsetMask c = (SubsetMask{1} << order) - 1;
            CubicScalar a = sample_cubic(rng, params, c);
            CubicScalar b = sample_cubic(rng, params, c);
            CubicScalar d = sample_cubic(rng, params, c);
            CubicScalar one = CubicScalar::one(params, c);
            CubicScalar zero = CubicScalar::zero(params, c);
            const double tol = tag.tol;
            const bool ok = cs_eq((a + b) + d, a + (b + d), tol) && cs_eq(a + b, b + a, tol) &&
                            cs_eq((a * b) * d, a * (b * d), tol) && cs_eq(a * b, b * a, tol) &&
                            cs_eq(a * (b + d), a * b + a * d, tol) && cs_eq(one * a, a, tol) &&
                            cs_eq(zero + a, a, tol) && cs_eq(a - a, zero, tol);
            if (ok) return std::string();
            return "a=" + a.str() + " b=" + b.str();
        }));
    }

    out.push_back(run_law("ring/edge-morphisms", n, [&](std::uint64_t i) {
        Rng rng(seed ^ (i * 0x9e3779b97f4a7c15ULL + 210));
        const int order = 2 + static_cast<int>(rng.below(2));
        auto params = fresh_params(rng, order);
        const SubsetMask c = (SubsetMask{1} << order) - 1;
        CubicScalar a = sample_cubic(rng, params, c);
        CubicScalar b = sample_cubic(rng, params, c);
        const double tol = tag.tol;
        for (int k = 1; k <= order; ++k) {
            if (!cs_eq(cs_source(a * b, k), cs_source(a, k) * cs_source(b, k), tol) ||
                !cs_eq(cs_source(a + b, k), cs_source(a, k) + cs_source(b, k), tol) ||
                !cs_eq(cs_target(a * b, k), cs_target(a, k) * cs_target(b, k), tol) ||
                !cs_eq(cs_target(a + b, k), cs_target(a, k) + cs_target(b, k), tol))
                return "k=" + std::to_string(k) + " a=" + a.str() + " b=" + b.str();
            CubicScalar small_one = CubicScalar::one(params, c & ~dir_bit(k));
            if (!cs_eq(cs_source(CubicScalar::one(params, c), k), small_one, tol) ||
                !cs_eq(cs_target(CubicScalar::one(params, c), k), small_one, tol))
                return std::string("unit not preserved, k=" + std::to_string(k));
            // unit embedding is a morphism and a section of both projections
            CubicScalar sa = cs_source(a, k);
            CubicScalar sb = cs_source(b, k);
            if (!cs_eq(cs_unit_embed(sa * sb, k), cs_unit_embed(sa, k) * cs_unit_embed(sb, k),
                       tol) ||
                !cs_eq(cs_source(cs_unit_embed(sa, k), k), sa, tol) ||
                !cs_eq(cs_target(cs_unit_embed(sa, k), k), sa, tol))
                return std::string("unit embedding fails, k=" + std::to_string(k));
        }
        return std::string();
    }));

    out.push_back(run_law("ring/faces", n, [&](std::uint64_t i) {
        Rng rng(seed ^ (i * 0x9e3779b97f4a7c15ULL + 220));
        const int order = 2 + static_cast<int>(rng.below(2));
        auto params = fresh_params(rng, order);
        CubicRingDescriptor desc{params};
        const double tol = tag.tol;
        // both composite routes around every face of the hypercube
        for (const auto& face : desc.faces()) {
            const SubsetMask top = face.base | dir_bit(face.j) | dir_bit(face.k);
            CubicScalar a = sample_cubic(rng, params, top);
            const int j = face.j, k = face.k;
            if (!cs_eq(cs_source(cs_source(a, k), j), cs_source(cs_source(a, j), k), tol) ||
                !cs_eq(cs_source(cs_target(a, k), j), cs_target(cs_source(a, j), k), tol) ||
                !cs_eq(cs_target(cs_target(a, k), j), cs_target(cs_target(a, j), k), tol))
                return "base=" + subset_name(face.base) + " j=" + std::to_string(j) +
                       " k=" + std::to_string(k);
        }
        return std::string();
    }));

    out.push_back(run_law("ring/characters", n, [&](std::uint64_t i) {
        Rng rng(seed ^ (i * 0x9e3779b97f4a7c15ULL + 230));
        const int order = 1 + static_cast<int>(rng.below(3));
        auto params = fresh_params(rng, order);
        const SubsetMask c = (SubsetMask{1} << order) - 1;
        CubicScalar a = sample_cubic(rng, params, c);
        CubicScalar b = sample_cubic(rng, params, c);
        auto xa = cs_anchor_split(a);
        auto xb = cs_anchor_split(b);
        auto xab = cs_anchor_split(a * b);
        auto x1 = cs_anchor_split(CubicScalar::one(params, c));
        for (std::size_t s = 0; s < xa.size(); ++s) {
            if (!ring_eq(xab[s], xa[s] * xb[s], tag.tol)) return "S rank " + std::to_string(s);
            if (!ring_eq(x1[s], RingValue::one(tag), tag.tol))
                return "chi(1) != 1 at rank " + std::to_string(s);
        }
        return std::string();
    }));

    out.push_back(run_law("ring/relations-literal", n, [&](std::uint64_t i) {
        Rng rng(seed ^ (i * 0x9e3779b97f4a7c15ULL + 240));
        auto p1 = fresh_params(rng, 1);
        CubicScalar e1 = CubicScalar::basis(p1, 1, 1);
        if (!cs_eq(e1 * e1, CubicScalar::zero(p1, 1).with_coeff(1, p1->t[0]), tag.tol))
            return std::string("e1^2 != t1 e1");
        auto p2 = fresh_params(rng, 2);
        CubicScalar f1 = CubicScalar::basis(p2, 3, 1);
        CubicScalar f2 = CubicScalar::basis(p2, 3, 2);
        CubicScalar f12 = CubicScalar::basis(p2, 3, 3);
        if (!cs_eq(f1 * f2, f12, tag.tol)) return std::string("e1*e2 != e12");
        CubicScalar want = CubicScalar::zero(p2, 3).with_coeff(3, p2->t[0] * p2->t[1]);
        if (!cs_eq(f12 * f12, want, tag.tol)) return std::string("e12^2 != t1 t2 e12");
        return std::string();
    }));

    out.push_back(run_law("ring/anchor-roundtrip", n, [&](std::uint64_t i) {
        Rng rng(seed ^ (i * 0x9e3779b97f4a7c15ULL + 250));
        const int order = 1 + static_cast<int>(rng.below(3));
        auto params = unit_params(rng, order);
        const SubsetMask c = (SubsetMask{1} << order) - 1;
        CubicScalar a = sample_cubic(rng, params, c);
        CubicScalar back = cs_anchor_unsplit(cs_anchor_split(a), params, c);
        if (cs_eq(back, a, tag.tol)) return std::string();
        return "a=" + a.str();
    }));

    out.push_back(run_law("ring/rescale", n, [&](std::uint64_t i) {
        Rng rng(seed ^ (i * 0x9e3779b97f4a7c15ULL + 260));
        const int order = 1 + static_cast<int>(rng.below(2));
        auto params = fresh_params(rng, order);
        const SubsetMask c = (SubsetMask{1} << order) - 1;
        CubicScalar a = sample_cubic(rng, params, c);
        CubicScalar b = sample_cubic(rng, params, c);
        std::vector<RingValue> s, t2, st;
        for (int k = 0; k < order; ++k) {
            s.push_back(sample_ring(rng.next(), tag, true));
            t2.push_back(sample_ring(rng.next() + 7, tag, true));
            st.push_back(s[static_cast<std::size_t>(k)] * t2[static_cast<std::size_t>(k)]);
        }
        const double tol = tag.tol;
        const bool morphism = cs_eq(cs_rescale(a * b, s), cs_rescale(a, s) * cs_rescale(b, s),
                                    tol) &&
                              cs_eq(cs_rescale(a + b, s), cs_rescale(a, s) + cs_rescale(b, s),
                                    tol);
        const bool comp = cs_eq(cs_rescale(a, st), cs_rescale(cs_rescale(a, t2), s), tol);
        std::vector<RingValue> ones(static_cast<std::size_t>(order), RingValue::one(tag));
        const bool ident = cs_eq(cs_rescale(a, ones), a, tol);
        if (morphism && comp && ident) return std::string();
        return "a=" + a.str();
    }));

    out.push_back(run_law("ring/flip", n, [&](std::uint64_t i) {
        Rng rng(seed ^ (i * 0x9e3779b97f4a7c15ULL + 270));
        const int order = 2 + static_cast<int>(rng.below(2));
        auto params = fresh_params(rng, order);
        const SubsetMask c = (SubsetMask{1} << order) - 1;
        CubicScalar a = sample_cubic(rng, params, c);
        CubicScalar b = sample_cubic(rng, params, c);
        std::vector<int> sigma(static_cast<std::size_t>(order));
        for (int k = 0; k < order; ++k) sigma[static_cast<std::size_t>(k)] = k + 1;
        for (int k = order - 1; k > 0; --k)
            std::swap(sigma[static_cast<std::size_t>(k)],
                      sigma[static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(k + 1)))]);
        const double tol = tag.tol;
        const bool ok = cs_eq(cs_flip(a * b, sigma), cs_flip(a, sigma) * cs_flip(b, sigma), tol) &&
                        cs_eq(cs_flip(a + b, sigma), cs_flip(a, sigma) + cs_flip(b, sigma), tol);
        if (ok) return std::string();
        return "a=" + a.str();
    }));

    out.push_back(run_law("ring/weil-nilpotent", n, [&](std::uint64_t i) {
        Rng rng(seed ^ (i * 0x9e3779b97f4a7c15ULL + 280));
        const int order = 1 + static_cast<int>(rng.below(3));
        std::vector<RingValue> t(static_cast<std::size_t>(order), RingValue::zero(tag));
        auto params = CubicParams::make(order, std::move(t), tag);
        const SubsetMask c = (SubsetMask{1} << order) - 1;
        CubicScalar prod = CubicScalar::one(params, c);
        for (int j = 0; j <= order; ++j) {
            CubicScalar a = sample_cubic(rng, params, c).with_coeff(0, RingValue::zero(tag));
            prod = prod * a;
        }
        if (cs_eq(prod, CubicScalar::zero(params, c), tag.tol)) return std::string();
        return "order=" + std::to_string(order);
    }));

    out.push_back(run_law("ring/core-ideal", n, [&](std::uint64_t i) {
        Rng rng(seed ^ (i * 0x9e3779b97f4a7c15ULL + 290));
        const int order = 2 + static_cast<int>(rng.below(2));
        auto params = fresh_params(rng, order);
        const SubsetMask c = (SubsetMask{1} << order) - 1;
        SubsetMask b = 0;
        while (b == 0) b = static_cast<SubsetMask>(rng.below(c + 1)) & c;
        auto ideal = core_ideal_basis(b, c);
        auto in_ideal = [&](SubsetMask m) {
            return std::binary_search(ideal.begin(), ideal.end(), m);
        };
        // ideal property on basis products: e_X * e_A stays in the span.
        for (SubsetMask x = 0; x <= c; ++x)
            for (SubsetMask a : ideal) {
                CubicScalar prod = CubicScalar::basis(params, c, x) *
                                   CubicScalar::basis(params, c, a);
                for (SubsetMask m = c;; m = (m - 1) & c) {
                    if (!prod.coeff(m).is_zero() && !in_ideal(m))
                        return "X=" + subset_name(x) + " A=" + subset_name(a);
                    if (m == 0) break;
                }
            }
        return std::string();
    }));

    return out;
}

std::vector<std::string> suite_names() {
    return {"groupoid", "chain", "interchange", "schwarz", "torsor", "ring", "all", "canary"};
}

// Deliberately false law; exists so scripts can verify the harness turns
// failures into a nonzero exit.
static LawReport canary_suite(const BackendTag& tag, std::uint64_t seed, std::uint64_t n) {
    auto domain = std::make_shared<const DomainSpec>(DomainSpec::full_space(1));
    TangentSampler sampler(domain, tag, seed);
    return run_law("canary/commutativity", n, [&](std::uint64_t i) {
        auto [a, b] = sampler.composable_pair(i);
        Arrow1 ab = t1_compose(a, b);
        if (obj_eq(t1_source(ab), t1_source(a), tag.tol) &&
            vec_eq(ab.x(), a.x(), tag.tol))
            return std::string();
        return "a=(" + vec_str(a.x()) + ") b=(" + vec_str(b.x()) + ")";
    });
}

bool is_suite_name(const std::string& name) {
    auto names = suite_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

namespace {

std::vector<LawReport> suite_groupoid_all(const SuiteConfig& cfg) {
    std::vector<LawReport> out;
    const bool exact = cfg.tag.kind != Backend::Float;
    std::vector<std::pair<std::shared_ptr<const DomainSpec>, std::string>> domains;
    domains.push_back(
        {std::make_shared<const DomainSpec>(DomainSpec::full_space(1)), "full,d=1"});
    domains.push_back(
        {std::make_shared<const DomainSpec>(DomainSpec::full_space(3)), "full,d=3"});
    if (exact) {
        std::vector<Vec> excl1 = {{RingValue::zero(cfg.tag)}};
        domains.push_back({std::make_shared<const DomainSpec>(
                               DomainSpec::finite_complement(1, std::move(excl1))),
                           "punctured,d=1"});
        std::vector<Vec> excl3 = {vec_zero(3, cfg.tag)};
        domains.push_back({std::make_shared<const DomainSpec>(
                               DomainSpec::finite_complement(3, std::move(excl3))),
                           "punctured,d=3"});
    } else {
        domains.push_back({std::make_shared<const DomainSpec>(DomainSpec::half_space_positive(1, 0)),
                           "halfspace,d=1"});
    }
    for (const auto& [domain, label] : domains) {
        auto reports = groupoid_axioms(domain, cfg.tag, cfg.seed, cfg.samples, label);
        out.insert(out.end(), reports.begin(), reports.end());
    }
    out.push_back(anchor_roundtrip(cfg.tag, cfg.seed, cfg.samples));
    out.push_back(anchor_functor(cfg.tag, cfg.seed, cfg.samples));
    out.push_back(rescale_automorphism(cfg.tag, cfg.seed, cfg.samples));
    out.push_back(rescale_composition(cfg.tag, cfg.seed, cfg.samples));
    return out;
}

}  // namespace

std::vector<LawReport> run_suite(const std::string& name, const SuiteConfig& cfg) {
    std::vector<LawReport> out;
    auto append = [&](std::vector<LawReport> v) {
        out.insert(out.end(), std::make_move_iterator(v.begin()),
                   std::make_move_iterator(v.end()));
    };
    if (name == "groupoid" || name == "all") append(suite_groupoid_all(cfg));
    if (name == "chain" || name == "all")
        append(chain_suite(cfg.tag, cfg.seed, 8, cfg.samples));
    if (name == "interchange" || name == "all")
        out.push_back(interchange_suite(cfg.tag, cfg.seed, cfg.samples));
    if (name == "schwarz" || name == "all")
        append(schwarz_suite(cfg.tag, cfg.seed, cfg.samples));
    if (name == "torsor" || name == "all") append(torsor_suite(cfg.tag, cfg.seed, cfg.samples));
    if (name == "ring" || name == "all") {
        append(ring_suite(cfg.tag, cfg.seed, cfg.samples));
        append(additivity_suite(cfg.tag, cfg.seed, cfg.samples));
        out.push_back(mul_slope_literal(cfg.tag, cfg.seed, cfg.samples));
        out.push_back(full_slope_consistency(cfg.tag, cfg.seed, cfg.samples));
        out.push_back(ad_first_order(cfg.tag, cfg.seed, cfg.samples));
        out.push_back(ad_second_order(cfg.tag, cfg.seed, cfg.samples));
    }
    if (name == "canary") out.push_back(canary_suite(cfg.tag, cfg.seed, cfg.samples));
    if (out.empty() && !is_suite_name(name)) throw backend_error("unknown suite: " + name);
    std::stable_sort(out.begin(), out.end(),
                     [](const LawReport& a, const LawReport& b) { return a.law < b.law; });
    return out;
}

}  // namespace liecalc
