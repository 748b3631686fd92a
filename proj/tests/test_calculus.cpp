#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>

#include "liecalc/calculus.hpp"

using namespace liecalc;

namespace {

const BackendTag kQ = BackendTag::rational();
const BackendTag kF = BackendTag::floating();

RingValue q(long n, long d = 1) { return RingValue::rational(n, d); }
RingValue fl(double x) { return RingValue::floating(x); }

std::shared_ptr<const DomainSpec> full(int d) {
    return std::make_shared<const DomainSpec>(DomainSpec::full_space(d));
}

// ---- independent oracle: the slope extension applied to plain functions ----
//
// ext(F) takes a function on m scalars to the function on 2m+1 scalars
// (P, P', s) -> (F(P + s P') - F(P)) / s, divisions done directly. Iterating
// from F = f gives the nested difference quotient with no shared code with
// the library's tower or recursion.

using ScalarFn = std::function<RingValue(const std::vector<RingValue>&)>;

ScalarFn ext(const ScalarFn& f, std::size_t m) {
    return [f, m](const std::vector<RingValue>& args) {
        REQUIRE(args.size() == 2 * m + 1);
        const RingValue& s = args[2 * m];
        auto s_inv = try_invert(s);
        if (!s_inv) throw invert_error("oracle hit a non-unit divisor");
        std::vector<RingValue> shifted(m, q(0)), base(m, q(0));
        for (std::size_t i = 0; i < m; ++i) {
            base[i] = args[i];
            shifted[i] = args[i] + s * args[m + i];
        }
        return (f(shifted) - f(base)) * *s_inv;
    };
}

// Flatten a HyperPoint (d = 1) into the nested (P, P', t_n) tuple layout.
void flatten(const HyperPoint& p, SubsetMask prefix, int n, std::vector<RingValue>& out) {
    if (n == 0) {
        out.push_back(p.w[prefix][0]);
        return;
    }
    flatten(p, prefix, n - 1, out);
    flatten(p, prefix | (SubsetMask{1} << (n - 1)), n - 1, out);
    out.push_back(p.t[prefix | (SubsetMask{1} << (n - 1))]);
}

RingValue oracle_slope_n(const MapFn& f, const HyperPoint& p) {
    ScalarFn fn = [&](const std::vector<RingValue>& args) {
        return map_eval(f, args, kQ)[0];
    };
    std::size_t m = 1;
    for (int level = 1; level <= p.order; ++level) {
        fn = ext(fn, m);
        m = 2 * m + 1;
    }
    std::vector<RingValue> args;
    flatten(p, 0, p.order, args);
    REQUIRE(args.size() == m);
    return fn(args);
}

}  // namespace

TEST_CASE("slope1 worked examples") {
    SUBCASE("multiplication map gives uy + xv + tuv") {
        MapFn m = MapFn::from_text("x1*x2", 2);
        Rng rng(31);
        for (int i = 0; i < 100; ++i) {
            RingValue x = sample_ring(rng.next(), kQ, false), y = sample_ring(rng.next(), kQ, false);
            RingValue u = sample_ring(rng.next(), kQ, false), v = sample_ring(rng.next(), kQ, false);
            RingValue t = (i % 4 == 0) ? q(0) : sample_ring(rng.next(), kQ, true);
            Vec got = slope1(m, {x, y}, {u, v}, t);
            CHECK(ring_eq(got[0], u * y + x * v + t * u * v));
        }
    }
    SUBCASE("x^2 at (3, 1, 0) differentiates to 6") {
        MapFn f = MapFn::from_text("x1^2", 1);
        // oracle: symbolic derivative 2x at 3
        ExprPtr d = diff_symbolic(f.expr().comps[0], 0);
        RingValue want = eval_scalar(*d, {q(3)}, kQ);
        CHECK(ring_eq(want, q(6)));
        CHECK(ring_eq(slope1(f, {q(3)}, {q(1)}, q(0))[0], want));
    }
    SUBCASE("linear maps have constant slope f(v)") {
        MapFn f = MapFn::from_text("x1", 1);
        CHECK(ring_eq(slope1(f, {q(5)}, {q(2)}, q(9))[0], q(2)));
        CHECK(ring_eq(slope1(f, {q(5)}, {q(2)}, q(0))[0], q(2)));
    }
    SUBCASE("membership is enforced") {
        std::vector<Vec> excl = {{q(0)}};
        auto dom = std::make_shared<const DomainSpec>(DomainSpec::finite_complement(1, excl));
        MapFn f = MapFn::from_text("x1^2", 1, dom);
        CHECK_THROWS_AS(slope1(f, {q(1)}, {q(-1)}, q(1)), domain_error);
    }
}

TEST_CASE("tangent map") {
    MapFn id = MapFn::from_text("x1", 1);
    auto [x, v] = tangent_map_t(id, q(7), {q(2)}, {q(3)});
    CHECK(ring_eq(x[0], q(2)));
    CHECK(ring_eq(v[0], q(3)));

    SUBCASE("anchor conjugation at unit t") {
        MapFn f = MapFn::from_text("x1^3-2*x1", 1);
        Rng rng(32);
        for (int i = 0; i < 50; ++i) {
            RingValue xx = sample_ring(rng.next(), kQ, false);
            RingValue vv = sample_ring(rng.next(), kQ, false);
            RingValue t = sample_ring(rng.next(), kQ, true);
            auto [fx, fs] = tangent_map_t(f, t, {xx}, {vv});
            // anchor image must be (f(x), f(x+tv))
            Vec target = vec_add(fx, vec_scale(t, fs));
            Vec want = map_eval(f, {xx + t * vv}, kQ);
            CHECK(ring_eq(target[0], want[0]));
        }
    }
}

TEST_CASE("extended domain membership") {
    SUBCASE("full space always contains") {
        HyperPoint p = make_hyper(1, {{q(1)}, {q(2)}}, {q(1), q(5)}, full(1));
        CHECK(extended_contains(*full(1), p));
    }
    SUBCASE("puncture at the shifted point") {
        std::vector<Vec> excl = {{q(0)}};
        DomainSpec u = DomainSpec::finite_complement(1, excl);
        auto dom = std::make_shared<const DomainSpec>(u);
        HyperPoint p = make_hyper(1, {{q(1)}, {q(-1)}}, {q(1), q(1)}, dom);
        CHECK(!extended_contains(u, p));
        HyperPoint ok = make_hyper(1, {{q(1)}, {q(1)}}, {q(1), q(1)}, dom);
        CHECK(extended_contains(u, ok));
    }
    SUBCASE("order 2 reproduces the four displayed conditions") {
        std::vector<Vec> excl = {{q(6)}};
        DomainSpec u = DomainSpec::finite_complement(1, excl);
        auto dom = std::make_shared<const DomainSpec>(u);
        // v0=1, v1=2, v2=3, v12=0, t1=1, t2=1, t12=0:
        // checks 1, 1+2=3, 1+3=4, 1+3+(1+0)(2+0)=6 -> excluded
        HyperPoint p = make_hyper(2, {{q(1)}, {q(2)}, {q(3)}, {q(0)}},
                                  {q(1), q(1), q(1), q(0)}, dom);
        CHECK(!extended_contains(u, p));
        HyperPoint p2 = make_hyper(2, {{q(1)}, {q(2)}, {q(3)}, {q(1)}},
                                   {q(1), q(1), q(1), q(0)}, dom);
        CHECK(extended_contains(u, p2));
    }
    SUBCASE("naked point: dimension zero is always inside") {
        HyperPoint p = make_hyper(1, {{}, {}}, {q(1), q(7)}, full(0));
        CHECK(extended_contains(*full(0), p));
    }
}

TEST_CASE("order-2 slope: worked example and all routes agree") {
    MapFn f = MapFn::from_text("x1^2", 1);
    SUBCASE("frozen example value 1") {
        // oracle by the recursion: f^[1](x,v,t) = 2xv + t v^2;
        // second quotient at ((0,1,1),(0,0,1),1):
        //   [f^[1]((0,1,1)+1*(0,0,1)) - f^[1](0,1,1)] / 1 = [f^[1](0,1,2) - f^[1](0,1,1)]
        //   = (2*0*1 + 2*1) - (2*0*1 + 1*1) = 1
        HyperPoint p = make_hyper(2, {{q(0)}, {q(1)}, {q(0)}, {q(0)}},
                                  {q(1), q(1), q(1), q(1)}, full(1));
        CHECK(ring_eq(slope2_full(f, p)[0], q(1)));
        CHECK(ring_eq(slope2_full_closed(f, p)[0], q(1)));
        CHECK(ring_eq(slope_n_recursive(f, p)[0], q(1)));
        CHECK(ring_eq(oracle_slope_n(f, p), q(1)));
    }
    SUBCASE("zero directions give zero slope") {
        HyperPoint p = make_hyper(2, {{q(5)}, {q(0)}, {q(0)}, {q(0)}},
                                  {q(1), q(2), q(3), q(4)}, full(1));
        CHECK(ring_eq(slope2_full(f, p)[0], q(0)));
    }
    SUBCASE("closed formula = recursion = tower = oracle on random units") {
        Rng rng(33);
        int done = 0;
        while (done < 60) {
            ExprVec fe;
            fe.arity = 1;
            fe.comps.push_back(sample_bounded_poly(rng, 1, 4));
            MapFn g = MapFn::from_expr(fe);
            HyperPoint p = sample_hyper(rng, 2, 1, kQ, full(1), true);
            if (!try_invert(p.t[1] + p.t[2] * p.t[3])) continue;
            RingValue closed = slope2_full_closed(g, p)[0];
            CHECK(ring_eq(closed, slope_n_recursive(g, p)[0]));
            CHECK(ring_eq(closed, slope2_full(g, p)[0]));
            CHECK(ring_eq(closed, oracle_slope_n(g, p)));
            ++done;
        }
    }
    SUBCASE("tower handles parameters the quotients cannot") {
        // t1 = t2 = 0, t12 = 1: no difference quotient exists; the tower
        // value is the polynomial continuation. By hand for f = x^2 at
        // X = 3 + e1 + 5 e2 + 7 e12 with e1^2 = e2 e1, e2^2 = 0:
        // e12-coefficient of X^2 = 2*3*7 + 2*1*5 + 1*1 = 53.
        HyperPoint p = make_hyper(2, {{q(3)}, {q(1)}, {q(5)}, {q(7)}},
                                  {q(1), q(0), q(0), q(1)}, full(1));
        Vec got = slope2_full(f, p);
        CHECK(ring_eq(got[0], q(53)));
    }
}

TEST_CASE("order-3 slope: tower = recursion = oracle") {
    Rng rng(34);
    int done = 0;
    while (done < 25) {
        ExprVec fe;
        fe.arity = 1;
        fe.comps.push_back(sample_bounded_poly(rng, 1, 3));
        MapFn g = MapFn::from_expr(fe);
        HyperPoint p = sample_hyper(rng, 3, 1, kQ, full(1), true);
        RingValue want;
        try {
            want = oracle_slope_n(g, p);
        } catch (const invert_error&) {
            continue;  // a shifted parameter combination was not a unit
        }
        CHECK(ring_eq(slope_n_full(g, p)[0], want));
        CHECK(ring_eq(slope_n_recursive(g, p)[0], want));
        ++done;
    }
    SUBCASE("constants have zero slope at every order") {
        MapFn c = MapFn::from_text("5", 1);
        Rng rng2(35);
        for (int order = 1; order <= 3; ++order) {
            HyperPoint p = sample_hyper(rng2, order, 1, kQ, full(1), true);
            CHECK(ring_eq(slope_n_full(c, p)[0], q(0)));
        }
    }
}

TEST_CASE("multi-coordinate maps in the full slope") {
    MapFn f = MapFn::from_text("x1*x2; x1+x2^2", 2);
    Rng rng(46);
    int done = 0;
    while (done < 15) {
        HyperPoint p = sample_hyper(rng, 2, 2, kQ, full(2), true);
        Vec tower, rec;
        try {
            rec = slope_n_recursive(f, p);
            tower = slope2_full(f, p);
        } catch (const invert_error&) {
            continue;
        }
        REQUIRE(tower.size() == 2);
        CHECK(vec_eq(tower, rec));
        ++done;
    }
}

TEST_CASE("rational functions in the full slope") {
    MapFn f = MapFn::from_text("1/x1", 1);
    SUBCASE("all-zero parameters see the Taylor coefficients") {
        // e12-coefficient at (x,1,1,0) with t = 0 is f''(x); for 1/x at 2: 1/4
        HyperPoint p = make_hyper(2, {{q(2)}, {q(1)}, {q(1)}, {q(0)}},
                                  {q(1), q(0), q(0), q(0)}, full(1));
        CHECK(ring_eq(slope2_full(f, p)[0], q(1, 4)));
    }
    SUBCASE("tower inversion agrees with the quotient recursion") {
        Rng rng(45);
        int done = 0;
        while (done < 20) {
            HyperPoint p = sample_hyper(rng, 2, 1, kQ, full(1), true);
            RingValue got, want;
            try {
                want = slope_n_recursive(f, p)[0];
                got = slope2_full(f, p)[0];
            } catch (const invert_error&) {
                continue;  // an evaluation point hit the pole
            }
            CHECK(ring_eq(got, want));
            ++done;
        }
    }
}

TEST_CASE("order 4 is the cap") {
    MapFn f = MapFn::from_text("x1^2", 1);
    Rng rng(44);
    int done = 0;
    while (done < 5) {
        HyperPoint p = sample_hyper(rng, 4, 1, kQ, full(1), true);
        try {
            CHECK(ring_eq(slope_n_full(f, p)[0], slope_n_recursive(f, p)[0]));
        } catch (const invert_error&) {
            continue;
        }
        ++done;
    }
    HyperPoint p5 = sample_hyper(rng, 5, 1, kQ, full(1), true);
    CHECK_THROWS_AS(slope_n_full(f, p5), backend_error);
}

TEST_CASE("symmetric slope") {
    MapFn f = MapFn::from_text("x1^2", 1);
    SUBCASE("x^2 with unit steps sees the second derivative") {
        SymPoint sp;
        sp.order = 2;
        sp.base = {q(0)};
        sp.u = {{q(0)}, {q(1)}, {q(1)}, {q(0)}};
        sp.t = {q(3), q(5)};
        sp.domain = full(1);
        CHECK(ring_eq(slope2_sym(f, sp)[0], q(2)));
        sp.t = {q(1, 7), q(-2)};
        CHECK(ring_eq(slope2_sym(f, sp)[0], q(2)));
    }
    SUBCASE("linear map with v12 = 0 gives zero") {
        MapFn lin = MapFn::from_text("3*x1", 1);
        SymPoint sp;
        sp.order = 2;
        sp.base = {q(4)};
        sp.u = {{q(0)}, {q(2)}, {q(5)}, {q(0)}};
        sp.t = {q(1), q(1)};
        sp.domain = full(1);
        CHECK(ring_eq(slope2_sym(lin, sp)[0], q(0)));
    }
    SUBCASE("non-unit t is rejected on the direct path") {
        SymPoint sp;
        sp.order = 2;
        sp.base = {q(0)};
        sp.u = {{q(0)}, {q(1)}, {q(1)}, {q(0)}};
        sp.t = {q(0), q(1)};
        sp.domain = full(1);
        CHECK_THROWS_AS(slope2_sym(f, sp), invert_error);
    }
}

TEST_CASE("lift_sym") {
    SUBCASE("x^2 over the order-1 ring") {
        Rng rng(36);
        for (int i = 0; i < 40; ++i) {
            RingValue t = sample_ring(rng.next(), kQ, false);
            RingValue a = sample_ring(rng.next(), kQ, false);
            RingValue b = sample_ring(rng.next(), kQ, false);
            auto params = CubicParams::make(1, {t}, kQ);
            MapFn f = MapFn::from_text("x1^2", 1);
            auto out = lift_sym(f, {CubicScalar::from_coeffs(params, 1, {a, b})}, params);
            CHECK(ring_eq(out[0].coeff(0), a * a));
            CHECK(ring_eq(out[0].coeff(1), q(2) * a * b + t * b * b));
        }
    }
    SUBCASE("identity map is the identity") {
        auto params = CubicParams::make(2, {q(1), q(0)}, kQ);
        Rng rng(37);
        CubicScalar a = sample_cubic(rng, params, 3);
        MapFn id = MapFn::from_text("x1", 1);
        CHECK(cs_eq(lift_sym(id, {a}, params)[0], a));
    }
    SUBCASE("exp over floats at t=1 is the anchor route") {
        auto params = CubicParams::make(1, {fl(1.0)}, kF);
        const double x = 0.3, v = 0.9;
        MapFn e = MapFn::native(NativeKind::Exp, 1);
        auto out = lift_sym(e, {CubicScalar::from_coeffs(params, 1, {fl(x), fl(v)})}, params);
        CHECK(ring_eq(out[0].coeff(0), fl(std::exp(x)), 1e-12));
        CHECK(ring_eq(out[0].coeff(1), fl(std::exp(x + v) - std::exp(x)), 1e-12));
    }
    SUBCASE("x^3 jet at order 2 exposes the second derivative") {
        auto params = CubicParams::make(2, {q(0), q(0)}, kQ);
        MapFn f = MapFn::from_text("x1^3", 1);
        Rng rng(38);
        for (int i = 0; i < 20; ++i) {
            RingValue x = sample_ring(rng.next(), kQ, false);
            CubicScalar in = CubicScalar::from_coeffs(params, 3, {x, q(1), q(1), q(0)});
            auto out = lift_sym(f, {in}, params);
            // d^2/dx^2 (x^3) = 6x by the symbolic oracle
            ExprPtr d2 = diff_symbolic(diff_symbolic(f.expr().comps[0], 0), 0);
            CHECK(ring_eq(out[0].coeff(3), eval_scalar(*d2, {x}, kQ)));
            CHECK(ring_eq(out[0].coeff(3), q(6) * x));
        }
    }
    SUBCASE("cubic route equals anchor route for all-unit parameters") {
        Rng rng(39);
        for (int i = 0; i < 30; ++i) {
            auto params = CubicParams::make(
                2, {sample_ring(rng.next(), kQ, true), sample_ring(rng.next(), kQ, true)}, kQ);
            ExprVec fe;
            fe.arity = 2;
            fe.comps.push_back(sample_poly_expr(rng, 2, 3));
            MapFn f = MapFn::from_expr(fe);
            std::vector<CubicScalar> in = {sample_cubic(rng, params, 3),
                                           sample_cubic(rng, params, 3)};
            auto direct = lift_sym(f, in, params);
            auto anchored = lift_via_anchor(f, in, params);
            CHECK(cs_eq(direct[0], anchored[0]));
        }
    }
    SUBCASE("source/target equivariance (functoriality along edges)") {
        Rng rng(40);
        for (int i = 0; i < 30; ++i) {
            auto params = CubicParams::make(
                2, {sample_ring(rng.next(), kQ, false), sample_ring(rng.next(), kQ, false)}, kQ);
            ExprVec fe;
            fe.arity = 1;
            fe.comps.push_back(sample_poly_expr(rng, 1, 3));
            MapFn f = MapFn::from_expr(fe);
            CubicScalar in = sample_cubic(rng, params, 3);
            auto lifted = lift_sym(f, {in}, params);
            for (int k = 1; k <= 2; ++k) {
                CHECK(cs_eq(cs_source(lifted[0], k), lift_sym(f, {cs_source(in, k)}, params)[0]));
                CHECK(cs_eq(cs_target(lifted[0], k), lift_sym(f, {cs_target(in, k)}, params)[0]));
            }
        }
    }
    SUBCASE("native lift with mixed unit/zero directions") {
        // t1 = 1 (character split), t2 = 0 (jet): hand-derived coefficients
        // for exp at x + u e1 + v e2 + w e12:
        //   {}: exp(x)            {1}: exp(x+u) - exp(x)
        //   {2}: v exp(x)         {12}: (v+w) exp(x+u) - v exp(x)
        auto params = CubicParams::make(2, {fl(1.0), fl(0.0)}, kF);
        const double x = 0.2, u = 0.5, v = -0.4, w = 0.7;
        CubicScalar in = CubicScalar::from_coeffs(params, 3, {fl(x), fl(u), fl(v), fl(w)});
        MapFn e = MapFn::native(NativeKind::Exp, 1);
        auto out = lift_sym(e, {in}, params);
        CHECK(ring_eq(out[0].coeff(0), fl(std::exp(x)), 1e-12));
        CHECK(ring_eq(out[0].coeff(1), fl(std::exp(x + u) - std::exp(x)), 1e-12));
        CHECK(ring_eq(out[0].coeff(2), fl(v * std::exp(x)), 1e-12));
        CHECK(ring_eq(out[0].coeff(3), fl((v + w) * std::exp(x + u) - v * std::exp(x)), 1e-12));
    }
}

TEST_CASE("lift coefficients are the symmetric slopes") {
    // Over K_(t1,t2) with unit parameters, the e1- and e12-coefficients of
    // the lift at x + e1 u1 + e2 u2 + e12 u12 are the first and second
    // symmetric difference quotients; two routes to the same numbers.
    Rng rng(47);
    for (int i = 0; i < 40; ++i) {
        ExprVec fe;
        fe.arity = 1;
        fe.comps.push_back(sample_poly_expr(rng, 1, 3));
        MapFn f = MapFn::from_expr(fe);
        RingValue t1 = sample_ring(rng.next(), kQ, true);
        RingValue t2 = sample_ring(rng.next(), kQ, true);
        auto params = CubicParams::make(2, {t1, t2}, kQ);
        RingValue x = sample_ring(rng.next(), kQ, false);
        RingValue u1 = sample_ring(rng.next(), kQ, false);
        RingValue u2 = sample_ring(rng.next(), kQ, false);
        RingValue u12 = sample_ring(rng.next(), kQ, false);
        CubicScalar in = CubicScalar::from_coeffs(params, 3, {x, u1, u2, u12});
        CubicScalar out = lift_sym(f, {in}, params)[0];

        CHECK(ring_eq(out.coeff(0), map_eval(f, {x}, kQ)[0]));
        CHECK(ring_eq(out.coeff(1), slope1(f, {x}, {u1}, t1)[0]));
        CHECK(ring_eq(out.coeff(2), slope1(f, {x}, {u2}, t2)[0]));

        SymPoint q;
        q.order = 2;
        q.base = {x};
        q.u = {{RingValue::zero(kQ)}, {u1}, {u2}, {u12}};
        q.t = {t1, t2};
        q.domain = f.domain;
        CHECK(ring_eq(out.coeff(3), slope2_sym(f, q)[0]));
    }
}

TEST_CASE("slope1 coherence with the lift") {
    Rng rng(41);
    for (int i = 0; i < 40; ++i) {
        ExprVec fe;
        fe.arity = 1;
        fe.comps.push_back(sample_poly_expr(rng, 1, 3));
        MapFn f = MapFn::from_expr(fe);
        RingValue t = (i % 3 == 0) ? q(0) : sample_ring(rng.next(), kQ, true);
        RingValue x = sample_ring(rng.next(), kQ, false);
        RingValue v = sample_ring(rng.next(), kQ, false);
        auto params = CubicParams::make(1, {t}, kQ);
        auto out = lift_sym(f, {CubicScalar::from_coeffs(params, 1, {x, v})}, params);
        CHECK(ring_eq(out[0].coeff(0), map_eval(f, {x}, kQ)[0]));
        CHECK(ring_eq(out[0].coeff(1), slope1(f, {x}, {v}, t)[0]));
    }
}

TEST_CASE("float natives in higher slopes") {
    MapFn e = MapFn::native(NativeKind::Exp, 1);
    SUBCASE("unit parameters run through nested quotients") {
        HyperPoint p = make_hyper(2, {{fl(0.1)}, {fl(0.3)}, {fl(-0.2)}, {fl(0.4)}},
                                  {fl(1), fl(0.5), fl(0.25), fl(0.125)}, full(1));
        Vec got = slope_n_full(e, p);
        // direct nested quotient with plain doubles
        auto f1 = [](double x, double v, double t) {
            return (std::exp(x + t * v) - std::exp(x)) / t;
        };
        const double t1 = 0.5, t2 = 0.25, t12 = 0.125;
        double want = (f1(0.1 + t2 * -0.2, 0.3 + t2 * 0.4, t1 + t2 * t12) - f1(0.1, 0.3, t1)) / t2;
        CHECK(ring_eq(got[0], fl(want), 1e-10));
    }
    SUBCASE("zero outer parameter is rejected for natives") {
        HyperPoint p = make_hyper(2, {{fl(0.1)}, {fl(0.3)}, {fl(-0.2)}, {fl(0.4)}},
                                  {fl(1), fl(0.5), fl(0.0), fl(0.125)}, full(1));
        CHECK_THROWS_AS(slope_n_full(e, p), invert_error);
    }
    SUBCASE("zero inner parameter takes the jet path") {
        HyperPoint p = make_hyper(2, {{fl(0.1)}, {fl(0.3)}, {fl(-0.2)}, {fl(0.4)}},
                                  {fl(1), fl(0.0), fl(0.25), fl(0.125)}, full(1));
        Vec got = slope_n_full(e, p);
        CHECK(std::isfinite(got[0].flt()));
    }
}

TEST_CASE("limit estimation") {
    SUBCASE("exp at 0 extrapolates to 1") {
        MapFn e = MapFn::native(NativeKind::Exp, 1);
        ConvergenceTable t = estimate_limit_slope(e, {fl(0)}, {fl(1)}, 1.0, 10);
        REQUIRE(t.rows.size() == 11);
        CHECK(std::abs(t.limit[0] - 1.0) < 1e-6);
    }
    SUBCASE("linear maps have a constant slope column") {
        MapFn lin = MapFn::from_text("3*x1", 1);
        ConvergenceTable t = estimate_limit_slope(lin, {fl(2)}, {fl(1)}, 1.0, 6);
        for (const auto& row : t.rows) CHECK(std::abs(row.slope[0] - 3.0) < 1e-12);
    }
    SUBCASE("x^2 at 3 gives slope 6 + t exactly") {
        MapFn f = MapFn::from_text("x1^2", 1);
        ConvergenceTable t = estimate_limit_slope(f, {fl(3)}, {fl(1)}, 1.0, 8);
        for (const auto& row : t.rows)
            CHECK(std::abs(row.slope[0] - (6.0 + row.t)) < 1e-9);
    }
    SUBCASE("csv shape") {
        MapFn f = MapFn::from_text("x1; x1^2", 1);
        ConvergenceTable t = estimate_limit_slope(f, {fl(1)}, {fl(1)}, 1.0, 2);
        std::string csv = t.csv();
        CHECK(csv.rfind("t,slope_0,slope_1,richardson_err\n", 0) == 0);
        int lines = 0;
        for (char c : csv)
            if (c == '\n') ++lines;
        CHECK(lines == 4);
    }
    SUBCASE("probe leaving the domain is an error") {
        auto dom = std::make_shared<const DomainSpec>(DomainSpec::half_space_positive(1, 0));
        MapFn f = MapFn::from_text("x1^2", 1, dom);
        CHECK_THROWS_AS(estimate_limit_slope(f, {fl(0.5)}, {fl(-1)}, 1.0, 4), domain_error);
    }
}

TEST_CASE("chain rule and schwarz law checks come back clean") {
    MapFn f = MapFn::from_text("x1^2+1", 1);
    MapFn g = MapFn::from_text("x1+1", 1);
    LawReport r = check_chain_rule(f, g, kQ, 5, 300);
    INFO(r.counterexample);
    CHECK(r.failures == 0);

    MapFn gid = MapFn::from_text("x1", 1);
    CHECK(check_chain_rule(f, gid, kQ, 6, 100).failures == 0);

    MapFn poly = MapFn::from_text("x1^3-2*x1^2+x1", 1);
    for (const auto& rep : check_schwarz(poly, kQ, 7, 150)) {
        INFO(rep.law, ": ", rep.counterexample);
        CHECK(rep.failures == 0);
    }
}

TEST_CASE("prime field backend satisfies the same slope identities") {
    BackendTag fp = BackendTag::prime_field(101);
    MapFn f = MapFn::from_text("x1^3+2*x1", 1);
    Rng rng(43);
    for (int i = 0; i < 60; ++i) {
        RingValue x = sample_ring(rng.next(), fp, false);
        RingValue v = sample_ring(rng.next(), fp, false);
        RingValue v2 = sample_ring(rng.next(), fp, false);
        RingValue t = (i % 4 == 0) ? RingValue::prime(0, 101) : sample_ring(rng.next(), fp, true);
        Vec lhs = slope1(f, {x}, {v + v2}, t);
        Vec rhs = vec_add(slope1(f, {x}, {v}, t), slope1(f, {x + t * v}, {v2}, t));
        CHECK(ring_eq(lhs[0], rhs[0]));
    }
}
