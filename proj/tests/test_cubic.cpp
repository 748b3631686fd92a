#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "liecalc/cubic.hpp"
#include "liecalc/jsonio.hpp"

using namespace liecalc;

namespace {

const BackendTag kQ = BackendTag::rational();

RingValue q(long n, long d = 1) { return RingValue::rational(n, d); }

CubicParamsPtr params1(const RingValue& t1) { return CubicParams::make(1, {t1}, kQ); }
CubicParamsPtr params2(const RingValue& t1, const RingValue& t2) {
    return CubicParams::make(2, {t1, t2}, kQ);
}

}  // namespace

TEST_CASE("mask rank/expand round-trip") {
    const SubsetMask carrier = 0b1011;
    for (std::uint32_t r = 0; r < 8; ++r) {
        SubsetMask m = mask_expand(carrier, r);
        CHECK((m & ~carrier) == 0);
        CHECK(mask_rank(carrier, m) == r);
    }
}

TEST_CASE("multiplication relations") {
    SUBCASE("e1*e1 = t e1 at t=3") {
        auto p = params1(q(3));
        CubicScalar e1 = CubicScalar::basis(p, 1, 1);
        CubicScalar want = CubicScalar::zero(p, 1).with_coeff(1, q(3));
        CHECK(cs_eq(e1 * e1, want));
    }
    SUBCASE("(x+ue)(y+ve) = xy + (uy+xv+tuv)e") {
        Rng rng(7);
        for (int i = 0; i < 50; ++i) {
            RingValue t = sample_ring(rng.next(), kQ, false);
            RingValue x = sample_ring(rng.next(), kQ, false), u = sample_ring(rng.next(), kQ, false);
            RingValue y = sample_ring(rng.next(), kQ, false), v = sample_ring(rng.next(), kQ, false);
            auto p = params1(t);
            CubicScalar a = CubicScalar::from_coeffs(p, 1, {x, u});
            CubicScalar b = CubicScalar::from_coeffs(p, 1, {y, v});
            CubicScalar want =
                CubicScalar::from_coeffs(p, 1, {x * y, u * y + x * v + t * u * v});
            CHECK(cs_eq(a * b, want));
        }
    }
    SUBCASE("e1*e2 = e12 and e12^2 = t1 t2 e12") {
        auto p = params2(q(5), q(7));
        CubicScalar e1 = CubicScalar::basis(p, 3, 1);
        CubicScalar e2 = CubicScalar::basis(p, 3, 2);
        CubicScalar e12 = CubicScalar::basis(p, 3, 3);
        CHECK(cs_eq(e1 * e2, e12));
        CHECK(cs_eq(e12 * e12, CubicScalar::zero(p, 3).with_coeff(3, q(35))));
    }
    SUBCASE("dual numbers at t=0") {
        auto p = params1(q(0));
        CubicScalar e1 = CubicScalar::basis(p, 1, 1);
        CHECK(cs_eq(e1 * e1, CubicScalar::zero(p, 1)));
    }
}

TEST_CASE("addition is componentwise with identity") {
    auto p = params1(q(1));
    CubicScalar a = CubicScalar::from_coeffs(p, 1, {q(1), q(2)});
    CubicScalar b = CubicScalar::from_coeffs(p, 1, {q(3), q(4)});
    CHECK(cs_eq(a + b, CubicScalar::from_coeffs(p, 1, {q(4), q(6)})));
    CHECK(cs_eq(a + CubicScalar::zero(p, 1), a));
}

TEST_CASE("edge source and target") {
    SUBCASE("alpha drops the direction, beta convolves with t_k") {
        auto p = params1(q(6));
        CubicScalar a = CubicScalar::from_coeffs(p, 1, {q(10), q(2)});
        CHECK(cs_eq(cs_source(a, 1), CubicScalar::constant(p, 0, q(10))));
        CHECK(cs_eq(cs_target(a, 1), CubicScalar::constant(p, 0, q(22))));
    }
    SUBCASE("alpha = beta at t=0") {
        auto p = params1(q(0));
        CubicScalar a = CubicScalar::from_coeffs(p, 1, {q(10), q(2)});
        CHECK(cs_eq(cs_source(a, 1), cs_target(a, 1)));
    }
    SUBCASE("worked n=2 target in direction 2 with t2=1") {
        auto p = params2(q(9), q(1));
        CubicScalar a = CubicScalar::from_coeffs(p, 3, {q(1), q(2), q(3), q(4)});
        // v'_A = v_A + t2 v_{A u {2}} by hand: v'_{} = 1+3, v'_{1} = 2+4
        CubicScalar want = CubicScalar::from_coeffs(p, 1, {q(4), q(6)});
        CHECK(cs_eq(cs_target(a, 2), want));
        CubicScalar want_a = CubicScalar::from_coeffs(p, 1, {q(1), q(2)});
        CHECK(cs_eq(cs_source(a, 2), want_a));
    }
    SUBCASE("unit embedding is a section of both") {
        Rng rng(3);
        auto p = params2(q(2), q(0));
        CubicScalar b = sample_cubic(rng, p, 1);
        CHECK(cs_eq(cs_source(cs_unit_embed(b, 2), 2), b));
        CHECK(cs_eq(cs_target(cs_unit_embed(b, 2), 2), b));
    }
}

TEST_CASE("flip") {
    auto p = params2(q(5), q(7));
    SUBCASE("transposition renames basis and permutes t") {
        CubicScalar e1 = CubicScalar::basis(p, 3, 1);
        CubicScalar out = cs_flip(e1, {2, 1});
        CHECK(ring_eq(out.coeff(2), q(1)));
        CHECK(ring_eq(out.params()->t[0], q(7)));
        CHECK(ring_eq(out.params()->t[1], q(5)));
    }
    SUBCASE("identity permutation is identity") {
        Rng rng(11);
        CubicScalar a = sample_cubic(rng, p, 3);
        CHECK(cs_eq(cs_flip(a, {1, 2}), a));
    }
    SUBCASE("flip is a ring morphism onto the permuted ring") {
        Rng rng(12);
        for (int i = 0; i < 40; ++i) {
            CubicScalar a = sample_cubic(rng, p, 3);
            CubicScalar b = sample_cubic(rng, p, 3);
            CHECK(cs_eq(cs_flip(a * b, {2, 1}), cs_flip(a, {2, 1}) * cs_flip(b, {2, 1})));
        }
    }
    SUBCASE("malformed permutations are rejected") {
        CubicScalar e1 = CubicScalar::basis(p, 3, 1);
        CHECK_THROWS_AS(cs_flip(e1, {1, 1}), backend_error);
        CHECK_THROWS_AS(cs_flip(e1, {1}), backend_error);
    }
}

TEST_CASE("rescale") {
    SUBCASE("s = 1 is the identity") {
        auto p = params1(q(2));
        Rng rng(5);
        CubicScalar a = sample_cubic(rng, p, 1);
        CHECK(cs_eq(cs_rescale(a, {q(1)}), a));
    }
    SUBCASE("t=2 with s=2 lands at t=1 with doubled direction coefficient") {
        auto p = params1(q(2));
        CubicScalar a = CubicScalar::from_coeffs(p, 1, {q(10), q(3)});
        CubicScalar out = cs_rescale(a, {q(2)});
        CHECK(ring_eq(out.params()->t[0], q(1)));
        CHECK(ring_eq(out.coeff(0), q(10)));
        CHECK(ring_eq(out.coeff(1), q(6)));
    }
    SUBCASE("composition law") {
        auto p = params2(q(2), q(0));
        Rng rng(6);
        for (int i = 0; i < 30; ++i) {
            CubicScalar a = sample_cubic(rng, p, 3);
            RingValue s1 = sample_ring(rng.next(), kQ, true);
            RingValue s2 = sample_ring(rng.next(), kQ, true);
            RingValue u1 = sample_ring(rng.next(), kQ, true);
            RingValue u2 = sample_ring(rng.next(), kQ, true);
            CHECK(cs_eq(cs_rescale(a, {s1 * u1, s2 * u2}),
                        cs_rescale(cs_rescale(a, {u1, u2}), {s1, s2})));
        }
    }
    SUBCASE("non-units are rejected") {
        auto p = params1(q(2));
        CubicScalar a = CubicScalar::one(p, 1);
        CHECK_THROWS_AS(cs_rescale(a, {q(0)}), invert_error);
    }
}

TEST_CASE("anchor splitting") {
    SUBCASE("t=1 order 1 gives (x, x+v)") {
        auto p = params1(q(1));
        CubicScalar a = CubicScalar::from_coeffs(p, 1, {q(4), q(9)});
        auto chi = cs_anchor_split(a);
        CHECK(ring_eq(chi[0], q(4)));
        CHECK(ring_eq(chi[1], q(13)));
    }
    SUBCASE("worked t=2, x=1, v=3 gives (1, 7)") {
        auto p = params1(q(2));
        auto chi = cs_anchor_split(CubicScalar::from_coeffs(p, 1, {q(1), q(3)}));
        CHECK(ring_eq(chi[0], q(1)));
        CHECK(ring_eq(chi[1], q(7)));
    }
    SUBCASE("constants are diagonal") {
        auto p = params2(q(2), q(3));
        auto chi = cs_anchor_split(CubicScalar::constant(p, 3, q(5)));
        for (const auto& c : chi) CHECK(ring_eq(c, q(5)));
    }
    SUBCASE("unsplit matches (x, z) -> ((z-x)/t) e + x") {
        auto p = params1(q(2));
        CubicScalar a = cs_anchor_unsplit({q(1), q(7)}, p, 1);
        CHECK(ring_eq(a.coeff(0), q(1)));
        CHECK(ring_eq(a.coeff(1), q(3)));
    }
    SUBCASE("round-trip on random order-2 input") {
        Rng rng(8);
        for (int i = 0; i < 40; ++i) {
            auto p = params2(sample_ring(rng.next(), kQ, true), sample_ring(rng.next(), kQ, true));
            CubicScalar a = sample_cubic(rng, p, 3);
            CHECK(cs_eq(cs_anchor_unsplit(cs_anchor_split(a), p, 3), a));
            auto vals = cs_anchor_split(a);
            auto back = cs_anchor_split(cs_anchor_unsplit(vals, p, 3));
            for (std::size_t s = 0; s < vals.size(); ++s) CHECK(ring_eq(vals[s], back[s]));
        }
    }
    SUBCASE("characters are multiplicative for every t, including zeros") {
        Rng rng(9);
        for (int i = 0; i < 40; ++i) {
            RingValue t1 = (i % 2 == 0) ? q(0) : sample_ring(rng.next(), kQ, true);
            RingValue t2 = (i % 3 == 0) ? q(0) : sample_ring(rng.next(), kQ, true);
            auto p = params2(t1, t2);
            CubicScalar a = sample_cubic(rng, p, 3);
            CubicScalar b = sample_cubic(rng, p, 3);
            auto xa = cs_anchor_split(a), xb = cs_anchor_split(b), xab = cs_anchor_split(a * b);
            for (std::size_t s = 0; s < xa.size(); ++s) CHECK(ring_eq(xab[s], xa[s] * xb[s]));
        }
    }
    SUBCASE("unsplit needs unit parameters") {
        auto p = params1(q(0));
        CHECK_THROWS_AS(cs_anchor_unsplit({q(1), q(2)}, p, 1), invert_error);
    }
}

TEST_CASE("inversion in the cubic ring") {
    Rng rng(10);
    SUBCASE("mixed zero/unit parameters") {
        int inverted = 0;
        for (int i = 0; i < 60; ++i) {
            RingValue t1 = (i % 2 == 0) ? q(0) : sample_ring(rng.next(), kQ, true);
            RingValue t2 = (i % 3 == 0) ? q(0) : sample_ring(rng.next(), kQ, true);
            auto p = params2(t1, t2);
            CubicScalar a = sample_cubic(rng, p, 3);
            auto inv = cs_try_invert(a);
            if (inv) {
                ++inverted;
                CHECK(cs_eq(a * *inv, CubicScalar::one(p, 3)));
            }
        }
        CHECK(inverted > 20);
    }
    SUBCASE("a unit with nilpotent part inverts by geometric series") {
        auto p = params2(q(0), q(0));
        CubicScalar a = CubicScalar::from_coeffs(p, 3, {q(2), q(5), q(-1), q(7)});
        auto inv = cs_try_invert(a);
        REQUIRE(inv.has_value());
        CHECK(cs_eq(a * *inv, CubicScalar::one(p, 3)));
    }
    SUBCASE("zero constant term with zero t is not invertible") {
        auto p = params1(q(0));
        CHECK(!cs_try_invert(CubicScalar::basis(p, 1, 1)).has_value());
    }
}

TEST_CASE("weil nilpotency at t = 0") {
    Rng rng(13);
    for (int order = 1; order <= 4; ++order) {
        std::vector<RingValue> t(static_cast<std::size_t>(order), q(0));
        auto p = CubicParams::make(order, t, kQ);
        const SubsetMask c = (SubsetMask{1} << order) - 1;
        CubicScalar prod = CubicScalar::one(p, c);
        for (int j = 0; j <= order; ++j)
            prod = prod * sample_cubic(rng, p, c).with_coeff(0, q(0));
        CHECK(cs_eq(prod, CubicScalar::zero(p, c)));
    }
}

TEST_CASE("core ideal basis") {
    CHECK(core_ideal_basis(1, 1) == std::vector<SubsetMask>{1});
    CHECK(core_ideal_basis(1, 3) == std::vector<SubsetMask>({1, 3}));
    CHECK_THROWS_AS(core_ideal_basis(0, 3), backend_error);
    CHECK_THROWS_AS(core_ideal_basis(4, 3), backend_error);
}

TEST_CASE("descriptor enumerations cover the hypercube") {
    auto p = CubicParams::make(3, {q(1), q(0), q(2)}, kQ);
    CubicRingDescriptor d{p};
    CHECK(d.vertices().size() == 8);
    CHECK(d.edges().size() == 12);
    CHECK(d.faces().size() == 6);
}

TEST_CASE("serialization round-trips bit-exactly on exact backends") {
    Rng rng(14);
    for (int i = 0; i < 20; ++i) {
        auto p = params2(sample_ring(rng.next(), kQ, false), sample_ring(rng.next(), kQ, true));
        CubicScalar a = sample_cubic(rng, p, 3);
        Json j = cubic_to_json(a);
        CubicScalar back = cubic_from_json(j, kQ);
        CHECK(cs_eq(back, a));
        CHECK(cubic_to_json(back) == j);
    }
    BackendTag fp = BackendTag::prime_field(101);
    auto p = CubicParams::make(1, {RingValue::prime(3, 101)}, fp);
    Rng rng2(15);
    CubicScalar a = sample_cubic(rng2, p, 1);
    CHECK(cs_eq(cubic_from_json(cubic_to_json(a), fp), a));
}

TEST_CASE("subset names") {
    CHECK(subset_name(0) == "∅");
    CHECK(subset_name(0b101) == "13");
    CHECK(subset_from_name("13") == SubsetMask{0b101});
    CHECK(subset_from_name("∅") == SubsetMask{0});
    CHECK(!subset_from_name("x").has_value());
}

TEST_CASE("carrier and params mismatches are errors") {
    auto p = params1(q(1));
    auto p2 = params1(q(2));
    CubicScalar a = CubicScalar::one(p, 1);
    CubicScalar b = CubicScalar::one(p2, 1);
    CHECK_THROWS_AS(a + b, backend_error);
    CHECK_THROWS_AS(a * CubicScalar::one(p, 0), backend_error);
    CHECK_THROWS_AS(cs_source(a, 2), backend_error);
    CHECK_THROWS_AS(cs_unit_embed(a, 1), backend_error);
}
