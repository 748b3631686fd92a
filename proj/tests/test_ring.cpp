#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "liecalc/ring.hpp"

using namespace liecalc;

TEST_CASE("rational inverse and canonical form") {
    auto inv = try_invert(RingValue::rational(2, 3));
    REQUIRE(inv.has_value());
    CHECK(ring_eq(*inv, RingValue::rational(3, 2)));

    CHECK(!try_invert(RingValue::rational(0)).has_value());
    CHECK(ring_eq(RingValue::rational(1, 2), RingValue::rational(2, 4)));
}

TEST_CASE("prime field inverse matches brute force") {
    // oracle: scan every residue for 3*b = 1 mod 7
    int expected = -1;
    for (int b = 0; b < 7; ++b)
        if (3 * b % 7 == 1) expected = b;
    REQUIRE(expected == 5);
    auto inv = try_invert(RingValue::prime(3, 7));
    REQUIRE(inv.has_value());
    CHECK(inv->pf().residue == static_cast<std::uint32_t>(expected));

    CHECK(!try_invert(RingValue::prime(0, 7)).has_value());
}

TEST_CASE("prime field residues normalize") {
    CHECK(ring_eq(RingValue::prime(8, 7), RingValue::prime(1, 7)));
    CHECK((RingValue::prime(3, 7) * RingValue::prime(5, 7)).pf().residue == 1);
}

TEST_CASE("float tolerance equality") {
    CHECK(ring_eq(RingValue::floating(1.0), RingValue::floating(1.0 + 1e-15), 1e-9));
    CHECK(!ring_eq(RingValue::floating(1.0), RingValue::floating(1.001), 1e-9));
}

TEST_CASE("cross-backend operations are rejected") {
    CHECK_THROWS_AS(RingValue::rational(1) + RingValue::floating(1.0), backend_error);
    CHECK_THROWS_AS(ring_eq(RingValue::prime(1, 7), RingValue::prime(1, 11)), backend_error);
}

TEST_CASE("sample_ring is pure and honors the unit request") {
    for (std::uint64_t seed : {0ULL, 1ULL, 17ULL, 123456ULL}) {
        for (BackendTag tag : {BackendTag::rational(), BackendTag::floating(),
                               BackendTag::prime_field(7)}) {
            RingValue a = sample_ring(seed, tag, true);
            RingValue b = sample_ring(seed, tag, true);
            CHECK(ring_eq(a, b));
            CHECK(try_invert(a).has_value());
            if (tag.kind == Backend::Float) {
                RingValue c = sample_ring(seed, tag, false);
                CHECK(std::abs(c.flt()) <= 10.0);
            }
        }
    }
    RingValue u7 = sample_ring(0, BackendTag::prime_field(7), true);
    CHECK(u7.pf().residue >= 1);
    CHECK(u7.pf().residue <= 6);
}

TEST_CASE("ring axioms hold exactly on the exact backends") {
    for (BackendTag tag : {BackendTag::rational(), BackendTag::prime_field(101)}) {
        Rng rng(42);
        for (int i = 0; i < 300; ++i) {
            RingValue a = sample_ring(rng.next(), tag, false);
            RingValue b = sample_ring(rng.next(), tag, false);
            RingValue c = sample_ring(rng.next(), tag, false);
            CHECK(ring_eq((a + b) + c, a + (b + c)));
            CHECK(ring_eq(a + b, b + a));
            CHECK(ring_eq((a * b) * c, a * (b * c)));
            CHECK(ring_eq(a * b, b * a));
            CHECK(ring_eq(a * (b + c), a * b + a * c));
            CHECK(ring_eq(a * RingValue::one(tag), a));
            CHECK(ring_eq(a + RingValue::zero(tag), a));
            CHECK(ring_eq(a - a, RingValue::zero(tag)));
            if (auto inv = try_invert(a)) CHECK(ring_eq(a * *inv, RingValue::one(tag)));
        }
    }
}

TEST_CASE("p must be prime and below 2^31") {
    CHECK_THROWS_AS(BackendTag::prime_field(6), backend_error);
    CHECK_NOTHROW(BackendTag::prime_field(2147483647));  // largest prime < 2^31
    CHECK_THROWS_AS(BackendTag::prime_field(2147483659u), backend_error);
}

TEST_CASE("tiny prime fields") {
    for (std::uint32_t p : {2u, 3u}) {
        BackendTag tag = BackendTag::prime_field(p);
        Rng rng(p);
        for (int i = 0; i < 50; ++i) {
            RingValue a = sample_ring(rng.next(), tag, false);
            RingValue b = sample_ring(rng.next(), tag, false);
            CHECK(ring_eq(a * b, b * a));
            CHECK(ring_eq(a + b, b + a));
            if (auto inv = try_invert(a)) CHECK(ring_eq(a * *inv, RingValue::one(tag)));
            RingValue u = sample_ring(rng.next(), tag, true);
            CHECK(try_invert(u).has_value());
        }
    }
    // largest prime < 2^31: products must not overflow
    BackendTag big = BackendTag::prime_field(2147483647);
    RingValue m = RingValue::prime(2147483646, 2147483647);  // -1 mod p
    CHECK(ring_eq(m * m, RingValue::one(big)));
}
