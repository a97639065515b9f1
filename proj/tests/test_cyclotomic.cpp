#include <doctest.h>

#include "tadic/cyclotomic.hpp"
#include "tadic/residue.hpp"

using namespace tadic;

TEST_CASE("zeta powers satisfy the cyclotomic relation") {
    for (uint32_t p : {2u, 3u, 5u, 7u}) {
        // zeta^0 + ... + zeta^{p-1} = 0
        CyclotomicInteger sum(p);
        for (uint32_t k = 0; k < p; ++k) sum = sum + CyclotomicInteger::zeta_pow(p, k);
        CHECK(sum.is_zero());
        // zeta^k * zeta^{p-k} = 1
        for (uint32_t k = 1; k < p; ++k) {
            auto prod = CyclotomicInteger::zeta_pow(p, k) * CyclotomicInteger::zeta_pow(p, p - k);
            CHECK(prod == CyclotomicInteger::of_int(p, 1));
        }
    }
}

TEST_CASE("coordinate representation is unique under ring ops") {
    uint32_t p = 5;
    auto z = CyclotomicInteger::zeta_pow(p, 1);
    auto a = (z * z) * z + z * BigInt(3);
    auto b = z * BigInt(3) + CyclotomicInteger::zeta_pow(p, 3);
    CHECK(a == b);
    CHECK((a - b).is_zero());
}

TEST_CASE("rationals reduce and compare exactly") {
    uint32_t p = 3;
    CycRational half(CyclotomicInteger::of_int(p, 2), 4);
    CycRational alt(CyclotomicInteger::of_int(p, 1), 2);
    CHECK(half == alt);
    CycRational z(CyclotomicInteger::zeta_pow(p, 1), 3);
    CHECK((z + z) == z * CycRational(CyclotomicInteger::of_int(p, 2)));
    CHECK((z - z).is_zero());
}

TEST_CASE("residue field tables and trace") {
    for (uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
        auto F = ResidueField::make_default(q);
        CHECK(F->q() == q);
        // field axioms spot-checked over all pairs at this scale
        for (uint32_t a = 0; a < q; ++a) {
            CHECK(F->add(a, 0) == a);
            CHECK(F->mul(a, 1) == a);
            CHECK(F->add(a, F->neg(a)) == 0);
            for (uint32_t b = 0; b < q; ++b) {
                CHECK(F->add(a, b) == F->add(b, a));
                CHECK(F->mul(a, b) == F->mul(b, a));
            }
        }
        // every nonzero element has an inverse (tables define a field)
        for (uint32_t a = 1; a < q; ++a) {
            bool inv = false;
            for (uint32_t b = 1; b < q; ++b) inv = inv || F->mul(a, b) == 1;
            CHECK(inv);
        }
        // trace is F_p-linear and not identically zero
        bool nonzero = false;
        for (uint32_t a = 0; a < q; ++a) {
            nonzero = nonzero || F->trace(a) != 0;
            for (uint32_t b = 0; b < q; ++b)
                CHECK((F->trace(a) + F->trace(b)) % F->p() == F->trace(F->add(a, b)));
        }
        CHECK(nonzero);
    }
}

TEST_CASE("reducible modulus is rejected") {
    CHECK_THROWS_AS(ResidueField(2, 2, {0, 0, 1}), InputError);  // x^2
    CHECK_THROWS_AS(ResidueField(3, 2, {2, 0, 1}), InputError);  // x^2 - 1 = (x-1)(x+1)
    CHECK_THROWS_AS(ResidueField(4, 1, {0, 1}), InputError);     // p not prime
}
