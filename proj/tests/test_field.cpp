#include <doctest.h>

#include <random>

#include "tadic/context.hpp"

using namespace tadic;

namespace {

FieldElement rand_elem(std::mt19937_64& rng, const Context& ctx) {
    auto d = [&](long long lo, long long hi) {
        return std::uniform_int_distribution<long long>(lo, hi)(rng);
    };
    if (d(0, 5) == 0) return FieldElement();
    Ord lead = d(-3, 3);
    std::vector<ResidueElement> cs;
    cs.push_back(ResidueElement(&ctx.F(), static_cast<uint32_t>(d(1, ctx.q() - 1))));
    for (int k = 0; k < d(0, 3); ++k)
        cs.push_back(ResidueElement(&ctx.F(), static_cast<uint32_t>(d(0, ctx.q() - 1))));
    return FieldElement::from_coeffs(ctx.F(), lead, std::move(cs));
}

}  // namespace

TEST_CASE("spec examples: arithmetic") {
    Context ctx(Config::for_q(3));
    auto tinv = ctx.t_pow(-1);
    auto one = ctx.fe_one();
    CHECK(((tinv + one) + (-tinv)).same_exact(one));
    CHECK((ctx.t_pow(2) * ctx.t_pow(-2)).same_exact(one));
    CHECK((ctx.t_pow(3) + ctx.t_pow(5)).ord() == 3);
}

TEST_CASE("ultrametric and multiplicativity") {
    Context ctx(Config::for_q(9));
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        FieldElement x = rand_elem(rng, ctx), y = rand_elem(rng, ctx);
        FieldElement s = x + y, m = x * y;
        if (!x.is_exact_zero() && !y.is_exact_zero()) {
            Ord ox = x.ord(), oy = y.ord();
            if (!s.is_exact_zero()) CHECK(s.ord() >= std::min(ox, oy));
            if (ox != oy) CHECK(s.ord() == std::min(ox, oy));
            CHECK(m.ord() == ox + oy);
            CHECK(m.ac() == x.ac() * y.ac());
        } else {
            CHECK(m.is_exact_zero());
        }
    }
}

TEST_CASE("spec examples: character exponent") {
    Context ctx(Config::for_q(3));
    CHECK(ctx.t_pow(1).character_exponent() == 0);
    CHECK(ctx.fe_one().character_exponent() == 1);
    auto x = FieldElement::of_int(ctx.F(), 2) + ctx.t_pow(-1);
    CHECK(x.character_exponent() == 2);
}

TEST_CASE("character additivity (no carries in equal characteristic)") {
    for (uint32_t q : {2u, 3u, 4u, 5u, 9u}) {
        Context ctx(Config::for_q(q));
        std::mt19937_64 rng(13);
        for (int i = 0; i < 100; ++i) {
            FieldElement x = rand_elem(rng, ctx), y = rand_elem(rng, ctx);
            uint32_t lhs = (x + y).character_exponent();
            uint32_t rhs = (x.character_exponent() + y.character_exponent()) % ctx.p();
            CHECK(lhs == rhs);
        }
        // trivial exactly on ord >= 1: some unit must be nontrivial
        bool nontrivial = false;
        for (uint32_t a = 1; a < q; ++a)
            nontrivial |= FieldElement::from_coeffs(ctx.F(), 0, {ResidueElement(&ctx.F(), a)})
                              .character_exponent() != 0;
        CHECK(nontrivial);
        CHECK(ctx.t_pow(1).character_exponent() == 0);
        CHECK(ctx.t_pow(2).character_exponent() == 0);
    }
}

TEST_CASE("spec examples: inner product") {
    Context ctx(Config::for_q(3));
    FieldVec x{ctx.fe_one(), FieldElement()};
    FieldVec xi{FieldElement(), ctx.fe_one()};
    CHECK(inner_product(x, xi).is_exact_zero());
    FieldVec a{ctx.t_pow(1)}, b{ctx.t_pow(-1)};
    CHECK(inner_product(a, b).same_exact(ctx.fe_one()));
    FieldVec u{ctx.fe_one(), ctx.fe_one()};
    FieldVec v{ctx.fe_one(), FieldElement::of_int(ctx.F(), 2)};
    CHECK(inner_product(u, v).character_exponent() == 0);  // 1 + 2 = 0 in F_3
}

TEST_CASE("precision window semantics") {
    Context ctx(Config::for_q(3));
    FieldElement x = ctx.fe_one().with_precision(2);
    FieldElement z = x - x;  // zero to precision 2, not exactly
    CHECK(z.is_zero_in_window());
    CHECK(!z.is_exact_zero());
    CHECK_THROWS_AS(z.ord(), PrecisionError);
    CHECK_THROWS_AS((void)z.reduced_mod(3), PrecisionError);
    CHECK(z.reduced_mod(2).is_exact_zero());
    // character needs the t^0 coefficient
    FieldElement deep = ctx.t_pow(-2).with_precision(0);
    CHECK_THROWS_AS(deep.character_exponent(), PrecisionError);
    // multiplication window rule: ord_x + prec_y bound
    FieldElement a = ctx.t_pow(2);
    FieldElement b = ctx.fe_one().with_precision(3);
    CHECK((a * b).prec() == 5);
}

TEST_CASE("spec examples: coset representatives") {
    Context ctx(Config::for_q(3));
    auto r1 = enumerate_coset_reps(ctx.F(), FieldVec(1), 0, 1, ctx.budget());
    CHECK(r1.size() == 3);
    auto r2 = enumerate_coset_reps(ctx.F(), FieldVec(1), 0, 2, ctx.budget());
    CHECK(r2.size() == 9);
    Context ctx2(Config::for_q(2));
    auto r3 = enumerate_coset_reps(ctx2.F(), FieldVec(2), -1, 0, ctx2.budget());
    CHECK(r3.size() == 4);
}

TEST_CASE("representatives tile the ball and are pairwise non-congruent") {
    Context ctx(Config::for_q(3));
    Ord alpha = -1, D = 1;
    auto reps = enumerate_coset_reps(ctx.F(), FieldVec(1), alpha, D, ctx.budget());
    CHECK(reps.size() == 9);
    for (size_t i = 0; i < reps.size(); ++i) {
        CHECK(reps[i][0].is_exact());
        for (size_t j = i + 1; j < reps.size(); ++j) {
            FieldElement d = reps[i][0] - reps[j][0];
            CHECK(d.ord() < D);  // non-congruent mod t^D
        }
    }
    // tiling: a sample point lands in exactly one coset
    std::mt19937_64 rng(17);
    for (int s = 0; s < 50; ++s) {
        FieldElement x = rand_elem(rng, ctx);
        if (x.is_exact_zero() || x.ord() < alpha) continue;
        int hits = 0;
        for (const auto& r : reps) {
            FieldElement d = x - r[0];
            if (d.is_exact_zero() || d.ord() >= D) ++hits;
        }
        CHECK(hits == 1);
    }
}

TEST_CASE("budget guard") {
    Context ctx(Config::for_q(3));
    CHECK_THROWS_AS(enumerate_coset_reps(ctx.F(), FieldVec(2), 0, 12, 1000), BudgetError);
}

TEST_CASE("text round trip") {
    Context ctx(Config::for_q(9));
    std::mt19937_64 rng(19);
    for (int i = 0; i < 60; ++i) {
        FieldElement x = rand_elem(rng, ctx);
        FieldElement back = FieldElement::parse(ctx.F(), x.to_text());
        if (x.is_exact_zero())
            CHECK(back.is_exact_zero());
        else
            CHECK(back.same_exact(x));
    }
    FieldElement e = FieldElement::parse(ctx.F(), "t^-1*[2] + t^0*[1] + t^2*[1]");
    CHECK(e.ord() == -1);
    CHECK(e.coeff_at(0) == ResidueElement::one(ctx.F()));
}
