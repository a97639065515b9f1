#include <doctest.h>

#include "tadic/distribution.hpp"

using namespace tadic;

namespace {

CycRational at_q(const MotivicScalar& s, const Context& ctx) { return s.eval_at_q(ctx.q()); }

}  // namespace

TEST_CASE("from_sb query examples") {
    Context ctx(Config::for_q(3));
    Distribution u = from_sb(SBFunction::ball(ctx, 1, 0), ctx);
    CHECK(u.evaluate_query(BallQuery(FieldVec(1), 1)).equals(ctx.L(-1)));
    CHECK(u.evaluate_query(BallQuery({ctx.t_pow(-1)}, 0)).is_zero());
    CHECK(u.evaluate_query(BallQuery(FieldVec(1), 0, {ctx.t_pow(-1)})).is_zero());
}

TEST_CASE("dirac query examples") {
    Context ctx(Config::for_q(3));
    Distribution d0 = dirac(FieldVec(1), ctx);
    for (Ord a : {-2, 0, 3}) CHECK(d0.evaluate_query(BallQuery(FieldVec(1), a)).equals(ctx.one()));
    CHECK(d0.evaluate_query(BallQuery({ctx.t_pow(-1)}, 0)).is_zero());
    CHECK(d0.evaluate_query(BallQuery(FieldVec(1), 0, {ctx.t_pow(-2)})).equals(ctx.one()));
}

TEST_CASE("graph distribution examples") {
    Context ctx(Config::for_q(3));
    auto g = expr::PolyMap::parse({"x1^2"}, {"x1"}, ctx);
    Distribution u = graph_distribution(g, ctx);
    // whole unit ball maps into the unit ball
    CHECK(u.evaluate_query(BallQuery(FieldVec(2), 0)).equals(ctx.one()));
    // image has ord >= 0, misses the shifted ball
    CHECK(u.evaluate_query(BallQuery({FieldElement(), ctx.t_pow(-1)}, 0)).is_zero());
    // twisted query against an independent deeper sum
    FieldVec freq{FieldElement(), ctx.t_pow(-2)};
    MotivicScalar v = u.evaluate_query(BallQuery(FieldVec(2), 0, freq));
    Ord D = 5;  // strictly deeper than the evaluator's internal depth
    CyclotomicInteger acc(ctx.p());
    for (const auto& x : enumerate_coset_reps(ctx.F(), FieldVec(1), 0, D, ctx.budget())) {
        FieldElement y = g.apply(x, ctx)[0];
        if (y.is_exact_zero() || y.ord() >= 0) {
            uint32_t k = (y * ctx.t_pow(-2)).character_exponent();
            acc = acc + CyclotomicInteger::zeta_pow(ctx.p(), k);
        }
    }
    CycRational brute = CycRational(acc, 1) *
                        CycRational(CyclotomicInteger::of_int(ctx.p(), 1), BigInt(3) * 3 * 3 * 3 * 3);
    CHECK(at_q(v, ctx) == brute);
}

TEST_CASE("average formula examples and oracle") {
    Context ctx(Config::for_q(3));
    SBFunction b0 = SBFunction::ball(ctx, 1, 0);
    CHECK(eval_on_sb(dirac(FieldVec(1), ctx), b0, ctx).equals(ctx.one()));
    CHECK(at_q(eval_on_sb(from_sb(b0, ctx), b0, ctx), ctx) ==
          CycRational(CyclotomicInteger::of_int(3, 1)));
    Rng rng(21);
    for (int i = 0; i < 30; ++i) {
        SBFunction phi = random_sb_function(rng, ctx, 1, 2, -1, 1);
        SBFunction psi = random_sb_function(rng, ctx, 1, 2, -1, 1);
        CHECK(at_q(eval_on_sb(from_sb(phi, ctx), psi, ctx), ctx) ==
              at_q(integrate(multiply(phi, psi, ctx), ctx), ctx));
    }
}

TEST_CASE("coset additivity and twisted consistency invariants") {
    Context ctx(Config::for_q(3));
    Rng rng(22);
    auto g = expr::PolyMap::parse({"x1^2"}, {"x1"}, ctx);
    std::vector<Distribution> dists;
    dists.push_back(from_sb(random_sb_function(rng, ctx, 1, 3, -1, 1), ctx));
    dists.push_back(dirac({ctx.fe_one()}, ctx));
    dists.push_back(graph_distribution(g, ctx));
    for (const auto& u : dists) {
        auto specs = query_battery(rng, ctx, u.m(), 10, -1, 1);
        for (const auto& spec : specs) {
            // additivity over the q children
            MotivicScalar whole = u.evaluate_query(BallQuery(spec.center, spec.alpha));
            MotivicScalar parts = ctx.zero();
            for (const auto& ch :
                 enumerate_coset_reps(ctx.F(), spec.center, spec.alpha, spec.alpha + 1,
                                      ctx.budget()))
                parts = parts + u.evaluate_query(BallQuery(ch, spec.alpha + 1));
            CHECK(at_q(whole, ctx) == at_q(parts, ctx));
            // deep twists factor through the phase at the center
            FieldVec deep(u.m());
            deep[0] = ctx.t_pow(1 - spec.alpha);
            MotivicScalar lhs = u.evaluate_query(BallQuery(spec.center, spec.alpha, deep));
            FieldVec creduced;
            for (const auto& c : spec.center) creduced.push_back(c.reduced_mod(spec.alpha));
            MotivicScalar rhs = ctx.psi_of(inner_product(creduced, deep)) * whole;
            CHECK(at_q(lhs, ctx) == at_q(rhs, ctx));
        }
    }
}

TEST_CASE("fourier of distributions") {
    Context ctx(Config::for_q(3));
    SUBCASE("F(dirac) is the unit density") {
        Distribution Fd = fourier_distribution(dirac(FieldVec(1), ctx), ctx);
        for (Ord a : {0, 1, 2})
            CHECK(at_q(Fd.evaluate_query(BallQuery(FieldVec(1), a)), ctx) ==
                  at_q(ctx.L(-a), ctx));
    }
    SUBCASE("F(from_sb) matches from_sb(fourier)") {
        Rng rng(23);
        SBFunction phi = random_sb_function(rng, ctx, 1, 3, -1, 1);
        Distribution lhs = fourier_distribution(from_sb(phi, ctx), ctx);
        Distribution rhs = from_sb(fourier(phi, ctx), ctx);
        for (const auto& spec : query_battery(rng, ctx, 1, 12, -1, 1)) {
            BallQuery q{spec.center, spec.alpha, spec.freq};
            CHECK(at_q(lhs.evaluate_query(q), ctx) == at_q(rhs.evaluate_query(q), ctx));
        }
    }
    SUBCASE("F(F(u)) reflects with the L^-m factor") {
        Rng rng(24);
        SBFunction phi = random_sb_function(rng, ctx, 1, 2, -1, 1);
        Distribution u = from_sb(phi, ctx);
        Distribution FFu = fourier_distribution(fourier_distribution(u, ctx), ctx);
        Distribution refl = from_sb(reflect(phi, ctx).scaled(ctx.L(-1), ctx), ctx);
        for (const auto& spec : query_battery(rng, ctx, 1, 8, -1, 1)) {
            BallQuery q{spec.center, spec.alpha, spec.freq};
            CHECK(at_q(FFu.evaluate_query(q), ctx) == at_q(refl.evaluate_query(q), ctx));
        }
    }
}

TEST_CASE("product by a schwartz function") {
    Context ctx(Config::for_q(3));
    Distribution d0 = dirac(FieldVec(1), ctx);
    SBFunction b0 = SBFunction::ball(ctx, 1, 0);
    Distribution pb = product_by_sb(b0, d0, ctx);
    Rng rng(25);
    for (const auto& spec : query_battery(rng, ctx, 1, 8, -1, 1)) {
        BallQuery q{spec.center, spec.alpha, spec.freq};
        CHECK(at_q(pb.evaluate_query(q), ctx) == at_q(d0.evaluate_query(q), ctx));
    }
    SBFunction off = SBFunction::term(ctx, ctx.one(), {ctx.t_pow(-1)}, 0, FieldVec(1));
    Distribution zero = product_by_sb(off, d0, ctx);
    CHECK(zero.evaluate_query(BallQuery(FieldVec(1), 0)).is_zero());
    // product against a density agrees with the closed-form product
    SBFunction phi = random_sb_function(rng, ctx, 1, 2, -1, 1);
    SBFunction psi = random_sb_function(rng, ctx, 1, 2, -1, 1);
    Distribution lhs = product_by_sb(phi, from_sb(psi, ctx), ctx);
    Distribution rhs = from_sb(multiply(phi, psi, ctx), ctx);
    for (const auto& spec : query_battery(rng, ctx, 1, 10, -1, 1)) {
        BallQuery q{spec.center, spec.alpha, spec.freq};
        CHECK(at_q(lhs.evaluate_query(q), ctx) == at_q(rhs.evaluate_query(q), ctx));
    }
}

TEST_CASE("paley-wiener: density roundtrip and dirac refusal") {
    Context ctx(Config::for_q(3));
    SBFunction b0 = SBFunction::ball(ctx, 1, 0);
    SUBCASE("u = 1_{B_0}, phi = 1_{B_0}: u_phi = F(1_{B_0}) = 1_{B_1}") {
        Distribution u = from_sb(b0, ctx);
        PaleyWienerResult r = paley_wiener_check(u, b0, 1, 1, ctx);
        CHECK(r.ok);
        CHECK(r.reconstruction.equals(SBFunction::ball(ctx, 1, 1)));
    }
    SUBCASE("dirac: flat character sum has unbounded support") {
        Distribution d0 = dirac(FieldVec(1), ctx);
        PaleyWienerResult r = paley_wiener_check(d0, b0, 1, 1, ctx);
        CHECK(!r.ok);
        CHECK(r.detail.find("support") != std::string::npos);
    }
}

TEST_CASE("tensor product") {
    Context ctx(Config::for_q(3));
    Distribution d0 = dirac(FieldVec(1), ctx);
    SUBCASE("dirac (x) dirac is the product-point dirac") {
        Distribution dd = tensor(d0, d0, ctx);
        Distribution d00 = dirac(FieldVec(2), ctx);
        Rng rng(26);
        for (const auto& spec : query_battery(rng, ctx, 2, 8, -1, 1)) {
            BallQuery q{spec.center, spec.alpha, spec.freq};
            CHECK(at_q(dd.evaluate_query(q), ctx) == at_q(d00.evaluate_query(q), ctx));
        }
    }
    SUBCASE("densities tensor to the outer-product density") {
        Rng rng(27);
        SBFunction phi = random_sb_function(rng, ctx, 1, 2, -1, 1);
        SBFunction psi = random_sb_function(rng, ctx, 1, 2, -1, 1);
        Distribution uv = tensor(from_sb(phi, ctx), from_sb(psi, ctx), ctx);
        // on product queries the value factors into the two closed forms
        Rng qrng(270);
        for (const auto& sx : query_battery(qrng, ctx, 1, 6, -1, 1)) {
            for (const auto& sy : query_battery(qrng, ctx, 1, 2, -1, 1)) {
                Ord alpha = std::max(sx.alpha, sy.alpha);
                BallQuery q({sx.center[0], sy.center[0]}, alpha, {sx.freq[0], sy.freq[0]});
                BallQuery qx({sx.center[0]}, alpha, {sx.freq[0]});
                BallQuery qy({sy.center[0]}, alpha, {sy.freq[0]});
                MotivicScalar expect = integrate(multiply(phi, qx.to_sb(ctx), ctx), ctx) *
                                       integrate(multiply(psi, qy.to_sb(ctx), ctx), ctx);
                CHECK(at_q(uv.evaluate_query(q), ctx) == at_q(expect, ctx));
            }
        }
        // iterated evaluation over a product box agrees with the product of
        // the one-dimensional integrals
        SBFunction box = SBFunction::ball(ctx, 2, 0);
        MotivicScalar direct =
            integrate(multiply(phi, SBFunction::ball(ctx, 1, 0), ctx), ctx) *
            integrate(multiply(psi, SBFunction::ball(ctx, 1, 0), ctx), ctx);
        CHECK(at_q(eval_on_sb(uv, box, ctx), ctx) == at_q(direct, ctx));
    }
    SUBCASE("dirac (x) density on product queries") {
        SBFunction b0 = SBFunction::ball(ctx, 1, 0);
        Distribution t = tensor(d0, from_sb(b0, ctx), ctx);
        for (Ord a : {0, 1, 2}) {
            MotivicScalar v = t.evaluate_query(BallQuery(FieldVec(2), a));
            CHECK(v.equals(ctx.L(-a)));
        }
    }
}

TEST_CASE("pullback: function case closed forms") {
    Context ctx(Config::for_q(3));
    SBFunction b0 = SBFunction::ball(ctx, 1, 0);
    SUBCASE("identity") {
        SmoothData data{0, 0, {}, {}, {}, 1};
        Distribution pb = pullback(expr::PolyMap::identity(1), from_sb(b0, ctx), data, ctx);
        CHECK(at_q(pb.evaluate_query(BallQuery(FieldVec(1), 0)), ctx) == at_q(ctx.L(-1), ctx));
        Rng rng(28);
        Distribution expect = from_sb(b0.scaled(ctx.L(-1), ctx), ctx);
        for (const auto& spec : query_battery(rng, ctx, 1, 8, -1, 1)) {
            BallQuery q{spec.center, spec.alpha, spec.freq};
            CHECK(at_q(pb.evaluate_query(q), ctx) == at_q(expect.evaluate_query(q), ctx));
        }
    }
    SUBCASE("translation of a dirac localizes at the pulled point") {
        FieldVec a{ctx.t_pow(-1)};
        SmoothData data{0, 0, 0, 40, {}, 1};
        Distribution pb =
            pullback(expr::PolyMap::translation(a), dirac(FieldVec(1), ctx), data, ctx);
        // L^{-m} dirac_{-a} pattern
        Distribution expect = dirac({-a[0]}, ctx);
        Rng rng(29);
        for (const auto& spec : query_battery(rng, ctx, 1, 8, -1, 1)) {
            BallQuery q{spec.center, spec.alpha, spec.freq};
            CHECK(at_q(pb.evaluate_query(q), ctx) ==
                  at_q(ctx.L(-1) * expect.evaluate_query(q), ctx));
        }
    }
    SUBCASE("translation of random densities matches the closed-form shift") {
        Rng rng(280);
        for (int i = 0; i < 4; ++i) {
            SBFunction psi = random_sb_function(rng, ctx, 1, 2, -1, 1);
            if (psi.is_zero()) continue;
            FieldVec a{random_field_element(rng, ctx, -1, 1, false)};
            SmoothData data{0, 0, {}, {}, {}, 1};
            Distribution pb =
                pullback(expr::PolyMap::translation(a), from_sb(psi, ctx), data, ctx);
            // psi(x + a) = translate(psi, -a)
            FieldVec na{-a[0]};
            Distribution expect =
                from_sb(translate(psi, na, ctx).scaled(ctx.L(-1), ctx), ctx);
            for (const auto& spec : query_battery(rng, ctx, 1, 6, -1, 1)) {
                BallQuery q{spec.center, spec.alpha, spec.freq};
                CHECK(at_q(pb.evaluate_query(q), ctx) == at_q(expect.evaluate_query(q), ctx));
            }
        }
    }
    SUBCASE("square map against the enumerated composition") {
        auto f = expr::PolyMap::parse({"x1^2"}, {"x1"}, ctx);
        SmoothData data{1, 2, {}, {}, {}, 1};
        Distribution pb = pullback(f, from_sb(b0, ctx), data, ctx);
        Distribution comp = from_sb_composed(b0, f, ctx);
        Rng rng(30);
        for (const auto& spec : query_battery(rng, ctx, 1, 6, -1, 1)) {
            BallQuery q{spec.center, spec.alpha, spec.freq};
            CHECK(at_q(pb.evaluate_query(q), ctx) ==
                  at_q(ctx.L(-1) * comp.evaluate_query(q), ctx));
        }
    }
}

TEST_CASE("diagonal product") {
    Context ctx(Config::for_q(3));
    SBFunction b0 = SBFunction::ball(ctx, 1, 0);
    SUBCASE("density times density") {
        Rng rng(31);
        SBFunction phi = random_sb_function(rng, ctx, 1, 2, 0, 1, false);
        if (phi.is_zero()) phi = b0;
        SmoothData data{0, 0, {}, {}, {}, 1};
        Distribution prod = diagonal_product(from_sb(phi, ctx), from_sb(b0, ctx), data, ctx);
        Distribution expect = from_sb(multiply(phi, b0, ctx).scaled(ctx.L(-1), ctx), ctx);
        for (const auto& spec : query_battery(rng, ctx, 1, 6, 0, 1)) {
            BallQuery q{spec.center, spec.alpha, spec.freq};
            CHECK(at_q(prod.evaluate_query(q), ctx) == at_q(expect.evaluate_query(q), ctx));
        }
    }
    SUBCASE("dirac times density is defined") {
        SmoothData data{0, 0, {}, {}, {-2}, 1};
        Distribution prod =
            diagonal_product(dirac(FieldVec(1), ctx), from_sb(b0, ctx), data, ctx);
        MotivicScalar v = prod.evaluate_query(BallQuery(FieldVec(1), 0));
        CHECK(at_q(v, ctx) == at_q(ctx.L(-1), ctx));
    }
    SUBCASE("dirac times dirac is refused") {
        SmoothData data{0, 0, {}, {}, {-2}, 1};
        CHECK_THROWS_AS(
            diagonal_product(dirac(FieldVec(1), ctx), dirac(FieldVec(1), ctx), data, ctx),
            DataError);
    }
}

TEST_CASE("parameter families") {
    Context ctx(Config::for_q(3));
    SBFunction b0 = SBFunction::ball(ctx, 1, 0);
    ParamFamily fam{{"a", "b"}, {from_sb(b0, ctx), dirac(FieldVec(1), ctx)}};
    SUBCASE("pull-back along the identity") {
        ParamFamily same = param_pullback({0, 1}, fam, {"a", "b"});
        CHECK(param_compat_check({0, 1}, fam, same,
                                 param_pushforward({0, 1}, fam, 2, {"a", "b"}, ctx), ctx)
                  .empty());
    }
    SUBCASE("push-forward along the constant map sums the fiber") {
        ParamFamily pushed = param_pushforward({0, 0}, fam, 1, {"pt"}, ctx);
        BallQuery q(FieldVec(1), 0);
        CHECK(at_q(pushed.members[0].evaluate_query(q), ctx) ==
              at_q(fam.members[0].evaluate_query(q) + fam.members[1].evaluate_query(q), ctx));
    }
    SUBCASE("pull then push along a bijection restores the family") {
        std::vector<size_t> swap{1, 0};
        ParamFamily pulled = param_pullback(swap, fam, {"b", "a"});
        ParamFamily back = param_pushforward(swap, pulled, 2, {"a", "b"}, ctx);
        BallQuery q(FieldVec(1), 1);
        for (size_t i = 0; i < 2; ++i)
            CHECK(at_q(back.members[i].evaluate_query(q), ctx) ==
                  at_q(fam.members[i].evaluate_query(q), ctx));
    }
}
