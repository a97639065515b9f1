#include <doctest.h>

#include "tadic/expr.hpp"
#include "tadic/sampling.hpp"

using namespace tadic;

TEST_CASE("parse examples and sorts") {
    Context ctx(Config::for_q(3));
    CHECK(expr::parse("ord(x^2 + t*x)", ctx)->sort == expr::Sort::Int);
    auto lambda2 = expr::parse("ac(x) = 1 and ord(x) mod 2 = 0", ctx);
    CHECK(lambda2->sort == expr::Sort::Bool);
    CHECK(expr::parse("x*y - t^-1", ctx)->sort == expr::Sort::Val);
    CHECK(expr::parse("2 | ord(x)", ctx)->sort == expr::Sort::Bool);
    CHECK_THROWS_AS(expr::parse("ord(x) * ord(y)", ctx), InputError);
    CHECK_THROWS_AS(expr::parse("x <= y", ctx), InputError);
}

TEST_CASE("print/parse round trip on a grammar corpus") {
    Context ctx(Config::for_q(3));
    const char* corpus[] = {
        "x*y - t^-1",
        "ord(x^2 + t*x)",
        "ac(x) = 1 and ord(x) mod 2 = 0",
        "min(ord(x), ord(y)) <= 3",
        "not (2 | ord(x)) or ac(y) = 2",
        "(x + y)^3 - x^3",
        "ord(x) + 2 < max(ord(y), -1)",
        "x^2*y + t^2*x - 3",
    };
    for (const char* text : corpus) {
        auto t = expr::parse(text, ctx);
        std::string printed = expr::print(t);
        auto t2 = expr::parse(printed, ctx);
        CHECK(expr::print(t2) == printed);
    }
}

TEST_CASE("evaluation: ord/ac semantics and the Lambda predicate") {
    Context ctx(Config::for_q(3));
    expr::Assignment a;
    a.vals["x"] = ctx.t_pow(3);
    CHECK(expr::eval_int(expr::parse("ord(x)", ctx), a, ctx) == 3);
    a.vals["x"] = FieldElement();
    CHECK(is_inf(expr::eval_int(expr::parse("ord(x)", ctx), a, ctx)));
    auto acx = expr::parse("ac(x) = 0", ctx);
    CHECK(expr::eval_bool(acx, a, ctx));  // ac(0) = 0
    auto lambda2 = expr::parse("ac(x) = 1 and 2 | ord(x)", ctx);
    a.vals["x"] = ctx.t_pow(2);
    CHECK(expr::eval_bool(lambda2, a, ctx));
    a.vals["x"] = ctx.t_pow(1);
    CHECK(!expr::eval_bool(lambda2, a, ctx));
    a.vals["x"] = ctx.t_pow(2) * FieldElement::of_int(ctx.F(), 2);
    CHECK(!expr::eval_bool(lambda2, a, ctx));
}

TEST_CASE("gradient and remainder: closed forms") {
    Context ctx(Config::for_q(3));
    std::vector<std::string> vars = {"x"};
    SUBCASE("g = x^2") {
        auto g = expr::parse("x^2", ctx);
        auto dg = expr::grad(g, vars, ctx);
        expr::Assignment a;
        a.vals["x"] = ctx.t_pow(1);
        CHECK(expr::eval_val(dg[0], a, ctx).same_exact(ctx.t_pow(1) * FieldElement::of_int(ctx.F(), 2)));
        auto R = expr::taylor_remainder(g, vars, ctx);
        a.vals["x__dy"] = ctx.fe_one();
        CHECK(expr::eval_val(R[0][0], a, ctx).same_exact(ctx.fe_one()));
    }
    SUBCASE("g = x: remainder vanishes") {
        auto R = expr::taylor_remainder(expr::parse("x", ctx), vars, ctx);
        expr::Assignment a;
        a.vals["x"] = ctx.t_pow(-1);
        a.vals["x__dy"] = ctx.fe_one();
        CHECK(expr::eval_val(R[0][0], a, ctx).is_exact_zero());
    }
    SUBCASE("g = x^3: lex assignment R = 3x + y") {
        auto R = expr::taylor_remainder(expr::parse("x^3", ctx), vars, ctx);
        expr::Assignment a;
        Rng rng(42);
        for (int i = 0; i < 10; ++i) {
            FieldElement x = random_field_element(rng, ctx, -2, 2);
            FieldElement y = random_field_element(rng, ctx, -2, 2);
            a.vals["x"] = x;
            a.vals["x__dy"] = y;
            FieldElement want = FieldElement::of_int(ctx.F(), 3) * x + y;  // = y in char 3
            CHECK((expr::eval_val(R[0][0], a, ctx) - want).is_exact_zero());
        }
    }
}

TEST_CASE("taylor identity at random points") {
    Context ctx(Config::for_q(5));
    Rng rng(99);
    const char* polys[] = {"x^2", "x^3 + t*x", "x^2*y + y^2", "x*y"};
    for (const char* text : polys) {
        auto g = expr::parse(text, ctx);
        std::vector<std::string> vars = {"x", "y"};
        auto dg = expr::grad(g, vars, ctx);
        auto R = expr::taylor_remainder(g, vars, ctx);
        for (int trial = 0; trial < 50; ++trial) {
            expr::Assignment a, shifted;
            FieldVec xs(2), ys(2);
            for (size_t i = 0; i < 2; ++i) {
                xs[i] = random_field_element(rng, ctx, -2, 2);
                ys[i] = random_field_element(rng, ctx, -2, 2);
                a.vals[vars[i]] = xs[i];
                a.vals[vars[i] + "__dy"] = ys[i];
                shifted.vals[vars[i]] = xs[i] + ys[i];
            }
            FieldElement lhs = expr::eval_val(g, shifted, ctx);
            FieldElement rhs = expr::eval_val(g, a, ctx);
            for (size_t i = 0; i < 2; ++i)
                rhs = rhs + expr::eval_val(dg[i], a, ctx) * ys[i];
            for (size_t i = 0; i < 2; ++i)
                for (size_t j = 0; j < 2; ++j)
                    rhs = rhs + expr::eval_val(R[i][j], a, ctx) * ys[i] * ys[j];
            CHECK((lhs - rhs).is_exact_zero());
        }
    }
}

TEST_CASE("valuation bounds: spec examples") {
    Context ctx(Config::for_q(3));
    std::vector<std::string> vars = {"x"};
    SUBCASE("ord(2x) over the unit ball: zero locus flagged") {
        auto b = expr::valuation_bounds(expr::parse("ord(2*x)", ctx), vars,
                                        {FieldVec(1), 0}, 1, {}, ctx);
        CHECK(b.lo == 0);
        CHECK(b.capped);
        CHECK(b.flagged_cosets == 1);
    }
    SUBCASE("ord(x) on the unit coset") {
        auto b = expr::valuation_bounds(expr::parse("ord(x)", ctx), vars,
                                        {{FieldVec{ctx.fe_one()}}, 1}, 2, {}, ctx);
        CHECK(b.lo == 0);
        CHECK(b.hi == 0);
        CHECK(!b.capped);
    }
    SUBCASE("constant") {
        auto b = expr::valuation_bounds(expr::parse("5", ctx), vars, {FieldVec(1), 0}, 0, {}, ctx);
        CHECK(b.lo == 5);
        CHECK(b.hi == 5);
    }
    SUBCASE("agreement with range_enumerate extremes") {
        auto t = expr::parse("ord(x^2 + t*x)", ctx);
        auto b = expr::valuation_bounds(t, vars, {FieldVec(1), 0}, 2, {}, ctx);
        auto r = expr::range_enumerate(t, vars, {FieldVec(1), 0}, 2, {}, ctx);
        Ord lo = kOrdInf, hi = -kOrdInf;
        for (Ord v : r.values)
            if (!is_inf(v)) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        CHECK(b.lo == lo);
        CHECK(b.hi == hi);
        CHECK(b.capped == r.capped);
    }
}

TEST_CASE("stability failure is a hard error") {
    Context ctx(Config::for_q(3));
    std::vector<std::string> vars = {"x"};
    // ord(x^2 - t^4) is not determined at depth 1 on the t^2-coset
    auto t = expr::parse("ord(x^2 - t^4)", ctx);
    CHECK_THROWS_AS(expr::valuation_bounds(t, vars, {FieldVec(1), 1}, 1, {}, ctx), DataError);
    // deep enough it resolves (the exact zero locus stays flagged)
    auto b = expr::valuation_bounds(t, vars, {FieldVec(1), 1}, 2, {}, ctx);
    CHECK(b.lo == 2);
    CHECK(b.capped);
}

TEST_CASE("polynomial maps") {
    Context ctx(Config::for_q(3));
    auto f = expr::PolyMap::parse({"x1^2"}, {"x1"}, ctx);
    FieldVec y = f.apply({ctx.t_pow(-1)}, ctx);
    CHECK(y[0].same_exact(ctx.t_pow(-2)));
    auto id = expr::PolyMap::identity(2);
    CHECK(id.apply({ctx.fe_one(), ctx.t_pow(3)}, ctx)[1].same_exact(ctx.t_pow(3)));
    auto tr = expr::PolyMap::translation({ctx.fe_one()});
    CHECK(tr.apply({ctx.t_pow(1)}, ctx)[0].same_exact(ctx.t_pow(1) + ctx.fe_one()));
}
