#include <doctest.h>

#include "tadic/json_io.hpp"
#include "tadic/sampling.hpp"

using namespace tadic;

TEST_CASE("function serialization round trips exactly") {
    Context ctx(Config::for_q(3));
    Rng rng(51);
    for (int i = 0; i < 25; ++i) {
        SBFunction phi = random_sb_function(rng, ctx, i % 2 ? 2 : 1, 3, -2, 2);
        SBFunction back = sb_from_json(sb_to_json(phi), ctx);
        CHECK(back.equals(phi));
        // serialized form is stable (the canonical form is unique)
        CHECK(sb_to_json(back) == sb_to_json(phi));
    }
}

TEST_CASE("config round trip and q shorthand") {
    Config c = config_from_json(Json::parse(R"({"q": 9, "budget": 1000, "K": 3})"));
    CHECK(c.p == 3);
    CHECK(c.f == 2);
    CHECK(c.budget == 1000);
    CHECK(c.sweep_K == 3);
    Config back = config_from_json(config_to_json(c));
    CHECK(back.p == c.p);
    CHECK(back.f == c.f);
    CHECK(back.budget == c.budget);
}

TEST_CASE("distribution descriptors") {
    Context ctx(Config::for_q(3));
    Json dir = Json::parse(R"({"kind":"dirac","point":["0"]})");
    Distribution d = distribution_from_json(dir, ctx);
    CHECK(d.kind() == DistKind::Dirac);
    CHECK(d.evaluate_query(BallQuery(FieldVec(1), 2)).equals(ctx.one()));

    Json fn;
    fn["kind"] = "function";
    fn["sb"] = sb_to_json(SBFunction::ball(ctx, 1, 0));
    Distribution u = distribution_from_json(fn, ctx);
    CHECK(u.evaluate_query(BallQuery(FieldVec(1), 1)).equals(ctx.L(-1)));

    Json gr = Json::parse(R"({"kind":"graph","vars":["x1"],"map":["x1^2"]})");
    Distribution g = distribution_from_json(gr, ctx);
    CHECK(g.m() == 2);

    CHECK_THROWS_AS(distribution_from_json(Json::parse(R"({"kind":"??"})"), ctx), InputError);
}

TEST_CASE("composite distribution descriptors") {
    Context ctx(Config::for_q(3));
    Json fn;
    fn["kind"] = "function";
    fn["sb"] = sb_to_json(SBFunction::ball(ctx, 1, 0));

    Json four{{"kind", "fourier"}, {"of", fn}};
    Distribution Fd = distribution_from_json(four, ctx);
    CHECK(Fd.kind() == DistKind::FourierOf);

    Json prod;
    prod["kind"] = "product-by-sb";
    prod["sb"] = sb_to_json(SBFunction::ball(ctx, 1, 1));
    prod["of"] = fn;
    CHECK(distribution_from_json(prod, ctx).kind() == DistKind::ProductBySB);

    Json tens{{"kind", "tensor"}, {"left", fn}, {"right", fn}};
    Distribution t = distribution_from_json(tens, ctx);
    CHECK(t.m() == 2);

    Json pb;
    pb["kind"] = "pullback";
    pb["vars"] = Json::array({"x1"});
    pb["map"] = Json::array({"x1"});
    pb["of"] = fn;
    pb["data"] = Json{{"Ry", 0}, {"Rx", 0}};
    Distribution u = distribution_from_json(pb, ctx);
    CHECK(u.kind() == DistKind::Pullback);
    CHECK(u.evaluate_query(BallQuery(FieldVec(1), 0)).equals(ctx.L(-1)));
}

TEST_CASE("external inputs respect the configured window") {
    Config cfg = Config::for_q(3);
    cfg.v_min = -4;
    cfg.v_max = 6;
    Context ctx(cfg);
    FieldElement x = field_from_text("t^-2*[1]", ctx);
    CHECK(x.prec() == 6);
    CHECK(x.ord() == -2);
    CHECK_THROWS_AS(field_from_text("t^-7*[1]", ctx), InputError);
    // deep reductions beyond the window are precision errors, not guesses
    CHECK_THROWS_AS((void)x.reduced_mod(7), PrecisionError);
}

TEST_CASE("queries and certificates") {
    Context ctx(Config::for_q(3));
    Json jq = Json::parse(R"([{"center":["t^0*[1]"],"alpha":0}])");
    auto qs = queries_from_json(jq, ctx);
    REQUIRE(qs.size() == 1);
    CHECK((qs[0].center[0] - ctx.fe_one()).is_zero_in_window());  // window-certified input
    CHECK(qs[0].freq[0].is_exact_zero());
    Json back = query_to_json(qs[0]);
    CHECK(back.at("alpha") == 0);

    WFCertificate cert;
    cert.point = FieldVec(1);
    cert.covector = {ctx.fe_one()};
    cert.verdict = WFVerdict::NotSmooth;
    cert.witness = {{"t^0*[1]", "(1)"}};
    Json jc = wf_certificate_to_json(cert, ctx);
    CHECK(jc.at("verdict") == "not-smooth");
    CHECK(jc.at("witness").at("value") == "(1)");
}
