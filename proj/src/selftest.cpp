#include "tadic/selftest.hpp"

#include <chrono>
#include <sstream>

namespace tadic {

namespace {

using Clock = std::chrono::steady_clock;

struct Runner {
    std::vector<CriterionResult> results;

    template <typename F>
    void run(int id, const std::string& name, F&& body) {
        CriterionResult r;
        r.id = id;
        r.name = name;
        auto start = Clock::now();
        try {
            std::string detail = body();
            r.pass = true;
            r.detail = detail;
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = e.what();
        }
        r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
        results.push_back(std::move(r));
    }
};

[[noreturn]] void fail(const std::string& what) { throw Error(what); }

// ---- criterion bodies -------------------------------------------------------

std::string crit_fourier_closed_form() {
    size_t checked = 0;
    for (uint32_t q : {2u, 3u}) {
        Context ctx(Config::for_q(q));
        for (size_t m : {1u, 2u}) {
            for (Ord alpha = -2; alpha <= 2; ++alpha) {
                SBFunction lhs = fourier(SBFunction::ball(ctx, m, alpha), ctx);
                SBFunction rhs = SBFunction::ball(ctx, m, 1 - alpha)
                                     .scaled(ctx.L(-static_cast<long long>(m) * alpha), ctx);
                if (!lhs.equals(rhs))
                    fail("F(1_B_" + std::to_string(alpha) + ") differs from the closed form at q=" +
                         std::to_string(q) + ", m=" + std::to_string(m));
                ++checked;
            }
        }
    }
    return std::to_string(checked) + " closed-form identities, exact";
}

std::string crit_inversion(const Context& ctx) {
    Rng rng(ctx.cfg().seed ^ 0x11);
    for (int i = 0; i < 100; ++i) {
        size_t m = i < 70 ? 1 : 2;
        SBFunction phi = random_sb_function(rng, ctx, m, 4, -2, 2);
        SBFunction lhs = fourier(fourier(phi, ctx), ctx);
        SBFunction rhs = reflect(phi, ctx).scaled(ctx.L(-static_cast<long long>(m)), ctx);
        if (!lhs.equals(rhs)) fail("F(F(phi)) != L^-m reflect(phi) on sample " + std::to_string(i));
    }
    return "100 seeded functions, exact symbolic equality";
}

std::string crit_convolution_theorem(const Context& ctx) {
    Rng rng(ctx.cfg().seed ^ 0x22);
    for (int i = 0; i < 100; ++i) {
        size_t m = i < 70 ? 1 : 2;
        SBFunction phi = random_sb_function(rng, ctx, m, 3, -2, 2);
        SBFunction psi = random_sb_function(rng, ctx, m, 3, -2, 2);
        SBFunction lhs = fourier(convolve(phi, psi, ctx), ctx);
        SBFunction rhs = multiply(fourier(phi, ctx), fourier(psi, ctx), ctx);
        if (!lhs.equals(rhs)) fail("F(phi*psi) != F(phi)F(psi) on sample " + std::to_string(i));
    }
    return "100 seeded pairs, exact symbolic equality";
}

std::string crit_oracle_equivalence(const Context& ctx) {
    Rng rng(ctx.cfg().seed ^ 0x33);
    size_t values = 0;
    for (int i = 0; i < 200; ++i) {
        size_t m = i < 170 ? 1 : 2;
        Ord span = m == 1 ? 2 : 1;
        SBFunction phi = random_sb_function(rng, ctx, m, 4, -span, span);
        SBFunction sym = fourier(phi, ctx);
        for (int c = 0; c < 50; ++c) {
            FieldVec y(m);
            for (size_t k = 0; k < m; ++k) y[k] = random_field_element(rng, ctx, -span, span);
            CycRational lhs = evaluate_at_q(sym, y, ctx);
            CycRational rhs = brute_fourier_value(phi, y, ctx);
            if (!(lhs == rhs))
                fail("oracle mismatch on sample " + std::to_string(i) + ", covector " +
                     std::to_string(c));
            ++values;
        }
    }
    // negative control: a corrupted symbolic constant must be detected
    {
        Rng rng2(ctx.cfg().seed ^ 0x34);
        SBFunction phi = random_sb_function(rng2, ctx, 1, 2, -1, 1);
        if (phi.is_zero()) phi = SBFunction::ball(ctx, 1, 0);
        std::vector<FieldVec> ys;
        for (int c = 0; c < 8; ++c) ys.push_back({random_field_element(rng2, ctx, -1, 1)});
        if (oracle_compare_fourier(phi, ys, ctx, /*inject_error=*/true).ok)
            fail("negative control: injected corruption was not detected");
    }
    return std::to_string(values) + " values equal in Q(zeta_p), zero tolerance";
}

std::string crit_schwartz_identities(const Context& ctx) {
    Rng rng(ctx.cfg().seed ^ 0x55);
    for (int i = 0; i < 40; ++i) {
        size_t m = i < 30 ? 1 : 2;
        SBFunction phi = random_sb_function(rng, ctx, m, 3, -2, 2);
        if (phi.is_zero()) continue;
        Ord ap = phi.constancy_bound();
        for (Ord alpha = ap; alpha <= ap + 3; ++alpha) {
            SBFunction lhs = convolve(phi, SBFunction::ball(ctx, m, alpha), ctx);
            SBFunction rhs = phi.scaled(ctx.L(-alpha * static_cast<long long>(m)), ctx);
            if (!lhs.equals(rhs))
                fail("phi * 1_B_alpha != L^{-alpha m} phi at alpha = " + std::to_string(alpha));
        }
        SBFunction prod = multiply(phi, SBFunction::ball(ctx, m, phi.support_bound()), ctx);
        if (!prod.equals(phi)) fail("phi . 1_B_{alpha^-} != phi on sample " + std::to_string(i));
    }
    return "support and convolution identities exact on 40 seeded functions";
}

std::string crit_average_formula(const Context& ctx) {
    Rng rng(ctx.cfg().seed ^ 0x66);
    const std::pair<Ord, Ord> widenings[] = {{0, 0}, {1, 0}, {0, 2}, {2, 2}};
    for (int i = 0; i < 100; ++i) {
        SBFunction phi = random_sb_function(rng, ctx, 1, 3, -1, 1);
        SBFunction psi = random_sb_function(rng, ctx, 1, 3, -1, 1);
        if (psi.is_zero()) continue;
        Distribution u = from_sb(phi, ctx);
        CycRational expect = integrate(multiply(phi, psi, ctx), ctx).eval_at_q(ctx.q());
        Ord am = psi.support_bound();
        Ord ap = std::max(am, psi.constancy_bound());
        for (auto [dl, dr] : widenings) {
            CycRational got =
                eval_on_sb_window(u, psi, am - dl, ap + dr, ctx).eval_at_q(ctx.q());
            if (!(got == expect))
                fail("average formula with window (-" + std::to_string(dl) + ",+" +
                     std::to_string(dr) + ") disagrees with the closed-form integral on sample " +
                     std::to_string(i));
        }
    }
    return "100 pairs, windows widened by up to 2 on each side, exact at q";
}

std::string crit_oscillatory_vanishing() {
    Context ctx(Config::for_q(3));
    int swept = 0;

    auto sweep = [&](const expr::TermPtr& g, const std::vector<std::string>& vars,
                     const expr::Assignment& params, const SBFunction& phi,
                     const std::string& label) {
        PhaseData pd = make_phase_data(g, vars, params, phi, ctx);
        Ord threshold = oscillatory_bound(pd, phi, ctx);
        for (int k = 0; k >= -6; --k) {
            if (k >= threshold) continue;
            FieldElement base = ctx.t_pow(k);
            for (const FieldElement& lam :
                 {base, base * (ctx.fe_one() + ctx.t_pow(1))}) {
                MotivicScalar v = oscillatory_integral(phi, pd, lam, ctx);
                if (!v.is_zero())
                    fail(label + ": integral nonzero at ord lambda = " + std::to_string(k) +
                         " below threshold " + std::to_string(threshold));
                ++swept;
            }
        }
    };

    // linear phase on the unit ball
    sweep(expr::parse("x", ctx), {"x"}, {}, SBFunction::ball(ctx, 1, 0), "g=x");
    // quadratic phases, test function supported on the unit coset around 1
    // (support bound B_0) so the gradient hypothesis holds
    {
        FieldVec c1{ctx.fe_one()};
        SBFunction phi = SBFunction::term(ctx, ctx.one(), c1, 1, FieldVec(1));
        sweep(expr::parse("x^2", ctx), {"x"}, {}, phi, "g=x^2");
        sweep(expr::parse("x^2 + t*x", ctx), {"x"}, {}, phi, "g=x^2+t*x");
    }
    // bilinear phase <x,v> + x1 x2 with v = (1,1), test function 1_{B_1}^2
    {
        expr::Assignment params;
        params.vals["v1"] = ctx.fe_one();
        params.vals["v2"] = ctx.fe_one();
        sweep(expr::parse("x1*v1 + x2*v2 + x1*x2", ctx), {"x1", "x2"}, params,
              SBFunction::ball(ctx, 2, 1), "g=<x,v>+x1*x2");
    }
    return std::to_string(swept) + " sub-threshold lambdas, all integrals exactly zero (q=3)";
}

std::string crit_dirac_wavefront(const Context& ctx) {
    Distribution d0 = dirac(FieldVec(1), ctx);
    int checked = 0;
    for (int n : {1, 2}) {
        LambdaGroup L{n};
        for (Ord s = 0; s < n; ++s) {
            FieldVec xi0{ctx.t_pow(s)};
            WFCertificate cert = wf_test(d0, FieldVec(1), xi0, 0, n, 6, L, ctx);
            if (cert.verdict != WFVerdict::NotSmooth)
                fail("dirac not flagged not-smooth at ord(covector) = " + std::to_string(s) +
                     ", n = " + std::to_string(n));
            if (!cert.witness) fail("dirac verdict lacks a witness");
            MotivicScalar w = MotivicScalar::parse(ctx.p(), cert.witness->second);
            if (!w.equals(ctx.one())) fail("dirac witness value is not 1: " + cert.witness->second);
            ++checked;
        }
    }
    return std::to_string(checked) + " covectors, all not-smooth with witness value 1";
}

std::string crit_conormal_dichotomy() {
    Context ctx(Config::for_q(3));
    expr::PolyMap g = expr::PolyMap::parse({"x1^2"}, {"x1"}, ctx);
    Distribution u = graph_distribution(g, ctx);
    LambdaGroup L{1};
    FieldVec origin(2);
    WFCertificate tangent = wf_test(u, origin, {ctx.fe_one(), FieldElement()}, 0, 1, 6, L, ctx);
    if (tangent.verdict != WFVerdict::SmoothCertified)
        fail(std::string("covector (1,0) not smooth-certified: got ") +
             wf_verdict_name(tangent.verdict));
    WFCertificate conormal = wf_test(u, origin, {FieldElement(), ctx.fe_one()}, 0, 1, 6, L, ctx);
    if (conormal.verdict != WFVerdict::NotSmooth)
        fail(std::string("covector (0,1) not flagged: got ") + wf_verdict_name(conormal.verdict));
    if (!conormal.witness) fail("conormal verdict lacks a brute-force witness");
    MotivicScalar w = MotivicScalar::parse(ctx.p(), conormal.witness->second);
    if (w.eval_at_q(ctx.q()).is_zero()) fail("conormal witness value vanishes at q");
    return "graph(x^2) at the origin: (1,0) certified via the oscillatory bound, (0,1) " +
           std::string("not-smooth with witness at lambda = ") + conormal.witness->first;
}

std::string crit_paley_wiener(const Context& ctx) {
    Rng rng(ctx.cfg().seed ^ 0xAA);
    int done = 0;
    for (int i = 0; i < 25; ++i) {
        SBFunction density = random_sb_function(rng, ctx, 1, 3, -1, 1);
        FieldVec c{random_field_element(rng, ctx, -1, 1)};
        SBFunction loc = SBFunction::term(ctx, ctx.one(), c, draw(rng, -1, 1), FieldVec(1));
        SBFunction prod = multiply(density, loc, ctx);
        if (prod.is_zero()) continue;
        Distribution u = from_sb(density, ctx);
        Ord support = 1 - prod.constancy_bound();
        Ord depth = 1 - prod.support_bound();
        PaleyWienerResult r = paley_wiener_check(u, loc, support, depth, ctx, 30);
        if (!r.ok) fail("roundtrip failed on sample " + std::to_string(i) + ": " + r.detail);
        ++done;
    }
    if (done < 15) fail("too few nonzero samples");
    return std::to_string(done) + " reconstructions verified on 30-query batteries";
}

std::string crit_pullback_function_case(const Context& ctx) {
    Rng rng(ctx.cfg().seed ^ 0xBB);
    struct Case {
        const char* label;
        expr::PolyMap f;
        SmoothData data;
    };
    FieldVec shift{ctx.t_pow(-1)};
    std::vector<Case> cases;
    cases.push_back({"identity", expr::PolyMap::identity(1), SmoothData{0, 0, {}, {}, {}, 1}});
    cases.push_back({"translation", expr::PolyMap::translation(shift),
                     SmoothData{0, 0, {}, {}, {}, 1}});
    cases.push_back({"square", expr::PolyMap::parse({"x1^2"}, {"x1"}, ctx),
                     SmoothData{1, 2, {}, {}, {}, 1}});
    size_t checked = 0;
    for (auto& cs : cases) {
        SBFunction psi = random_sb_function(rng, ctx, 1, 3, -1, 1);
        if (psi.is_zero()) psi = SBFunction::ball(ctx, 1, 0);
        Distribution lhs = pullback(cs.f, from_sb(psi, ctx), cs.data, ctx);
        Distribution composed = from_sb_composed(psi, cs.f, ctx);
        MotivicScalar scale = ctx.L(-1);
        auto specs = query_battery(rng, ctx, 1, 10, -1, 1);
        for (const auto& spec : specs) {
            BallQuery q{spec.center, spec.alpha, spec.freq};
            CycRational a = lhs.evaluate_query(q).eval_at_q(ctx.q());
            CycRational b = (scale * composed.evaluate_query(q)).eval_at_q(ctx.q());
            if (!(a == b))
                fail(std::string(cs.label) + ": pullback differs from L^-m psi o f on a query (" +
                     a.to_text() + " vs " + b.to_text() + ")");
            ++checked;
        }
    }
    return std::to_string(checked) + " queries over {identity, translation, x^2}, exact at q";
}

std::string crit_projection_property(const Context& ctx) {
    LambdaGroup L{1};
    size_t rows = 0;
    {
        Distribution d0 = dirac(FieldVec(1), ctx);
        std::vector<FieldVec> pts = {FieldVec(1), {ctx.fe_one()}, {ctx.t_pow(-1)}};
        ProjectionReport rep = projection_property_check(d0, pts, 0, 4, L, ctx);
        if (!rep.ok) fail("projection violated for the dirac distribution");
        rows += rep.rows.size();
        // the dirac point itself must be non-smooth both ways
        if (rep.rows[0].ss_smooth || rep.rows[0].wf_all_smooth)
            fail("dirac point not detected as singular");
    }
    {
        Rng rng(ctx.cfg().seed ^ 0xCC);
        SBFunction phi = random_sb_function(rng, ctx, 1, 3, -1, 1);
        if (phi.is_zero()) phi = SBFunction::ball(ctx, 1, 0);
        Distribution u = from_sb(phi, ctx);
        std::vector<FieldVec> pts = {FieldVec(1), {ctx.fe_one()}, {ctx.t_pow(1)}};
        ProjectionReport rep = projection_property_check(u, pts, 0, 4, L, ctx);
        if (!rep.ok) fail("projection violated for a density distribution");
        for (const auto& row : rep.rows)
            if (!row.ss_smooth) fail("density distribution flagged singular");
        rows += rep.rows.size();
    }
    {
        expr::PolyMap g = expr::PolyMap::parse({"x1^2"}, {"x1"}, ctx);
        Distribution u = graph_distribution(g, ctx);
        FieldVec on_graph0(2);                       // (0, 0)
        FieldVec on_graph1{ctx.fe_one(), ctx.fe_one()};  // (1, 1)
        FieldVec off_graph{ctx.fe_one(), ctx.t_pow(-1)};
        ProjectionReport rep =
            projection_property_check(u, {on_graph0, on_graph1, off_graph}, 0, 2, L, ctx);
        if (!rep.ok) fail("projection violated for the graph distribution");
        if (rep.rows[2].ss_smooth == false) fail("off-graph point flagged singular");
        rows += rep.rows.size();
    }
    return std::to_string(rows) + " sample points, no pi(WF) violations within the sweep";
}

std::string crit_finiteness_shadows(const Context& ctx) {
    struct Example {
        const char* text;
        FieldVec center;
        Ord alpha;
        Ord depth;
    };
    FieldVec zero1(1), one1{ctx.fe_one()};
    std::vector<Example> shipped = {
        {"ord(x)", one1, 1, 2},          // unit coset: constant 0
        {"ord(2*x)", zero1, 0, 1},       // zero locus flagged, min at units
        {"ord(x^2 + t*x)", zero1, 0, 2},
        {"5", zero1, 0, 1},
        {"min(ord(x), 3)", zero1, 0, 1},
    };
    std::ostringstream detail;
    for (const auto& ex : shipped) {
        expr::TermPtr t = expr::parse(ex.text, ctx);
        expr::BallDomain ball{ex.center, ex.alpha};
        std::vector<std::string> vars = {"x"};
        auto r = expr::range_enumerate(t, vars, ball, ex.depth, {}, ctx);
        size_t finite = 0;
        for (Ord v : r.values)
            if (!is_inf(v)) ++finite;
        if (r.values.empty()) fail(std::string(ex.text) + ": empty range");
        detail << ex.text << ": " << finite << " finite values" << (r.capped ? " (capped)" : "")
               << "; ";
    }
    // pinned expectations
    {
        expr::TermPtr t = expr::parse("ord(x)", ctx);
        std::vector<std::string> vars = {"x"};
        auto r = expr::range_enumerate(t, vars, {one1, 1}, 2, {}, ctx);
        if (r.values != std::set<Ord>{0}) fail("ord(x) on the unit coset is not {0}");
        auto r5 = expr::range_enumerate(expr::parse("5", ctx), vars, {zero1, 0}, 1, {}, ctx);
        if (r5.values != std::set<Ord>{5}) fail("constant term range is not {5}");
        auto r2 = expr::range_enumerate(expr::parse("ord(2*x)", ctx), vars, {zero1, 0}, 1, {}, ctx);
        if (ctx.p() != 2 && (*r2.values.begin() != 0 || !r2.capped))
            fail("ord(2x) over the unit ball: expected min 0 with a capped zero locus");
    }
    return detail.str();
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const Config& cfg) {
    Context ctx(cfg);
    Runner r;
    r.run(1, "fourier closed form", [&] { return crit_fourier_closed_form(); });
    r.run(2, "fourier inversion", [&] { return crit_inversion(ctx); });
    r.run(3, "convolution theorem", [&] { return crit_convolution_theorem(ctx); });
    r.run(4, "oracle equivalence", [&] { return crit_oracle_equivalence(ctx); });
    r.run(5, "schwartz identities", [&] { return crit_schwartz_identities(ctx); });
    r.run(6, "average formula", [&] { return crit_average_formula(ctx); });
    r.run(7, "oscillatory vanishing", [&] { return crit_oscillatory_vanishing(); });
    r.run(8, "dirac wave front", [&] { return crit_dirac_wavefront(ctx); });
    r.run(9, "conormal dichotomy", [&] { return crit_conormal_dichotomy(); });
    r.run(10, "paley-wiener roundtrip", [&] { return crit_paley_wiener(ctx); });
    r.run(11, "pull-back function case", [&] { return crit_pullback_function_case(ctx); });
    r.run(12, "projection property", [&] { return crit_projection_property(ctx); });
    r.run(13, "finiteness shadows", [&] { return crit_finiteness_shadows(ctx); });
    return r.results;
}

}  // namespace tadic
