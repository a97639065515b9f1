#include "tadic/json_io.hpp"

namespace tadic {

Config config_from_json(const Json& j) {
    Config c;
    if (j.contains("q")) c = Config::for_q(j.at("q").get<uint32_t>());
    if (j.contains("p")) c.p = j.at("p").get<uint32_t>();
    if (j.contains("f")) c.f = j.at("f").get<uint32_t>();
    if (j.contains("modulus")) c.modulus = j.at("modulus").get<std::vector<uint32_t>>();
    if (j.contains("v_min")) c.v_min = j.at("v_min").get<Ord>();
    if (j.contains("v_max")) c.v_max = j.at("v_max").get<Ord>();
    if (j.contains("budget")) c.budget = j.at("budget").get<long long>();
    if (j.contains("K")) c.sweep_K = j.at("K").get<int>();
    if (j.contains("n")) c.lambda_n = j.at("n").get<int>();
    if (j.contains("seed")) c.seed = j.at("seed").get<uint64_t>();
    return c;
}

Json config_to_json(const Config& c) {
    Json j;
    j["p"] = c.p;
    j["f"] = c.f;
    if (!c.modulus.empty()) j["modulus"] = c.modulus;
    j["v_min"] = c.v_min;
    j["v_max"] = c.v_max;
    j["budget"] = c.budget;
    j["K"] = c.sweep_K;
    j["n"] = c.lambda_n;
    j["seed"] = c.seed;
    return j;
}

Json scalar_to_json(const MotivicScalar& s, const Context& ctx) {
    Json j;
    j["symbolic"] = s.to_text();
    j["at_q"] = s.eval_at_q(ctx.q()).to_text();
    return j;
}

Json field_vec_to_json(const FieldVec& v) {
    Json j = Json::array();
    for (const auto& x : v) j.push_back(x.to_text());
    return j;
}

// External field inputs are certified only to the configured precision
// window: coefficients are taken as known below v_max, and terms below v_min
// are out of the modeled range.
FieldElement field_from_text(const std::string& text, const Context& ctx) {
    FieldElement x = FieldElement::parse(ctx.F(), text);
    if (!x.is_zero_in_window() && x.ord() < ctx.cfg().v_min)
        throw InputError("field input " + text + " has ord below the configured window v_min=" +
                         std::to_string(ctx.cfg().v_min));
    return x.with_precision(ctx.cfg().v_max);
}

FieldVec field_vec_from_json(const Json& j, const Context& ctx) {
    FieldVec v;
    for (const auto& e : j) v.push_back(field_from_text(e.get<std::string>(), ctx));
    return v;
}

Json sb_to_json(const SBFunction& f) {
    Json j;
    j["m"] = f.m();
    Json terms = Json::array();
    for (const auto& t : f.terms()) {
        Json jt;
        jt["coeff"] = t.coeff.to_text();
        jt["center"] = field_vec_to_json(t.center);
        jt["radius"] = t.alpha;
        jt["freq"] = field_vec_to_json(t.freq);
        terms.push_back(std::move(jt));
    }
    j["terms"] = std::move(terms);
    return j;
}

SBFunction sb_from_json(const Json& j, const Context& ctx) {
    size_t m = j.at("m").get<size_t>();
    std::vector<SBTerm> terms;
    for (const auto& jt : j.at("terms")) {
        SBTerm t;
        t.coeff = MotivicScalar::parse(ctx.p(), jt.at("coeff").get<std::string>());
        t.center = field_vec_from_json(jt.at("center"), ctx);
        t.alpha = jt.at("radius").get<Ord>();
        t.freq = jt.contains("freq") ? field_vec_from_json(jt.at("freq"), ctx) : FieldVec(m);
        if (t.center.size() != m || t.freq.size() != m)
            throw InputError("term dimension mismatch in JSON");
        terms.push_back(std::move(t));
    }
    return SBFunction(ctx, m, std::move(terms));
}

Json query_to_json(const BallQuery& q) {
    Json j;
    j["center"] = field_vec_to_json(q.center);
    j["alpha"] = q.alpha;
    j["freq"] = field_vec_to_json(q.freq);
    return j;
}

BallQuery query_from_json(const Json& j, const Context& ctx) {
    BallQuery q;
    q.center = field_vec_from_json(j.at("center"), ctx);
    q.alpha = j.at("alpha").get<Ord>();
    if (j.contains("freq"))
        q.freq = field_vec_from_json(j.at("freq"), ctx);
    else
        q.freq = FieldVec(q.center.size());
    return q;
}

std::vector<BallQuery> queries_from_json(const Json& j, const Context& ctx) {
    std::vector<BallQuery> out;
    for (const auto& e : j) out.push_back(query_from_json(e, ctx));
    return out;
}

SmoothData smooth_data_from_json(const Json& j) {
    SmoothData d;
    d.R_y = j.at("Ry").get<Ord>();
    d.R_x = j.at("Rx").get<Ord>();
    if (j.contains("N_delta")) d.N_delta = j.at("N_delta").get<Ord>();
    if (j.contains("N_R")) d.N_R = j.at("N_R").get<Ord>();
    if (j.contains("xi_ord_min")) d.xi_ord_min = j.at("xi_ord_min").get<Ord>();
    if (j.contains("verify_shells")) d.verify_shells = j.at("verify_shells").get<int>();
    return d;
}

Distribution distribution_from_json(const Json& j, const Context& ctx) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "dirac") return dirac(field_vec_from_json(j.at("point"), ctx), ctx);
    if (kind == "function") return from_sb(sb_from_json(j.at("sb"), ctx), ctx);
    if (kind == "graph") {
        auto vars = j.at("vars").get<std::vector<std::string>>();
        auto comps = j.at("map").get<std::vector<std::string>>();
        return graph_distribution(expr::PolyMap::parse(comps, vars, ctx), ctx);
    }
    if (kind == "fourier") return fourier_distribution(distribution_from_json(j.at("of"), ctx), ctx);
    if (kind == "product-by-sb")
        return product_by_sb(sb_from_json(j.at("sb"), ctx),
                             distribution_from_json(j.at("of"), ctx), ctx);
    if (kind == "tensor")
        return tensor(distribution_from_json(j.at("left"), ctx),
                      distribution_from_json(j.at("right"), ctx), ctx);
    if (kind == "pullback") {
        auto vars = j.at("vars").get<std::vector<std::string>>();
        auto comps = j.at("map").get<std::vector<std::string>>();
        return pullback(expr::PolyMap::parse(comps, vars, ctx),
                        distribution_from_json(j.at("of"), ctx),
                        smooth_data_from_json(j.at("data")), ctx);
    }
    throw InputError("unknown distribution kind: " + kind);
}

Json wf_certificate_to_json(const WFCertificate& c, const Context& ctx) {
    (void)ctx;
    Json j;
    j["point"] = field_vec_to_json(c.point);
    j["covector"] = field_vec_to_json(c.covector);
    j["r"] = c.r;
    j["rcheck"] = c.rcheck;
    j["n"] = c.n;
    j["K"] = c.K;
    j["verdict"] = wf_verdict_name(c.verdict);
    if (c.threshold) j["threshold"] = *c.threshold;
    if (c.witness) {
        j["witness"] = Json{{"lambda", c.witness->first}, {"value", c.witness->second}};
    }
    if (!c.theorem_basis.empty()) j["theorem_basis"] = c.theorem_basis;
    if (c.nr_capped) j["nr_capped"] = true;
    return j;
}

Json ss_certificate_to_json(const SSCertificate& c, const Context& ctx) {
    (void)ctx;
    Json j;
    j["point"] = field_vec_to_json(c.point);
    j["r"] = c.r;
    j["K"] = c.K;
    j["verdict"] = ss_verdict_name(c.verdict);
    if (c.representative) j["representative"] = sb_to_json(*c.representative);
    if (!c.detail.empty()) j["detail"] = c.detail;
    return j;
}

}  // namespace tadic
