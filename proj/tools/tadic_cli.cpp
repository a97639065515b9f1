// Batch driver: configures the field, parses inputs, runs the symbolic
// operations with optional brute-force oracle comparison, and emits JSON
// reports.  Exit codes: 0 success, 2 bad input, 3 budget exceeded,
// 4 oracle mismatch, 5 data/bound violation.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "tadic/json_io.hpp"
#include "tadic/selftest.hpp"

using namespace tadic;

namespace {

struct Common {
    std::string config_path;
    std::string json_out;
    bool oracle = false;
    long long budget_override = 0;
    int depth_override = -1;
};

Config load_config(const Common& c) {
    Config cfg;
    if (!c.config_path.empty()) {
        std::ifstream in(c.config_path);
        if (!in) throw InputError("cannot open config file " + c.config_path);
        Json j = Json::parse(in);
        cfg = config_from_json(j);
    }
    if (c.budget_override > 0) cfg.budget = c.budget_override;
    if (c.depth_override >= 0) cfg.sweep_K = c.depth_override;
    return cfg;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    return Json::parse(in);
}

void emit(const Json& j, const Common& c) {
    std::string text = j.dump(2) + "\n";
    if (!c.json_out.empty()) {
        std::ofstream out(c.json_out);
        out << text;
    }
    std::cout << text;
}

// per-term oracle comparison of a symbolic result against the brute-force
// character sum; used by the transform commands under --oracle
bool fourier_oracle_ok(const SBFunction& phi, const Context& ctx, Json* report) {
    Rng rng(ctx.cfg().seed ^ 0x04ACULL);
    std::vector<FieldVec> ys;
    for (int i = 0; i < 20; ++i) {
        FieldVec y(phi.m());
        for (size_t k = 0; k < phi.m(); ++k) y[k] = random_field_element(rng, ctx, -2, 2);
        ys.push_back(std::move(y));
    }
    OracleReport rep = oracle_compare_fourier(phi, ys, ctx);
    (*report)["oracle"] = Json{{"checked", rep.checked}, {"ok", rep.ok}};
    if (!rep.ok) (*report)["oracle"]["mismatch"] = rep.mismatch;
    return rep.ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Fourier / microlocal calculator over F_q((t))"};
    app.require_subcommand(1);
    app.fallthrough();

    Common common;
    app.add_option("--config", common.config_path, "JSON config file");
    app.add_option("--json-out", common.json_out, "write the JSON report to a file");
    app.add_flag("--oracle", common.oracle, "verify symbolic results against the brute-force oracle");
    app.add_option("--budget", common.budget_override, "enumeration budget override");
    app.add_option("--depth", common.depth_override, "sweep depth K override");

    std::string input_path, second_path, dist_path, queries_path, data_json, expr_text;
    std::string point_text, covector_text;
    std::vector<std::string> map_comps, map_vars;
    Ord radius = 0;
    bool inject_error = false;
    uint32_t q_override = 0;
    std::vector<std::string> int_vars;

    auto* cmd_fourier = app.add_subcommand("fourier", "Fourier transform of a function (JSON)");
    cmd_fourier->add_option("input", input_path, "SBFunction JSON file")->required();

    auto* cmd_convolve = app.add_subcommand("convolve", "convolution of two functions");
    cmd_convolve->add_option("left", input_path)->required();
    cmd_convolve->add_option("right", second_path)->required();

    auto* cmd_multiply = app.add_subcommand("multiply", "pointwise product of two functions");
    cmd_multiply->add_option("left", input_path)->required();
    cmd_multiply->add_option("right", second_path)->required();

    auto* cmd_integrate = app.add_subcommand("integrate", "integral of a function");
    cmd_integrate->add_option("input", input_path)->required();

    auto* cmd_eval = app.add_subcommand("eval", "evaluate a function at a point");
    cmd_eval->add_option("input", input_path)->required();
    cmd_eval->add_option("--point", point_text, "field vector, ';'-separated")->required();

    auto* cmd_wf = app.add_subcommand("wf-test", "microlocal smoothness test");
    cmd_wf->add_option("--dist", dist_path, "distribution JSON file")->required();
    cmd_wf->add_option("--point", point_text)->required();
    cmd_wf->add_option("--covector", covector_text)->required();
    cmd_wf->add_option("-r,--radius", radius, "localization radius");

    auto* cmd_ss = app.add_subcommand("ss-test", "singular support test");
    cmd_ss->add_option("--dist", dist_path)->required();
    cmd_ss->add_option("--point", point_text)->required();
    cmd_ss->add_option("-r,--radius", radius);

    auto* cmd_pullback = app.add_subcommand("pullback", "pull back a distribution along a map");
    cmd_pullback->add_option("--dist", dist_path)->required();
    cmd_pullback->add_option("--map", map_comps, "map components")->required();
    cmd_pullback->add_option("--vars", map_vars, "map variables")->required();
    cmd_pullback->add_option("--data", data_json, "smooth data JSON")->required();
    cmd_pullback->add_option("--queries", queries_path, "query battery JSON")->required();

    auto* cmd_tensor = app.add_subcommand("tensor", "tensor product on product queries");
    cmd_tensor->add_option("--left", input_path)->required();
    cmd_tensor->add_option("--right", second_path)->required();
    cmd_tensor->add_option("--queries", queries_path)->required();

    auto* cmd_product = app.add_subcommand("product", "diagonal product of two distributions");
    cmd_product->add_option("--left", input_path)->required();
    cmd_product->add_option("--right", second_path)->required();
    cmd_product->add_option("--data", data_json)->required();
    cmd_product->add_option("--queries", queries_path)->required();

    auto* cmd_oracle = app.add_subcommand("oracle-compare",
                                          "compare the symbolic Fourier transform with the "
                                          "brute-force character sum");
    cmd_oracle->add_option("input", input_path)->required();
    cmd_oracle->add_flag("--inject-error", inject_error, "negative control: corrupt the symbolic side");

    auto* cmd_selftest = app.add_subcommand("selftest", "run the acceptance suite");
    cmd_selftest->add_option("--q", q_override, "shipped field default to run under");

    auto* cmd_parse = app.add_subcommand("parse-check", "parse a term and verify the round trip");
    cmd_parse->add_option("expr", expr_text, "term text")->required();
    cmd_parse->add_option("--int-vars", int_vars, "identifiers of integer sort");

    CLI11_PARSE(app, argc, argv);

    try {
        Config cfg = load_config(common);
        if (cmd_selftest->parsed() && q_override != 0) {
            Config qcfg = Config::for_q(q_override);
            qcfg.budget = cfg.budget;
            qcfg.seed = cfg.seed;
            cfg = qcfg;
        }
        Context ctx(cfg);
        Json report;
        report["config"] = config_to_json(cfg);

        auto parse_vec = [&](const std::string& text) {
            FieldVec v;
            size_t start = 0;
            while (start <= text.size()) {
                size_t semi = text.find(';', start);
                std::string part = text.substr(start, semi == std::string::npos
                                                          ? std::string::npos
                                                          : semi - start);
                v.push_back(field_from_text(part, ctx));
                if (semi == std::string::npos) break;
                start = semi + 1;
            }
            return v;
        };

        if (cmd_fourier->parsed()) {
            SBFunction phi = sb_from_json(read_json_file(input_path), ctx);
            SBFunction out = fourier(phi, ctx);
            report["result"] = sb_to_json(out);
            if (common.oracle && !fourier_oracle_ok(phi, ctx, &report)) {
                emit(report, common);
                return 4;
            }
            emit(report, common);
            return 0;
        }
        if (cmd_convolve->parsed() || cmd_multiply->parsed()) {
            SBFunction a = sb_from_json(read_json_file(input_path), ctx);
            SBFunction b = sb_from_json(read_json_file(second_path), ctx);
            SBFunction out = cmd_convolve->parsed() ? convolve(a, b, ctx) : multiply(a, b, ctx);
            report["result"] = sb_to_json(out);
            if (common.oracle && cmd_convolve->parsed()) {
                // spot check against the direct double sum
                Rng rng(cfg.seed ^ 0xC0);
                bool ok = true;
                for (int i = 0; i < 5 && ok; ++i) {
                    FieldVec z(a.m());
                    for (size_t k = 0; k < a.m(); ++k)
                        z[k] = random_field_element(rng, ctx, -1, 1);
                    ok = evaluate_at_q(out, z, ctx) == brute_convolution_value(a, b, z, ctx);
                }
                report["oracle"] = Json{{"ok", ok}};
                if (!ok) {
                    emit(report, common);
                    return 4;
                }
            }
            emit(report, common);
            return 0;
        }
        if (cmd_integrate->parsed()) {
            SBFunction phi = sb_from_json(read_json_file(input_path), ctx);
            MotivicScalar v = integrate(phi, ctx);
            report["result"] = scalar_to_json(v, ctx);
            if (common.oracle) {
                bool ok = v.eval_at_q(ctx.q()) == brute_integral(phi, ctx);
                report["oracle"] = Json{{"ok", ok}};
                if (!ok) {
                    emit(report, common);
                    return 4;
                }
            }
            emit(report, common);
            return 0;
        }
        if (cmd_eval->parsed()) {
            SBFunction phi = sb_from_json(read_json_file(input_path), ctx);
            MotivicScalar v = evaluate(phi, parse_vec(point_text), ctx);
            report["result"] = scalar_to_json(v, ctx);
            emit(report, common);
            return 0;
        }
        if (cmd_wf->parsed()) {
            Distribution u = distribution_from_json(read_json_file(dist_path), ctx);
            LambdaGroup L{cfg.lambda_n};
            WFCertificate cert = wf_test(u, parse_vec(point_text), parse_vec(covector_text),
                                         radius, std::max<Ord>(L.n, 1), cfg.sweep_K, L, ctx);
            report["certificate"] = wf_certificate_to_json(cert, ctx);
            emit(report, common);
            return 0;
        }
        if (cmd_ss->parsed()) {
            Distribution u = distribution_from_json(read_json_file(dist_path), ctx);
            SSCertificate cert = ss_test(u, parse_vec(point_text), radius, cfg.sweep_K, ctx);
            report["certificate"] = ss_certificate_to_json(cert, ctx);
            emit(report, common);
            return 0;
        }
        if (cmd_pullback->parsed()) {
            Distribution u = distribution_from_json(read_json_file(dist_path), ctx);
            expr::PolyMap f = expr::PolyMap::parse(map_comps, map_vars, ctx);
            SmoothData data = smooth_data_from_json(Json::parse(data_json));
            Distribution pb = pullback(f, u, data, ctx);
            Json values = Json::array();
            for (const auto& q : queries_from_json(read_json_file(queries_path), ctx)) {
                Json row;
                row["query"] = query_to_json(q);
                row["value"] = scalar_to_json(pb.evaluate_query(q), ctx);
                values.push_back(std::move(row));
            }
            report["values"] = std::move(values);
            emit(report, common);
            return 0;
        }
        if (cmd_tensor->parsed() || cmd_product->parsed()) {
            Distribution a = distribution_from_json(read_json_file(input_path), ctx);
            Distribution b = distribution_from_json(read_json_file(second_path), ctx);
            Distribution out =
                cmd_tensor->parsed()
                    ? tensor(a, b, ctx)
                    : diagonal_product(a, b, smooth_data_from_json(Json::parse(data_json)), ctx);
            Json values = Json::array();
            for (const auto& q : queries_from_json(read_json_file(queries_path), ctx)) {
                Json row;
                row["query"] = query_to_json(q);
                row["value"] = scalar_to_json(out.evaluate_query(q), ctx);
                values.push_back(std::move(row));
            }
            report["values"] = std::move(values);
            emit(report, common);
            return 0;
        }
        if (cmd_oracle->parsed()) {
            SBFunction phi = sb_from_json(read_json_file(input_path), ctx);
            Rng rng(cfg.seed ^ 0x0C);
            std::vector<FieldVec> ys;
            for (int i = 0; i < 25; ++i) {
                FieldVec y(phi.m());
                for (size_t k = 0; k < phi.m(); ++k) y[k] = random_field_element(rng, ctx, -2, 2);
                ys.push_back(std::move(y));
            }
            OracleReport rep = oracle_compare_fourier(phi, ys, ctx, inject_error);
            report["oracle"] = Json{{"checked", rep.checked}, {"ok", rep.ok}};
            if (!rep.ok) report["oracle"]["mismatch"] = rep.mismatch;
            emit(report, common);
            return rep.ok ? 0 : 4;
        }
        if (cmd_selftest->parsed()) {
            auto results = run_acceptance(cfg);
            Json arr = Json::array();
            bool all = true;
            for (const auto& r : results) {
                Json row;
                row["id"] = r.id;
                row["name"] = r.name;
                row["pass"] = r.pass;
                row["detail"] = r.detail;
                row["seconds"] = r.seconds;
                arr.push_back(std::move(row));
                all = all && r.pass;
                std::cerr << "criterion " << r.id << (r.pass ? " PASS " : " FAIL ") << r.name
                          << " (" << r.seconds << "s)\n";
            }
            report["criteria"] = std::move(arr);
            report["all_pass"] = all;
            emit(report, common);
            return all ? 0 : 1;
        }
        if (cmd_parse->parsed()) {
            std::map<std::string, expr::Sort> sorts;
            for (const auto& v : int_vars) sorts[v] = expr::Sort::Int;
            expr::TermPtr t = expr::parse(expr_text, ctx, sorts);
            std::string printed = expr::print(t);
            expr::TermPtr t2 = expr::parse(printed, ctx, sorts);
            bool roundtrip = expr::print(t2) == printed;
            report["printed"] = printed;
            report["roundtrip"] = roundtrip;
            emit(report, common);
            return roundtrip ? 0 : 2;
        }
        throw InputError("no subcommand dispatched");
    } catch (const BudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const DataError& e) {
        std::cerr << "data/bound violation: " << e.what() << "\n";
        return 5;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
