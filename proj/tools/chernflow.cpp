// chernflow: explore the explicit Chern-Ricci flow on diagonal Hopf manifolds.
//
// Subcommands: tensor, min-bisec, flow, threshold, scan-lambda, verify.
// Exit codes: 0 success, 1 verify-suite failure, 2 usage error,
//             3 internal tolerance breach.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "chernflow/analysis.hpp"
#include "chernflow/chern.hpp"
#include "chernflow/flow.hpp"
#include "chernflow/hopf.hpp"
#include "chernflow/report.hpp"
#include "chernflow/verify.hpp"

namespace cf = chernflow;

namespace {

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw cf::ParameterOutOfRange("cannot open output file: " + out_path);
    out << text;
}

// --lambda and --t/--T0 are alternative parametrizations of the same family
// member; exactly one must be given.
double resolve_lambda(const cf::RunConfig& cfg) {
    if (cfg.lambda && cfg.t)
        throw cf::ParameterOutOfRange("give either --lambda or --t, not both");
    if (cfg.lambda) return *cfg.lambda;
    if (cfg.t) return cf::lambda_of_t(cf::HopfFamily(cfg.n, cfg.T0), *cfg.t);
    throw cf::ParameterOutOfRange("one of --lambda or --t is required");
}

int cmd_tensor(const cf::RunConfig& cfg, const std::string& out_path) {
    if (!cfg.z) throw cf::ParameterOutOfRange("--z is required for tensor");
    const double lambda = resolve_lambda(cfg);
    const cf::LambdaMetric m(cfg.n, lambda);
    const cf::CurvatureTensor closed = cf::hopf_curvature(m, *cfg.z);
    const cf::CurvatureTensor numeric =
        cf::curvature_numeric(cf::hopf_metric_field(m), *cfg.z);
    const double deviation =
        numeric.max_abs_diff(closed) / std::max(closed.max_abs(), 1e-300);

    cf::Json results;
    results["lambda"] = lambda;
    results["z"] = cf::vector_to_json(*cfg.z);
    results["index_order"] = "k,j,i,q";
    results["components"] = cf::tensor_to_json(closed);
    results["oracle_max_deviation"] = deviation;
    const cf::Json report =
        cf::make_report(cfg, results, cf::Json{{"oracle_rel_deviation", 1e-5}});
    write_output(out_path, report.dump(2) + "\n");
    if (deviation > 1e-5)
        throw cf::ToleranceBreach("oracle deviation " + cf::format_double(deviation) +
                                  " exceeds 1e-5");
    return 0;
}

int cmd_min_bisec(const cf::RunConfig& cfg, const std::string& out_path) {
    const double lambda = resolve_lambda(cfg);
    cf::SignReport rep =
        cfg.z ? cf::analyze_lambda_at(lambda, *cfg.z, cfg.starts, cfg.seed)
              : cf::analyze_lambda(cfg.n, lambda,
                                   cf::SampleOptions{cfg.samples, cfg.starts, cfg.seed});
    if (cfg.t) rep.parameter = cf::ParameterTag{cf::ParameterTag::Kind::Time, *cfg.t};
    const cf::Json report = cf::make_report(cfg, cf::sign_report_to_json(rep),
                                            cf::Json{{"sign_cutoff", cf::kSignCutoff}});
    write_output(out_path, report.dump(2) + "\n");
    return 0;
}

int cmd_flow(const cf::RunConfig& cfg, const std::string& out_path,
             bool allow_near_singular) {
    const cf::HopfFamily fam(cfg.n, cfg.T0);
    const double default_end = 0.999 * fam.t_max();
    const double t_end = cfg.t_end.value_or(default_end);
    if (!(t_end >= 0.0) || !(t_end < fam.t_max()))
        throw cf::ParameterOutOfRange("--t-end must lie in [0, T_max)");
    if (t_end > default_end && !allow_near_singular)
        throw cf::ParameterOutOfRange(
            "--t-end beyond 0.999*T_max needs --allow-near-singular");
    if (cfg.steps < 1) throw cf::ParameterOutOfRange("--steps must be >= 1");

    std::vector<double> times;
    for (int i = 0; i < cfg.steps; ++i)
        times.push_back(cfg.steps == 1 ? 0.0 : t_end * i / (cfg.steps - 1));
    const cf::FlowTrace trace = cf::flow_trace(
        fam, times, cf::SampleOptions{cfg.samples, cfg.starts, cfg.seed});

    if (cfg.format == "csv") {
        write_output(out_path, cf::flow_trace_to_csv(trace));
    } else {
        const cf::Json report = cf::make_report(cfg, cf::flow_trace_to_json(trace),
                                                cf::Json{{"sign_cutoff", cf::kSignCutoff}});
        write_output(out_path, report.dump(2) + "\n");
    }
    return 0;
}

int cmd_threshold(const cf::RunConfig& cfg, const std::string& out_path) {
    const cf::HopfFamily fam(cfg.n, cfg.T0);
    const cf::CurvatureQuantity q = cfg.quantity == "hsc" ? cf::CurvatureQuantity::Hsc
                                                          : cf::CurvatureQuantity::Hbc;
    const cf::ThresholdResult res = cf::threshold_bisect(
        fam, q, cfg.resolution, cf::SampleOptions{cfg.samples, cfg.starts, cfg.seed});
    cf::Json results = cf::threshold_to_json(res);
    results["quantity"] = cfg.quantity;
    const cf::Json report = cf::make_report(
        cfg, results,
        cf::Json{{"sign_cutoff", cf::kSignCutoff}, {"resolution", cfg.resolution}});
    write_output(out_path, report.dump(2) + "\n");
    return 0;
}

int cmd_scan_lambda(const cf::RunConfig& cfg, const std::string& out_path) {
    if (cfg.steps < 2) throw cf::ParameterOutOfRange("--steps must be >= 2 for a scan");
    if (!(cfg.lambda_lo < cfg.lambda_hi) || !(cfg.lambda_hi < 1.0))
        throw cf::ParameterOutOfRange("need lambda_lo < lambda_hi < 1");
    std::vector<cf::SignReport> rows;
    for (int i = 0; i < cfg.steps; ++i) {
        const double lambda =
            cfg.lambda_lo + (cfg.lambda_hi - cfg.lambda_lo) * i / (cfg.steps - 1);
        rows.push_back(cf::analyze_lambda(
            cfg.n, lambda, cf::SampleOptions{cfg.samples, cfg.starts, cfg.seed}));
    }
    if (cfg.format == "csv") {
        write_output(out_path, cf::lambda_scan_to_csv(rows));
    } else {
        cf::Json arr = cf::Json::array();
        for (const auto& rep : rows) arr.push_back(cf::sign_report_to_json(rep));
        const cf::Json report = cf::make_report(cfg, arr,
                                                cf::Json{{"sign_cutoff", cf::kSignCutoff}});
        write_output(out_path, report.dump(2) + "\n");
    }
    return 0;
}

int cmd_verify(const cf::RunConfig& cfg, const std::string& out_path) {
    const auto results = cf::run_verify_suite(cfg.seed);
    std::string text;
    int failures = 0;
    for (const auto& r : results) {
        text += cf::format_check_line(r) + "\n";
        if (!r.pass) ++failures;
    }
    text += "verify: " + std::to_string(results.size() - failures) + "/" +
            std::to_string(results.size()) + " checks passed (seed " +
            std::to_string(cfg.seed) + ")\n";
    write_output(out_path, text);
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chern-Ricci flow on diagonal Hopf manifolds: closed-form "
                 "curvature, bisectional-curvature minimization, flow traces"};
    app.require_subcommand(1);

    cf::RunConfig cfg;
    std::string z_text;
    std::string out_path;
    bool allow_near_singular = false;
    double lambda_in = 0.0;
    double t_in = 0.0;
    double t_end_in = 0.0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--n", cfg.n, "complex dimension")->check(CLI::PositiveNumber);
        sub->add_option("--T0", cfg.T0, "initial-metric parameter T0 >= 0");
        sub->add_option("--starts", cfg.starts, "minimizer restarts");
        sub->add_option("--samples", cfg.samples, "unit-sphere sample points");
        sub->add_option("--seed", cfg.seed, "RNG seed (echoed in every report)");
        sub->add_option("--out", out_path, "output file (default stdout)");
        sub->add_option("--format", cfg.format, "json|csv")
            ->check(CLI::IsMember({"json", "csv"}));
    };

    CLI::App* tensor = app.add_subcommand(
        "tensor", "closed-form curvature tensor plus finite-difference deviation");
    CLI::App* minb = app.add_subcommand(
        "min-bisec", "global minimum of holomorphic bisectional curvature");
    CLI::App* flow = app.add_subcommand("flow", "classified trace along the flow");
    CLI::App* thresh = app.add_subcommand(
        "threshold", "bisect for the empirical curvature sign-change time");
    CLI::App* scan = app.add_subcommand(
        "scan-lambda", "minimum curvatures across a lambda grid");
    CLI::App* verify = app.add_subcommand(
        "verify", "run the full invariant and acceptance suite");

    for (CLI::App* sub : {tensor, minb, flow, thresh, scan, verify}) add_common(sub);
    for (CLI::App* sub : {tensor, minb}) {
        sub->add_option("--lambda", lambda_in, "family parameter lambda < 1");
        sub->add_option("--t", t_in, "flow time (with --T0)");
        sub->add_option("--z", z_text, "point, e.g. \"1,0\" or \"1+2i,0.5-1i\"");
    }
    flow->add_option("--t-end", t_end_in, "last trace time (default 0.999*T_max)");
    flow->add_option("--steps", cfg.steps, "number of trace rows");
    flow->add_flag("--allow-near-singular", allow_near_singular,
                   "permit t-end beyond 0.999*T_max");
    thresh->add_option("--quantity", cfg.quantity, "hsc|hbc")
        ->check(CLI::IsMember({"hsc", "hbc"}));
    thresh->add_option("--resolution", cfg.resolution, "bisection resolution");
    scan->add_option("--lambda-lo", cfg.lambda_lo, "scan start");
    scan->add_option("--lambda-hi", cfg.lambda_hi, "scan end (< 1)");
    scan->add_option("--steps", cfg.steps, "number of scan rows");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    CLI::App* sub = app.get_subcommands().front();
    cfg.subcommand = sub->get_name();
    auto given = [&](const char* name) {
        const CLI::Option* opt = sub->get_option_no_throw(name);
        return opt != nullptr && opt->count() > 0;
    };
    if (given("--lambda")) cfg.lambda = lambda_in;
    if (given("--t")) cfg.t = t_in;
    if (given("--t-end")) cfg.t_end = t_end_in;
    // trace-like subcommands emit plot-ready CSV unless asked otherwise
    if (!given("--format") && (cfg.subcommand == "flow" || cfg.subcommand == "scan-lambda"))
        cfg.format = "csv";

    try {
        if (!z_text.empty()) {
            cfg.z = cf::parse_complex_vector(z_text);
            if (cfg.z->size() != cfg.n) {
                if (sub->count("--n"))
                    throw cf::ParameterOutOfRange("--z length does not match --n");
                cfg.n = static_cast<int>(cfg.z->size());
            }
        }
        if (cfg.subcommand == "tensor") return cmd_tensor(cfg, out_path);
        if (cfg.subcommand == "min-bisec") return cmd_min_bisec(cfg, out_path);
        if (cfg.subcommand == "flow") return cmd_flow(cfg, out_path, allow_near_singular);
        if (cfg.subcommand == "threshold") return cmd_threshold(cfg, out_path);
        if (cfg.subcommand == "scan-lambda") return cmd_scan_lambda(cfg, out_path);
        if (cfg.subcommand == "verify") return cmd_verify(cfg, out_path);
        std::cerr << "unknown subcommand\n";
        return 2;
    } catch (const cf::ToleranceBreach& e) {
        std::cerr << "tolerance breach: " << e.what() << "\n";
        return 3;
    } catch (const cf::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
