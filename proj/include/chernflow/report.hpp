#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "chernflow/analysis.hpp"
#include "chernflow/flow.hpp"

namespace chernflow {

using Json = nlohmann::ordered_json;

/// Everything a subcommand run depends on.  Reports echo the config so a run
/// can be reproduced from its own output.
struct RunConfig {
    std::string subcommand;
    int n = 2;
    double T0 = 1.0;
    std::optional<double> lambda;
    std::optional<double> t;
    std::optional<double> t_end;
    int steps = 8;
    std::optional<Vector> z;
    int starts = 32;
    int samples = 50;
    std::uint64_t seed = 42;
    std::string format = "json";
    std::string quantity = "hbc";
    double resolution = 1e-4;
    double lambda_lo = -3.0;
    double lambda_hi = 0.99;

    bool operator==(const RunConfig& other) const;
};

Json to_json(const RunConfig& cfg);
RunConfig run_config_from_json(const Json& j);

/// Complex numbers serialize as [re, im]; vectors as arrays of pairs.
Json complex_to_json(const Complex& c);
Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j);

Json sign_report_to_json(const SignReport& rep);
Json tensor_to_json(const CurvatureTensor& R);
Json threshold_to_json(const ThresholdResult& res);
Json flow_trace_to_json(const FlowTrace& trace);

/// Assemble the envelope {config, results, tool_version, tolerances}.
Json make_report(const RunConfig& cfg, Json results, Json tolerances);

/// Parse an emitted report back into its config + results pair.
std::pair<RunConfig, Json> parse_report(const std::string& text);

/// CSV with the documented header `t,lambda,det_factor,min_hsc,min_hbc,verdict`,
/// doubles at 17 significant digits.
std::string flow_trace_to_csv(const FlowTrace& trace);

/// CSV with header `lambda,min_hsc,min_hbc,verdict`.
std::string lambda_scan_to_csv(const std::vector<SignReport>& rows);

/// `a`, `a+bi`, `a-bi` entries separated by commas, whitespace ignored.
Vector parse_complex_vector(const std::string& text);

/// 17-significant-digit decimal rendering used by every CSV writer.
std::string format_double(double x);

}  // namespace chernflow
