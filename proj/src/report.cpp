#include "chernflow/report.hpp"

#include <cctype>
#include <cstdio>
#include <sstream>

namespace chernflow {

namespace {

bool opt_equal(const std::optional<Vector>& a, const std::optional<Vector>& b) {
    if (a.has_value() != b.has_value()) return false;
    if (!a) return true;
    return a->size() == b->size() && *a == *b;
}

}  // namespace

bool RunConfig::operator==(const RunConfig& other) const {
    return subcommand == other.subcommand && n == other.n && T0 == other.T0 &&
           lambda == other.lambda && t == other.t && t_end == other.t_end &&
           steps == other.steps && opt_equal(z, other.z) && starts == other.starts &&
           samples == other.samples && seed == other.seed && format == other.format &&
           quantity == other.quantity && resolution == other.resolution &&
           lambda_lo == other.lambda_lo && lambda_hi == other.lambda_hi;
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

Json complex_to_json(const Complex& c) { return Json::array({c.real(), c.imag()}); }

Json vector_to_json(const Vector& v) {
    Json arr = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(complex_to_json(v(i)));
    return arr;
}

Vector vector_from_json(const Json& j) {
    Vector v(j.size());
    for (size_t i = 0; i < j.size(); ++i)
        v(static_cast<Eigen::Index>(i)) = Complex(j[i][0].get<double>(), j[i][1].get<double>());
    return v;
}

Json to_json(const RunConfig& cfg) {
    Json j;
    j["subcommand"] = cfg.subcommand;
    j["n"] = cfg.n;
    j["T0"] = cfg.T0;
    if (cfg.lambda) j["lambda"] = *cfg.lambda;
    if (cfg.t) j["t"] = *cfg.t;
    if (cfg.t_end) j["t_end"] = *cfg.t_end;
    j["steps"] = cfg.steps;
    if (cfg.z) j["z"] = vector_to_json(*cfg.z);
    j["starts"] = cfg.starts;
    j["samples"] = cfg.samples;
    j["seed"] = cfg.seed;
    j["format"] = cfg.format;
    j["quantity"] = cfg.quantity;
    j["resolution"] = cfg.resolution;
    j["lambda_lo"] = cfg.lambda_lo;
    j["lambda_hi"] = cfg.lambda_hi;
    return j;
}

RunConfig run_config_from_json(const Json& j) {
    RunConfig cfg;
    cfg.subcommand = j.at("subcommand").get<std::string>();
    cfg.n = j.at("n").get<int>();
    cfg.T0 = j.at("T0").get<double>();
    if (j.contains("lambda")) cfg.lambda = j["lambda"].get<double>();
    if (j.contains("t")) cfg.t = j["t"].get<double>();
    if (j.contains("t_end")) cfg.t_end = j["t_end"].get<double>();
    cfg.steps = j.at("steps").get<int>();
    if (j.contains("z")) cfg.z = vector_from_json(j["z"]);
    cfg.starts = j.at("starts").get<int>();
    cfg.samples = j.at("samples").get<int>();
    cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.format = j.at("format").get<std::string>();
    cfg.quantity = j.at("quantity").get<std::string>();
    cfg.resolution = j.at("resolution").get<double>();
    cfg.lambda_lo = j.at("lambda_lo").get<double>();
    cfg.lambda_hi = j.at("lambda_hi").get<double>();
    return cfg;
}

Json sign_report_to_json(const SignReport& rep) {
    Json j;
    j["parameter"] = Json{
        {"kind", rep.parameter.kind == ParameterTag::Kind::Lambda ? "lambda" : "t"},
        {"value", rep.parameter.value}};
    j["lambda"] = rep.lambda;
    j["min_hbc"] = rep.min_hbc;
    j["min_hsc"] = rep.min_hsc;
    j["verdict"] = to_string(rep.verdict);
    j["witness"] = Json{{"z", vector_to_json(rep.witness_z)},
                        {"xi", vector_to_json(rep.witness.xi)},
                        {"eta", vector_to_json(rep.witness.eta)}};
    j["seed"] = rep.seed;
    j["samples"] = rep.samples;
    j["starts"] = rep.starts;
    return j;
}

Json tensor_to_json(const CurvatureTensor& R) {
    const int n = R.dim();
    Json out = Json::array();
    for (int k = 0; k < n; ++k) {
        Json jk = Json::array();
        for (int j = 0; j < n; ++j) {
            Json ji = Json::array();
            for (int i = 0; i < n; ++i) {
                Json jq = Json::array();
                for (int q = 0; q < n; ++q) jq.push_back(complex_to_json(R(k, j, i, q)));
                ji.push_back(jq);
            }
            jk.push_back(ji);
        }
        out.push_back(jk);
    }
    return out;
}

Json threshold_to_json(const ThresholdResult& res) {
    Json j;
    j["t_star"] = res.t_star;
    j["bracket"] = Json::array({res.bracket_lo, res.bracket_hi});
    j["flip_window"] = Json::array({res.flip_lo, res.flip_hi});
    j["predicate_at_bracket"] = Json::array({res.predicate_at_lo, res.predicate_at_hi});
    j["evaluations"] = res.evaluations;
    return j;
}

Json flow_trace_to_json(const FlowTrace& trace) {
    Json j;
    j["n"] = trace.n;
    j["T0"] = trace.T0;
    j["seed"] = trace.seed;
    j["samples"] = trace.samples;
    j["starts"] = trace.starts;
    Json rows = Json::array();
    for (const auto& row : trace.rows) {
        rows.push_back(Json{{"t", row.t},
                            {"lambda", row.lambda},
                            {"det_factor", row.det_factor},
                            {"min_hsc", row.min_hsc},
                            {"min_hbc", row.min_hbc},
                            {"verdict", to_string(row.verdict)},
                            {"witness",
                             Json{{"z", vector_to_json(row.witness_z)},
                                  {"xi", vector_to_json(row.witness_xi)},
                                  {"eta", vector_to_json(row.witness_eta)}}}});
    }
    j["rows"] = rows;
    return j;
}

Json make_report(const RunConfig& cfg, Json results, Json tolerances) {
    Json j;
    j["tool"] = "chernflow";
    j["version"] = kToolVersion;
    j["config"] = to_json(cfg);
    j["results"] = std::move(results);
    j["tolerances"] = std::move(tolerances);
    return j;
}

std::pair<RunConfig, Json> parse_report(const std::string& text) {
    Json j = Json::parse(text);
    return {run_config_from_json(j.at("config")), j.at("results")};
}

std::string flow_trace_to_csv(const FlowTrace& trace) {
    std::ostringstream out;
    out << "t,lambda,det_factor,min_hsc,min_hbc,verdict\n";
    for (const auto& row : trace.rows) {
        out << format_double(row.t) << ',' << format_double(row.lambda) << ','
            << format_double(row.det_factor) << ',' << format_double(row.min_hsc) << ','
            << format_double(row.min_hbc) << ',' << to_string(row.verdict) << '\n';
    }
    return out.str();
}

std::string lambda_scan_to_csv(const std::vector<SignReport>& rows) {
    std::ostringstream out;
    out << "lambda,min_hsc,min_hbc,verdict\n";
    for (const auto& rep : rows) {
        out << format_double(rep.lambda) << ',' << format_double(rep.min_hsc) << ','
            << format_double(rep.min_hbc) << ',' << to_string(rep.verdict) << '\n';
    }
    return out.str();
}

namespace {

double parse_real(const std::string& tok, size_t& pos) {
    size_t consumed = 0;
    double value;
    try {
        value = std::stod(tok.substr(pos), &consumed);
    } catch (const std::exception&) {
        throw ParameterOutOfRange("bad complex literal: '" + tok + "'");
    }
    pos += consumed;
    return value;
}

Complex parse_complex(std::string tok) {
    std::string cleaned;
    for (char c : tok)
        if (!std::isspace(static_cast<unsigned char>(c))) cleaned.push_back(c);
    if (cleaned.empty()) throw ParameterOutOfRange("empty complex literal");

    size_t pos = 0;
    const double first = parse_real(cleaned, pos);
    if (pos == cleaned.size()) return Complex(first, 0.0);         // a
    if (cleaned[pos] == 'i' && pos + 1 == cleaned.size())
        return Complex(0.0, first);                                 // bi
    if (cleaned[pos] != '+' && cleaned[pos] != '-')
        throw ParameterOutOfRange("bad complex literal: '" + tok + "'");
    const double second = parse_real(cleaned, pos);                // sign folds into stod
    if (pos + 1 != cleaned.size() || cleaned[pos] != 'i')
        throw ParameterOutOfRange("bad complex literal: '" + tok + "'");
    return Complex(first, second);                                  // a+bi / a-bi
}

}  // namespace

Vector parse_complex_vector(const std::string& text) {
    std::vector<Complex> entries;
    std::string tok;
    std::istringstream in(text);
    while (std::getline(in, tok, ',')) entries.push_back(parse_complex(tok));
    if (entries.empty()) throw ParameterOutOfRange("empty coordinate list");
    Vector v(static_cast<Eigen::Index>(entries.size()));
    for (size_t i = 0; i < entries.size(); ++i) v(static_cast<Eigen::Index>(i)) = entries[i];
    return v;
}

}  // namespace chernflow
