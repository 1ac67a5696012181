#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "chernflow/report.hpp"

using namespace chernflow;

TEST_CASE("complex literal grammar") {
    const Vector a = parse_complex_vector("1,0");
    REQUIRE(a.size() == 2);
    CHECK(a(0) == Complex(1.0, 0.0));
    CHECK(a(1) == Complex(0.0, 0.0));

    const Vector b = parse_complex_vector(" 1+2i , 0.5-1i ,-3 ");
    REQUIRE(b.size() == 3);
    CHECK(b(0) == Complex(1.0, 2.0));
    CHECK(b(1) == Complex(0.5, -1.0));
    CHECK(b(2) == Complex(-3.0, 0.0));

    CHECK(parse_complex_vector("2i")(0) == Complex(0.0, 2.0));
    CHECK(parse_complex_vector("-1.5e-2")(0) == Complex(-0.015, 0.0));

    CHECK_THROWS_AS(parse_complex_vector(""), ParameterOutOfRange);
    CHECK_THROWS_AS(parse_complex_vector("1+"), ParameterOutOfRange);
    CHECK_THROWS_AS(parse_complex_vector("i"), ParameterOutOfRange);
    CHECK_THROWS_AS(parse_complex_vector("1+2j"), ParameterOutOfRange);
    CHECK_THROWS_AS(parse_complex_vector("1,,2"), ParameterOutOfRange);
    CHECK_THROWS_AS(parse_complex_vector("1+2i3"), ParameterOutOfRange);
}

TEST_CASE("17-significant-digit doubles survive the round trip") {
    std::mt19937_64 eng(601);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double x = dist(eng) * std::pow(10.0, trial % 7 - 3);
        CHECK(std::stod(format_double(x)) == x);
    }
    CHECK(std::stod(format_double(-1.0 / 3.0)) == -1.0 / 3.0);
}

TEST_CASE("config round trip preserves every field") {
    RunConfig cfg;
    cfg.subcommand = "flow";
    cfg.n = 3;
    cfg.T0 = 2.0;
    cfg.t_end = 0.7;
    cfg.steps = 12;
    cfg.starts = 16;
    cfg.samples = 25;
    cfg.seed = 12345;
    cfg.format = "csv";
    Vector z(3);
    z << Complex(1.0, 2.0), Complex(0.0, -1.0), Complex(0.5, 0.0);
    cfg.z = z;
    const RunConfig back = run_config_from_json(to_json(cfg));
    CHECK(back == cfg);

    RunConfig minimal;
    minimal.subcommand = "verify";
    CHECK(run_config_from_json(to_json(minimal)) == minimal);
}

TEST_CASE("report envelope round trip") {
    RunConfig cfg;
    cfg.subcommand = "threshold";
    cfg.quantity = "hsc";
    const Json results = Json{{"t_star", 0.75}, {"bracket", Json::array({0.5, 0.75})}};
    const Json report = make_report(cfg, results, Json{{"resolution", 1e-4}});
    const std::string text = report.dump(2);
    const auto [cfg2, results2] = parse_report(text);
    CHECK(cfg2 == cfg);
    CHECK(results2 == results);
    CHECK(report.at("version").get<std::string>() == kToolVersion);
}

TEST_CASE("complex serialization is a [re, im] pair") {
    const Json j = complex_to_json(Complex(1.5, -2.0));
    CHECK(j.is_array());
    CHECK(j[0].get<double>() == 1.5);
    CHECK(j[1].get<double>() == -2.0);
    Vector v(2);
    v << Complex(0.0, 1.0), Complex(2.0, 0.0);
    CHECK(vector_from_json(vector_to_json(v)) == v);
}

TEST_CASE("lambda scan CSV header") {
    const std::string csv = lambda_scan_to_csv({});
    CHECK(csv == "lambda,min_hsc,min_hbc,verdict\n");
}
