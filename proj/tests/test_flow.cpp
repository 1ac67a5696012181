#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "chernflow/chern.hpp"
#include "chernflow/flow.hpp"
#include "chernflow/rng.hpp"

using namespace chernflow;

namespace {

Vector e1(int n) {
    Vector v = Vector::Zero(n);
    v(0) = 1.0;
    return v;
}

}  // namespace

TEST_CASE("exact flow metric: frozen diagonal values at z = e1") {
    const HopfFamily fam(2, 1.0);
    for (double t : {0.0, 0.25, 0.6, 0.9}) {
        const CMatrix g = exact_flow_metric(fam, t, e1(2)).mat();
        CHECK(std::abs(g(0, 0) - Complex(1.0, 0.0)) < 1e-14);
        CHECK(std::abs(g(1, 1) - Complex(2.0 - 2.0 * t, 0.0)) < 1e-14);
        CHECK(std::abs(g(0, 1)) < 1e-15);
    }
    CHECK_THROWS_AS(exact_flow_metric(fam, 1.0, e1(2)), ParameterOutOfRange);
    CHECK_THROWS_AS(exact_flow_metric(fam, -0.1, e1(2)), ParameterOutOfRange);
}

TEST_CASE("t = 0 recovers the initial metric coefficient") {
    std::mt19937_64 eng(501);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2 + trial % 3;
        const double T0 = 0.5 * trial;
        const HopfFamily fam(n, T0);
        const Vector z = random_point(eng, n, 0.5, 2.0);
        const double r2 = z.squaredNorm();
        const CMatrix g = exact_flow_metric(fam, 0.0, z).mat();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const Complex want = ((i == j ? (1.0 + T0) * r2 : 0.0) -
                                      T0 * std::conj(z(i)) * z(j)) /
                                     (r2 * r2);
                CHECK(std::abs(g(i, j) - want) < 1e-13);
            }
    }
}

TEST_CASE("determinant law det(w(t)) = (1 + T0 - n t)^(n-1) |z|^(-2n)") {
    std::mt19937_64 eng(502);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + trial % 3;
        const HopfFamily fam(n, 0.3 * trial);
        std::uniform_real_distribution<double> td(0.0, 0.99);
        const double t = td(eng) * fam.t_max();
        const Vector z = random_point(eng, n, 0.5, 2.0);
        const auto [inv, det] = hermitian_inverse_det(exact_flow_metric(fam, t, z));
        const double want = std::pow(1.0 + fam.T0 - fam.n * t, fam.n - 1) *
                            std::pow(z.squaredNorm(), -fam.n);
        CHECK(det.real() == doctest::Approx(want).epsilon(1e-10));

        // t = 0 specialization: det of the initial metric is (1+T0)^(n-1) |z|^(-2n)
        const auto [inv0, det0] = hermitian_inverse_det(exact_flow_metric(fam, 0.0, z));
        const double want0 = std::pow(1.0 + fam.T0, fam.n - 1) *
                             std::pow(z.squaredNorm(), -fam.n);
        CHECK(det0.real() == doctest::Approx(want0).epsilon(1e-10));
    }
}

TEST_CASE("reparametrization: w(t) = (1 + T0 - n t) h_{lambda(t)} to 1e-12") {
    std::mt19937_64 eng(503);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + trial % 3;
        const HopfFamily fam(n, 0.4 * trial);
        std::uniform_real_distribution<double> td(0.0, 0.99);
        const double t = td(eng) * fam.t_max();
        const Vector z = random_point(eng, n, 0.5, 2.0);
        const double c = 1.0 + fam.T0 - fam.n * t;
        const CMatrix lhs = exact_flow_metric(fam, t, z).mat();
        const CMatrix rhs = c * hopf_metric(LambdaMetric(n, lambda_of_t(fam, t)), z).mat();
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("max time and the vanishing eigenvalue") {
    CHECK(max_time(HopfFamily(2, 1.0)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(max_time(HopfFamily(3, 0.0)) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

    const HopfFamily fam(2, 1.0);
    const double eps = 1e-6;
    const Vector z = 1.3 * e1(2);
    const Eigen::VectorXd ev =
        hermitian_eigenvalues(exact_flow_metric(fam, fam.t_max() - eps, z));
    CHECK(ev(0) > 0.0);
    CHECK(ev(0) == doctest::Approx(fam.n * eps / z.squaredNorm()).epsilon(1e-6));
}

TEST_CASE("Ricci of the flow metric is constant in t") {
    const HopfFamily fam(2, 1.0);
    const Vector z = 0.9 * Vector::Ones(2);
    const CMatrix base = ricci_numeric(flow_metric_field(fam, 0.0), z).mat();
    for (double frac : {0.3, 0.9}) {
        const CMatrix at =
            ricci_numeric(flow_metric_field(fam, frac * fam.t_max()), z).mat();
        CHECK((base - at).cwiseAbs().maxCoeff() < 1e-6);
    }
}

TEST_CASE("time derivative of the exact solution equals -Ric") {
    std::mt19937_64 eng(504);
    const double delta = 1e-5;
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2 + trial % 3;
        const HopfFamily fam(n, 1.0);
        const Vector z = random_point(eng, n, 0.5, 2.0);
        const double t = 0.5 * fam.t_max();
        const CMatrix dgdt = (exact_flow_metric(fam, t + delta, z).mat() -
                              exact_flow_metric(fam, t - delta, z).mat()) /
                             (2.0 * delta);
        const CMatrix ric = ricci_closed(LambdaMetric(n, 0.0), z).mat();
        CHECK((dgdt + ric).cwiseAbs().maxCoeff() < 1e-6);
    }
}

TEST_CASE("euler: flat initial metric does not evolve") {
    MetricField flat{[](const Vector&) {
                         return HermitianMatrix(
                             CMatrix::Identity(2, 2),
                             HermitianMatrix::Definiteness::PositiveDefinite);
                     },
                     "flat"};
    const std::vector<Vector> pts = {e1(2), 0.7 * Vector::Ones(2)};
    const EulerResult res = euler_flow(flat, pts, 1e-2, 0.3);
    for (const auto& m : res.metrics)
        CHECK((m.mat() - CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("euler on the Hopf family tracks the exact solution") {
    std::mt19937_64 eng(505);
    const HopfFamily fam(2, 1.0);
    const double t_end = 0.9 * fam.t_max();
    std::vector<Vector> pts;
    for (int i = 0; i < 3; ++i) pts.push_back(random_point(eng, 2, 0.5, 2.0));
    const EulerResult res = euler_flow(fam, pts, 1e-3, t_end);
    CHECK(res.steps == 900);
    for (size_t i = 0; i < pts.size(); ++i) {
        const CMatrix want = exact_flow_metric(fam, t_end, pts[i]).mat();
        CHECK((res.metrics[i].mat() - want).cwiseAbs().maxCoeff() < 1e-5);
    }
}

TEST_CASE("euler step independence when Ricci is constant in t") {
    const HopfFamily fam(2, 1.0);
    const std::vector<Vector> pts = {1.2 * e1(2), 0.8 * Vector::Ones(2)};
    const EulerResult coarse = euler_flow(fam, pts, 1e-3, 0.3);
    const EulerResult fine = euler_flow(fam, pts, 1e-4, 0.3);
    for (size_t i = 0; i < pts.size(); ++i)
        CHECK((coarse.metrics[i].mat() - fine.metrics[i].mat()).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("euler reports loss of positive definiteness") {
    // T0 = 0 family evolved with a frozen-in-time field: the (n-1)-fold
    // eigenvalue hits zero at t = 1/n, so running past it must throw
    const HopfFamily fam(2, 0.0);
    const MetricField frozen = flow_metric_field(fam, 0.0);
    const std::vector<Vector> pts = {e1(2)};
    CHECK_THROWS_AS(euler_flow(frozen, pts, 1e-2, 0.7), NotPositiveDefinite);
}

TEST_CASE("flow trace: verdict pattern across the sign-change intervals") {
    const HopfFamily fam(2, 1.0);
    SampleOptions opt;
    opt.samples = 8;
    opt.starts = 12;
    opt.seed = 42;
    const FlowTrace trace =
        flow_trace(fam, {0.0, 0.25, 0.5, 0.6, 0.8, 0.9}, opt);
    REQUIRE(trace.rows.size() == 6);
    CHECK(trace.rows[0].verdict == Verdict::NonNegative);
    CHECK(trace.rows[1].verdict == Verdict::NonNegative);
    CHECK(trace.rows[2].verdict == Verdict::NonNegative);  // t = T0/n inclusive
    CHECK(trace.rows[3].verdict == Verdict::GapExplored);
    CHECK(trace.rows[4].verdict == Verdict::Negative);
    CHECK(trace.rows[5].verdict == Verdict::Negative);
    for (size_t i = 1; i < trace.rows.size(); ++i) {
        CHECK(trace.rows[i].lambda < trace.rows[i - 1].lambda);
        CHECK(trace.rows[i].det_factor > 0.0);
    }
    CHECK_THROWS_AS(flow_trace(fam, {0.5, 0.5}, opt), ParameterOutOfRange);
    CHECK_THROWS_AS(flow_trace(fam, {0.5, 1.0}, opt), ParameterOutOfRange);
}
