#include "chernflow/verify.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "chernflow/analysis.hpp"
#include "chernflow/chern.hpp"
#include "chernflow/flow.hpp"
#include "chernflow/hopf.hpp"
#include "chernflow/report.hpp"
#include "chernflow/rng.hpp"

namespace chernflow {

namespace {

// Fixed stream bases keep every check's randomness independent of the others.
enum Stream : std::uint64_t {
    kCalculus = 0x01000000,
    kHopf = 0x02000000,
    kChern = 0x03000000,
    kAnalysis = 0x04000000,
    kFlow = 0x05000000,
    kReport = 0x06000000,
    kCriteria = 0x07000000,
};

struct Sample {
    int n;
    double lambda;
    Vector z;
};

Sample random_sample(std::mt19937_64& eng) {
    std::uniform_int_distribution<int> dim(2, 4);
    std::uniform_real_distribution<double> lam(-3.0, 0.99);
    Sample s;
    s.n = dim(eng);
    s.lambda = lam(eng);
    s.z = random_point(eng, s.n, 0.5, 2.0);
    return s;
}

double rel_dev(const CurvatureTensor& got, const CurvatureTensor& want) {
    return got.max_abs_diff(want) / std::max(want.max_abs(), 1e-300);
}

double rel_dev(const ChristoffelTensor& got, const ChristoffelTensor& want) {
    return got.max_abs_diff(want) / std::max(want.max_abs(), 1e-300);
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

CheckResult bound_check(const std::string& name, double value, double bound,
                        const std::string& what) {
    std::ostringstream detail;
    detail << what << " = " << format_double(value) << " (bound " << format_double(bound)
           << ")";
    return {name, value <= bound, detail.str()};
}

// ---------------------------------------------------------------- calculus

CheckResult check_wirtinger_linearity(std::uint64_t seed) {
    std::mt19937_64 eng(subseed(seed, kCalculus + 1));
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + trial % 3;
        const Vector z = random_point(eng, n, 0.5, 2.0);
        const Vector w = random_point(eng, n, 0.5, 2.0);
        // modest field magnitudes keep shared-stencil rounding below the
        // 1e-12 bound at the 1e-5 step
        ScalarField f = [&w](const Vector& p) {
            return 0.02 * w.dot(p) * p.squaredNorm();
        };
        ScalarField g = [](const Vector& p) {
            return Complex(0.02 * std::log(p.squaredNorm()), 0.0);
        };
        const Complex alpha(coef(eng), coef(eng));
        const Complex beta(coef(eng), coef(eng));
        ScalarField combo = [&](const Vector& p) { return alpha * f(p) + beta * g(p); };
        const double step = FdSteps::first_order(z);
        for (auto kind : {WirtingerKind::Holomorphic, WirtingerKind::Antiholomorphic}) {
            const int k = trial % n;
            const Complex lhs = wirtinger_derivative(combo, z, k, kind, step);
            const Complex rhs = alpha * wirtinger_derivative(f, z, k, kind, step) +
                                beta * wirtinger_derivative(g, z, k, kind, step);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    }
    return bound_check("inv.calculus.wirtinger_linearity", worst, 1e-12, "max |lhs-rhs|");
}

CheckResult check_conjugation_duality(std::uint64_t seed) {
    std::mt19937_64 eng(subseed(seed, kCalculus + 2));
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + trial % 3;
        const Vector z = random_point(eng, n, 0.5, 2.0);
        const Vector w = random_point(eng, n, 0.5, 2.0);
        ScalarField f = [&w](const Vector& p) {
            return w.dot(p) + Complex(0.0, 0.5) * p.squaredNorm();
        };
        ScalarField fbar = [&f](const Vector& p) { return std::conj(f(p)); };
        const double step = FdSteps::first_order(z);
        const int k = trial % n;
        const Complex anti =
            wirtinger_derivative(f, z, k, WirtingerKind::Antiholomorphic, step);
        const Complex dual = std::conj(
            wirtinger_derivative(fbar, z, k, WirtingerKind::Holomorphic, step));
        worst = std::max(worst, std::abs(anti - dual));
    }
    return bound_check("inv.calculus.conjugation_duality", worst, 1e-12, "max |lhs-rhs|");
}

HermitianMatrix random_hermitian(std::mt19937_64& eng, int n) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = Complex(gauss(eng), gauss(eng));
    return HermitianMatrix(m);  // constructor symmetrizes
}

CheckResult check_inverse_hermitian(std::uint64_t seed) {
    std::mt19937_64 eng(subseed(seed, kCalculus + 3));
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + trial % 7;
        const HermitianMatrix m = random_hermitian(eng, n);
        const auto [inv, det] = hermitian_inverse_det(m);
        worst = std::max(worst, max_abs_diff(inv.mat(), inv.mat().adjoint()));
        worst = std::max(worst, max_abs_diff(m.mat() * inv.mat(),
                                             CMatrix::Identity(n, n)));
    }
    return bound_check("inv.calculus.inverse_hermitian", worst, 1e-12,
                       "max hermiticity/round-trip defect");
}

CheckResult check_eigen_floor(std::uint64_t seed) {
    std::mt19937_64 eng(subseed(seed, kCalculus + 4));
    double worst = 0.0;  // how far below the floor any Rayleigh quotient dips
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + trial % 7;
        const HermitianMatrix m = random_hermitian(eng, n);
        const auto [mu, v] = hermitian_min_eigen(m);
        const double res = (m.mat() * v - mu * v).norm();
        const double norm = m.mat().norm();
        if (res > 1e-10 * norm)
            return {"inv.calculus.eigen_floor", false, "eigen residual too large"};
        for (int probe = 0; probe < 20; ++probe) {
            const Vector u = random_unit_vector(eng, n);
            const double rayleigh = (u.adjoint() * m.mat() * u)(0).real();
            worst = std::max(worst, (mu - 1e-10 * norm) - rayleigh);
        }
    }
    return bound_check("inv.calculus.eigen_floor", worst, 0.0,
                       "max floor violation");
}

// -------------------------------------------------------------------- hopf

CheckResult check_hopf_spectrum(std::uint64_t seed) {
    std::mt19937_64 eng(subseed(seed, kHopf + 1));
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const Sample s = random_sample(eng);
        const double r2 = s.z.squaredNorm();
        const Eigen::VectorXd ev =
            hermitian_eigenvalues(hopf_metric(LambdaMetric(s.n, s.lambda), s.z));
        Eigen::VectorXd expected(s.n);
        for (int i = 0; i < s.n - 1; ++i) expected(i) = 1.0 / r2;
        expected(s.n - 1) = (1.0 - s.lambda) / r2;
        std::sort(expected.data(), expected.data() + s.n);
        if (!(ev(0) > 0.0)) return {"inv.hopf.positive_definite_spectrum", false,
                                    "metric not positive-definite"};
        worst = std::max(worst, (ev - expected).cwiseAbs().maxCoeff());
    }
    return bound_check("inv.hopf.positive_definite_spectrum", worst, 1e-10,
                       "max eigenvalue deviation");
}

CheckResult check_transpose_inverse(std::uint64_t seed, const std::string& name,
                                    double bound) {
    std::mt19937_64 eng(subseed(seed, kHopf + 2));
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const Sample s = random_sample(eng);
        const LambdaMetric m(s.n, s.lambda);
        const CMatrix h = hopf_metric(m, s.z).mat();
        const CMatrix hinv = hopf_metric_inverse(m, s.z).mat();
        // sum_j hinv(i,j) h(k,j) = delta_ik
        worst = std::max(worst, max_abs_diff(hinv * h.transpose(),
                                             CMatrix::Identity(s.n, s.n)));
    }
    return bound_check(name, worst, bound, "max contract deviation");
}

struct OracleDeviation {
    double gamma = 0.0;
    double curv = 0.0;
    double ricci = 0.0;
};

OracleDeviation oracle_deviation(std::uint64_t seed, int samples) {
    std::mt19937_64 eng(seed);
    OracleDeviation dev;
    for (int trial = 0; trial < samples; ++trial) {
        const Sample s = random_sample(eng);
        const LambdaMetric m(s.n, s.lambda);
        const MetricField field = hopf_metric_field(m);
        dev.gamma = std::max(dev.gamma, rel_dev(christoffel_numeric(field, s.z),
                                                hopf_christoffel(m, s.z)));
        dev.curv = std::max(dev.curv, rel_dev(curvature_numeric(field, s.z),
                                              hopf_curvature(m, s.z)));
        const CMatrix closed = ricci_closed(m, s.z).mat();
        dev.ricci = std::max(dev.ricci,
                             max_abs_diff(ricci_numeric(field, s.z).mat(), closed) /
                                 closed.cwiseAbs().maxCoeff());
    }
    return dev;
}

CheckResult check_closed_vs_oracle(std::uint64_t seed, std::uint64_t stream,
                                   const std::string& name) {
    const OracleDeviation dev = oracle_deviation(subseed(seed, stream), 100);
    const double worst = std::max({dev.gamma, dev.curv, dev.ricci});
    std::ostringstream detail;
    detail << "rel dev gamma/curv/ricci = " << format_double(dev.gamma) << "/"
           << format_double(dev.curv) << "/" << format_double(dev.ricci)
           << " (bound 1e-05)";
    return {name, worst <= 1e-5, detail.str()};
}

CheckResult check_ricci_lambda_independent(std::uint64_t seed) {
    std::mt19937_64 eng(subseed(seed, kHopf + 4));
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + trial % 3;
        const Vector z = random_point(eng, n, 0.5, 2.0);
        const CMatrix base = ricci_closed(LambdaMetric(n, 0.5), z).mat();
        for (double lambda : {-3.0, -1.0, 0.0, 0.9}) {
            const CMatrix other = ricci_closed(LambdaMetric(n, lambda), z).mat();
            if (base != other)
                return {"inv.hopf.ricci_lambda_independent", false,
                        "Ricci coefficients changed with lambda"};
        }
    }
    return {"inv.hopf.ricci_lambda_independent", true,
            "bitwise identical across lambda"};
}

CheckResult check_curvature_symmetry(std::uint64_t seed) {
    std::mt19937_64 eng(subseed(seed, kHopf + 5));
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const Sample s = random_sample(eng);
        worst = std::max(
            worst, hopf_curvature(LambdaMetric(s.n, s.lambda), s.z).chern_symmetry_defect());
    }
    return bound_check("inv.hopf.curvature_chern_symmetry", worst, 1e-12,
                       "max symmetry defect");
}

CheckResult check_scale_covariance(std::uint64_t seed) {
    std::mt19937_64 eng(subseed(seed, kHopf + 6));
    std::uniform_real_distribution<double> mag(0.3, 3.0);
    std::uniform_real_distribution<double> ang(0.0, 6.28318);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const Sample s = random_sample(eng);
        const LambdaMetric m(s.n, s.lambda);
        const Complex c = std::polar(mag(eng), ang(eng));
        const CurvatureTensor base = hopf_curvature(m, s.z);
        const CurvatureTensor scaled = hopf_curvature(m, (c * s.z).eval());
        CurvatureTensor expected(s.n);
        const double f = std::pow(std::abs(c), -4.0);
        for (int k = 0; k < s.n; ++k)
            for (int j = 0; j < s.n; ++j)
                for (int i = 0; i < s.n; ++i)
                    for (int q = 0; q < s.n; ++q)
                        expected(k, j, i, q) = f * base(k, j, i, q);
        worst = std::max(worst, rel_dev(scaled, expected));
    }
    return bound_check("inv.hopf.scale_covariance", worst, 1e-10, "max rel deviation");
}

// ------------------------------------------------------------------- chern

CheckResult check_step_robustness(std::uint64_t seed) {
    std::mt19937_64 eng(subseed(seed, kChern + 2));
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const Sample s = random_sample(eng);
        const MetricField field = hopf_metric_field(LambdaMetric(s.n, s.lambda));
        const double inner = FdSteps::first_order(s.z);
        const double outer = FdSteps::outer(s.z);
        const CurvatureTensor full = curvature_numeric(field, s.z, inner, outer);
        const CurvatureTensor half = curvature_numeric(field, s.z, inner, outer / 2.0);
        worst = std::max(worst, rel_dev(half, full));
    }
    return bound_check("inv.chern.step_robustness", worst, 4e-5,
                       "max step-halving change");
}

CheckResult check_ricci_trace_route(std::uint64_t seed) {
    std::mt19937_64 eng(subseed(seed, kChern + 3));
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const Sample s = random_sample(eng);
        const LambdaMetric m(s.n, s.lambda);
        // route 1: log det of the evaluated metric matrices
        const CMatrix viaField = ricci_numeric(hopf_metric_field(m), s.z).mat();
        // route 2: -dd-bar of the closed determinant formula
        ScalarField logdet = [&m](const Vector& w) {
            return Complex(std::log(hopf_det(m, w)), 0.0);
        };
        const CMatrix viaDet = neg_dd_bar(logdet, s.z).mat();
        worst = std::max(worst, max_abs_diff(viaField, viaDet));
    }
    return bound_check("inv.chern.ricci_trace_route", worst, 1e-6, "max route gap");
}

// ---------------------------------------------------------------- analysis

CheckResult check_contraction_realness(std::uint64_t seed) {
    std::mt19937_64 eng(subseed(seed, kAnalysis + 1));
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const Sample s = random_sample(eng);
        const CurvatureTensor R = hopf_curvature(LambdaMetric(s.n, s.lambda), s.z);
        const Vector xi = random_unit_vector(eng, s.n);
        const Vector eta = random_unit_vector(eng, s.n);
        Complex acc(0.0, 0.0);
        for (int k = 0; k < s.n; ++k)
            for (int j = 0; j < s.n; ++j)
                for (int i = 0; i < s.n; ++i)
                    for (int q = 0; q < s.n; ++q)
                        acc += R(k, j, i, q) * xi(k) * std::conj(xi(j)) * eta(i) *
                               std::conj(eta(q));
        worst = std::max(worst, std::abs(acc.imag()));
    }
    return bound_check("inv.analysis.contraction_realness", worst, 1e-9,
                       "max imaginary residue");
}

CheckResult check_homogeneity(std::uint64_t seed) {
    std::mt19937_64 eng(subseed(seed, kAnalysis + 2));
    std::uniform_real_distribution<double> mag(0.3, 2.0);
    std::uniform_real_distribution<double> ang(0.0, 6.28318);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const Sample s = random_sample(eng);
        const CurvatureTensor R = hopf_curvature(LambdaMetric(s.n, s.lambda), s.z);
        const Vector xi = random_unit_vector(eng, s.n);
        const Vector eta = random_unit_vector(eng, s.n);
        const Complex c = std::polar(mag(eng), ang(eng));
        const Complex d = std::polar(mag(eng), ang(eng));
        const double lhs = hbc(R, (c * xi).eval(), (d * eta).eval());
        const double rhs = std::norm(c) * std::norm(d) * hbc(R, xi, eta);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return bound_check("inv.analysis.homogeneity", worst, 1e-12, "max |lhs-rhs|");
}

CheckResult check_ab_equivalence(std::uint64_t seed, const std::string& name, int trials) {
    std::mt19937_64 eng(subseed(seed, kAnalysis + 3));
    double worst = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
        const Sample s = random_sample(eng);
        const CurvatureTensor R = hopf_curvature(LambdaMetric(s.n, s.lambda), s.z);
        const Vector xi = random_unit_vector(eng, s.n);
        const double viaTensor = hsc(R, xi);
        const double viaAb = hopf_hsc_ab(s.lambda, ab_from_frame(s.z, xi));
        worst = std::max(worst, std::abs(viaTensor - viaAb));
    }
    return bound_check(name, worst, 1e-10, "max |tensor - ab|");
}

CheckResult check_nonneg_lambda_range(std::uint64_t seed) {
    double lowest = 0.0;
    for (double lambda : {0.0, 0.25, 0.5, 0.9, 0.99}) {
        SampleOptions opt;
        opt.samples = 50;
        opt.starts = 32;
        opt.seed = subseed(seed, kAnalysis + 4) ^ std::hash<double>{}(lambda);
        const SignReport rep = analyze_lambda(2, lambda, opt);
        lowest = std::min(lowest, rep.min_hbc);
        if (rep.verdict != Verdict::NonNegative)
            return {"inv.analysis.nonneg_lambda_range", false,
                    "unexpected verdict at lambda = " + format_double(lambda)};
    }
    return bound_check("inv.analysis.nonneg_lambda_range", -lowest, 1e-9,
                       "-(min over lambda grid of min_hbc)");
}

CheckResult check_hsc_boundary(std::uint64_t seed) {
    std::mt19937_64 eng(subseed(seed, kAnalysis + 5));
    double lowest = 0.0;
    for (double lambda : {-1.0, -0.5}) {
        for (int trial = 0; trial < 50; ++trial) {
            const int n = 2 + trial % 3;
            const Vector z = random_point(eng, n, 0.5, 2.0);
            lowest = std::min(lowest, hopf_min_hsc(lambda, z));
        }
    }
    return bound_check("inv.analysis.hsc_boundary", -lowest, 1e-9,
                       "-(min HSC at lambda in {-1,-0.5})");
}

CheckResult check_negativity_witness(std::uint64_t seed) {
    std::mt19937_64 eng(subseed(seed, kAnalysis + 6));
    double worstFormula = 0.0;
    double worstGap = 0.0;
    int idx = 0;
    for (double lambda : {-1.1, -2.0, -5.0}) {
        for (int trial = 0; trial < 10; ++trial, ++idx) {
            const int n = 2 + trial % 3;
            const Vector z = random_point(eng, n, 0.5, 2.0);
            const CurvatureTensor R = hopf_curvature(LambdaMetric(n, lambda), z);
            const FramePair w = negative_witness(lambda, z);
            const double got = hsc(R, w.xi);
            const double b = z.squaredNorm();
            const double want = b * b * (lambda + 1.0) / std::pow(b, 4);
            worstFormula = std::max(worstFormula, std::abs(got - want));
            MinimizeOptions mopt;
            mopt.seed = subseed(seed, kAnalysis + 7 + idx);
            const MinimizeResult mr = min_hbc(R, mopt);
            worstGap = std::max(worstGap, mr.value - (got + 1e-9));
        }
    }
    if (worstFormula > 1e-10)
        return {"inv.analysis.negativity_witness", false,
                "witness value off formula by " + format_double(worstFormula)};
    return bound_check("inv.analysis.negativity_witness", worstGap, 0.0,
                       "max (min_hbc - witness - 1e-9)");
}

CheckResult check_alternating_descent(std::uint64_t seed) {
    std::mt19937_64 eng(subseed(seed, kAnalysis + 8));
    for (int trial = 0; trial < 20; ++trial) {
        const Sample s = random_sample(eng);
        const CurvatureTensor R = hopf_curvature(LambdaMetric(s.n, s.lambda), s.z);
        MinimizeOptions opt;
        opt.record_trace = true;
        opt.starts = 8;
        opt.seed = subseed(seed, kAnalysis + 9 + trial);
        const MinimizeResult mr = min_hbc(R, opt);
        const double slack = 1e-12 * std::max(1.0, R.max_abs());
        for (size_t i = 1; i < mr.trace.size(); ++i)
            if (mr.trace[i] > mr.trace[i - 1] + slack)
                return {"inv.analysis.alternating_descent", false,
                        "value sequence increased at iterate " + std::to_string(i)};
    }
    return {"inv.analysis.alternating_descent", true, "value sequences non-increasing"};
}

// -------------------------------------------------------------------- flow

CheckResult check_ricci_constancy(std::uint64_t seed) {
    std::mt19937_64 eng(subseed(seed, kFlow + 1));
    double worst = 0.0;
    for (const HopfFamily fam : {HopfFamily(2, 1.0), HopfFamily(3, 2.0)}) {
        const Vector z = random_point(eng, fam.n, 0.5, 2.0);
        const CMatrix at0 = ricci_numeric(flow_metric_field(fam, 0.0), z).mat();
        for (double frac : {0.3, 0.6, 0.9}) {
            const CMatrix att =
                ricci_numeric(flow_metric_field(fam, frac * fam.t_max()), z).mat();
            worst = std::max(worst, max_abs_diff(at0, att));
        }
    }
    return bound_check("inv.flow.ricci_constancy", worst, 1e-6, "max Ricci drift");
}

CheckResult check_exact_solution_derivative(std::uint64_t seed) {
    std::mt19937_64 eng(subseed(seed, kFlow + 2));
    const double delta = 1e-5;
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + trial % 3;
        const HopfFamily fam(n, 1.0 + 0.1 * trial);
        const Vector z = random_point(eng, n, 0.5, 2.0);
        std::uniform_real_distribution<double> tdist(0.1, 0.8);
        const double t = tdist(eng) * fam.t_max();
        const CMatrix dgdt = (exact_flow_metric(fam, t + delta, z).mat() -
                              exact_flow_metric(fam, t - delta, z).mat()) /
                             (2.0 * delta);
        const CMatrix ric = ricci_closed(LambdaMetric(n, 0.0), z).mat();
        worst = std::max(worst, max_abs_diff(dgdt, -ric));
    }
    return bound_check("inv.flow.exact_solution_derivative", worst, 1e-6,
                       "max |dg/dt + Ric|");
}

CheckResult check_determinant_law(std::uint64_t seed) {
    std::mt19937_64 eng(subseed(seed, kFlow + 3));
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + trial % 3;
        std::uniform_real_distribution<double> t0d(0.0, 3.0);
        const HopfFamily fam(n, t0d(eng));
        std::uniform_real_distribution<double> td(0.0, 0.99);
        const double t = td(eng) * fam.t_max();
        const Vector z = random_point(eng, n, 0.5, 2.0);
        const auto [inv, det] = hermitian_inverse_det(exact_flow_metric(fam, t, z));
        const double want = std::pow(1.0 + fam.T0 - fam.n * t, fam.n - 1) *
                            std::pow(z.squaredNorm(), -fam.n);
        worst = std::max(worst, std::abs(det.real() - want) / want);
    }
    return bound_check("inv.flow.determinant_law", worst, 1e-10, "max rel det error");
}

CheckResult check_reparametrization(std::uint64_t seed) {
    std::mt19937_64 eng(subseed(seed, kFlow + 4));
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + trial % 3;
        std::uniform_real_distribution<double> t0d(0.0, 3.0);
        const HopfFamily fam(n, t0d(eng));
        std::uniform_real_distribution<double> td(0.0, 0.99);
        const double t = td(eng) * fam.t_max();
        const Vector z = random_point(eng, n, 0.5, 2.0);
        const double c = 1.0 + fam.T0 - fam.n * t;
        const CMatrix viaFlow = exact_flow_metric(fam, t, z).mat();
        const CMatrix viaLambda =
            c * hopf_metric(LambdaMetric(n, lambda_of_t(fam, t)), z).mat();
        worst = std::max(worst, max_abs_diff(viaFlow, viaLambda));
    }
    return bound_check("inv.flow.reparametrization", worst, 1e-12,
                       "max |flow - scaled lambda-metric|");
}

// ------------------------------------------------------------------ report

RunConfig demo_config(std::uint64_t seed) {
    RunConfig cfg;
    cfg.subcommand = "min-bisec";
    cfg.n = 2;
    cfg.lambda = -2.0;
    cfg.samples = 5;
    cfg.starts = 8;
    cfg.seed = seed;
    Vector z(2);
    z << Complex(1.0, 0.0), Complex(0.0, 0.5);
    cfg.z = z;
    return cfg;
}

std::string demo_report(std::uint64_t seed) {
    const RunConfig cfg = demo_config(seed);
    SampleOptions opt;
    opt.samples = cfg.samples;
    opt.starts = cfg.starts;
    opt.seed = cfg.seed;
    const SignReport rep = analyze_lambda(cfg.n, *cfg.lambda, opt);
    return make_report(cfg, sign_report_to_json(rep), Json{{"sign_cutoff", kSignCutoff}})
        .dump(2);
}

CheckResult check_json_round_trip(std::uint64_t seed) {
    const std::string text = demo_report(subseed(seed, kReport + 1));
    const auto [cfg, results] = parse_report(text);
    const Json again =
        make_report(cfg, results, Json{{"sign_cutoff", kSignCutoff}});
    const bool same_cfg = cfg == demo_config(subseed(seed, kReport + 1));
    const bool same_text = again.dump(2) == text;
    return {"inv.report.json_round_trip", same_cfg && same_text,
            same_cfg ? (same_text ? "config and results survive re-parsing"
                                  : "re-emitted bytes differ")
                     : "config did not survive re-parsing"};
}

CheckResult check_report_determinism(std::uint64_t seed) {
    const std::string a = demo_report(subseed(seed, kReport + 2));
    const std::string b = demo_report(subseed(seed, kReport + 2));
    return {"inv.report.determinism", a == b,
            a == b ? "identical bytes for identical config+seed" : "byte mismatch"};
}

CheckResult check_csv_schema(std::uint64_t seed) {
    SampleOptions opt;
    opt.samples = 4;
    opt.starts = 8;
    opt.seed = subseed(seed, kReport + 3);
    const HopfFamily fam(2, 1.0);
    const FlowTrace trace = flow_trace(fam, {0.0, 0.4, 0.9}, opt);
    const std::string csv = flow_trace_to_csv(trace);
    std::istringstream in(csv);
    std::string header;
    std::getline(in, header);
    if (header != "t,lambda,det_factor,min_hsc,min_hbc,verdict")
        return {"inv.report.csv_schema", false, "header mismatch: " + header};
    std::string line;
    size_t rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        std::istringstream fields(line);
        std::string field;
        int count = 0;
        while (std::getline(fields, field, ',')) {
            ++count;
            if (count <= 5) {
                // 17 significant digits must reparse to the exact double
                const double parsed = std::stod(field);
                const double want = count == 1   ? trace.rows[rows - 1].t
                                    : count == 2 ? trace.rows[rows - 1].lambda
                                    : count == 3 ? trace.rows[rows - 1].det_factor
                                    : count == 4 ? trace.rows[rows - 1].min_hsc
                                                 : trace.rows[rows - 1].min_hbc;
                if (parsed != want)
                    return {"inv.report.csv_schema", false, "double round-trip failed"};
            }
        }
        if (count != 6)
            return {"inv.report.csv_schema", false, "wrong field count"};
    }
    if (rows != trace.rows.size())
        return {"inv.report.csv_schema", false, "row count mismatch"};
    return {"inv.report.csv_schema", true, "header, fields and doubles round-trip"};
}

// ---------------------------------------------------------------- criteria

CheckResult criterion_1(std::uint64_t seed) {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 eng(subseed(seed, kCriteria + 1));
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const Sample s = random_sample(eng);
        const LambdaMetric m(s.n, s.lambda);
        worst = std::max(worst, rel_dev(curvature_numeric(hopf_metric_field(m), s.z),
                                        hopf_curvature(m, s.z)));
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream detail;
    detail << "max rel deviation = " << format_double(worst)
           << " (bound 1e-05), runtime within budget: " << (secs <= 10.0 ? "yes" : "no");
    return {"criterion.1", worst <= 1e-5 && secs <= 10.0, detail.str()};
}

CheckResult criterion_2(std::uint64_t seed) {
    std::mt19937_64 eng(subseed(seed, kCriteria + 2));
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + trial % 3;
        std::uniform_real_distribution<double> t0d(0.0, 3.0);
        std::uniform_real_distribution<double> td(0.0, 0.99);
        const HopfFamily fam(n, t0d(eng));
        const double t = td(eng) * fam.t_max();
        const double lambda = lambda_of_t(fam, t);
        const LambdaMetric m(n, lambda);
        const Vector z = random_point(eng, n, 0.5, 2.0);
        const double r2 = z.squaredNorm();

        const CMatrix h = hopf_metric(m, z).mat();
        const CMatrix hinv = hopf_metric_inverse(m, z).mat();
        worst = std::max(worst,
                         max_abs_diff(hinv * h.transpose(), CMatrix::Identity(n, n)));

        const auto [inv_h, det_h] = hermitian_inverse_det(hopf_metric(m, z));
        const double det_want = (1.0 - lambda) * std::pow(r2, -n);
        worst = std::max(worst, std::abs(det_h.real() - det_want) / det_want);

        const double c = 1.0 + fam.T0 - fam.n * t;
        const auto [inv_f, det_f] = hermitian_inverse_det(exact_flow_metric(fam, t, z));
        const double detf_want = std::pow(c, n - 1) * std::pow(r2, -n);
        worst = std::max(worst, std::abs(det_f.real() - detf_want) / detf_want);

        const CMatrix flow = exact_flow_metric(fam, t, z).mat();
        worst = std::max(worst, max_abs_diff(flow / c, h) / h.cwiseAbs().maxCoeff());
    }
    return bound_check("criterion.2", worst, 1e-10, "max rel identity deviation");
}

CheckResult criterion_3(std::uint64_t seed) {
    std::mt19937_64 eng(subseed(seed, kCriteria + 3));
    double worst = 0.0;
    for (const HopfFamily fam : {HopfFamily(2, 1.0), HopfFamily(3, 1.0)}) {
        for (double frac : {0.0, 0.3, 0.6, 0.9}) {
            const double t = frac * fam.t_max();
            for (int trial = 0; trial < 5; ++trial) {
                const Vector z = random_point(eng, fam.n, 0.5, 2.0);
                const CMatrix got = ricci_numeric(flow_metric_field(fam, t), z).mat();
                const CMatrix want = ricci_closed(LambdaMetric(fam.n, 0.0), z).mat();
                worst = std::max(worst, max_abs_diff(got, want));
            }
        }
    }
    return bound_check("criterion.3", worst, 1e-6, "max |numeric Ricci - closed|");
}

CheckResult criterion_4(std::uint64_t seed) {
    double lowest = 0.0;
    for (const HopfFamily fam : {HopfFamily(2, 1.0), HopfFamily(3, 1.0)}) {
        const double hi = fam.T0 / fam.n;
        for (int g = 0; g < 10; ++g) {
            const double t = hi * g / 9.0;
            SampleOptions opt;
            opt.samples = 50;
            opt.starts = 32;
            opt.seed = subseed(seed, kCriteria + 40 + 10 * fam.n + g);
            const SignReport rep = classify_time(fam, t, opt);
            lowest = std::min(lowest, rep.min_hbc);
            if (rep.verdict != Verdict::NonNegative)
                return {"criterion.4", false,
                        "verdict not nonneg at t = " + format_double(t)};
        }
    }
    return bound_check("criterion.4", -lowest, 1e-9, "-(min of min_hbc over grid)");
}

CheckResult criterion_5(std::uint64_t seed) {
    std::mt19937_64 eng(subseed(seed, kCriteria + 5));
    double worstFormula = 0.0;
    double worstGap = 0.0;
    double highestWitness = -std::numeric_limits<double>::infinity();
    int idx = 0;
    for (const HopfFamily fam : {HopfFamily(2, 1.0), HopfFamily(3, 1.0)}) {
        const double lo = (2.0 * fam.T0 + 1.0) / (2.0 * fam.n);
        const double hi = 0.999 * fam.t_max();
        for (int g = 1; g <= 10; ++g, ++idx) {
            const double t = lo + (hi - lo) * g / 10.0;
            const double lambda = lambda_of_t(fam, t);
            for (int trial = 0; trial < 10; ++trial) {
                // |z| = 1 as in every verdict-sampling path; scale covariance
                // carries the statement to all radii
                const Vector z = random_unit_vector(eng, fam.n);
                const CurvatureTensor R = hopf_curvature(LambdaMetric(fam.n, lambda), z);
                const FramePair w = negative_witness(lambda, z);
                const double got = hsc(R, w.xi);
                const double b = z.squaredNorm();
                const double want = b * b * (lambda + 1.0) / std::pow(b, 4);
                worstFormula = std::max(worstFormula, std::abs(got - want));
                highestWitness = std::max(highestWitness, got);
                MinimizeOptions mopt;
                mopt.seed = subseed(seed, kCriteria + 500 + idx * 16 + trial);
                const MinimizeResult mr = min_hbc(R, mopt);
                worstGap = std::max(worstGap, mr.value - (got + 1e-9));
            }
        }
    }
    std::ostringstream detail;
    detail << "max |witness - formula| = " << format_double(worstFormula)
           << " (bound 1e-10), witnesses < -1e-06: "
           << (highestWitness < -1e-6 ? "yes" : "no")
           << ", min_hbc <= witness: " << (worstGap <= 0.0 ? "yes" : "no");
    return {"criterion.5",
            worstFormula <= 1e-10 && highestWitness < -1e-6 && worstGap <= 0.0,
            detail.str()};
}

CheckResult criterion_6(std::uint64_t seed) {
    return check_ab_equivalence(subseed(seed, kCriteria + 6), "criterion.6", 1000);
}

CheckResult criterion_7(std::uint64_t seed) {
    std::mt19937_64 eng(subseed(seed, kCriteria + 7));
    double lowest = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + trial % 3;
        const Vector z = random_point(eng, n, 0.5, 2.0);
        lowest = std::min(lowest, hopf_min_hsc(-1.0, z));
    }
    return bound_check("criterion.7", -lowest, 1e-9, "-(min HSC at lambda = -1)");
}

CheckResult criterion_8(std::uint64_t seed) {
    std::mt19937_64 eng(subseed(seed, kCriteria + 8));
    const HopfFamily fam(2, 1.0);
    const double t_end = 0.9 * fam.t_max();
    std::vector<Vector> points;
    for (int i = 0; i < 20; ++i) points.push_back(random_point(eng, fam.n, 0.5, 2.0));
    const EulerResult res = euler_flow(fam, points, 1e-3, t_end);
    double worst = 0.0;
    for (size_t i = 0; i < points.size(); ++i)
        worst = std::max(worst, max_abs_diff(res.metrics[i].mat(),
                                             exact_flow_metric(fam, t_end, points[i]).mat()));
    return bound_check("criterion.8", worst, 1e-5, "max Euler-vs-exact entry gap");
}

CheckResult criterion_9(std::uint64_t seed) {
    std::ostringstream detail;
    bool pass = true;
    int idx = 0;
    for (const auto& [T0, n] : std::vector<std::pair<double, int>>{{1.0, 2}, {2.0, 3}, {0.0, 2}}) {
        const HopfFamily fam(n, T0);
        for (const CurvatureQuantity q : {CurvatureQuantity::Hsc, CurvatureQuantity::Hbc}) {
            SampleOptions opt;
            opt.samples = 12;
            opt.starts = 16;
            opt.seed = subseed(seed, kCriteria + 90 + idx++);
            const ThresholdResult res = threshold_bisect(fam, q, 1e-4, opt);
            const bool inside =
                res.t_star >= res.bracket_lo && res.t_star <= res.bracket_hi;
            pass = pass && inside;
            detail << (q == CurvatureQuantity::Hsc ? "hsc" : "hbc") << "(T0="
                   << format_double(T0) << ",n=" << n
                   << "): t* = " << format_double(res.t_star) << "; ";
        }
    }
    return {"criterion.9", pass, detail.str()};
}

}  // namespace

std::string format_check_line(const CheckResult& r) {
    return std::string(r.pass ? "[PASS] " : "[FAIL] ") + r.name + ": " + r.detail;
}

namespace {

// a thrown exception fails the one check, not the suite
CheckResult guarded(const char* name, std::uint64_t seed,
                    CheckResult (*check)(std::uint64_t)) {
    try {
        return check(seed);
    } catch (const std::exception& e) {
        return {name, false, std::string("exception: ") + e.what()};
    }
}

CheckResult inv_transpose_inverse(std::uint64_t seed) {
    return check_transpose_inverse(seed, "inv.hopf.transpose_inverse_contract", 1e-12);
}
CheckResult inv_closed_vs_oracle(std::uint64_t seed) {
    return check_closed_vs_oracle(seed, kHopf + 3, "inv.hopf.closed_vs_oracle");
}
CheckResult inv_oracle_agreement(std::uint64_t seed) {
    return check_closed_vs_oracle(seed, kChern + 1, "inv.chern.oracle_agreement");
}
CheckResult inv_ab_equivalence(std::uint64_t seed) {
    return check_ab_equivalence(seed, "inv.analysis.ab_equivalence", 300);
}

}  // namespace

std::vector<CheckResult> run_invariant_checks(std::uint64_t seed) {
    static const std::pair<const char*, CheckResult (*)(std::uint64_t)> checks[] = {
        {"inv.calculus.wirtinger_linearity", check_wirtinger_linearity},
        {"inv.calculus.conjugation_duality", check_conjugation_duality},
        {"inv.calculus.inverse_hermitian", check_inverse_hermitian},
        {"inv.calculus.eigen_floor", check_eigen_floor},
        {"inv.hopf.positive_definite_spectrum", check_hopf_spectrum},
        {"inv.hopf.transpose_inverse_contract", inv_transpose_inverse},
        {"inv.hopf.closed_vs_oracle", inv_closed_vs_oracle},
        {"inv.hopf.ricci_lambda_independent", check_ricci_lambda_independent},
        {"inv.hopf.curvature_chern_symmetry", check_curvature_symmetry},
        {"inv.hopf.scale_covariance", check_scale_covariance},
        {"inv.chern.oracle_agreement", inv_oracle_agreement},
        {"inv.chern.step_robustness", check_step_robustness},
        {"inv.chern.ricci_trace_route", check_ricci_trace_route},
        {"inv.analysis.contraction_realness", check_contraction_realness},
        {"inv.analysis.homogeneity", check_homogeneity},
        {"inv.analysis.ab_equivalence", inv_ab_equivalence},
        {"inv.analysis.nonneg_lambda_range", check_nonneg_lambda_range},
        {"inv.analysis.hsc_boundary", check_hsc_boundary},
        {"inv.analysis.negativity_witness", check_negativity_witness},
        {"inv.analysis.alternating_descent", check_alternating_descent},
        {"inv.flow.ricci_constancy", check_ricci_constancy},
        {"inv.flow.exact_solution_derivative", check_exact_solution_derivative},
        {"inv.flow.determinant_law", check_determinant_law},
        {"inv.flow.reparametrization", check_reparametrization},
        {"inv.report.json_round_trip", check_json_round_trip},
        {"inv.report.determinism", check_report_determinism},
        {"inv.report.csv_schema", check_csv_schema},
    };
    std::vector<CheckResult> out;
    out.reserve(std::size(checks));
    for (const auto& [name, fn] : checks) out.push_back(guarded(name, seed, fn));
    return out;
}

std::vector<CheckResult> run_acceptance_criteria(std::uint64_t seed) {
    static const std::pair<const char*, CheckResult (*)(std::uint64_t)> checks[] = {
        {"criterion.1", criterion_1}, {"criterion.2", criterion_2},
        {"criterion.3", criterion_3}, {"criterion.4", criterion_4},
        {"criterion.5", criterion_5}, {"criterion.6", criterion_6},
        {"criterion.7", criterion_7}, {"criterion.8", criterion_8},
        {"criterion.9", criterion_9},
    };
    std::vector<CheckResult> out;
    out.reserve(std::size(checks));
    for (const auto& [name, fn] : checks) out.push_back(guarded(name, seed, fn));
    return out;
}

std::vector<CheckResult> run_verify_suite(std::uint64_t seed) {
    std::vector<CheckResult> out = run_invariant_checks(seed);
    std::vector<CheckResult> criteria = run_acceptance_criteria(seed);
    out.insert(out.end(), criteria.begin(), criteria.end());
    return out;
}

}  // namespace chernflow
