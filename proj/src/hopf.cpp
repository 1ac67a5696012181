#include "chernflow/hopf.hpp"

#include <cmath>
#include <sstream>

namespace chernflow {

namespace {

double delta(int i, int j) { return i == j ? 1.0 : 0.0; }

}  // namespace

LambdaMetric::LambdaMetric(int n_, double lambda_) : n(n_), lambda(lambda_) {
    if (n < 1) throw ParameterOutOfRange("metric dimension must be >= 1");
    if (!(lambda < 1.0))
        throw ParameterOutOfRange("lambda must be < 1, got " + std::to_string(lambda));
}

HopfFamily::HopfFamily(int n_, double T0_) : n(n_), T0(T0_) {
    if (n < 2) throw ParameterOutOfRange("Hopf family needs dimension >= 2");
    if (!(T0 >= 0.0)) throw ParameterOutOfRange("T0 must be >= 0");
}

HopfQuotient::HopfQuotient(Vector alpha_) : alpha(std::move(alpha_)) {
    if (alpha.size() < 2) throw ParameterOutOfRange("quotient needs >= 2 multipliers");
    const double r = std::abs(alpha(0));
    for (Eigen::Index i = 0; i < alpha.size(); ++i) {
        if (std::abs(std::abs(alpha(i)) - r) > 1e-12)
            throw ParameterOutOfRange("quotient multipliers must have equal moduli");
    }
    if (std::abs(r - 1.0) <= 1e-12)
        throw ParameterOutOfRange("quotient modulus must differ from 1");
}

HermitianMatrix hopf_metric(const LambdaMetric& m, const Vector& z) {
    require_point(z);
    if (z.size() != m.n) throw DimensionMismatch("point dimension does not match metric");
    const double r2 = z.squaredNorm();
    const double r4 = r2 * r2;
    CMatrix h(m.n, m.n);
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j)
            h(i, j) = (delta(i, j) * r2 - m.lambda * std::conj(z(i)) * z(j)) / r4;
    return HermitianMatrix(h, HermitianMatrix::Definiteness::PositiveDefinite);
}

HermitianMatrix hopf_metric_inverse(const LambdaMetric& m, const Vector& z) {
    require_point(z);
    if (z.size() != m.n) throw DimensionMismatch("point dimension does not match metric");
    const double r2 = z.squaredNorm();
    CMatrix h(m.n, m.n);
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j)
            h(i, j) = r2 * (delta(i, j) + m.lambda * z(i) * std::conj(z(j)) /
                                              ((1.0 - m.lambda) * r2));
    return HermitianMatrix(h, HermitianMatrix::Definiteness::PositiveDefinite);
}

double hopf_det(const LambdaMetric& m, const Vector& z) {
    require_point(z);
    if (z.size() != m.n) throw DimensionMismatch("point dimension does not match metric");
    return (1.0 - m.lambda) * std::pow(z.squaredNorm(), -m.n);
}

ChristoffelTensor hopf_christoffel(const LambdaMetric& m, const Vector& z) {
    require_point(z);
    if (z.size() != m.n) throw DimensionMismatch("point dimension does not match metric");
    const double r2 = z.squaredNorm();
    const double r4 = r2 * r2;
    ChristoffelTensor gamma(m.n);
    for (int p = 0; p < m.n; ++p)
        for (int k = 0; k < m.n; ++k)
            for (int i = 0; i < m.n; ++i)
                gamma(p, k, i) =
                    m.lambda * std::conj(z(i)) * std::conj(z(k)) * z(p) / r4 -
                    (m.lambda * delta(p, k) * std::conj(z(i)) +
                     delta(i, p) * std::conj(z(k))) /
                        r2;
    return gamma;
}

CurvatureTensor hopf_curvature(const LambdaMetric& m, const Vector& z) {
    require_point(z);
    if (z.size() != m.n) throw DimensionMismatch("point dimension does not match metric");
    const double r2 = z.squaredNorm();
    const double r6 = r2 * r2 * r2;
    const double r8 = r6 * r2;
    const double lam = m.lambda;
    const double lam2 = lam * lam - 2.0 * lam;

    CurvatureTensor R(m.n);
    for (int k = 0; k < m.n; ++k)
        for (int j = 0; j < m.n; ++j) {
            const Complex akj = delta(k, j) * r2 - std::conj(z(k)) * z(j);
            for (int i = 0; i < m.n; ++i)
                for (int q = 0; q < m.n; ++q) {
                    const Complex aij = delta(i, j) * r2 - std::conj(z(i)) * z(j);
                    const Complex akq = delta(k, q) * r2 - std::conj(z(k)) * z(q);
                    R(k, j, i, q) = delta(i, q) * akj / r6 + lam * aij * akq / r8 +
                                    lam2 * std::conj(z(i)) * z(q) * akj / r8;
                }
        }
    return R;
}

HermitianMatrix ricci_closed(const LambdaMetric& m, const Vector& z) {
    require_point(z);
    if (z.size() != m.n) throw DimensionMismatch("point dimension does not match metric");
    const double r2 = z.squaredNorm();
    const double r4 = r2 * r2;
    CMatrix ric(m.n, m.n);
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j)
            ric(i, j) =
                static_cast<double>(m.n) * (delta(i, j) * r2 - std::conj(z(i)) * z(j)) / r4;
    return HermitianMatrix(ric);
}

double lambda_of_t(const HopfFamily& fam, double t) {
    if (!(t >= 0.0) || !(t < fam.t_max()))
        throw ParameterOutOfRange("t = " + std::to_string(t) + " outside [0, T_max)");
    const double u = fam.T0 - fam.n * t;
    return u / (1.0 + u);
}

Thresholds thresholds(const HopfFamily& fam) {
    return {fam.T0 / fam.n, (2.0 * fam.T0 + 1.0) / (2.0 * fam.n), fam.t_max()};
}

double quotient_invariance(const LambdaMetric& m, const HopfQuotient& q, const Vector& z) {
    require_point(z);
    if (q.alpha.size() != m.n)
        throw DimensionMismatch("quotient dimension does not match metric");
    const Vector az = q.alpha.cwiseProduct(z);
    const HermitianMatrix pulled = hopf_metric(m, az);
    const HermitianMatrix base = hopf_metric(m, z);
    double dev = 0.0;
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) {
            const Complex lhs = std::conj(q.alpha(j)) * q.alpha(i) * pulled(i, j);
            dev = std::max(dev, std::abs(lhs - base(i, j)));
        }
    return dev;
}

MetricField hopf_metric_field(const LambdaMetric& m) {
    std::ostringstream label;
    label << "hopf(n=" << m.n << ",lambda=" << m.lambda << ")";
    return MetricField{[m](const Vector& z) { return hopf_metric(m, z); }, label.str()};
}

}  // namespace chernflow
