#include "chernflow/chern.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace chernflow {

namespace {

const Complex kI(0.0, 1.0);

// Gamma at w with a fixed differencing step (the step is anchored at the base
// point of the outer derivative so the two-level stencil stays consistent).
ChristoffelTensor christoffel_at(const MetricField& g, const Vector& w, double step) {
    const int n = static_cast<int>(w.size());
    const HermitianMatrix gw = g.evaluate(w);
    if (gw.dim() != n) throw DimensionMismatch("metric field dimension mismatch");
    // transpose inverse: sum_j ginv(p,j) g(i,j) = delta_pi
    const CMatrix ginv = gw.mat().inverse().transpose();

    ChristoffelTensor gamma(n);
    for (int k = 0; k < n; ++k) {
        const CMatrix dg = wirtinger_matrix_derivative(g, w, k, WirtingerKind::Holomorphic, step);
        for (int p = 0; p < n; ++p)
            for (int i = 0; i < n; ++i) {
                Complex acc(0.0, 0.0);
                for (int j = 0; j < n; ++j) acc += ginv(p, j) * dg(i, j);
                gamma(p, k, i) = acc;
            }
    }
    return gamma;
}

double log_det(const MetricField& g, const Vector& w) {
    const HermitianMatrix gw = g.evaluate(w);
    Eigen::PartialPivLU<CMatrix> lu(gw.mat());
    const Complex det = lu.determinant();
    if (!(det.real() > 0.0))
        throw NotPositiveDefinite("metric determinant not positive at sample point");
    return std::log(det.real());
}

}  // namespace

ChristoffelTensor christoffel_numeric(const MetricField& g, const Vector& z) {
    require_point(z);
    return christoffel_at(g, z, FdSteps::first_order(z));
}

CurvatureTensor curvature_numeric(const MetricField& g, const Vector& z) {
    return curvature_numeric(g, z, FdSteps::first_order(z), FdSteps::outer(z));
}

CurvatureTensor curvature_numeric(const MetricField& g, const Vector& z, double inner,
                                  double outer) {
    require_point(z);
    const int n = static_cast<int>(z.size());

    // mixed tensor M[p][k][i] per antiholomorphic direction j, by central
    // differences of Gamma
    const HermitianMatrix gz = g.evaluate(z);
    CurvatureTensor R(n);
    for (int j = 0; j < n; ++j) {
        auto gamma_shift = [&](const Complex& offset) {
            Vector w = z;
            w(j) += offset;
            return christoffel_at(g, w, inner);
        };
        const ChristoffelTensor gpx = gamma_shift(outer);
        const ChristoffelTensor gmx = gamma_shift(-outer);
        const ChristoffelTensor gpy = gamma_shift(kI * outer);
        const ChristoffelTensor gmy = gamma_shift(-kI * outer);

        for (int p = 0; p < n; ++p)
            for (int k = 0; k < n; ++k)
                for (int i = 0; i < n; ++i) {
                    const Complex dx = (gpx(p, k, i) - gmx(p, k, i)) / (2.0 * outer);
                    const Complex dy = (gpy(p, k, i) - gmy(p, k, i)) / (2.0 * outer);
                    const Complex dbar = 0.5 * (dx + kI * dy);
                    const Complex mixed = -dbar;  // R_{k jbar i}^p
                    // lower with g_{p qbar} at the base point
                    for (int q = 0; q < n; ++q) R(k, j, i, q) += gz(p, q) * mixed;
                }
    }
    return R;
}

HermitianMatrix ricci_numeric(const MetricField& g, const Vector& z) {
    ScalarField logdet = [&g](const Vector& w) { return Complex(log_det(g, w), 0.0); };
    return neg_dd_bar(logdet, z);
}

HermitianMatrix neg_dd_bar(const ScalarField& f, const Vector& z) {
    require_point(z);
    const int n = static_cast<int>(z.size());
    const double inner = FdSteps::first_order(z);
    const double outer = FdSteps::outer(z);

    CMatrix ric(n, n);
    for (int j = 0; j < n; ++j) {
        ScalarField dbar_j = [&f, j, inner](const Vector& w) {
            return wirtinger_derivative(f, w, j, WirtingerKind::Antiholomorphic, inner);
        };
        for (int i = 0; i < n; ++i)
            ric(i, j) = -wirtinger_derivative(dbar_j, z, i, WirtingerKind::Holomorphic, outer);
    }
    return HermitianMatrix(ric);
}

}  // namespace chernflow
