#include "chernflow/fields.hpp"

namespace chernflow {

namespace {
const Complex kI(0.0, 1.0);
}

Complex wirtinger_derivative(const ScalarField& f, const Vector& z, Eigen::Index k,
                             WirtingerKind kind, double step) {
    require_point(z);
    require_index(k, z.size());

    Vector zp = z, zm = z;
    zp(k) += step;
    zm(k) -= step;
    const Complex dx = (f(zp) - f(zm)) / (2.0 * step);

    zp = z;
    zm = z;
    zp(k) += kI * step;
    zm(k) -= kI * step;
    const Complex dy = (f(zp) - f(zm)) / (2.0 * step);

    return kind == WirtingerKind::Holomorphic ? 0.5 * (dx - kI * dy)
                                              : 0.5 * (dx + kI * dy);
}

Complex wirtinger_derivative(const ScalarField& f, const Vector& z, Eigen::Index k,
                             WirtingerKind kind) {
    return wirtinger_derivative(f, z, k, kind, FdSteps::first_order(z));
}

CMatrix wirtinger_matrix_derivative(const MetricField& g, const Vector& z, Eigen::Index k,
                                    WirtingerKind kind, double step) {
    require_point(z);
    require_index(k, z.size());

    auto eval = [&](const Complex& offset) {
        Vector w = z;
        w(k) += offset;
        return g.evaluate(w).mat();
    };
    const CMatrix dx = (eval(step) - eval(-step)) / (2.0 * step);
    const CMatrix dy = (eval(kI * step) - eval(-kI * step)) / (2.0 * step);

    return kind == WirtingerKind::Holomorphic ? (0.5 * (dx - kI * dy)).eval()
                                              : (0.5 * (dx + kI * dy)).eval();
}

}  // namespace chernflow
