#pragma once

#include "chernflow/fields.hpp"
#include "chernflow/linalg.hpp"
#include "chernflow/tensor.hpp"
#include "chernflow/types.hpp"

namespace chernflow {

/// One-parameter Hermitian metric family on C^n \ {0},
///   h_{i jbar}(z) = (delta_ij |z|^2 - lambda zbar^i z^j) / |z|^4,
/// positive-definite for every z != 0 iff lambda < 1.
struct LambdaMetric {
    int n;
    double lambda;

    LambdaMetric(int n_, double lambda_);
};

/// Flow family data: dimension and the initial-metric parameter T0.  The flow
/// metric stays positive-definite exactly for t < t_max().
struct HopfFamily {
    int n;
    double T0;

    HopfFamily(int n_, double T0_);
    double t_max() const { return (T0 + 1.0) / n; }
};

/// Diagonal identification (z^1,...,z^n) ~ (alpha_1 z^1,...,alpha_n z^n) with
/// equal moduli != 1.
struct HopfQuotient {
    Vector alpha;

    explicit HopfQuotient(Vector alpha_);
};

struct Thresholds {
    double t_nonneg_end;  // T0 / n
    double t_neg_start;   // (2 T0 + 1) / (2 n)
    double t_max;         // (T0 + 1) / n
};

/// h_{i jbar}(z); eigenvalues are (1-lambda)/|z|^2 and 1/|z|^2 (n-1 fold).
HermitianMatrix hopf_metric(const LambdaMetric& m, const Vector& z);

/// Transpose inverse h^{i jbar} = |z|^2 (delta_ij + lambda z^i zbar^j / ((1-lambda)|z|^2)),
/// satisfying sum_j h^{i jbar} h_{k jbar} = delta_ik.
HermitianMatrix hopf_metric_inverse(const LambdaMetric& m, const Vector& z);

/// det(h_{i jbar}) = (1 - lambda) |z|^(-2n)
double hopf_det(const LambdaMetric& m, const Vector& z);

/// Gamma^p_{ki} = lambda zbar^i zbar^k z^p / |z|^4
///               - (lambda delta_pk zbar^i + delta_ip zbar^k) / |z|^2.
/// Not symmetric in (k, i) unless lambda = 1: the metric has torsion.
ChristoffelTensor hopf_christoffel(const LambdaMetric& m, const Vector& z);

/// Closed-form R_{k jbar i qbar}:
///   delta_iq (delta_jk |z|^2 - zbar^k z^j) / |z|^6
/// + lambda (delta_ij |z|^2 - zbar^i z^j)(delta_kq |z|^2 - zbar^k z^q) / |z|^8
/// + (lambda^2 - 2 lambda) zbar^i z^q (delta_kj |z|^2 - zbar^k z^j) / |z|^8
CurvatureTensor hopf_curvature(const LambdaMetric& m, const Vector& z);

/// Chern-Ricci coefficient matrix n (delta_ij |z|^2 - zbar^i z^j) / |z|^4.
/// Positive semi-definite, independent of lambda; the null direction of the
/// form (conjugate-second-slot pairing) is z itself.
HermitianMatrix ricci_closed(const LambdaMetric& m, const Vector& z);

/// lambda(t) = (T0 - n t) / (1 + T0 - n t), strictly decreasing on [0, t_max).
double lambda_of_t(const HopfFamily& fam, double t);

/// (T0/n, (2 T0 + 1)/(2n), (T0 + 1)/n)
Thresholds thresholds(const HopfFamily& fam);

/// max_ij |conj(alpha_j) alpha_i h_{i jbar}(alpha z) - h_{i jbar}(z)|:
/// the deviation from invariance under the quotient identification.
double quotient_invariance(const LambdaMetric& m, const HopfQuotient& q, const Vector& z);

/// The lambda-family metric as an evaluation contract for the numeric pipeline.
MetricField hopf_metric_field(const LambdaMetric& m);

}  // namespace chernflow
