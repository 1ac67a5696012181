#pragma once

#include "chernflow/fields.hpp"
#include "chernflow/tensor.hpp"

namespace chernflow {

/// Finite-difference Chern geometry of an arbitrary positive-definite metric
/// field.  Independent of every closed form in hopf.hpp: these routines only
/// ever see the field's evaluation contract.

/// Gamma^p_{ki} = sum_j g^{p jbar} d g_{i jbar} / d z^k, with g^ the transpose
/// inverse of the metric at z and the derivative a central difference at the
/// first-order step.
ChristoffelTensor christoffel_numeric(const MetricField& g, const Vector& z);

/// R_{k jbar i}^p = - d Gamma^p_{ki} / d zbar^j, differenced at the outer step
/// with Gamma evaluated at the inner step, then lowered:
/// R_{k jbar i qbar} = sum_p g_{p qbar} R_{k jbar i}^p.
/// Raw output: no symmetrization is applied.
CurvatureTensor curvature_numeric(const MetricField& g, const Vector& z);

/// Same with explicit step sizes (step-refinement studies).
CurvatureTensor curvature_numeric(const MetricField& g, const Vector& z, double inner,
                                  double outer);

/// Chern-Ricci coefficients Ric_{i jbar} = - d_i d_jbar log det g, via the
/// same two-level stencil.  The pre-symmetrization defect of the result is
/// recorded on the returned matrix.
HermitianMatrix ricci_numeric(const MetricField& g, const Vector& z);

/// - d_i d_jbar of an arbitrary real scalar field (helper for the trace-route
/// Ricci check).
HermitianMatrix neg_dd_bar(const ScalarField& f, const Vector& z);

}  // namespace chernflow
