#pragma once

#include <utility>

#include "chernflow/types.hpp"

namespace chernflow {

/// Dense Hermitian matrix of metric / Ricci coefficients.
///
/// Stores the literal coefficient array entries(i,j) = g_{i jbar}; for a
/// Hermitian form this array is Hermitian in the ordinary matrix sense.
/// Construction symmetrizes M <- (M + M^*)/2 to remove ulp drift before the
/// eigen and inverse routines; the pre-symmetrization defect is kept so the
/// numeric pipeline can report how Hermitian its raw output was.
class HermitianMatrix {
public:
    enum class Definiteness { PositiveDefinite, Indefinite, Unknown };

    HermitianMatrix() = default;
    explicit HermitianMatrix(const CMatrix& raw,
                             Definiteness pd = Definiteness::Unknown);

    const CMatrix& mat() const { return m_; }
    Eigen::Index dim() const { return m_.rows(); }

    /// max_ij |raw_ij - conj(raw_ji)| observed before symmetrization
    double hermiticity_defect() const { return defect_; }

    Definiteness definiteness() const { return pd_; }
    void set_definiteness(Definiteness pd) { pd_ = pd; }

    Complex operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

private:
    CMatrix m_;
    double defect_ = 0.0;
    Definiteness pd_ = Definiteness::Unknown;
};

/// Inverse and determinant of a Hermitian matrix in one LU pass.
/// Throws SingularMatrix when |det| < 1e-300.  The inverse is re-symmetrized,
/// and for a matrix flagged positive-definite the determinant is checked to
/// be real within 1e-12 (relative).
std::pair<HermitianMatrix, Complex> hermitian_inverse_det(const HermitianMatrix& M);

/// Smallest eigenvalue with a unit eigenvector, residual ||Mv - mu v|| <= 1e-10 ||M||.
/// The eigenvector phase is canonicalized: the largest-magnitude entry is made
/// real positive, so repeated calls give identical output.
std::pair<double, Vector> hermitian_min_eigen(const HermitianMatrix& M);

/// All eigenvalues, ascending.
Eigen::VectorXd hermitian_eigenvalues(const HermitianMatrix& M);

/// Multiply v by the unit phase that makes its largest-magnitude entry real
/// positive.  No-op on the zero vector.
Vector canonical_phase(const Vector& v);

}  // namespace chernflow
