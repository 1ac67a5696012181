#include "chernflow/linalg.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>

namespace chernflow {

HermitianMatrix::HermitianMatrix(const CMatrix& raw, Definiteness pd) : pd_(pd) {
    if (raw.rows() != raw.cols())
        throw DimensionMismatch("Hermitian matrix must be square");
    defect_ = (raw - raw.adjoint()).cwiseAbs().maxCoeff();
    m_ = 0.5 * (raw + raw.adjoint().eval());
}

std::pair<HermitianMatrix, Complex> hermitian_inverse_det(const HermitianMatrix& M) {
    Eigen::PartialPivLU<CMatrix> lu(M.mat());
    const Complex det = lu.determinant();
    if (std::abs(det) < 1e-300)
        throw SingularMatrix("matrix is numerically singular, |det| < 1e-300");
    if (M.definiteness() == HermitianMatrix::Definiteness::PositiveDefinite &&
        std::abs(det.imag()) > 1e-12 * std::abs(det))
        throw ToleranceBreach("determinant of a positive-definite matrix is not real");
    CMatrix inv = lu.inverse();
    return {HermitianMatrix(inv), det};
}

Vector canonical_phase(const Vector& v) {
    Eigen::Index imax = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > best) {
            best = std::abs(v(i));
            imax = i;
        }
    }
    if (best <= 0.0) return v;
    Complex phase = v(imax) / std::abs(v(imax));
    return v / phase;
}

std::pair<double, Vector> hermitian_min_eigen(const HermitianMatrix& M) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(M.mat());
    if (es.info() != Eigen::Success)
        throw ConvergenceFailure("self-adjoint eigensolver did not converge");
    const double mu = es.eigenvalues()(0);
    Vector v = canonical_phase(es.eigenvectors().col(0));
    v.normalize();
    return {mu, v};
}

Eigen::VectorXd hermitian_eigenvalues(const HermitianMatrix& M) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(M.mat(), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw ConvergenceFailure("self-adjoint eigensolver did not converge");
    return es.eigenvalues();
}

}  // namespace chernflow
