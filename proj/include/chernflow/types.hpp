#pragma once

#include <Eigen/Core>
#include <complex>
#include <stdexcept>
#include <string>

namespace chernflow {

using Complex = std::complex<double>;
using Vector  = Eigen::VectorXcd;  // coordinates z on C^n \ {0}
using CMatrix = Eigen::MatrixXcd;

constexpr const char* kToolVersion = "0.1.0";

// Error taxonomy shared by all modules.  Everything derives from Error so
// the CLI can map categories onto exit codes.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularPoint : Error {
    SingularPoint() : Error("evaluation point z = 0 is outside the domain") {}
};
struct DimensionMismatch : Error {
    using Error::Error;
};
struct SingularMatrix : Error {
    using Error::Error;
};
struct ConvergenceFailure : Error {
    using Error::Error;
};
struct ParameterOutOfRange : Error {
    using Error::Error;
};
struct NotPositiveDefinite : Error {
    using Error::Error;
};
struct SymmetryViolation : Error {
    using Error::Error;
};
struct BracketInvalid : Error {
    using Error::Error;
};
// Raised when an internal cross-check misses its quoted tolerance.
struct ToleranceBreach : Error {
    using Error::Error;
};

inline void require_point(const Vector& z) {
    if (z.size() < 1) throw DimensionMismatch("point must have dimension >= 1");
    if (z.norm() == 0.0) throw SingularPoint();
}

inline void require_index(Eigen::Index k, Eigen::Index n) {
    if (k < 0 || k >= n)
        throw DimensionMismatch("index " + std::to_string(k) + " out of range for dimension " +
                                std::to_string(n));
}

}  // namespace chernflow
