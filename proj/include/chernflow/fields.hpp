#pragma once

#include <functional>
#include <string>

#include "chernflow/linalg.hpp"
#include "chernflow/types.hpp"

namespace chernflow {

/// Smooth (generally non-holomorphic) complex scalar field on C^n \ {0}.
using ScalarField = std::function<Complex(const Vector&)>;

/// Hermitian-matrix-valued field z -> g_{i jbar}(z), with a label recording
/// where it came from (closed form vs numeric-only contract).
struct MetricField {
    std::function<HermitianMatrix(const Vector&)> evaluate;
    std::string label;
};

enum class WirtingerKind { Holomorphic, Antiholomorphic };

/// Central-difference step sizes.  first_order balances truncation against
/// cancellation for a single derivative level; outer is used for the outer
/// level when two derivatives are composed (the inner level keeps
/// first_order).
struct FdSteps {
    static double first_order(const Vector& z) { return 1e-5 * std::max(1.0, z.norm()); }
    static double outer(const Vector& z) { return 1e-4 * std::max(1.0, z.norm()); }
};

/// d f / d z^k (holomorphic) or d f / d zbar^k (antiholomorphic) by real
/// central differences on the k-th coordinate:
///   d/dz^k    = (d/dx^k - i d/dy^k) / 2
///   d/dzbar^k = (d/dx^k + i d/dy^k) / 2
/// Absolute error O(step^2) for smooth f.
Complex wirtinger_derivative(const ScalarField& f, const Vector& z, Eigen::Index k,
                             WirtingerKind kind, double step);

/// Default step = FdSteps::first_order(z).
Complex wirtinger_derivative(const ScalarField& f, const Vector& z, Eigen::Index k,
                             WirtingerKind kind);

/// Entrywise Wirtinger derivative of a matrix field, sharing one four-point
/// stencil across all entries.
CMatrix wirtinger_matrix_derivative(const MetricField& g, const Vector& z, Eigen::Index k,
                                    WirtingerKind kind, double step);

}  // namespace chernflow
