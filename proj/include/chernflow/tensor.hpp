#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "chernflow/types.hpp"

namespace chernflow {

/// Chern connection coefficients Gamma^p_{ki}, stored (p, k, i).
class ChristoffelTensor {
public:
    explicit ChristoffelTensor(int n) : n_(n), data_(static_cast<size_t>(n) * n * n) {}

    int dim() const { return n_; }

    Complex& operator()(int p, int k, int i) { return data_[idx(p, k, i)]; }
    Complex operator()(int p, int k, int i) const { return data_[idx(p, k, i)]; }

    double max_abs() const {
        double m = 0.0;
        for (const auto& c : data_) m = std::max(m, std::abs(c));
        return m;
    }

    double max_abs_diff(const ChristoffelTensor& other) const {
        double m = 0.0;
        for (size_t s = 0; s < data_.size(); ++s)
            m = std::max(m, std::abs(data_[s] - other.data_[s]));
        return m;
    }

private:
    size_t idx(int p, int k, int i) const {
        return (static_cast<size_t>(p) * n_ + k) * n_ + i;
    }
    int n_;
    std::vector<Complex> data_;
};

/// Lowered Chern curvature R_{k jbar i qbar}.
///
/// Storage order is (k, j, i, q), exactly the order the indices are written:
/// the first pair contracts against (xi, conj xi), the second against
/// (eta, conj eta).  The only symmetry is R_{k jbar i qbar} =
/// conj(R_{j kbar q ibar}); there is no Kaehler i<->k pair symmetry, so
/// transposing pairs silently is a bug.
class CurvatureTensor {
public:
    CurvatureTensor() = default;
    explicit CurvatureTensor(int n) : n_(n), data_(static_cast<size_t>(n) * n * n * n) {}

    int dim() const { return n_; }

    Complex& operator()(int k, int j, int i, int q) { return data_[idx(k, j, i, q)]; }
    Complex operator()(int k, int j, int i, int q) const { return data_[idx(k, j, i, q)]; }

    /// max |R(k,j,i,q) - conj(R(j,k,q,i))|
    double chern_symmetry_defect() const {
        double m = 0.0;
        for (int k = 0; k < n_; ++k)
            for (int j = 0; j < n_; ++j)
                for (int i = 0; i < n_; ++i)
                    for (int q = 0; q < n_; ++q)
                        m = std::max(m, std::abs((*this)(k, j, i, q) -
                                                 std::conj((*this)(j, k, q, i))));
        return m;
    }

    /// Average with the conjugate-mirrored tensor so the Chern symmetry holds
    /// exactly; applied before eigen-minimization, never before oracle
    /// comparison.
    CurvatureTensor chern_symmetrized() const {
        CurvatureTensor out(n_);
        for (int k = 0; k < n_; ++k)
            for (int j = 0; j < n_; ++j)
                for (int i = 0; i < n_; ++i)
                    for (int q = 0; q < n_; ++q)
                        out(k, j, i, q) = 0.5 * ((*this)(k, j, i, q) +
                                                 std::conj((*this)(j, k, q, i)));
        return out;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& c : data_) m = std::max(m, std::abs(c));
        return m;
    }

    double max_abs_diff(const CurvatureTensor& other) const {
        double m = 0.0;
        for (size_t s = 0; s < data_.size(); ++s)
            m = std::max(m, std::abs(data_[s] - other.data_[s]));
        return m;
    }

private:
    size_t idx(int k, int j, int i, int q) const {
        return ((static_cast<size_t>(k) * n_ + j) * n_ + i) * n_ + q;
    }
    int n_ = 0;
    std::vector<Complex> data_;
};

}  // namespace chernflow
