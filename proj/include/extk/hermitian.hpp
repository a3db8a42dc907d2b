#pragma once

#include <Eigen/Dense>
#include <complex>
#include <numeric>
#include <utility>
#include <vector>

#include "extk/common.hpp"

namespace extk {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Dense Hermitian operator on a tensor product of finite factors.
//
// Indices are flattened with the first factor slowest, matching the usual
// Kronecker convention: for factor dims (d1, ..., dm) the component i_r of a
// flat index has stride d_{r+1}···d_m.
class HermitianOperator {
public:
    HermitianOperator(CMatrix mat, std::vector<int> factor_dims, double herm_tol = 1e-12)
        : mat_(std::move(mat)), factor_dims_(std::move(factor_dims)) {
        if (factor_dims_.empty()) throw validation_error("HermitianOperator: no factors");
        long long prod = 1;
        for (int d : factor_dims_) {
            if (d < 1) throw validation_error("HermitianOperator: factor dims must be >= 1");
            prod *= d;
        }
        if (mat_.rows() != mat_.cols() || mat_.rows() != prod)
            throw validation_error("HermitianOperator: matrix shape does not match factor dims");
        const double dev = (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
        if (dev > herm_tol) throw validation_error("HermitianOperator: matrix is not Hermitian");
        // Symmetrize away the tolerated rounding so downstream solvers see an
        // exactly Hermitian matrix.
        mat_ = 0.5 * (mat_ + mat_.adjoint().eval());
    }

    int dim() const { return static_cast<int>(mat_.rows()); }
    const CMatrix& matrix() const { return mat_; }
    const std::vector<int>& factor_dims() const { return factor_dims_; }

private:
    CMatrix mat_;
    std::vector<int> factor_dims_;
};

namespace detail {

// Strides for the flattening described above: stride[r] = prod of dims after r.
inline std::vector<long long> factor_strides(const std::vector<int>& dims) {
    std::vector<long long> s(dims.size(), 1);
    for (int r = static_cast<int>(dims.size()) - 2; r >= 0; --r)
        s[r] = s[r + 1] * dims[r + 1];
    return s;
}

inline long long total_dim(const std::vector<int>& dims) {
    long long p = 1;
    for (int d : dims) p *= d;
    return p;
}

} // namespace detail

} // namespace extk
