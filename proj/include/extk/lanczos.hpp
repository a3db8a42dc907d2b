#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "extk/common.hpp"
#include "extk/hermitian.hpp"

namespace extk {

struct LanczosResult {
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    int iterations = 0;
};

/*
 * Extreme eigenvalues of a Hermitian operator given only a matvec.
 *
 * Lanczos with full (two-pass) reorthogonalization and a random start vector
 * drawn from the caller's engine, so results are reproducible per stream.
 * Convergence is declared when both extreme Ritz values are stable between
 * checks to rel_tol; the basis is kept, costing dim·(max_iter+1) complex
 * entries.
 *
 * Op needs long long dim() and void apply(const CVector&, CVector&).
 */
template <class Op>
LanczosResult lanczos_extreme(const Op& op, std::mt19937_64& engine, int max_iter = 300,
                              double rel_tol = 1e-10) {
    const long long n = op.dim();
    if (n < 1) throw validation_error("lanczos_extreme: empty operator");
    const int m = static_cast<int>(std::min<long long>(n, max_iter));
    if (n * static_cast<long long>(m + 1) * 16 > 3'500'000'000LL)
        throw resource_error("lanczos_extreme: basis storage would exceed memory budget");

    CMatrix basis(n, m + 1);
    std::normal_distribution<double> n01(0.0, 1.0);
    for (long long i = 0; i < n; ++i) basis(i, 0) = Complex(n01(engine), n01(engine));
    basis.col(0).normalize();

    std::vector<double> alpha, beta;
    CVector w(n);
    double prev_lo = 0.0, prev_hi = 0.0;
    bool have_prev = false;
    LanczosResult res;

    auto ritz_extremes = [&](int j, double& lo, double& hi) {
        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(j, j);
        for (int i = 0; i < j; ++i) {
            t(i, i) = alpha[i];
            if (i + 1 < j) t(i, i + 1) = t(i + 1, i) = beta[i];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t, Eigen::EigenvaluesOnly);
        lo = es.eigenvalues()(0);
        hi = es.eigenvalues()(j - 1);
    };

    int j = 0;
    for (; j < m; ++j) {
        op.apply(basis.col(j), w);
        alpha.push_back(basis.col(j).dot(w).real());
        // Two classical Gram-Schmidt passes against the whole basis keep the
        // Krylov vectors orthogonal to working precision.
        for (int pass = 0; pass < 2; ++pass) {
            auto b = basis.leftCols(j + 1);
            w.noalias() -= b * (b.adjoint() * w).eval();
        }
        const double b_norm = w.norm();
        double scale = std::abs(alpha[0]);
        for (double a : alpha) scale = std::max(scale, std::abs(a));
        for (double b : beta) scale = std::max(scale, b);
        if (b_norm <= 1e-13 * (scale + 1.0)) {
            ++j;
            break; // invariant subspace: the Ritz values are exact
        }
        beta.push_back(b_norm);
        basis.col(j + 1) = w / b_norm;

        if ((j + 1) % 8 == 0 && j + 1 >= 2) {
            double lo, hi;
            ritz_extremes(j + 1, lo, hi);
            if (have_prev) {
                const double s = std::max({std::abs(lo), std::abs(hi), 1e-300});
                if (std::abs(lo - prev_lo) <= rel_tol * s && std::abs(hi - prev_hi) <= rel_tol * s) {
                    ++j;
                    break;
                }
            }
            prev_lo = lo;
            prev_hi = hi;
            have_prev = true;
        }
    }
    ritz_extremes(j, res.lambda_min, res.lambda_max);
    res.iterations = j;
    return res;
}

template <class Op>
double operator_norm_lanczos(const Op& op, std::mt19937_64& engine, int max_iter = 300,
                             double rel_tol = 1e-10) {
    const LanczosResult r = lanczos_extreme(op, engine, max_iter, rel_tol);
    return std::max(std::abs(r.lambda_min), std::abs(r.lambda_max));
}

} // namespace extk
