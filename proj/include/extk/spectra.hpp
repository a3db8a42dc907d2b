#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "extk/common.hpp"
#include "extk/hermitian.hpp"

namespace extk {

// Eigenvalues sorted ascending. In validation mode the eigenvectors are
// computed too and the reconstruction residual is checked against
// 1e-9·‖M‖∞ entrywise.
inline std::vector<double> eigenvalues(const HermitianOperator& M, bool validate = false) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es;
    if (validate) {
        es.compute(M.matrix());
        const CMatrix rec = es.eigenvectors() * es.eigenvalues().asDiagonal() *
                            es.eigenvectors().adjoint();
        const double scale = M.matrix().cwiseAbs().maxCoeff();
        const double resid = (M.matrix() - rec).cwiseAbs().maxCoeff();
        if (resid > 1e-9 * std::max(scale, 1e-300))
            throw std::runtime_error("eigenvalues: reconstruction residual too large");
    } else {
        es.compute(M.matrix(), Eigen::EigenvaluesOnly);
    }
    std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + M.dim());
    std::sort(out.begin(), out.end());
    return out;
}

inline double operator_norm(const HermitianOperator& M) {
    const auto ev = eigenvalues(M);
    return std::max(std::abs(ev.front()), std::abs(ev.back()));
}

// (1/N) Σ (λ_i/scale)^p over the sample.
inline double empirical_moment(const std::vector<double>& spectrum, int p, double scale = 1.0) {
    if (spectrum.empty()) throw validation_error("empirical_moment: empty sample");
    if (p < 1) throw validation_error("empirical_moment: p must be >= 1");
    if (!(scale > 0.0)) throw validation_error("empirical_moment: scale must be positive");
    double s = 0.0;
    for (double l : spectrum) s += std::pow(l / scale, p);
    return s / static_cast<double>(spectrum.size());
}

struct Histogram {
    std::vector<double> bin_centers;
    std::vector<double> density; // normalized so Σ density·width = 1
    double bin_width = 0.0;
    int bins = 0;
    std::string rule; // "fixed" or "freedman-diaconis"
};

namespace detail {

// Quartile by linear interpolation on the sorted sample.
inline double quantile_sorted(const std::vector<double>& xs, double q) {
    const double pos = q * static_cast<double>(xs.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    if (lo + 1 >= xs.size()) return xs.back();
    const double frac = pos - static_cast<double>(lo);
    return xs[lo] * (1.0 - frac) + xs[lo + 1] * frac;
}

} // namespace detail

// bins = 0 selects the Freedman-Diaconis rule: width 2·IQR·n^{-1/3}.
inline Histogram histogram(std::vector<double> values, int bins = 0) {
    if (values.empty()) throw validation_error("histogram: empty sample");
    if (bins < 0) throw validation_error("histogram: bins must be >= 0");
    std::sort(values.begin(), values.end());
    const double lo = values.front(), hi = values.back();
    Histogram h;
    if (bins == 0) {
        const double iqr =
            detail::quantile_sorted(values, 0.75) - detail::quantile_sorted(values, 0.25);
        const double width = 2.0 * iqr / std::cbrt(static_cast<double>(values.size()));
        if (width > 0.0 && hi > lo)
            bins = static_cast<int>(std::ceil((hi - lo) / width));
        else
            bins = 1;
        bins = std::min(std::max(bins, 1), 10000);
        h.rule = "freedman-diaconis";
    } else {
        h.rule = "fixed";
    }
    const double span = (hi > lo) ? (hi - lo) : 1.0;
    h.bins = bins;
    h.bin_width = span / bins;
    h.bin_centers.resize(bins);
    h.density.assign(bins, 0.0);
    for (int b = 0; b < bins; ++b) h.bin_centers[b] = lo + (b + 0.5) * h.bin_width;
    for (double v : values) {
        int b = static_cast<int>((v - lo) / h.bin_width);
        if (b >= bins) b = bins - 1;
        if (b < 0) b = 0;
        h.density[b] += 1.0;
    }
    const double norm = 1.0 / (static_cast<double>(values.size()) * h.bin_width);
    for (double& dns : h.density) dns *= norm;
    return h;
}

} // namespace extk
