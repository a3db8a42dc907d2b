#pragma once

#include <cmath>

#include "extk/common.hpp"
#include "extk/partitions.hpp"

namespace extk {

/*
 * Limit spectral laws.
 *
 * Semicircular SC(σ²): density (1/2πσ²)·√(4σ²−x²) on [−2σ, 2σ]; even
 * moments σ^(2p)·Cat_p, odd moments 0.
 *
 * Marchenko-Pastur MP(λ) (free Poisson, mean λ): absolutely continuous part
 * √((λ₊−x)(x−λ₋))/(2πx) on [λ₋, λ₊] with λ± = (1±√λ)², plus an atom of mass
 * 1−λ at 0 when λ < 1. The a.c. density carries no extra 1/λ factor: with
 * that normalization the total mass is min(1, λ) and the moments are
 * M^(p) = Σ_m λ^m·Nar_p^m.
 */

inline BigRational sc_moment(const BigRational& sigma2, int order) {
    if (order < 0) throw validation_error("sc_moment: negative order");
    if (order % 2 != 0) return 0;
    const int p = order / 2;
    BigRational out = catalan(p);
    for (int i = 0; i < p; ++i) out *= sigma2;
    return out;
}

inline BigRational mp_moment(const BigRational& lambda, int order) {
    if (order < 0) throw validation_error("mp_moment: negative order");
    if (lambda <= 0) throw validation_error("mp_moment: lambda must be positive");
    if (order == 0) return 1;
    BigRational out = 0;
    BigRational lpow = 1;
    for (int m = 1; m <= order; ++m) {
        lpow *= lambda;
        out += lpow * BigRational(narayana(order, m));
    }
    return out;
}

struct SupportInterval {
    double lo;
    double hi;
};

inline SupportInterval sc_support(double sigma2) {
    if (sigma2 <= 0) throw validation_error("sc_support: sigma2 must be positive");
    const double edge = 2.0 * std::sqrt(sigma2);
    return {-edge, edge};
}

inline SupportInterval mp_support(double lambda) {
    if (lambda <= 0) throw validation_error("mp_support: lambda must be positive");
    const double r = std::sqrt(lambda);
    return {(1.0 - r) * (1.0 - r), (1.0 + r) * (1.0 + r)};
}

inline double sc_density(double sigma2, double x) {
    if (sigma2 <= 0) throw validation_error("sc_density: sigma2 must be positive");
    const double rad2 = 4.0 * sigma2 - x * x;
    if (rad2 <= 0) return 0.0;
    return std::sqrt(rad2) / (2.0 * M_PI * sigma2);
}

// Absolutely continuous part only; the point mass at 0 is mp_atom.
inline double mp_density(double lambda, double x) {
    if (lambda <= 0) throw validation_error("mp_density: lambda must be positive");
    const auto sup = mp_support(lambda);
    if (x <= sup.lo || x >= sup.hi) return 0.0;
    return std::sqrt((sup.hi - x) * (x - sup.lo)) / (2.0 * M_PI * x);
}

inline double mp_atom(double lambda) {
    if (lambda <= 0) throw validation_error("mp_atom: lambda must be positive");
    return lambda < 1.0 ? 1.0 - lambda : 0.0;
}

namespace detail {

// Composite Simpson on [-π/2, π/2] after x = center + radius·sin t, which
// turns the square-root edge factor into radius·cos t and removes the
// endpoint singularities of the integrand.
template <typename F>
double simpson_sine_substitution(F&& f, int nodes) {
    if (nodes < 3) throw validation_error("quadrature: need at least 3 nodes");
    if (nodes % 2 == 0) ++nodes;
    const double a = -M_PI / 2.0, b = M_PI / 2.0;
    const double h = (b - a) / static_cast<double>(nodes - 1);
    double sum = f(a) + f(b);
    for (int i = 1; i < nodes - 1; ++i)
        sum += f(a + h * static_cast<double>(i)) * (i % 2 == 1 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

} // namespace detail

// ∫ x^order dSC(σ²) by quadrature (for cross-checking sc_moment).
inline double sc_moment_quadrature(double sigma2, int order, int nodes = 20001) {
    if (sigma2 <= 0) throw validation_error("sc_moment_quadrature: sigma2 must be positive");
    if (order < 0) throw validation_error("sc_moment_quadrature: negative order");
    const double r = 2.0 * std::sqrt(sigma2);
    return detail::simpson_sine_substitution(
        [&](double t) {
            const double ct = std::cos(t);
            const double x = r * std::sin(t);
            return std::pow(x, order) * (r * ct) * (r * ct) / (2.0 * M_PI * sigma2);
        },
        nodes);
}

// ∫ x^order dMP_ac(λ) by quadrature; excludes the atom, which contributes
// only at order 0.
inline double mp_moment_quadrature(double lambda, int order, int nodes = 20001) {
    if (lambda <= 0) throw validation_error("mp_moment_quadrature: lambda must be positive");
    if (order < 0) throw validation_error("mp_moment_quadrature: negative order");
    const auto sup = mp_support(lambda);
    const double c = 0.5 * (sup.hi + sup.lo);
    const double r = 0.5 * (sup.hi - sup.lo);
    // x^order/(2πx)·√(..) dx  =  x^(order−1)·(r cos t)²/(2π) dt
    return detail::simpson_sine_substitution(
        [&](double t) {
            const double ct = std::cos(t);
            const double x = c + r * std::sin(t);
            if (x <= 0.0) return 0.0;
            return std::pow(x, order - 1) * (r * ct) * (r * ct) / (2.0 * M_PI);
        },
        nodes);
}

} // namespace extk
