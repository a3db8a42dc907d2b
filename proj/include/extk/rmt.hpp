#pragma once

#include <cmath>

#include "extk/common.hpp"
#include "extk/hermitian.hpp"
#include "extk/rng.hpp"

namespace extk {

/*
 * Gaussian and Wishart sampling. Entries use the unit-variance convention
 * E|g|² = 1: GUE matrices have real N(0,1) diagonal entries and complex
 * off-diagonal entries with independent N(0, 1/2) parts, so
 * E[G_ij G_ji] = 1. Fill order is fixed (upper triangle, row by row) so a
 * given stream always produces the same matrix.
 */

inline CMatrix sample_gue(int n, GaussianStream& gs) {
    if (n < 1) throw validation_error("sample_gue: n must be >= 1");
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
        m(i, i) = Complex(gs.real_normal(), 0.0);
        for (int j = i + 1; j < n; ++j) {
            const Complex z = gs.complex_normal();
            m(i, j) = z;
            m(j, i) = std::conj(z);
        }
    }
    return m;
}

inline CMatrix sample_ginibre(int rows, int cols, GaussianStream& gs) {
    if (rows < 1 || cols < 1) throw validation_error("sample_ginibre: dims must be >= 1");
    CMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = gs.complex_normal();
    return m;
}

// W = GG† with G an n×s Ginibre matrix; E W = s·Id.
inline CMatrix sample_wishart(int n, int s, GaussianStream& gs) {
    const CMatrix g = sample_ginibre(n, s, gs);
    return g * g.adjoint();
}

// Induced random state of dimension n with environment size s: W / Tr W.
inline CMatrix sample_induced_state(int n, int s, GaussianStream& gs) {
    CMatrix w = sample_wishart(n, s, gs);
    const double tr = w.trace().real();
    if (!(tr > 0.0)) throw validation_error("sample_induced_state: degenerate trace");
    w /= tr;
    return w;
}

// Environment size for the c-parameterized family: s = round(c·d²), half-up.
inline int environment_size(double c, int d) {
    if (!(c > 0.0) || d < 1) throw validation_error("environment_size: need c > 0 and d >= 1");
    const double v = c * static_cast<double>(d) * static_cast<double>(d);
    const int s = static_cast<int>(std::floor(v + 0.5));
    if (s < 1) throw validation_error("environment_size: round(c·d²) must be >= 1");
    return s;
}

} // namespace extk
