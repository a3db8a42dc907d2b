#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "extk/common.hpp"

namespace extk {

struct MeanStderr {
    double mean = 0.0;
    double stderr_of_mean = 0.0;
    std::size_t n = 0;
};

inline double sample_mean(const std::vector<double>& xs) {
    if (xs.empty()) throw validation_error("sample_mean: empty sample");
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

// Unbiased (n-1) sample variance; zero for a single observation.
inline double sample_variance(const std::vector<double>& xs) {
    if (xs.empty()) throw validation_error("sample_variance: empty sample");
    if (xs.size() == 1) return 0.0;
    const double m = sample_mean(xs);
    double s = 0.0;
    for (double x : xs) s += (x - m) * (x - m);
    return s / static_cast<double>(xs.size() - 1);
}

inline MeanStderr mean_stderr(const std::vector<double>& xs) {
    MeanStderr r;
    r.n = xs.size();
    r.mean = sample_mean(xs);
    r.stderr_of_mean = std::sqrt(sample_variance(xs) / static_cast<double>(xs.size()));
    return r;
}

struct WilsonInterval {
    double lo = 0.0;
    double hi = 1.0;
};

// Wilson score interval for a binomial proportion; z defaults to the
// two-sided 95% normal quantile.
inline WilsonInterval wilson_interval(long successes, long trials, double z = 1.959963984540054) {
    if (trials <= 0) throw validation_error("wilson_interval: trials must be positive");
    if (successes < 0 || successes > trials)
        throw validation_error("wilson_interval: successes out of range");
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (phat + z2 / (2.0 * n)) / denom;
    const double half = (z / denom) * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
    WilsonInterval w;
    w.lo = center - half;
    w.hi = center + half;
    if (w.lo < 0.0) w.lo = 0.0;
    if (w.hi > 1.0) w.hi = 1.0;
    return w;
}

} // namespace extk
