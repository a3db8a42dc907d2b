#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "extk/common.hpp"
#include "extk/hermitian.hpp"
#include "extk/lanczos.hpp"
#include "extk/partitions.hpp"
#include "extk/rmt.hpp"
#include "extk/rng.hpp"
#include "extk/spectra.hpp"
#include "extk/stats.hpp"
#include "extk/structured.hpp"
#include "extk/tensor.hpp"
#include "extk/wordtrace.hpp"

namespace extk {

/*
 * The extendibility witness: for a bipartite state ρ and k ≥ 1, the maximum
 * of Tr(ρσ) over k-extendible σ equals ‖(1/k)·Σ_j ρ̃(j)‖∞. A state with
 * witness value strictly below its purity Tr(ρ²) cannot be k-extendible.
 */

namespace detail {

// Largest |eigenvalue| of Σ_j M̃(j): dense below a size threshold, otherwise
// matrix-free Lanczos. The Lanczos start vector comes from `engine` so the
// result is a deterministic function of the caller's stream.
inline double embedded_sum_norm(const CMatrix& M, int dA, int dB, int k, std::mt19937_64& engine,
                                bool half_transpose = false,
                                const Caps& caps = default_caps()) {
    long long dim = dA;
    for (int j = 0; j < k; ++j) dim *= dB;
    if (dim <= 400) {
        HermitianOperator base(M, {dA, dB}, 1e-9);
        HermitianOperator total = tensor_sum(base, k, caps);
        if (half_transpose) total = partial_transpose(total, half_transpose_factors(k));
        return operator_norm(total);
    }
    detail::check_dense_dim(dim, caps);
    EmbeddedSumOp op(M, dA, dB, k, half_transpose);
    return operator_norm_lanczos(op, engine, 400, 1e-12);
}

} // namespace detail

inline double purity(const HermitianOperator& rho) { return rho.matrix().squaredNorm(); }

inline void validate_state(const HermitianOperator& rho) {
    if (rho.factor_dims().size() != 2)
        throw validation_error("state must be bipartite (two factors)");
    if (std::abs(rho.matrix().trace().real() - 1.0) > 1e-8)
        throw validation_error("state must have unit trace");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(rho.matrix(), Eigen::EigenvaluesOnly);
    if (es.eigenvalues()(0) < -1e-10)
        throw validation_error("state must be positive semidefinite");
}

inline double witness_value(const HermitianOperator& rho, int k,
                            const Caps& caps = default_caps()) {
    if (k < 1) throw validation_error("witness_value: k must be >= 1");
    validate_state(rho);
    std::mt19937_64 engine = derive_stream(0x517cc1b727220a95ULL, 0);
    const double norm = detail::embedded_sum_norm(rho.matrix(), rho.factor_dims()[0],
                                                  rho.factor_dims()[1], k, engine, false, caps);
    return norm / static_cast<double>(k);
}

// True certifies that ρ is not k-extendible; false certifies nothing.
inline bool detect_not_k_extendible(const HermitianOperator& rho, int k, double tol = 1e-10,
                                    const Caps& caps = default_caps()) {
    return witness_value(rho, k, caps) < purity(rho) - tol;
}

struct WitnessReport {
    int d = 0, k = 0;
    double c = 0.0;
    int s = 0;
    int repetitions = 0;
    std::uint64_t seed = 0;
    std::vector<double> purity_per_rep, witness_per_rep;
    std::vector<int> detected_per_rep;
    double purity_mean = 0.0, purity_se = 0.0;
    double witness_mean = 0.0, witness_se = 0.0;
    double purity_pred = 0.0, witness_pred = 0.0;
    long detected_count = 0;
    double detection_rate = 0.0;
    WilsonInterval rate_ci;
};

inline double purity_prediction(double c, int d) {
    return (1.0 + 1.0 / c) / (static_cast<double>(d) * d);
}

inline double witness_prediction(double c, int d, int k) {
    const double ck = c * k;
    const double r = std::sqrt(ck) + 1.0;
    return r * r / (ck * static_cast<double>(d) * d);
}

inline WitnessReport run_witness_experiment(int d, int k, double c, int reps, std::uint64_t seed,
                                            const Caps& caps = default_caps()) {
    if (d < 2) throw validation_error("run_witness_experiment: d must be >= 2");
    if (k < 1) throw validation_error("run_witness_experiment: k must be >= 1");
    if (reps < 1) throw validation_error("run_witness_experiment: reps must be >= 1");
    WitnessReport rep;
    rep.d = d;
    rep.k = k;
    rep.c = c;
    rep.s = environment_size(c, d);
    rep.repetitions = reps;
    rep.seed = seed;
    long long dim = d;
    for (int j = 0; j < k; ++j) dim *= d;
    detail::check_dense_dim(dim, caps);
    for (int r = 0; r < reps; ++r) {
        GaussianStream gs(seed, static_cast<std::uint64_t>(r));
        const CMatrix rho = sample_induced_state(d * d, rep.s, gs);
        const double pur = rho.squaredNorm();
        const double wit =
            detail::embedded_sum_norm(rho, d, d, k, gs.engine(), false, caps) / k;
        rep.purity_per_rep.push_back(pur);
        rep.witness_per_rep.push_back(wit);
        rep.detected_per_rep.push_back(wit < pur - 1e-10 ? 1 : 0);
    }
    const MeanStderr pm = mean_stderr(rep.purity_per_rep);
    const MeanStderr wm = mean_stderr(rep.witness_per_rep);
    rep.purity_mean = pm.mean;
    rep.purity_se = pm.stderr_of_mean;
    rep.witness_mean = wm.mean;
    rep.witness_se = wm.stderr_of_mean;
    rep.purity_pred = purity_prediction(c, d);
    rep.witness_pred = witness_prediction(c, d, k);
    for (int f : rep.detected_per_rep) rep.detected_count += f;
    rep.detection_rate = static_cast<double>(rep.detected_count) / reps;
    rep.rate_ci = wilson_interval(rep.detected_count, reps);
    return rep;
}

// Exact detection threshold in the environment parameter: c*(k) = (k-1)²/4k.
inline BigRational c_star(int k) {
    if (k < 1) throw validation_error("c_star: k must be >= 1");
    return BigRational(BigInt(k - 1) * (k - 1), BigInt(4) * k);
}

struct ThresholdReport {
    int d = 0, k = 0;
    int repetitions = 0;
    std::uint64_t seed = 0;
    std::vector<double> c_grid;
    std::vector<WitnessReport> cells;
    BigRational c_star_exact;
};

// The same seed is reused at every grid point (common random numbers), so
// rate comparisons across c are less noisy than independent sweeps.
inline ThresholdReport run_threshold_sweep(int d, int k, const std::vector<double>& c_grid,
                                           int reps, std::uint64_t seed,
                                           const Caps& caps = default_caps()) {
    if (c_grid.empty()) throw validation_error("run_threshold_sweep: empty c grid");
    for (double c : c_grid)
        if (!(c > 0.0)) throw validation_error("run_threshold_sweep: grid values must be positive");
    ThresholdReport rep;
    rep.d = d;
    rep.k = k;
    rep.repetitions = reps;
    rep.seed = seed;
    rep.c_grid = c_grid;
    rep.c_star_exact = c_star(k);
    for (double c : c_grid) rep.cells.push_back(run_witness_experiment(d, k, c, reps, seed, caps));
    return rep;
}

enum class ComparisonMode { threshold, width };

// Minimal k beating a competing criterion's constant: smallest k >= 2 with
// (k-1)²/4k > constant (threshold mode), or smallest k with 2/√k < constant
// (width mode).
inline int min_k_beating(double constant, ComparisonMode mode) {
    if (!(constant > 0.0)) throw validation_error("min_k_beating: constant must be positive");
    for (int k = 2; k <= 1 << 20; ++k) {
        if (mode == ComparisonMode::threshold) {
            if (static_cast<double>(k - 1) * (k - 1) > 4.0 * k * constant) return k;
        } else {
            if (4.0 < static_cast<double>(k) * constant * constant) return k;
        }
    }
    throw validation_error("min_k_beating: no k up to 2^20 beats the constant");
}

/*
 * Variance decay of the normalized trace moments (1/d^{k+1})Tr[W_d^p] across
 * a rising list of dimensions. The reported baseline ratio (d_{i+1}/d_i)² is
 * the upper-bound O(d⁻²) rate; the measured variance actually decays like
 * d⁻⁴, so the measured ratio between d and 2d sits near 16, not 4. The exact
 * rate follows from the closed-form first and second moments: at k = 2,
 * p = 2, c = 1, Var[(1/d³)Tr W_d²] = (152d¹⁰ + 120d⁸ + 40d⁶ + 8d⁴)/d¹⁴.
 */
struct VarianceDecayReport {
    std::vector<int> d_list;
    int k = 0, p = 0;
    double c = 0.0;
    int repetitions = 0;
    std::uint64_t seed = 0;
    std::vector<std::vector<double>> moment_per_rep; // [d index][rep]
    std::vector<double> moment_mean;     // per d: mean of (1/d^{k+1})Tr[W_d^p]
    std::vector<double> moment_variance; // per d: sample variance of the same
    std::vector<double> variance_ratio;  // var(d_i)/var(d_{i+1})
    std::vector<double> predicted_ratio; // (d_{i+1}/d_i)², the baseline rate
};

inline VarianceDecayReport variance_decay_check(const std::vector<int>& d_list, int k, int p,
                                                double c, int reps, std::uint64_t seed,
                                                const Caps& caps = default_caps()) {
    if (d_list.size() < 2)
        throw validation_error("variance_decay_check: need at least two d values");
    for (std::size_t i = 1; i < d_list.size(); ++i)
        if (d_list[i] <= d_list[i - 1])
            throw validation_error("variance_decay_check: d list must be strictly ascending");
    if (p < 1 || k < 1 || reps < 2) throw validation_error("variance_decay_check: bad parameters");
    if (!(k == 1 || p <= 2 || (k == 2 && p <= 5)))
        throw validation_error(
            "variance_decay_check: exact trace powers support p <= 2, or p <= 5 when k = 2");
    VarianceDecayReport rep;
    rep.d_list = d_list;
    rep.k = k;
    rep.p = p;
    rep.c = c;
    rep.repetitions = reps;
    rep.seed = seed;
    for (int d : d_list) {
        const int s = environment_size(c, d);
        std::vector<double> vals;
        // Normalization: W_d = (1/d²)ΣW̃(j) and moments divide by d^{k+1}.
        double norm = 1.0;
        for (int i = 0; i < 2 * p + k + 1; ++i) norm *= d;
        for (int r = 0; r < reps; ++r) {
            GaussianStream gs(seed, static_cast<std::uint64_t>(r));
            const CMatrix w = sample_wishart(d * d, s, gs);
            vals.push_back(embedded_sum_trace_power(w, d, d, k, p) / norm);
        }
        rep.moment_mean.push_back(sample_mean(vals));
        rep.moment_variance.push_back(sample_variance(vals));
        rep.moment_per_rep.push_back(std::move(vals));
    }
    for (std::size_t i = 0; i + 1 < d_list.size(); ++i) {
        rep.variance_ratio.push_back(rep.moment_variance[i] /
                                     rep.moment_variance[i + 1]);
        const double q = static_cast<double>(d_list[i + 1]) / d_list[i];
        rep.predicted_ratio.push_back(q * q);
    }
    return rep;
}

} // namespace extk
