#pragma once

#include <vector>

#include "extk/common.hpp"
#include "extk/perm.hpp"

namespace extk {

/*
 * Lifted permutations on [p] x [k].
 *
 * Given α on [p] and f : [p] -> [k], the lift acts on pairs (i, r):
 *   α̂_f(i, r) = (α(i), f(α(i)))  if r = f(i),
 *   α̂_f(i, r) = (i, r)           otherwise.
 * Pairs are flattened lexicographically: (i, r) with 1-based i, r maps to
 * index (i-1)·k + r. Cycle counts quoted anywhere in the library use this
 * flattening, so they are reproducible.
 *
 * The companion identity, swept exhaustively by verify_lift_formula:
 *   ♯(γ̂⁻¹ α̂_f) = ♯(γ_f⁻¹ α) + k − |im(f)|,
 * with γ̂(i, r) = (γ(i), r) the lift of the canonical full cycle.
 */
inline Permutation lift_alpha_f(const Permutation& alpha, const LevelFunction& f) {
    if (alpha.size() != f.size())
        throw validation_error("lift_alpha_f: size mismatch");
    const int p = alpha.size();
    const int k = f.alphabet();
    std::vector<int> img(static_cast<size_t>(p * k));
    for (int i = 0; i < p; ++i) {
        for (int r = 0; r < k; ++r) {
            const int from = i * k + r;
            if (r == f(i)) {
                const int ai = alpha(i);
                img[static_cast<size_t>(from)] = ai * k + f(ai);
            } else {
                img[static_cast<size_t>(from)] = from;
            }
        }
    }
    return Permutation(std::move(img));
}

// Lift of γ itself: (i, r) -> (γ(i), r) on p·k points.
inline Permutation lift_gamma(int p, int k) {
    const Permutation g = canonical_full_cycle(p);
    std::vector<int> img(static_cast<size_t>(p * k));
    for (int i = 0; i < p; ++i)
        for (int r = 0; r < k; ++r)
            img[static_cast<size_t>(i * k + r)] = g(i) * k + r;
    return Permutation(std::move(img));
}

struct LiftCounterexample {
    std::vector<int> alpha_images_one_based;
    std::vector<int> f_values_one_based;
    int lifted_cycles;
    int expected;
};

struct LiftSweepResult {
    bool ok = true;
    long cases = 0;
    std::vector<LiftCounterexample> counterexamples;
};

// Exhaustive check of ♯(γ̂⁻¹ α̂_f) = ♯(γ_f⁻¹ α) + k − |im(f)| over all
// α ∈ S(p) and all f : [p] -> [k]. p! · k^p cases.
inline LiftSweepResult verify_lift_formula(int p, int k, const Caps& caps = default_caps()) {
    if (p < 1 || k < 1) throw validation_error("verify_lift_formula: p, k must be >= 1");
    if (p > caps.lift_sweep_p || k > caps.lift_sweep_k)
        throw resource_error("verify_lift_formula: sweep exceeds cap");
    LiftSweepResult res;
    const Permutation ghat_inv = lift_gamma(p, k).inverse();
    Caps sweep_caps = caps;
    sweep_caps.permutations_p = std::max(caps.permutations_p, p);
    for_each_permutation(
        p,
        [&](const Permutation& alpha) {
            for_each_level_function(p, k, [&](const LevelFunction& f) {
                ++res.cases;
                const int lifted =
                    ghat_inv.compose(lift_alpha_f(alpha, f)).cycle_count();
                const int expected =
                    gamma_f(f).inverse().compose(alpha).cycle_count() + k - f.image_size();
                if (lifted != expected) {
                    res.ok = false;
                    res.counterexamples.push_back({alpha.images_one_based(),
                                                   [&] {
                                                       std::vector<int> v = f.values();
                                                       for (int& x : v) ++x;
                                                       return v;
                                                   }(),
                                                   lifted, expected});
                }
            });
        },
        sweep_caps);
    return res;
}

} // namespace extk
