#pragma once

#include <utility>
#include <vector>

#include "extk/common.hpp"
#include "extk/defect.hpp"
#include "extk/partitions.hpp"
#include "extk/perm.hpp"
#include "extk/polynomial.hpp"

namespace extk {

/*
 * Exact moment polynomials by Wick-sum enumeration.
 *
 * Conventions, shared by every ensemble here:
 *  - G is GUE(n): E[G_uv G_u'v'] = δ_{uv'} δ_{vu'}.
 *  - W = XX† with X an n×s matrix of iid standard complex normals.
 *  - The "modified" ensembles embed a single G (resp. W) on A⊗B_j into
 *    A⊗B_1⊗…⊗B_k, all factors of dimension d, and sum over the k slots.
 *    The same underlying matrix appears in every slot, so cross terms in the
 *    expansion of the power are nonzero.
 *
 * The enumeration sums over pairings (GUE) or permutations (Wishart), and
 * over level functions f grouped by their level-set partition: f enters only
 * through γ_f and |im(f)|, so each set partition with b ≤ k blocks stands in
 * for k(k−1)⋯(k−b+1) functions.
 */

namespace detail {

// Injections of b labelled blocks into k letters: k(k−1)⋯(k−b+1).
inline BigInt injection_count(int k, int b) {
    if (b > k) return 0;
    BigInt out = 1;
    for (int i = 0; i < b; ++i) out *= (k - i);
    return out;
}

// Product of canonical full cycles on the blocks of a partition of [p],
// as 0-based images. Matches gamma_f for any f with these level sets.
inline std::vector<int> gamma_of_blocks(const std::vector<std::vector<int>>& blocks, int p) {
    std::vector<int> img(static_cast<size_t>(p));
    for (int i = 0; i < p; ++i) img[static_cast<size_t>(i)] = i;
    for (const auto& blk : blocks) {
        const int m = static_cast<int>(blk.size());
        for (int t = 0; t < m; ++t)
            img[static_cast<size_t>(blk[static_cast<size_t>(t)])] =
                blk[static_cast<size_t>((t - 1 + m) % m)];
    }
    return img;
}

inline std::vector<int> inverse_images(const std::vector<int>& img) {
    std::vector<int> inv(img.size());
    for (size_t i = 0; i < img.size(); ++i) inv[static_cast<size_t>(img[i])] = static_cast<int>(i);
    return inv;
}

struct PairingData {
    std::vector<int> involution;
    int gamma_cycles; // ♯(γ⁻¹λ)
};

inline std::vector<PairingData> collect_pairings(int two_p, const Caps& caps) {
    std::vector<PairingData> out;
    const std::vector<int> ginv = canonical_full_cycle(two_p).inverse().images();
    std::vector<char> seen(static_cast<size_t>(two_p));
    for_each_pairing(
        two_p,
        [&](const PairPartition& lam) {
            std::vector<int> inv = lam.to_permutation().images();
            const int c = composed_cycle_count(ginv, inv, seen);
            out.push_back({std::move(inv), c});
        },
        caps);
    return out;
}

} // namespace detail

// E Tr(G^order) for GUE(n); zero polynomial for odd orders.
inline MomentPolynomial gue_plain_moment(int order, const Caps& caps = default_caps()) {
    if (order < 0) throw validation_error("gue_plain_moment: negative order");
    MomentPolynomial poly({"n"});
    if (order % 2 != 0) return poly;
    if (order == 0) {
        poly.add_term({1}, 1); // Tr Id = n
        return poly;
    }
    const int p = order / 2;
    if (p > caps.gue_plain_p) throw resource_error("gue_plain_moment: order exceeds cap");
    for (const auto& pd : detail::collect_pairings(order, caps))
        poly.add_term({pd.gamma_cycles}, 1);
    return poly;
}

// E Tr(W^p) for (n,s)-Wishart.
inline MomentPolynomial wishart_plain_moment(int p, const Caps& caps = default_caps()) {
    if (p < 0) throw validation_error("wishart_plain_moment: negative order");
    MomentPolynomial poly({"n", "s"});
    if (p == 0) {
        poly.add_term({1, 0}, 1);
        return poly;
    }
    if (p > caps.wishart_plain_p) throw resource_error("wishart_plain_moment: order exceeds cap");
    const std::vector<int> ginv = canonical_full_cycle(p).inverse().images();
    std::vector<char> seen(static_cast<size_t>(p));
    for_each_permutation(
        p,
        [&](const Permutation& alpha) {
            poly.add_term({detail::composed_cycle_count(ginv, alpha.images(), seen),
                           alpha.cycle_count()},
                          1);
        },
        caps);
    return poly;
}

// E Tr[(Σ_j G̃(j))^order] on A⊗B^k, exact in d (balanced) or (dA, dB)
// (unbalanced). Zero polynomial for odd orders.
inline MomentPolynomial gue_modified_moment(int order, int k, bool balanced = true,
                                            const Caps& caps = default_caps()) {
    if (order < 0) throw validation_error("gue_modified_moment: negative order");
    if (k < 1) throw validation_error("gue_modified_moment: k must be >= 1");
    MomentPolynomial poly(balanced ? std::vector<std::string>{"d"}
                                   : std::vector<std::string>{"dA", "dB"});
    if (order % 2 != 0) return poly;
    if (order == 0) {
        // Tr Id on the (k+1)-factor space
        if (balanced)
            poly.add_term({k + 1}, 1);
        else
            poly.add_term({1, k}, 1);
        return poly;
    }
    const int p = order / 2;
    if (p > caps.gue_modified_p || k > caps.gue_modified_k)
        throw resource_error("gue_modified_moment: order/k exceeds cap");
    const auto pairings = detail::collect_pairings(order, caps);
    std::vector<char> seen(static_cast<size_t>(order));
    for_each_set_partition(
        order,
        [&](const SetPartition& part) {
            const auto& blocks = part.blocks();
            const int b = static_cast<int>(blocks.size());
            if (b > k) return;
            const BigInt mult = detail::injection_count(k, b);
            const std::vector<int> gpinv =
                detail::inverse_images(detail::gamma_of_blocks(blocks, order));
            for (const auto& pd : pairings) {
                const int cf = detail::composed_cycle_count(gpinv, pd.involution, seen);
                if (balanced)
                    poly.add_term({pd.gamma_cycles + cf + k - b}, mult);
                else
                    poly.add_term({pd.gamma_cycles, cf + k - b}, mult);
            }
        },
        caps);
    return poly;
}

// E Tr[(Σ_j W̃(j))^p] on A⊗B^k, exact in (d, s).
inline MomentPolynomial wishart_modified_moment(int p, int k,
                                                const Caps& caps = default_caps()) {
    if (p < 0) throw validation_error("wishart_modified_moment: negative order");
    if (k < 1) throw validation_error("wishart_modified_moment: k must be >= 1");
    MomentPolynomial poly({"d", "s"});
    if (p == 0) {
        poly.add_term({k + 1, 0}, 1);
        return poly;
    }
    if (p > caps.wishart_modified_p || k > caps.wishart_modified_k)
        throw resource_error("wishart_modified_moment: order/k exceeds cap");
    std::vector<std::pair<std::vector<int>, std::pair<int, int>>> perms; // images, (♯α, ♯(γ⁻¹α))
    {
        const std::vector<int> ginv = canonical_full_cycle(p).inverse().images();
        std::vector<char> seen(static_cast<size_t>(p));
        for_each_permutation(
            p,
            [&](const Permutation& alpha) {
                perms.push_back({alpha.images(),
                                 {alpha.cycle_count(),
                                  detail::composed_cycle_count(ginv, alpha.images(), seen)}});
            },
            caps);
    }
    std::vector<char> seen(static_cast<size_t>(p));
    for_each_set_partition(
        p,
        [&](const SetPartition& part) {
            const auto& blocks = part.blocks();
            const int b = static_cast<int>(blocks.size());
            if (b > k) return;
            const BigInt mult = detail::injection_count(k, b);
            const std::vector<int> gpinv =
                detail::inverse_images(detail::gamma_of_blocks(blocks, p));
            for (const auto& [img, counts] : perms) {
                const auto& [m, cg] = counts;
                const int cf = detail::composed_cycle_count(gpinv, img, seen);
                poly.add_term({cg + cf + k - b, m}, mult);
            }
        },
        caps);
    return poly;
}

// E Tr[G̃(f(1)) ⋯ G̃(f(2p))] for one fixed word f, exact in d.
inline MomentPolynomial gue_word_moment(const LevelFunction& f,
                                        const Caps& caps = default_caps()) {
    const int len = f.size();
    const int k = f.alphabet();
    MomentPolynomial poly({"d"});
    if (len % 2 != 0) throw validation_error("gue_word_moment: odd word length");
    if (len == 0) {
        poly.add_term({k + 1}, 1);
        return poly;
    }
    if (len > caps.word_len) throw resource_error("gue_word_moment: word length exceeds cap");
    const std::vector<int> gfinv = gamma_f(f).inverse().images();
    const int shift = k - f.image_size();
    std::vector<char> seen(static_cast<size_t>(len));
    for (const auto& pd : detail::collect_pairings(len, caps))
        poly.add_term(
            {pd.gamma_cycles + detail::composed_cycle_count(gfinv, pd.involution, seen) + shift},
            1);
    return poly;
}

// |{λ ∈ NC⁽²⁾(2p) : f∘λ = f}|: the normalized d→∞ limit of the word moment
// (its coefficient at d^(2p+k+1)), counted here directly for use as an
// independent check.
inline BigInt count_compatible_nc_pairings(const LevelFunction& f,
                                           const Caps& caps = default_caps()) {
    const int len = f.size();
    if (len % 2 != 0) throw validation_error("count_compatible_nc_pairings: odd word length");
    if (len == 0) return 1;
    BigInt count = 0;
    for (const PairPartition& lam : enumerate_nc_pairings(len, caps)) {
        bool ok = true;
        for (const auto& [a, b] : lam.pairs())
            if (f(a) != f(b)) {
                ok = false;
                break;
            }
        if (ok) ++count;
    }
    return count;
}

/*
 * Exact half-restricted moment sum for the partially transposed ensemble
 * Σ_j G̃(j)^Γ, where Γ transposes the last ⌈k/2⌉ B factors. Words staying
 * inside one half of the slots {1..⌊k/2⌋} or {⌊k/2⌋+1..k} contribute exactly
 * their untransposed value (a word entirely in the transposed half is a
 * global transpose, which fixes every trace). Words mixing the two halves
 * pick up extra index constraints and are excluded here; no exact finite-d
 * formula is implemented for them. The exclusion is not asymptotically
 * negligible: a pairing whose pairs are each slot-constant is
 * transpose-neutral wherever its slots sit, so mixed words reach the same
 * leading power d^(2p+k+1) and the full transposed sum's leading coefficient
 * is k^p·Cat_p (the plain sum's), not the restricted families' total.
 */
inline MomentPolynomial gamma_restricted_moment(int order, int k,
                                                const Caps& caps = default_caps()) {
    if (order < 0) throw validation_error("gamma_restricted_moment: negative order");
    if (k < 1) throw validation_error("gamma_restricted_moment: k must be >= 1");
    MomentPolynomial poly({"d"});
    if (order % 2 != 0) return poly;
    if (order == 0) {
        poly.add_term({k + 1}, 1);
        return poly;
    }
    const int p = order / 2;
    if (p > caps.gue_modified_p || k > caps.gue_modified_k)
        throw resource_error("gamma_restricted_moment: order/k exceeds cap");
    const int lower = k / 2;
    const int upper = k - lower;
    const auto pairings = detail::collect_pairings(order, caps);
    std::vector<char> seen(static_cast<size_t>(order));
    for_each_set_partition(
        order,
        [&](const SetPartition& part) {
            const auto& blocks = part.blocks();
            const int b = static_cast<int>(blocks.size());
            const BigInt mult =
                detail::injection_count(lower, b) + detail::injection_count(upper, b);
            if (mult == 0) return;
            const std::vector<int> gpinv =
                detail::inverse_images(detail::gamma_of_blocks(blocks, order));
            for (const auto& pd : pairings) {
                const int cf = detail::composed_cycle_count(gpinv, pd.involution, seen);
                poly.add_term({pd.gamma_cycles + cf + k - b}, mult);
            }
        },
        caps);
    return poly;
}

/*
 * Leading term of the half-restricted families above. Both peak at the same
 * power d^(2p+k+1) (the +k−|im f| term in the exponent uses the full slot
 * count k, whichever half f maps into), with coefficients ⌊k/2⌋^p·Cat_p and
 * ⌈k/2⌉^p·Cat_p; the d-degrees therefore always coincide and only the
 * coefficients distinguish the halves (equal when k is even). This is the
 * leading term of the restricted sum only: mixed-half words lift the full
 * transposed ensemble's leading coefficient to k^p·Cat_p.
 */
struct GammaLeadingTerms {
    int exponent;         // 2p + k + 1
    BigInt lower_coeff;   // ⌊k/2⌋^p · Cat_p
    BigInt upper_coeff;   // ⌈k/2⌉^p · Cat_p

    std::vector<std::pair<int, BigInt>> terms() const {
        return {{exponent, lower_coeff + upper_coeff}};
    }
};

inline GammaLeadingTerms gamma_modified_moment_leading(int p, int k) {
    if (p < 1) throw validation_error("gamma_modified_moment_leading: p must be >= 1");
    if (k < 1) throw validation_error("gamma_modified_moment_leading: k must be >= 1");
    const BigInt cat = catalan(p);
    return {2 * p + k + 1, detail::big_pow(k / 2, p) * cat,
            detail::big_pow(k - k / 2, p) * cat};
}

// E (Tr[(Σ_j W̃(j))^p])², exact in (d, s): sum over f₁, f₂ : [p] -> [k] and
// α ∈ S(2p), against the product of full cycles on the two halves.
inline MomentPolynomial second_moment_poly(int p, int k, const Caps& caps = default_caps()) {
    if (p < 0) throw validation_error("second_moment_poly: negative order");
    if (k < 1) throw validation_error("second_moment_poly: k must be >= 1");
    MomentPolynomial poly({"d", "s"});
    if (p == 0) {
        poly.add_term({2 * k + 2, 0}, 1);
        return poly;
    }
    if (p > caps.second_moment_p || k > caps.second_moment_k)
        throw resource_error("second_moment_poly: order/k exceeds cap");
    const int n = 2 * p;
    // γ₁γ₂: full cycle on {1..p} times full cycle on {p+1..2p}
    std::vector<int> g12(static_cast<size_t>(n));
    {
        const std::vector<int> g = canonical_full_cycle(p).images();
        for (int i = 0; i < p; ++i) {
            g12[static_cast<size_t>(i)] = g[static_cast<size_t>(i)];
            g12[static_cast<size_t>(p + i)] = p + g[static_cast<size_t>(i)];
        }
    }
    const std::vector<int> g12inv = detail::inverse_images(g12);
    std::vector<std::pair<std::vector<int>, std::pair<int, int>>> perms;
    {
        std::vector<char> seen(static_cast<size_t>(n));
        Caps wide = caps;
        wide.permutations_p = std::max(caps.permutations_p, n);
        for_each_permutation(
            n,
            [&](const Permutation& alpha) {
                perms.push_back({alpha.images(),
                                 {alpha.cycle_count(),
                                  detail::composed_cycle_count(g12inv, alpha.images(), seen)}});
            },
            wide);
    }
    // level-set partitions of each half, with injection multiplicities
    std::vector<std::pair<std::vector<std::vector<int>>, BigInt>> parts;
    for_each_set_partition(
        p,
        [&](const SetPartition& part) {
            const int b = static_cast<int>(part.blocks().size());
            if (b > k) return;
            parts.push_back({part.blocks(), detail::injection_count(k, b)});
        },
        caps);
    std::vector<char> seen(static_cast<size_t>(n));
    for (const auto& [blocks1, mult1] : parts) {
        for (const auto& [blocks2, mult2] : parts) {
            const BigInt mult = mult1 * mult2;
            std::vector<int> gc(static_cast<size_t>(n));
            {
                const std::vector<int> g1 = detail::gamma_of_blocks(blocks1, p);
                const std::vector<int> g2 = detail::gamma_of_blocks(blocks2, p);
                for (int i = 0; i < p; ++i) {
                    gc[static_cast<size_t>(i)] = g1[static_cast<size_t>(i)];
                    gc[static_cast<size_t>(p + i)] = p + g2[static_cast<size_t>(i)];
                }
            }
            const std::vector<int> gcinv = detail::inverse_images(gc);
            const int shift =
                2 * k - static_cast<int>(blocks1.size()) - static_cast<int>(blocks2.size());
            for (const auto& [img, counts] : perms) {
                const auto& [m, c12] = counts;
                poly.add_term({c12 + detail::composed_cycle_count(gcinv, img, seen) + shift, m},
                              mult);
            }
        }
    }
    return poly;
}

} // namespace extk
