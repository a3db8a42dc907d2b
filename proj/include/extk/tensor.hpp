#pragma once

#include <algorithm>
#include <vector>

#include "extk/common.hpp"
#include "extk/hermitian.hpp"

namespace extk {

/*
 * Index-arithmetic constructions on tensor-product operators.
 *
 * A bipartite operator M on A ⊗ B is promoted to A ⊗ B^⊗k by acting on one
 * B slot and leaving the others alone. All constructions walk flat indices
 * with precomputed strides; no Kronecker factors are materialized.
 */

namespace detail {

inline void check_dense_dim(long long n, const Caps& caps) {
    if (n > caps.dense_dim)
        throw resource_error("dense dimension " + std::to_string(n) + " exceeds cap " +
                             std::to_string(caps.dense_dim) + " (use --force to override)");
}

} // namespace detail

// M̃(j): M acting on (A, B_j) inside A ⊗ B_1 ⊗ ... ⊗ B_k, identity on the
// other slots. M must carry factor dims {dA, dB}; j is 1-based.
inline HermitianOperator embed(const HermitianOperator& M, int slot, int k,
                               const Caps& caps = default_caps()) {
    if (M.factor_dims().size() != 2)
        throw validation_error("embed: operator must have exactly two factors (A, B)");
    if (k < 1) throw validation_error("embed: k must be >= 1");
    if (slot < 1 || slot > k) throw validation_error("embed: slot out of range");
    const int dA = M.factor_dims()[0];
    const int dB = M.factor_dims()[1];
    std::vector<int> dims_out(1 + k, dB);
    dims_out[0] = dA;
    const long long n = detail::total_dim(dims_out);
    detail::check_dense_dim(n, caps);
    const auto strides = detail::factor_strides(dims_out);
    const long long sA = strides[0];
    const long long sj = strides[slot];

    CMatrix out = CMatrix::Zero(n, n);
    const CMatrix& m = M.matrix();

    // Enumerate the diagonal multi-index over the untouched slots and add a
    // copy of M at each offset.
    std::vector<int> rest(k - 1, 0);
    std::vector<long long> rest_strides;
    for (int r = 1; r <= k; ++r)
        if (r != slot) rest_strides.push_back(strides[r]);
    while (true) {
        long long base = 0;
        for (int t = 0; t < k - 1; ++t) base += rest[t] * rest_strides[t];
        for (int a = 0; a < dA; ++a)
            for (int bj = 0; bj < dB; ++bj) {
                const long long row = a * sA + bj * sj + base;
                for (int a2 = 0; a2 < dA; ++a2)
                    for (int bj2 = 0; bj2 < dB; ++bj2)
                        out(row, a2 * sA + bj2 * sj + base) = m(a * dB + bj, a2 * dB + bj2);
            }
        int t = k - 2;
        while (t >= 0 && rest[t] == dB - 1) rest[t--] = 0;
        if (t < 0) break;
        ++rest[t];
    }
    return HermitianOperator(std::move(out), std::move(dims_out));
}

// Σ_{j=1}^k M̃(j).
inline HermitianOperator tensor_sum(const HermitianOperator& M, int k,
                                    const Caps& caps = default_caps()) {
    if (k < 1) throw validation_error("tensor_sum: k must be >= 1");
    HermitianOperator acc = embed(M, 1, k, caps);
    if (k == 1) return acc;
    CMatrix total = acc.matrix();
    for (int j = 2; j <= k; ++j) total += embed(M, j, k, caps).matrix();
    return HermitianOperator(std::move(total), acc.factor_dims());
}

// Transpose the listed tensor factors (0-based positions into factor_dims).
inline HermitianOperator partial_transpose(const HermitianOperator& M,
                                           const std::vector<int>& factors) {
    const auto& dims = M.factor_dims();
    const int m = static_cast<int>(dims.size());
    std::vector<bool> selected(m, false);
    for (int f : factors) {
        if (f < 0 || f >= m) throw validation_error("partial_transpose: factor index out of range");
        selected[f] = true;
    }
    const auto strides = detail::factor_strides(dims);
    const long long n = M.dim();

    // Split each flat index into its selected-factor and remaining parts; the
    // transpose swaps the selected parts of row and column.
    std::vector<long long> sel(n);
    for (long long i = 0; i < n; ++i) {
        long long rem = i, s = 0;
        for (int r = 0; r < m; ++r) {
            const long long comp = rem / strides[r];
            rem -= comp * strides[r];
            if (selected[r]) s += comp * strides[r];
        }
        sel[i] = s;
    }
    const CMatrix& in = M.matrix();
    CMatrix out(n, n);
    for (long long r = 0; r < n; ++r) {
        const long long ru = r - sel[r];
        for (long long c = 0; c < n; ++c)
            out(ru + sel[c], (c - sel[c]) + sel[r]) = in(r, c);
    }
    return HermitianOperator(std::move(out), dims);
}

// 0-based factor positions transposed by the half-system transpose: the last
// ⌈k/2⌉ of the B slots (positions ⌊k/2⌋+1 .. k; A is position 0).
inline std::vector<int> half_transpose_factors(int k) {
    if (k < 1) throw validation_error("half_transpose_factors: k must be >= 1");
    std::vector<int> out;
    for (int j = k / 2 + 1; j <= k; ++j) out.push_back(j);
    return out;
}

// Average over all permutations of the B slots (first factor held fixed).
// Cost grows as k!·dim², so k is capped.
inline HermitianOperator symmetrize(const HermitianOperator& M, const Caps& caps = default_caps()) {
    const auto& dims = M.factor_dims();
    const int k = static_cast<int>(dims.size()) - 1;
    if (k < 1) throw validation_error("symmetrize: need at least one B slot");
    for (int j = 2; j <= k; ++j)
        if (dims[j] != dims[1])
            throw validation_error("symmetrize: B slots must have equal dimension");
    if (k > caps.symmetrize_k)
        throw resource_error("symmetrize: k=" + std::to_string(k) + " exceeds cap " +
                             std::to_string(caps.symmetrize_k));
    const long long n = M.dim();
    const auto strides = detail::factor_strides(dims);
    const CMatrix& in = M.matrix();
    CMatrix acc = CMatrix::Zero(n, n);

    std::vector<int> perm(k);
    for (int t = 0; t < k; ++t) perm[t] = t;
    long long count = 0;
    std::vector<long long> map(n);
    std::vector<long long> comp(k + 1);
    do {
        for (long long i = 0; i < n; ++i) {
            long long rem = i;
            for (int r = 0; r <= k; ++r) {
                comp[r] = rem / strides[r];
                rem -= comp[r] * strides[r];
            }
            long long mapped = comp[0] * strides[0];
            for (int t = 1; t <= k; ++t) mapped += comp[perm[t - 1] + 1] * strides[t];
            map[i] = mapped;
        }
        for (long long r = 0; r < n; ++r)
            for (long long c = 0; c < n; ++c) acc(r, c) += in(map[r], map[c]);
        ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    acc /= static_cast<double>(count);
    return HermitianOperator(std::move(acc), dims);
}

} // namespace extk
