#pragma once

#include <utility>
#include <vector>

#include "extk/common.hpp"
#include "extk/hermitian.hpp"
#include "extk/tensor.hpp"

namespace extk {

/*
 * Exact traces of products of slot embeddings, Tr[M̃(w_1)···M̃(w_L)], without
 * forming any dim = dA·dB^k matrix.
 *
 * The word is reduced cyclically: runs of one letter collapse into a matrix
 * power, untouched slots contribute a factor dB each, and the surviving
 * pattern is contracted directly. Supported reduced shapes: empty, a single
 * run, two runs, and the four-run alternation (r,s,r,s). These cover every
 * word over at most two distinct letters, hence all powers of a k=2 embedded
 * sum and order <= 2 powers for any k. Cost is O(dA⁴·dB²) at worst.
 */

namespace detail {

struct Run {
    int letter;
    int count;
};

// Cyclic run-length encoding: the word is rotated so a run never wraps.
inline std::vector<Run> cyclic_runs(const std::vector<int>& word) {
    const int L = static_cast<int>(word.size());
    std::vector<Run> runs;
    if (L == 0) return runs;
    int start = 0;
    while (start < L && word[start] == word[(start + L - 1) % L]) ++start;
    if (start == L) {
        runs.push_back({word[0], L}); // constant word
        return runs;
    }
    int i = start;
    do {
        int j = i;
        int c = 0;
        while (c < L && word[j % L] == word[i % L]) {
            ++j;
            ++c;
        }
        runs.push_back({word[i % L], c});
        i = j;
    } while (i % L != start % L);
    return runs;
}

inline CMatrix matrix_power(const CMatrix& m, int c) {
    CMatrix acc = m;
    for (int i = 1; i < c; ++i) acc = acc * m;
    return acc;
}

// Trace of M over its B factor, a dA×dA matrix.
inline CMatrix trace_out_b(const CMatrix& m, int dA, int dB) {
    CMatrix p = CMatrix::Zero(dA, dA);
    for (int a = 0; a < dA; ++a)
        for (int a2 = 0; a2 < dA; ++a2) {
            Complex s = 0.0;
            for (int b = 0; b < dB; ++b) s += m(a * dB + b, a2 * dB + b);
            p(a, a2) = s;
        }
    return p;
}

} // namespace detail

inline double embedded_word_trace(const CMatrix& M, int dA, int dB, int k,
                                  const std::vector<int>& word) {
    if (dA < 1 || dB < 1 || k < 1) throw validation_error("embedded_word_trace: bad dimensions");
    if (M.rows() != static_cast<long long>(dA) * dB || M.rows() != M.cols())
        throw validation_error("embedded_word_trace: base must be (dA·dB) square");
    for (int w : word)
        if (w < 1 || w > k) throw validation_error("embedded_word_trace: letter out of range");

    double dim_full = static_cast<double>(dA);
    for (int j = 0; j < k; ++j) dim_full *= dB;
    if (word.empty()) return dim_full;

    const auto runs = detail::cyclic_runs(word);
    double unused_factor = 1.0;
    {
        std::vector<bool> used(k + 1, false);
        for (const auto& r : runs) used[r.letter] = true;
        for (int j = 1; j <= k; ++j)
            if (!used[j]) unused_factor *= dB;
    }

    if (runs.size() == 1) {
        return (detail::matrix_power(M, runs[0].count).trace() * unused_factor).real();
    }
    if (runs.size() == 2) {
        const CMatrix p1 = detail::trace_out_b(detail::matrix_power(M, runs[0].count), dA, dB);
        const CMatrix p2 = detail::trace_out_b(detail::matrix_power(M, runs[1].count), dA, dB);
        return ((p1 * p2).trace() * unused_factor).real();
    }
    if (runs.size() == 4 && runs[0].letter == runs[2].letter && runs[1].letter == runs[3].letter) {
        const CMatrix m1 = detail::matrix_power(M, runs[0].count);
        const CMatrix m2 = detail::matrix_power(M, runs[1].count);
        const CMatrix m3 = detail::matrix_power(M, runs[2].count);
        const CMatrix m4 = detail::matrix_power(M, runs[3].count);
        // Tr[M1̃(r) M2̃(s) M3̃(r) M4̃(s)]: the A line visits a1..a4; slot r's
        // B index threads M1 and M3, slot s's threads M2 and M4.
        const long long nA2 = static_cast<long long>(dA) * dA;
        std::vector<Complex> t(nA2 * nA2, Complex(0.0)), u(nA2 * nA2, Complex(0.0));
        for (int a1 = 0; a1 < dA; ++a1)
            for (int a2 = 0; a2 < dA; ++a2)
                for (int a3 = 0; a3 < dA; ++a3)
                    for (int a4 = 0; a4 < dA; ++a4) {
                        Complex st = 0.0, su = 0.0;
                        for (int b1 = 0; b1 < dB; ++b1)
                            for (int b2 = 0; b2 < dB; ++b2) {
                                st += m1(a1 * dB + b1, a2 * dB + b2) * m3(a3 * dB + b2, a4 * dB + b1);
                                su += m2(a1 * dB + b1, a2 * dB + b2) * m4(a3 * dB + b2, a4 * dB + b1);
                            }
                        t[((a1 * dA + a2) * dA + a3) * dA + a4] = st;
                        u[((a1 * dA + a2) * dA + a3) * dA + a4] = su;
                    }
        Complex total = 0.0;
        for (int a1 = 0; a1 < dA; ++a1)
            for (int a2 = 0; a2 < dA; ++a2)
                for (int a3 = 0; a3 < dA; ++a3)
                    for (int a4 = 0; a4 < dA; ++a4)
                        total += t[((a1 * dA + a2) * dA + a3) * dA + a4] *
                                 u[((a2 * dA + a3) * dA + a4) * dA + a1];
        return (total * unused_factor).real();
    }
    throw validation_error("embedded_word_trace: reduced word has more than two distinct letters");
}

// Tr[(Σ_j M̃(j))^power] by expanding into k^power word traces.
inline double embedded_sum_trace_power(const CMatrix& M, int dA, int dB, int k, int power) {
    if (power < 0) throw validation_error("embedded_sum_trace_power: negative power");
    std::vector<int> word(power, 1);
    double total = 0.0;
    while (true) {
        total += embedded_word_trace(M, dA, dB, k, word);
        int t = power - 1;
        while (t >= 0 && word[t] == k) word[t--] = 1;
        if (t < 0) break;
        ++word[t];
    }
    return total;
}

// Reference implementation through dense embeddings; O(dim³) per factor.
inline double embedded_word_trace_dense(const CMatrix& M, int dA, int dB, int k,
                                        const std::vector<int>& word,
                                        const Caps& caps = default_caps()) {
    HermitianOperator base(M, {dA, dB});
    if (word.empty()) {
        double dim_full = dA;
        for (int j = 0; j < k; ++j) dim_full *= dB;
        return dim_full;
    }
    CMatrix acc = embed(base, word[0], k, caps).matrix();
    for (std::size_t i = 1; i < word.size(); ++i)
        acc = acc * embed(base, word[i], k, caps).matrix();
    return acc.trace().real();
}

} // namespace extk
