#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "extk/rmt.hpp"
#include "extk/rng.hpp"
#include "extk/spectra.hpp"
#include "extk/tensor.hpp"

namespace {

using extk::CMatrix;
using extk::Complex;
using extk::HermitianOperator;

HermitianOperator random_bipartite(int dA, int dB, unsigned long long seed) {
    extk::GaussianStream gs(seed, 0);
    return HermitianOperator(extk::sample_gue(dA * dB, gs), {dA, dB});
}

// Reference embedding built entry by entry from its defining matrix elements:
// <a, b_1..b_k| T |a', b'_1..b'_k> = M[(a,b_slot),(a',b'_slot)] * prod_{r != slot}
// delta(b_r, b'_r). Flat indices use base-dB digits with A slowest, written out
// here without reusing any library stride helpers.
CMatrix naive_embed(const CMatrix& m, int dA, int dB, int slot, int k) {
    long long n = dA;
    for (int r = 0; r < k; ++r) n *= dB;
    CMatrix out = CMatrix::Zero(n, n);
    std::vector<int> row_digits(k + 1), col_digits(k + 1);
    for (long long row = 0; row < n; ++row) {
        long long rem = row;
        for (int r = k; r >= 1; --r) {
            row_digits[r] = static_cast<int>(rem % dB);
            rem /= dB;
        }
        row_digits[0] = static_cast<int>(rem);
        for (long long col = 0; col < n; ++col) {
            rem = col;
            for (int r = k; r >= 1; --r) {
                col_digits[r] = static_cast<int>(rem % dB);
                rem /= dB;
            }
            col_digits[0] = static_cast<int>(rem);
            bool diag = true;
            for (int r = 1; r <= k; ++r)
                if (r != slot && row_digits[r] != col_digits[r]) diag = false;
            if (!diag) continue;
            out(row, col) = m(row_digits[0] * dB + row_digits[slot],
                              col_digits[0] * dB + col_digits[slot]);
        }
    }
    return out;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

} // namespace

TEST_CASE("hermitian operator validates its inputs") {
    CMatrix bad(2, 2);
    bad << Complex(0, 0), Complex(1, 0), Complex(2, 0), Complex(0, 0);
    REQUIRE_THROWS_AS(HermitianOperator(bad, {2}), extk::validation_error);

    CMatrix id = CMatrix::Identity(4, 4);
    REQUIRE_THROWS_AS(HermitianOperator(id, {2, 3}), extk::validation_error);
    REQUIRE_THROWS_AS(HermitianOperator(id, {}), extk::validation_error);
    REQUIRE_THROWS_AS(HermitianOperator(id, {4, 0}), extk::validation_error);
    REQUIRE_NOTHROW(HermitianOperator(id, {2, 2}));
}

TEST_CASE("embedding the identity gives the identity") {
    HermitianOperator id(CMatrix::Identity(6, 6), {2, 3});
    for (int k = 1; k <= 3; ++k)
        for (int slot = 1; slot <= k; ++slot) {
            const auto t = extk::embed(id, slot, k);
            REQUIRE(t.dim() == 2 * static_cast<int>(std::pow(3, k)));
            REQUIRE(max_abs_diff(t.matrix(), CMatrix::Identity(t.dim(), t.dim())) < 1e-14);
        }
}

TEST_CASE("embed matches the entrywise reference construction") {
    const int dA = 2, dB = 3;
    const auto M = random_bipartite(dA, dB, 11);
    for (int k = 1; k <= 3; ++k)
        for (int slot = 1; slot <= k; ++slot) {
            const auto t = extk::embed(M, slot, k);
            REQUIRE(t.factor_dims().size() == static_cast<size_t>(k + 1));
            REQUIRE(t.factor_dims()[0] == dA);
            REQUIRE(max_abs_diff(t.matrix(), naive_embed(M.matrix(), dA, dB, slot, k)) < 1e-13);
        }
}

TEST_CASE("embed rejects bad arguments") {
    const auto M = random_bipartite(2, 2, 3);
    REQUIRE_THROWS_AS(extk::embed(M, 0, 2), extk::validation_error);
    REQUIRE_THROWS_AS(extk::embed(M, 3, 2), extk::validation_error);
    REQUIRE_THROWS_AS(extk::embed(M, 1, 0), extk::validation_error);
    HermitianOperator three(CMatrix::Identity(8, 8), {2, 2, 2});
    REQUIRE_THROWS_AS(extk::embed(three, 1, 2), extk::validation_error);
}

TEST_CASE("tensor sum has the expected trace and hermiticity") {
    const int dA = 3, dB = 2, k = 3;
    const auto M = random_bipartite(dA, dB, 17);
    const auto total = extk::tensor_sum(M, k);
    const Complex trM = M.matrix().trace();
    const Complex trT = total.matrix().trace();
    const double scale = static_cast<double>(k) * std::pow(dB, k - 1);
    REQUIRE(std::abs(trT - scale * trM) < 1e-10);
    REQUIRE(max_abs_diff(total.matrix(), total.matrix().adjoint()) < 1e-12);
}

TEST_CASE("tensor sum equals the sum of single-slot embeddings") {
    const auto M = random_bipartite(2, 2, 5);
    const int k = 3;
    CMatrix acc = CMatrix::Zero(16, 16);
    for (int slot = 1; slot <= k; ++slot) acc += extk::embed(M, slot, k).matrix();
    REQUIRE(max_abs_diff(extk::tensor_sum(M, k).matrix(), acc) < 1e-13);
}

TEST_CASE("tensor sum with trivial B factor is k copies of M") {
    const auto M = random_bipartite(3, 1, 9);
    const auto total = extk::tensor_sum(M, 4);
    REQUIRE(total.dim() == 3);
    REQUIRE(max_abs_diff(total.matrix(), 4.0 * M.matrix()) < 1e-13);
}

TEST_CASE("partial transpose of a product operator transposes one factor") {
    extk::GaussianStream gs(23, 0);
    const CMatrix x = extk::sample_gue(2, gs);
    const CMatrix y = extk::sample_gue(3, gs);
    CMatrix prod(6, 6);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 3; ++b)
            for (int a2 = 0; a2 < 2; ++a2)
                for (int b2 = 0; b2 < 3; ++b2)
                    prod(a * 3 + b, a2 * 3 + b2) = x(a, a2) * y(b, b2);
    HermitianOperator M(prod, {2, 3});
    const auto pt = extk::partial_transpose(M, {1});
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 3; ++b)
            for (int a2 = 0; a2 < 2; ++a2)
                for (int b2 = 0; b2 < 3; ++b2)
                    REQUIRE(std::abs(pt.matrix()(a * 3 + b, a2 * 3 + b2) -
                                     x(a, a2) * y(b2, b)) < 1e-14);
}

TEST_CASE("partial transpose basics") {
    const auto M = random_bipartite(2, 3, 29);
    SECTION("empty factor list is the identity map") {
        REQUIRE(max_abs_diff(extk::partial_transpose(M, {}).matrix(), M.matrix()) < 1e-14);
    }
    SECTION("transposing twice restores the operator") {
        const auto once = extk::partial_transpose(M, {1});
        const auto twice = extk::partial_transpose(once, {1});
        REQUIRE(max_abs_diff(twice.matrix(), M.matrix()) < 1e-14);
    }
    SECTION("all factors gives the full transpose") {
        const auto full = extk::partial_transpose(M, {0, 1});
        REQUIRE(max_abs_diff(full.matrix(), M.matrix().transpose()) < 1e-14);
    }
    SECTION("full transpose preserves the spectrum") {
        const auto full = extk::partial_transpose(M, {0, 1});
        const auto ev_m = extk::eigenvalues(M);
        const auto ev_t = extk::eigenvalues(full);
        REQUIRE(ev_m.size() == ev_t.size());
        for (size_t i = 0; i < ev_m.size(); ++i)
            REQUIRE(ev_m[i] == Catch::Approx(ev_t[i]).margin(1e-10));
    }
    SECTION("out-of-range factor throws") {
        REQUIRE_THROWS_AS(extk::partial_transpose(M, {2}), extk::validation_error);
        REQUIRE_THROWS_AS(extk::partial_transpose(M, {-1}), extk::validation_error);
    }
}

TEST_CASE("half transpose selects the last half of the B slots") {
    REQUIRE(extk::half_transpose_factors(1) == std::vector<int>{1});
    REQUIRE(extk::half_transpose_factors(2) == std::vector<int>{2});
    REQUIRE(extk::half_transpose_factors(3) == std::vector<int>{2, 3});
    REQUIRE(extk::half_transpose_factors(4) == std::vector<int>{3, 4});
    REQUIRE(extk::half_transpose_factors(5) == std::vector<int>{3, 4, 5});
    REQUIRE_THROWS_AS(extk::half_transpose_factors(0), extk::validation_error);
}

TEST_CASE("symmetrize is idempotent and fixes slot-symmetric operators") {
    const auto M = random_bipartite(2, 2, 31);
    const int k = 3;
    const auto t = extk::embed(M, 1, k);
    const auto sym = extk::symmetrize(t);
    const auto sym2 = extk::symmetrize(sym);
    REQUIRE(max_abs_diff(sym.matrix(), sym2.matrix()) < 1e-12);
}

TEST_CASE("symmetrized single-slot embedding equals the averaged tensor sum") {
    // The slot-permutation average of M acting on slot 1 visits every slot
    // equally often, so it coincides with (1/k) sum_j M(j) as an operator.
    for (auto [dA, dB, k] : {std::tuple{2, 2, 2}, {2, 3, 2}, {3, 2, 3}, {2, 2, 4}}) {
        const auto M = random_bipartite(dA, dB, 1000 + dA * 100 + dB * 10 + k);
        const auto sym = extk::symmetrize(extk::embed(M, 1, k));
        const CMatrix avg = extk::tensor_sum(M, k).matrix() / static_cast<double>(k);
        REQUIRE(max_abs_diff(sym.matrix(), avg) < 1e-12);
    }
}

TEST_CASE("symmetrize validates factor structure") {
    HermitianOperator lone(CMatrix::Identity(3, 3), {3});
    REQUIRE_THROWS_AS(extk::symmetrize(lone), extk::validation_error);
    HermitianOperator uneven(CMatrix::Identity(12, 12), {2, 2, 3});
    REQUIRE_THROWS_AS(extk::symmetrize(uneven), extk::validation_error);
}

TEST_CASE("resource caps bound the dense constructions") {
    extk::Caps tight;
    tight.dense_dim = 10;
    const auto M = random_bipartite(2, 2, 41);
    REQUIRE_THROWS_AS(extk::embed(M, 1, 3, tight), extk::resource_error);
    REQUIRE_THROWS_AS(extk::tensor_sum(M, 3, tight), extk::resource_error);

    extk::Caps low_sym;
    low_sym.symmetrize_k = 2;
    const auto t = extk::embed(M, 1, 3);
    REQUIRE_THROWS_AS(extk::symmetrize(t, low_sym), extk::resource_error);
}
