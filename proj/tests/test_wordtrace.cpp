#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "extk/rmt.hpp"
#include "extk/rng.hpp"
#include "extk/tensor.hpp"
#include "extk/wordtrace.hpp"

namespace {

using extk::CMatrix;

CMatrix random_hermitian(int n, unsigned long long seed) {
    extk::GaussianStream gs(seed, 0);
    return extk::sample_gue(n, gs);
}

} // namespace

TEST_CASE("word traces match the dense reference at k = 2") {
    const int dA = 2, dB = 2, k = 2;
    const CMatrix M = random_hermitian(dA * dB, 1);
    const std::vector<std::vector<int>> words = {
        {1},          {2},          {1, 1},    {1, 2},         {1, 2, 1, 2},
        {1, 1, 2, 2}, {1, 2, 2, 1}, {2, 2, 2}, {1, 2, 2},      {1, 1, 1, 1},
        {2, 1, 2, 1}, {1, 2, 1, 1}, {2, 2},    {1, 1, 2, 1, 1}};
    for (const auto& w : words) {
        const double fast = extk::embedded_word_trace(M, dA, dB, k, w);
        const double dense = extk::embedded_word_trace_dense(M, dA, dB, k, w);
        INFO("word size " << w.size());
        REQUIRE(fast == Catch::Approx(dense).epsilon(1e-9).margin(1e-9));
    }
}

TEST_CASE("word traces match the dense reference with unused slots") {
    {
        const int dA = 3, dB = 2, k = 2;
        const CMatrix M = random_hermitian(dA * dB, 2);
        for (const auto& w : std::vector<std::vector<int>>{{1}, {2, 2}, {1, 2, 1, 2}}) {
            const double fast = extk::embedded_word_trace(M, dA, dB, k, w);
            const double dense = extk::embedded_word_trace_dense(M, dA, dB, k, w);
            REQUIRE(fast == Catch::Approx(dense).epsilon(1e-9).margin(1e-9));
        }
    }
    {
        const int dA = 2, dB = 3, k = 3;
        const CMatrix M = random_hermitian(dA * dB, 3);
        // Only two distinct letters may survive; the untouched slot contributes
        // a plain dB factor that the dense path picks up automatically.
        for (const auto& w : std::vector<std::vector<int>>{
                 {1, 1}, {2, 2, 2}, {1, 3}, {1, 3, 1, 3}, {3, 3, 2, 2}}) {
            const double fast = extk::embedded_word_trace(M, dA, dB, k, w);
            const double dense = extk::embedded_word_trace_dense(M, dA, dB, k, w);
            REQUIRE(fast == Catch::Approx(dense).epsilon(1e-9).margin(1e-9));
        }
    }
}

TEST_CASE("word traces are invariant under cyclic rotation") {
    const CMatrix M = random_hermitian(4, 4);
    const double a = extk::embedded_word_trace(M, 2, 2, 2, {1, 2, 2, 1});
    const double b = extk::embedded_word_trace(M, 2, 2, 2, {2, 2, 1, 1});
    const double c = extk::embedded_word_trace(M, 2, 2, 2, {2, 1, 1, 2});
    REQUIRE(a == Catch::Approx(b).epsilon(1e-12));
    REQUIRE(a == Catch::Approx(c).epsilon(1e-12));
}

TEST_CASE("empty word gives the full dimension") {
    const CMatrix M = random_hermitian(6, 5);
    REQUIRE(extk::embedded_word_trace(M, 2, 3, 3, {}) == Catch::Approx(2 * 27).epsilon(1e-14));
    REQUIRE(extk::embedded_sum_trace_power(M, 2, 3, 3, 0) ==
            Catch::Approx(2 * 27).epsilon(1e-14));
}

TEST_CASE("identity base gives the full dimension for every word") {
    const CMatrix id = CMatrix::Identity(6, 6);
    for (const auto& w :
         std::vector<std::vector<int>>{{1}, {2, 1}, {1, 2, 1, 2}, {2, 2, 1, 1}}) {
        REQUIRE(extk::embedded_word_trace(id, 2, 3, 2, w) == Catch::Approx(18.0).epsilon(1e-12));
    }
}

TEST_CASE("words over three distinct letters are rejected") {
    const CMatrix M = random_hermitian(4, 6);
    REQUIRE_THROWS_AS(extk::embedded_word_trace(M, 2, 2, 3, {1, 2, 3}), extk::validation_error);
    REQUIRE_THROWS_AS(extk::embedded_word_trace(M, 2, 2, 3, {1, 2, 1, 3}),
                      extk::validation_error);
    REQUIRE_THROWS_AS(extk::embedded_word_trace(M, 2, 2, 4, {1, 2, 3, 4}),
                      extk::validation_error);
}

TEST_CASE("word trace input validation") {
    const CMatrix M = random_hermitian(4, 7);
    REQUIRE_THROWS_AS(extk::embedded_word_trace(M, 2, 2, 2, {0}), extk::validation_error);
    REQUIRE_THROWS_AS(extk::embedded_word_trace(M, 2, 2, 2, {3}), extk::validation_error);
    REQUIRE_THROWS_AS(extk::embedded_word_trace(M, 0, 2, 2, {1}), extk::validation_error);
    REQUIRE_THROWS_AS(extk::embedded_word_trace(M, 3, 2, 2, {1}), extk::validation_error);
    REQUIRE_THROWS_AS(extk::embedded_sum_trace_power(M, 2, 2, 2, -1), extk::validation_error);
}

TEST_CASE("sum trace powers match dense matrix powers") {
    {
        const int dA = 2, dB = 2, k = 2;
        const CMatrix M = random_hermitian(dA * dB, 8);
        const CMatrix total =
            extk::tensor_sum(extk::HermitianOperator(M, {dA, dB}), k).matrix();
        CMatrix acc = CMatrix::Identity(total.rows(), total.cols());
        for (int p = 1; p <= 4; ++p) {
            acc = acc * total;
            const double fast = extk::embedded_sum_trace_power(M, dA, dB, k, p);
            REQUIRE(fast == Catch::Approx(acc.trace().real()).epsilon(1e-9).margin(1e-9));
        }
    }
    {
        const int dA = 2, dB = 2, k = 3;
        const CMatrix M = random_hermitian(dA * dB, 9);
        const CMatrix total =
            extk::tensor_sum(extk::HermitianOperator(M, {dA, dB}), k).matrix();
        const double fast = extk::embedded_sum_trace_power(M, dA, dB, k, 2);
        REQUIRE(fast ==
                Catch::Approx((total * total).trace().real()).epsilon(1e-9).margin(1e-9));
    }
}
