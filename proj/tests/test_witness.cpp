#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "extk/rmt.hpp"
#include "extk/rng.hpp"
#include "extk/spectra.hpp"
#include "extk/stats.hpp"
#include "extk/witness.hpp"

namespace {

using extk::CMatrix;
using extk::Complex;
using extk::CVector;
using extk::HermitianOperator;

HermitianOperator random_state(int dA, int dB, int s, unsigned long long seed) {
    extk::GaussianStream gs(seed, 0);
    return HermitianOperator(extk::sample_induced_state(dA * dB, s, gs), {dA, dB});
}

CVector random_unit_vector(int n, extk::GaussianStream& gs) {
    CVector v(n);
    for (int i = 0; i < n; ++i) v[i] = gs.complex_normal();
    v.normalize();
    return v;
}

CMatrix random_unitary(int n, extk::GaussianStream& gs) {
    const CMatrix g = extk::sample_ginibre(n, n, gs);
    Eigen::HouseholderQR<CMatrix> qr(g);
    return qr.householderQ() * CMatrix::Identity(n, n);
}

} // namespace

TEST_CASE("maximally mixed state has witness equal to its purity") {
    for (int d : {2, 3})
        for (int k = 1; k <= 3; ++k) {
            HermitianOperator rho(CMatrix::Identity(d * d, d * d) / (d * d), {d, d});
            const double w = extk::witness_value(rho, k);
            REQUIRE(w == Catch::Approx(1.0 / (d * d)).margin(1e-10));
            REQUIRE_FALSE(extk::detect_not_k_extendible(rho, k));
        }
}

TEST_CASE("pure product states are never flagged") {
    for (int k = 1; k <= 3; ++k) {
        extk::GaussianStream gs(61 + k, 0);
        const CVector a = random_unit_vector(2, gs);
        const CVector b = random_unit_vector(3, gs);
        CVector ab(6);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 3; ++j) ab[i * 3 + j] = a[i] * b[j];
        HermitianOperator rho(ab * ab.adjoint(), {2, 3});
        REQUIRE(extk::purity(rho) == Catch::Approx(1.0).margin(1e-12));
        REQUIRE(extk::witness_value(rho, k) == Catch::Approx(1.0).margin(1e-9));
        REQUIRE_FALSE(extk::detect_not_k_extendible(rho, k, 1e-8));
    }
}

TEST_CASE("maximally entangled qubit pair is flagged at k = 2") {
    CVector phi(4);
    phi << Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(1, 0);
    phi /= std::sqrt(2.0);
    HermitianOperator rho(phi * phi.adjoint(), {2, 2});

    const double w = extk::witness_value(rho, 2);
    // Two copies of the projector overlap at angle cos θ = 1/2, so the sum has
    // top eigenvalue 3/2 and the witness is exactly 3/4.
    REQUIRE(w == Catch::Approx(0.75).margin(1e-10));
    REQUIRE(extk::detect_not_k_extendible(rho, 2));

    // Independent dense check: assemble both slot embeddings entry by entry on
    // the (a, b1, b2) index set and diagonalize.
    CMatrix total = CMatrix::Zero(8, 8);
    const CMatrix& m = rho.matrix();
    for (int a = 0; a < 2; ++a)
        for (int b1 = 0; b1 < 2; ++b1)
            for (int b2 = 0; b2 < 2; ++b2)
                for (int a2 = 0; a2 < 2; ++a2)
                    for (int c1 = 0; c1 < 2; ++c1)
                        for (int c2 = 0; c2 < 2; ++c2) {
                            const int row = a * 4 + b1 * 2 + b2;
                            const int col = a2 * 4 + c1 * 2 + c2;
                            if (b2 == c2) total(row, col) += m(a * 2 + b1, a2 * 2 + c1);
                            if (b1 == c1) total(row, col) += m(a * 2 + b2, a2 * 2 + c2);
                        }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(total, Eigen::EigenvaluesOnly);
    const double norm = std::max(std::abs(es.eigenvalues()(0)), std::abs(es.eigenvalues()(7)));
    REQUIRE(w == Catch::Approx(norm / 2.0).margin(1e-10));
}

TEST_CASE("k = 1 witness is the spectral norm and never detects") {
    const auto rho = random_state(2, 2, 4, 91);
    const auto ev = extk::eigenvalues(rho);
    REQUIRE(extk::witness_value(rho, 1) == Catch::Approx(ev.back()).margin(1e-12));
    REQUIRE_FALSE(extk::detect_not_k_extendible(rho, 1));
}

TEST_CASE("witness values do not increase with k") {
    const auto rho = random_state(2, 2, 3, 92);
    double prev = extk::witness_value(rho, 1);
    for (int k = 2; k <= 4; ++k) {
        const double cur = extk::witness_value(rho, k);
        REQUIRE(cur <= prev + 1e-10);
        prev = cur;
    }
}

TEST_CASE("witness dominates the overlap with every product state") {
    const auto rho = random_state(2, 3, 5, 93);
    const double w = extk::witness_value(rho, 3);
    extk::GaussianStream gs(94, 0);
    for (int t = 0; t < 50; ++t) {
        const CVector a = random_unit_vector(2, gs);
        const CVector b = random_unit_vector(3, gs);
        CVector ab(6);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 3; ++j) ab[i * 3 + j] = a[i] * b[j];
        const double overlap = (ab.adjoint() * rho.matrix() * ab)(0, 0).real();
        REQUIRE(overlap <= w + 1e-9);
    }
}

TEST_CASE("witness is invariant under local unitaries") {
    const auto rho = random_state(2, 2, 6, 95);
    extk::GaussianStream gs(96, 0);
    const CMatrix u = random_unitary(2, gs);
    const CMatrix v = random_unitary(2, gs);
    CMatrix uv(4, 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int i2 = 0; i2 < 2; ++i2)
                for (int j2 = 0; j2 < 2; ++j2)
                    uv(i * 2 + j, i2 * 2 + j2) = u(i, i2) * v(j, j2);
    HermitianOperator rotated(uv * rho.matrix() * uv.adjoint(), {2, 2});
    for (int k : {2, 3})
        REQUIRE(extk::witness_value(rotated, k) ==
                Catch::Approx(extk::witness_value(rho, k)).margin(1e-9));
}

TEST_CASE("state validation rejects malformed inputs") {
    REQUIRE_THROWS_AS(
        extk::witness_value(HermitianOperator(CMatrix::Identity(4, 4), {2, 2}), 2),
        extk::validation_error); // trace 4, not a state
    REQUIRE_THROWS_AS(
        extk::witness_value(HermitianOperator(CMatrix::Identity(4, 4) / 4.0, {4}), 2),
        extk::validation_error); // not bipartite
    CMatrix neg = CMatrix::Zero(4, 4);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    REQUIRE_THROWS_AS(extk::witness_value(HermitianOperator(neg, {2, 2}), 2),
                      extk::validation_error); // negative eigenvalue
    const auto rho = random_state(2, 2, 4, 97);
    REQUIRE_THROWS_AS(extk::witness_value(rho, 0), extk::validation_error);
}

TEST_CASE("closed-form predictions take their frozen values") {
    REQUIRE(extk::purity_prediction(0.05, 8) * 64.0 == Catch::Approx(21.0).margin(1e-12));
    REQUIRE(extk::witness_prediction(1.0, 8, 2) ==
            Catch::Approx((3.0 + 2.0 * std::sqrt(2.0)) / 128.0).margin(1e-15));
}

TEST_CASE("detection threshold constant") {
    using extk::BigRational;
    REQUIRE(extk::c_star(1) == BigRational(0));
    REQUIRE(extk::c_star(2) == BigRational(1, 8));
    REQUIRE(extk::c_star(6) == BigRational(25, 24));
    for (int k = 2; k <= 40; ++k) REQUIRE(extk::c_star(k) > extk::c_star(k - 1));
    const double scaled = static_cast<double>(extk::c_star(1000)) / 1000.0;
    REQUIRE(scaled == Catch::Approx(0.25).margin(1e-3));
    REQUIRE_THROWS_AS(extk::c_star(0), extk::validation_error);
}

TEST_CASE("minimal k beating competing constants") {
    REQUIRE(extk::min_k_beating(std::exp(-0.5), extk::ComparisonMode::width) == 11);
    const double ppt_like = std::pow(8.0 / (3.0 * M_PI), 2.0);
    REQUIRE(extk::min_k_beating(ppt_like, extk::ComparisonMode::threshold) == 5);
    REQUIRE(extk::min_k_beating(4.0, extk::ComparisonMode::threshold) == 18);
    REQUIRE_THROWS_AS(extk::min_k_beating(0.0, extk::ComparisonMode::width),
                      extk::validation_error);
}

TEST_CASE("witness experiment report is structurally sound and deterministic") {
    const auto rep = extk::run_witness_experiment(3, 2, 1.0, 8, 42);
    REQUIRE(rep.s == extk::environment_size(1.0, 3));
    REQUIRE(rep.purity_per_rep.size() == 8);
    REQUIRE(rep.witness_per_rep.size() == 8);
    REQUIRE(rep.detected_per_rep.size() == 8);
    long flagged = 0;
    for (size_t r = 0; r < 8; ++r) {
        REQUIRE(rep.purity_per_rep[r] > 0.0);
        REQUIRE(rep.witness_per_rep[r] > 0.0);
        const bool want = rep.witness_per_rep[r] < rep.purity_per_rep[r] - 1e-10;
        REQUIRE(rep.detected_per_rep[r] == (want ? 1 : 0));
        flagged += rep.detected_per_rep[r];
    }
    REQUIRE(rep.detected_count == flagged);
    REQUIRE(rep.detection_rate == Catch::Approx(flagged / 8.0).margin(1e-15));
    REQUIRE(rep.rate_ci.lo <= rep.detection_rate);
    REQUIRE(rep.rate_ci.hi >= rep.detection_rate);

    const auto again = extk::run_witness_experiment(3, 2, 1.0, 8, 42);
    REQUIRE(rep.purity_per_rep == again.purity_per_rep);
    REQUIRE(rep.witness_per_rep == again.witness_per_rep);

    REQUIRE_THROWS_AS(extk::run_witness_experiment(1, 2, 1.0, 8, 42), extk::validation_error);
    REQUIRE_THROWS_AS(extk::run_witness_experiment(3, 0, 1.0, 8, 42), extk::validation_error);
    REQUIRE_THROWS_AS(extk::run_witness_experiment(3, 2, 1.0, 0, 42), extk::validation_error);
}

TEST_CASE("threshold sweep shares its seed across the grid") {
    const auto sweep = extk::run_threshold_sweep(3, 2, {0.5, 1.0}, 6, 7);
    REQUIRE(sweep.cells.size() == 2);
    REQUIRE(sweep.c_star_exact == extk::BigRational(1, 8));
    REQUIRE(sweep.cells[0].seed == sweep.cells[1].seed);
    REQUIRE(sweep.cells[0].s != sweep.cells[1].s);
    REQUIRE_THROWS_AS(extk::run_threshold_sweep(3, 2, {}, 6, 7), extk::validation_error);
    REQUIRE_THROWS_AS(extk::run_threshold_sweep(3, 2, {0.5, -1.0}, 6, 7),
                      extk::validation_error);
}

TEST_CASE("variance decay input validation") {
    REQUIRE_THROWS_AS(extk::variance_decay_check({6}, 2, 2, 1.0, 10, 1),
                      extk::validation_error);
    REQUIRE_THROWS_AS(extk::variance_decay_check({12, 6}, 2, 2, 1.0, 10, 1),
                      extk::validation_error);
    REQUIRE_THROWS_AS(extk::variance_decay_check({4, 6}, 3, 3, 1.0, 10, 1),
                      extk::validation_error);
    REQUIRE_THROWS_AS(extk::variance_decay_check({4, 6}, 2, 2, 1.0, 1, 1),
                      extk::validation_error);
}

TEST_CASE("variance decay smoke run") {
    const auto rep = extk::variance_decay_check({3, 6}, 2, 2, 1.0, 40, 11);
    REQUIRE(rep.moment_per_rep.size() == 2);
    REQUIRE(rep.variance_ratio.size() == 1);
    // The reported baseline is the (d₂/d₁)² = 4 upper-bound rate; the true
    // variance of the normalized p = 2 moment decays like d⁻⁴. Exactly, from
    // the closed-form first and second moments at k = 2, c = 1:
    //   Var = (152d¹⁰ + 120d⁸ + 40d⁶ + 8d⁴)/d¹⁴,
    // giving a d = 3 → 6 ratio of 17.08 (measured 17.07 at this seed).
    REQUIRE(rep.predicted_ratio[0] == Catch::Approx(4.0).margin(1e-12));
    REQUIRE(rep.variance_ratio[0] > 10.0);
    REQUIRE(rep.variance_ratio[0] < 25.0);
    // Means approach the same limiting moment, so they should be close.
    REQUIRE(rep.moment_mean[0] == Catch::Approx(rep.moment_mean[1]).epsilon(0.25));
}

TEST_CASE("wilson interval frozen values and edges") {
    const auto w = extk::wilson_interval(50, 100);
    REQUIRE(w.lo == Catch::Approx(0.404).margin(1e-3));
    REQUIRE(w.hi == Catch::Approx(0.596).margin(1e-3));
    const auto zero = extk::wilson_interval(0, 20);
    REQUIRE(zero.lo == Catch::Approx(0.0).margin(1e-12));
    REQUIRE(zero.hi > 0.0);
    const auto full = extk::wilson_interval(20, 20);
    REQUIRE(full.hi == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(full.lo < 1.0);
    REQUIRE_THROWS_AS(extk::wilson_interval(5, 0), extk::validation_error);
    REQUIRE_THROWS_AS(extk::wilson_interval(-1, 10), extk::validation_error);
    REQUIRE_THROWS_AS(extk::wilson_interval(11, 10), extk::validation_error);
}
