#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace extk {

/*
 * Deterministic per-repetition random streams.
 *
 * Each repetition r of an experiment draws from an engine seeded from the
 * pair (master_seed, r) only. Seed material is expanded with SplitMix64 and
 * fed through std::seed_seq, so streams for different repetitions are
 * decorrelated and a repetition's samples do not depend on which worker runs
 * it or in which order.
 */

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace detail

inline std::mt19937_64 derive_stream(std::uint64_t master_seed, std::uint64_t repetition) {
    std::uint64_t state = master_seed;
    const std::uint64_t a = detail::splitmix64(state);
    state ^= 0x9e3779b97f4a7c15ULL * (repetition + 1);
    const std::uint64_t b = detail::splitmix64(state);
    const std::uint64_t c = detail::splitmix64(state);
    const std::uint64_t d = detail::splitmix64(state);
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
                      static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32),
                      static_cast<std::uint32_t>(d), static_cast<std::uint32_t>(d >> 32)};
    return std::mt19937_64(seq);
}

// Gaussian draws on one derived stream. Complex normals have independent
// N(0, 1/2) real and imaginary parts, so E|z|² = 1.
class GaussianStream {
public:
    GaussianStream(std::uint64_t master_seed, std::uint64_t repetition)
        : engine_(derive_stream(master_seed, repetition)) {}

    explicit GaussianStream(std::mt19937_64 engine) : engine_(std::move(engine)) {}

    double real_normal(double stddev = 1.0) { return stddev * normal_(engine_); }

    std::complex<double> complex_normal() {
        const double re = normal_(engine_);
        const double im = normal_(engine_);
        return {re * half_, im * half_};
    }

    std::mt19937_64& engine() { return engine_; }

private:
    static constexpr double half_ = 0.7071067811865476; // 1/√2
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

} // namespace extk
