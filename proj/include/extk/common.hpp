#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace extk {

// Raised on malformed inputs (non-bijective images, size mismatches, bad
// parameter ranges). The CLI maps this to exit code 2.
class validation_error : public std::invalid_argument {
public:
    explicit validation_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// Raised when a request exceeds a configured enumeration or memory cap.
// The CLI maps this to exit code 3. Caps are configuration, not constants:
// callers may pass a Caps with larger values to authorize bigger sweeps.
class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Default enumeration and memory caps. Chosen so that every exact operation
// completes in seconds single-threaded; larger requests need an explicit
// override (CLI flag --force raises them).
struct Caps {
    int partitions_p = 12;        // set-partition enumeration, p <= 12
    int permutations_p = 8;       // full S(p) sweeps, p <= 8
    int pairings_two_p = 12;      // pair-partition enumeration, 2p <= 12 (10395 pairings)
    int lift_sweep_p = 5;         // exhaustive lifted-cycle sweeps, p <= 5
    int lift_sweep_k = 3;         //   ... and k <= 3
    int gue_plain_p = 6;
    int wishart_plain_p = 8;
    int gue_modified_p = 5;
    int gue_modified_k = 4;
    int wishart_modified_p = 6;
    int wishart_modified_k = 3;
    int second_moment_p = 3;
    int second_moment_k = 2;
    int word_len = 10;            // fixed-word moments, 2p <= 10
    long dense_dim = 12000;       // dense operator cap, ~2 GB at complex double
    int symmetrize_k = 5;         // symmetrizer averages k! index maps
};

inline const Caps& default_caps() {
    static const Caps caps{};
    return caps;
}

} // namespace extk
