#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <vector>

#include "extk/common.hpp"

namespace extk {

/*
 * Permutations of {1..p} in one-line notation.
 *
 * Conventions used throughout the library:
 *   - External formats (JSON, docs, tests) are 1-based; the internal images
 *     vector is 0-based. images[i] = j means the permutation maps i+1 to j+1.
 *   - The canonical full cycle γ on p points maps i to i-1 cyclically
 *     (1 goes to p). For p = 3 the image list is (3,1,2).
 *   - cycle_count(π) + cayley_distance(π) = p for every π; the Cayley
 *     distance is the minimal number of transpositions.
 */
class Permutation {
public:
    Permutation() = default;

    // images are 0-based internal values; use from_one_based for external data.
    explicit Permutation(std::vector<int> images) : img_(std::move(images)) {
        validate();
    }

    static Permutation identity(int p) {
        if (p < 0) throw validation_error("Permutation: negative size");
        std::vector<int> v(static_cast<size_t>(p));
        std::iota(v.begin(), v.end(), 0);
        return Permutation(std::move(v));
    }

    static Permutation from_one_based(const std::vector<int>& images1) {
        std::vector<int> v;
        v.reserve(images1.size());
        for (int x : images1) v.push_back(x - 1);
        return Permutation(std::move(v));
    }

    // Builds a permutation from disjoint cycles given in 1-based notation,
    // e.g. from_cycles(4, {{1,4},{2,3}}) is (1 4)(2 3) on 4 points.
    static Permutation from_cycles(int p, const std::vector<std::vector<int>>& cycles) {
        Permutation out = identity(p);
        for (const auto& cyc : cycles) {
            const int n = static_cast<int>(cyc.size());
            for (int t = 0; t < n; ++t) {
                const int from = cyc[static_cast<size_t>(t)] - 1;
                const int to = cyc[static_cast<size_t>((t + 1) % n)] - 1;
                if (from < 0 || from >= p || to < 0 || to >= p)
                    throw validation_error("Permutation::from_cycles: index out of range");
                out.img_[static_cast<size_t>(from)] = to;
            }
        }
        out.validate();
        return out;
    }

    int size() const { return static_cast<int>(img_.size()); }

    // 0-based application.
    int operator()(int i) const { return img_[static_cast<size_t>(i)]; }

    const std::vector<int>& images() const { return img_; }

    std::vector<int> images_one_based() const {
        std::vector<int> v;
        v.reserve(img_.size());
        for (int x : img_) v.push_back(x + 1);
        return v;
    }

    // (this ∘ other)(i) = this(other(i)).
    Permutation compose(const Permutation& other) const {
        if (size() != other.size())
            throw validation_error("Permutation::compose: size mismatch");
        std::vector<int> v(img_.size());
        for (size_t i = 0; i < img_.size(); ++i)
            v[i] = img_[static_cast<size_t>(other.img_[i])];
        return Permutation(std::move(v));
    }

    Permutation inverse() const {
        std::vector<int> v(img_.size());
        for (size_t i = 0; i < img_.size(); ++i)
            v[static_cast<size_t>(img_[i])] = static_cast<int>(i);
        return Permutation(std::move(v));
    }

    bool operator==(const Permutation& other) const { return img_ == other.img_; }

    // Number of disjoint cycles, fixed points included.
    int cycle_count() const {
        std::vector<char> seen(img_.size(), 0);
        int count = 0;
        for (size_t i = 0; i < img_.size(); ++i) {
            if (seen[i]) continue;
            ++count;
            for (int j = static_cast<int>(i); !seen[static_cast<size_t>(j)];
                 j = img_[static_cast<size_t>(j)])
                seen[static_cast<size_t>(j)] = 1;
        }
        return count;
    }

    // Cycles as sorted-by-minimum lists of 1-based indices, each cycle
    // starting at its minimum and following the permutation.
    std::vector<std::vector<int>> cycles_one_based() const {
        std::vector<char> seen(img_.size(), 0);
        std::vector<std::vector<int>> out;
        for (size_t i = 0; i < img_.size(); ++i) {
            if (seen[i]) continue;
            std::vector<int> cyc;
            for (int j = static_cast<int>(i); !seen[static_cast<size_t>(j)];
                 j = img_[static_cast<size_t>(j)]) {
                seen[static_cast<size_t>(j)] = 1;
                cyc.push_back(j + 1);
            }
            out.push_back(std::move(cyc));
        }
        return out;
    }

    bool is_identity() const {
        for (size_t i = 0; i < img_.size(); ++i)
            if (img_[i] != static_cast<int>(i)) return false;
        return true;
    }

    // Involution with no fixed point, i.e. a pairing when p is even.
    bool is_fixed_point_free_involution() const {
        for (size_t i = 0; i < img_.size(); ++i) {
            const int j = img_[i];
            if (j == static_cast<int>(i)) return false;
            if (img_[static_cast<size_t>(j)] != static_cast<int>(i)) return false;
        }
        return true;
    }

private:
    void validate() const {
        std::vector<char> seen(img_.size(), 0);
        for (int x : img_) {
            if (x < 0 || x >= static_cast<int>(img_.size()) || seen[static_cast<size_t>(x)])
                throw validation_error("Permutation: images are not a bijection");
            seen[static_cast<size_t>(x)] = 1;
        }
    }

    std::vector<int> img_;
};

inline int cycle_count(const Permutation& p) { return p.cycle_count(); }

// Minimal transposition count; equals p - cycle_count (each cycle of length
// l needs l-1 transpositions).
inline int cayley_distance(const Permutation& p) { return p.size() - p.cycle_count(); }

// The canonical full cycle (p ... 1): i maps to i-1 cyclically, 1 maps to p.
inline Permutation canonical_full_cycle(int p) {
    if (p < 1) throw validation_error("canonical_full_cycle: p must be >= 1");
    std::vector<int> v(static_cast<size_t>(p));
    for (int i = 0; i < p; ++i) v[static_cast<size_t>(i)] = (i - 1 + p) % p;
    return Permutation(std::move(v));
}

// Calls fn for every permutation of S(p). Ordered by std::next_permutation
// over the image vector, so enumeration order is deterministic.
inline void for_each_permutation(int p, const std::function<void(const Permutation&)>& fn,
                                 const Caps& caps = default_caps()) {
    if (p > caps.permutations_p)
        throw resource_error("for_each_permutation: p exceeds cap");
    std::vector<int> v(static_cast<size_t>(p));
    std::iota(v.begin(), v.end(), 0);
    do {
        fn(Permutation(std::vector<int>(v)));
    } while (std::next_permutation(v.begin(), v.end()));
}

/*
 * Level functions f : [p] -> [k], recording which B factor each position of a
 * product acts on. Values are 0-based internally, 1-based externally.
 */
class LevelFunction {
public:
    LevelFunction(std::vector<int> values, int k) : val_(std::move(values)), k_(k) {
        if (k_ < 1) throw validation_error("LevelFunction: k must be >= 1");
        for (int v : val_)
            if (v < 0 || v >= k_)
                throw validation_error("LevelFunction: value out of range");
    }

    static LevelFunction from_one_based(const std::vector<int>& values1, int k) {
        std::vector<int> v;
        v.reserve(values1.size());
        for (int x : values1) v.push_back(x - 1);
        return LevelFunction(std::move(v), k);
    }

    int size() const { return static_cast<int>(val_.size()); }
    int alphabet() const { return k_; }
    int operator()(int i) const { return val_[static_cast<size_t>(i)]; }
    const std::vector<int>& values() const { return val_; }

    int image_size() const {
        std::vector<char> seen(static_cast<size_t>(k_), 0);
        int count = 0;
        for (int v : val_) {
            if (!seen[static_cast<size_t>(v)]) {
                seen[static_cast<size_t>(v)] = 1;
                ++count;
            }
        }
        return count;
    }

    // Level set of value r (0-based), as ascending 0-based positions.
    std::vector<int> level_set(int r) const {
        std::vector<int> out;
        for (int i = 0; i < size(); ++i)
            if (val_[static_cast<size_t>(i)] == r) out.push_back(i);
        return out;
    }

private:
    std::vector<int> val_;
    int k_;
};

// γ_f: product of the canonical full cycles on each level set of f. On a
// level set i_1 < i_2 < ... < i_m the cycle maps i_t to i_{t-1} (and i_1 to
// i_m), mirroring γ itself on a contiguous set. cycle_count(γ_f) = |im(f)|.
inline Permutation gamma_f(const LevelFunction& f) {
    const int p = f.size();
    std::vector<int> img(static_cast<size_t>(p));
    std::iota(img.begin(), img.end(), 0);
    for (int r = 0; r < f.alphabet(); ++r) {
        const std::vector<int> level = f.level_set(r);
        const int m = static_cast<int>(level.size());
        for (int t = 0; t < m; ++t)
            img[static_cast<size_t>(level[static_cast<size_t>(t)])] =
                level[static_cast<size_t>((t - 1 + m) % m)];
    }
    return Permutation(std::move(img));
}

// Calls fn for every f : [p] -> [k], in lexicographic order of the value
// vector (odometer order). k^p calls.
inline void for_each_level_function(int p, int k,
                                    const std::function<void(const LevelFunction&)>& fn) {
    std::vector<int> v(static_cast<size_t>(p), 0);
    while (true) {
        fn(LevelFunction(std::vector<int>(v), k));
        int i = p - 1;
        while (i >= 0 && v[static_cast<size_t>(i)] == k - 1) {
            v[static_cast<size_t>(i)] = 0;
            --i;
        }
        if (i < 0) break;
        ++v[static_cast<size_t>(i)];
    }
}

// Geodesic defect of α with respect to the geodesics between id and γ_f:
//   δ = (p + |im(f)| - ♯(α) - ♯(γ_f⁻¹ α)) / 2.
// Always a nonnegative integer (triangle inequality plus parity of the
// Cayley distance under multiplication by transpositions).
inline int geodesic_defect(const Permutation& alpha, const LevelFunction& f) {
    if (alpha.size() != f.size())
        throw validation_error("geodesic_defect: size mismatch");
    const Permutation gf = gamma_f(f);
    const int p = alpha.size();
    const int num = p + f.image_size() - alpha.cycle_count() -
                    gf.inverse().compose(alpha).cycle_count();
    return num / 2;
}

// Defect with respect to the single canonical full cycle (constant f).
inline int geodesic_defect(const Permutation& alpha) {
    const int p = alpha.size();
    const Permutation g = canonical_full_cycle(p);
    const int num = p + 1 - alpha.cycle_count() - g.inverse().compose(alpha).cycle_count();
    return num / 2;
}

} // namespace extk
