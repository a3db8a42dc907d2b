#pragma once

#include <algorithm>
#include <functional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "extk/common.hpp"
#include "extk/perm.hpp"

namespace extk {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline BigInt big_binomial(int n, int r) {
    if (r < 0 || r > n) return 0;
    BigInt out = 1;
    for (int i = 0; i < r; ++i) {
        out *= n - i;
        out /= i + 1;
    }
    return out;
}

// Cat_p = C(2p,p)/(p+1).
inline BigInt catalan(int p) {
    if (p < 0) throw validation_error("catalan: p must be >= 0");
    return big_binomial(2 * p, p) / (p + 1);
}

// Nar_p^m = C(p+1,m) C(p-1,m-1) / (p+1), the number of non-crossing
// partitions of [p] with exactly m blocks. Σ_m Nar_p^m = Cat_p.
inline BigInt narayana(int p, int m) {
    if (p < 1) throw validation_error("narayana: p must be >= 1");
    if (m < 1 || m > p) throw validation_error("narayana: m out of range");
    return big_binomial(p + 1, m) * big_binomial(p - 1, m - 1) / (p + 1);
}

// (2p-1)!! = number of pair partitions of 2p points.
inline BigInt double_factorial_odd(int two_p) {
    BigInt out = 1;
    for (int x = two_p - 1; x > 0; x -= 2) out *= x;
    return out;
}

/*
 * Set partitions of {1..p}: disjoint nonempty blocks covering everything.
 * Blocks are stored ascending and sorted by their minimum, so the canonical
 * form is unique and enumeration output is deterministic.
 */
class SetPartition {
public:
    // 0-based blocks; normalized on construction.
    SetPartition(std::vector<std::vector<int>> blocks, int p)
        : blocks_(std::move(blocks)), p_(p) {
        std::vector<char> seen(static_cast<size_t>(p_), 0);
        for (auto& b : blocks_) {
            if (b.empty()) throw validation_error("SetPartition: empty block");
            std::sort(b.begin(), b.end());
            for (int x : b) {
                if (x < 0 || x >= p_ || seen[static_cast<size_t>(x)])
                    throw validation_error("SetPartition: blocks do not partition the set");
                seen[static_cast<size_t>(x)] = 1;
            }
        }
        for (char s : seen)
            if (!s) throw validation_error("SetPartition: blocks do not cover the set");
        std::sort(blocks_.begin(), blocks_.end(),
                  [](const std::vector<int>& a, const std::vector<int>& b) {
                      return a.front() < b.front();
                  });
    }

    int ground_size() const { return p_; }
    int block_count() const { return static_cast<int>(blocks_.size()); }
    const std::vector<std::vector<int>>& blocks() const { return blocks_; }

    std::vector<std::vector<int>> blocks_one_based() const {
        std::vector<std::vector<int>> out = blocks_;
        for (auto& b : out)
            for (int& x : b) ++x;
        return out;
    }

    // Two blocks cross when a < b < c < d with {a,c} and {b,d} in different
    // blocks. Stack scan over 1..p: opening each block at its minimum and
    // closing elements in order detects any interleaving.
    bool is_noncrossing() const {
        std::vector<int> owner(static_cast<size_t>(p_));
        for (int bi = 0; bi < block_count(); ++bi)
            for (int x : blocks_[static_cast<size_t>(bi)])
                owner[static_cast<size_t>(x)] = bi;
        std::vector<int> remaining(blocks_.size());
        for (size_t bi = 0; bi < blocks_.size(); ++bi)
            remaining[bi] = static_cast<int>(blocks_[bi].size());
        std::vector<int> stack;
        for (int x = 0; x < p_; ++x) {
            const int bi = owner[static_cast<size_t>(x)];
            if (stack.empty() || stack.back() != bi) {
                if (std::find(stack.begin(), stack.end(), bi) != stack.end())
                    return false; // reopened a block that is not on top
                stack.push_back(bi);
            }
            if (--remaining[static_cast<size_t>(bi)] == 0) stack.pop_back();
        }
        return true;
    }

    // The permutation whose cycles are the canonical full cycles on the
    // blocks (each block traversed in the same direction as the canonical
    // full cycle, i ↦ previous element). A partition is non-crossing exactly
    // when this permutation lies on a geodesic between id and the canonical
    // full cycle.
    Permutation to_permutation() const {
        std::vector<int> img(static_cast<size_t>(p_));
        for (const auto& b : blocks_) {
            const int m = static_cast<int>(b.size());
            for (int t = 0; t < m; ++t)
                img[static_cast<size_t>(b[static_cast<size_t>(t)])] =
                    b[static_cast<size_t>((t - 1 + m) % m)];
        }
        return Permutation(std::move(img));
    }

    bool operator==(const SetPartition& other) const {
        return p_ == other.p_ && blocks_ == other.blocks_;
    }

private:
    std::vector<std::vector<int>> blocks_;
    int p_;
};

/*
 * Pair partitions of {1..2p}: p disjoint unordered pairs. As a permutation,
 * a fixed-point-free involution.
 */
class PairPartition {
public:
    PairPartition(std::vector<std::pair<int, int>> pairs, int two_p)
        : pairs_(std::move(pairs)), two_p_(two_p) {
        if (two_p_ % 2 != 0) throw validation_error("PairPartition: odd ground set");
        std::vector<char> seen(static_cast<size_t>(two_p_), 0);
        for (auto& pr : pairs_) {
            if (pr.first > pr.second) std::swap(pr.first, pr.second);
            for (int x : {pr.first, pr.second}) {
                if (x < 0 || x >= two_p_ || seen[static_cast<size_t>(x)])
                    throw validation_error("PairPartition: pairs do not partition the set");
                seen[static_cast<size_t>(x)] = 1;
            }
            if (pr.first == pr.second) throw validation_error("PairPartition: degenerate pair");
        }
        if (static_cast<int>(pairs_.size()) * 2 != two_p_)
            throw validation_error("PairPartition: wrong pair count");
        std::sort(pairs_.begin(), pairs_.end());
    }

    int ground_size() const { return two_p_; }
    const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }

    std::vector<std::pair<int, int>> pairs_one_based() const {
        auto out = pairs_;
        for (auto& pr : out) {
            ++pr.first;
            ++pr.second;
        }
        return out;
    }

    Permutation to_permutation() const {
        std::vector<int> img(static_cast<size_t>(two_p_));
        for (const auto& pr : pairs_) {
            img[static_cast<size_t>(pr.first)] = pr.second;
            img[static_cast<size_t>(pr.second)] = pr.first;
        }
        return Permutation(std::move(img));
    }

    SetPartition to_set_partition() const {
        std::vector<std::vector<int>> blocks;
        blocks.reserve(pairs_.size());
        for (const auto& pr : pairs_) blocks.push_back({pr.first, pr.second});
        return SetPartition(std::move(blocks), two_p_);
    }

    bool is_noncrossing() const { return to_set_partition().is_noncrossing(); }

    bool operator==(const PairPartition& other) const {
        return two_p_ == other.two_p_ && pairs_ == other.pairs_;
    }

private:
    std::vector<std::pair<int, int>> pairs_;
    int two_p_;
};

// All set partitions of [p] via restricted-growth strings; deterministic
// lexicographic order.
inline void for_each_set_partition(int p, const std::function<void(const SetPartition&)>& fn,
                                   const Caps& caps = default_caps()) {
    if (p < 1) throw validation_error("for_each_set_partition: p must be >= 1");
    if (p > caps.partitions_p) throw resource_error("for_each_set_partition: p exceeds cap");
    std::vector<int> rgs(static_cast<size_t>(p), 0);
    std::vector<int> maxv(static_cast<size_t>(p), 0);
    auto emit = [&]() {
        int nblocks = 0;
        for (int x : rgs) nblocks = std::max(nblocks, x + 1);
        std::vector<std::vector<int>> blocks(static_cast<size_t>(nblocks));
        for (int i = 0; i < p; ++i) blocks[static_cast<size_t>(rgs[static_cast<size_t>(i)])].push_back(i);
        fn(SetPartition(std::move(blocks), p));
    };
    // Iterative restricted-growth enumeration: rgs[0] = 0 always and
    // rgs[i] <= max(rgs[0..i-1]) + 1. Odometer step: increment the rightmost
    // position not yet at its local maximum, zero everything to its right.
    emit();
    while (true) {
        int i = p - 1;
        while (i > 0 && rgs[static_cast<size_t>(i)] == maxv[static_cast<size_t>(i - 1)] + 1)
            --i;
        if (i == 0) break;
        ++rgs[static_cast<size_t>(i)];
        maxv[static_cast<size_t>(i)] =
            std::max(maxv[static_cast<size_t>(i - 1)], rgs[static_cast<size_t>(i)]);
        for (int j = i + 1; j < p; ++j) {
            rgs[static_cast<size_t>(j)] = 0;
            maxv[static_cast<size_t>(j)] = maxv[static_cast<size_t>(j - 1)];
        }
        emit();
    }
}

// All of NC(p), in enumeration order of for_each_set_partition.
inline std::vector<SetPartition> enumerate_noncrossing(int p, const Caps& caps = default_caps()) {
    std::vector<SetPartition> out;
    for_each_set_partition(
        p,
        [&](const SetPartition& sp) {
            if (sp.is_noncrossing()) out.push_back(sp);
        },
        caps);
    return out;
}

// All pair partitions of {1..2p}; (2p-1)!! of them. Deterministic order:
// smallest free point pairs with each larger free point in turn.
inline void for_each_pairing(int two_p, const std::function<void(const PairPartition&)>& fn,
                             const Caps& caps = default_caps()) {
    if (two_p < 2 || two_p % 2 != 0)
        throw validation_error("for_each_pairing: ground size must be even and positive");
    if (two_p > caps.pairings_two_p) throw resource_error("for_each_pairing: 2p exceeds cap");
    std::vector<std::pair<int, int>> acc;
    std::vector<char> used(static_cast<size_t>(two_p), 0);
    std::function<void()> rec = [&]() {
        int a = 0;
        while (a < two_p && used[static_cast<size_t>(a)]) ++a;
        if (a == two_p) {
            fn(PairPartition(acc, two_p));
            return;
        }
        used[static_cast<size_t>(a)] = 1;
        for (int b = a + 1; b < two_p; ++b) {
            if (used[static_cast<size_t>(b)]) continue;
            used[static_cast<size_t>(b)] = 1;
            acc.emplace_back(a, b);
            rec();
            acc.pop_back();
            used[static_cast<size_t>(b)] = 0;
        }
        used[static_cast<size_t>(a)] = 0;
    };
    rec();
}

// All of NC^(2)(2p); Cat_p of them. Generated by segment recursion, so the
// cost is Cat_p rather than (2p-1)!!, and the cap is on p like the set
// partition enumerations. Order matches for_each_pairing filtered to
// noncrossing: smallest free point first, partners ascending.
inline std::vector<PairPartition> enumerate_nc_pairings(int two_p,
                                                        const Caps& caps = default_caps()) {
    if (two_p < 2 || two_p % 2 != 0)
        throw validation_error("enumerate_nc_pairings: ground size must be even and positive");
    if (two_p / 2 > caps.partitions_p)
        throw resource_error("enumerate_nc_pairings: p exceeds cap");
    std::vector<PairPartition> out;
    std::vector<std::pair<int, int>> acc;
    std::vector<std::pair<int, int>> segs; // pending half-open even-length ranges
    // The first point of a segment pairs at odd distance, splitting the rest
    // into an inner and an outer segment that close up independently.
    std::function<void()> rec = [&]() {
        if (segs.empty()) {
            out.emplace_back(acc, two_p);
            return;
        }
        const auto [lo, hi] = segs.back();
        segs.pop_back();
        for (int b = lo + 1; b < hi; b += 2) {
            acc.emplace_back(lo, b);
            const std::size_t mark = segs.size();
            if (b + 1 < hi) segs.emplace_back(b + 1, hi);
            if (lo + 1 < b) segs.emplace_back(lo + 1, b);
            rec();
            segs.resize(mark);
            acc.pop_back();
        }
        segs.emplace_back(lo, hi);
    };
    segs.emplace_back(0, two_p);
    rec();
    return out;
}

} // namespace extk
