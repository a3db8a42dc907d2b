#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <vector>

#include "extk/perm.hpp"

using extk::canonical_full_cycle;
using extk::LevelFunction;
using extk::Permutation;

TEST_CASE("canonical full cycle maps i to i-1 cyclically") {
    const Permutation g = canonical_full_cycle(3);
    REQUIRE(g.images_one_based() == std::vector<int>{3, 1, 2});
    REQUIRE(g.cycle_count() == 1);
    REQUIRE(canonical_full_cycle(1).is_identity());
    const auto cycles = canonical_full_cycle(4).cycles_one_based();
    REQUIRE(cycles == std::vector<std::vector<int>>{{1, 4, 3, 2}});
}

TEST_CASE("composition applies the right factor first") {
    // (sigma . tau)(i) = sigma(tau(i))
    const Permutation sigma = Permutation::from_one_based({2, 3, 1});
    const Permutation tau = Permutation::from_one_based({2, 1, 3});
    REQUIRE(sigma.compose(tau).images_one_based() == std::vector<int>{3, 2, 1});
    REQUIRE(tau.compose(sigma).images_one_based() == std::vector<int>{1, 3, 2});
}

TEST_CASE("inverse and identity") {
    const Permutation g = canonical_full_cycle(5);
    REQUIRE(g.compose(g.inverse()).is_identity());
    REQUIRE(g.inverse().compose(g).is_identity());
    REQUIRE(Permutation::identity(4).cycle_count() == 4);
}

TEST_CASE("cycle count and Cayley distance are complementary") {
    for (int p = 1; p <= 6; ++p) {
        const Permutation g = canonical_full_cycle(p);
        REQUIRE(extk::cayley_distance(g) == p - 1);
        REQUIRE(g.cycle_count() + extk::cayley_distance(g) == p);
    }
    REQUIRE(extk::cayley_distance(Permutation::identity(6)) == 0);
}

TEST_CASE("from_cycles builds the expected involution") {
    const Permutation a = Permutation::from_cycles(4, {{1, 4}, {2, 3}});
    REQUIRE(a.images_one_based() == std::vector<int>{4, 3, 2, 1});
    REQUIRE(a.is_fixed_point_free_involution());
    REQUIRE_FALSE(Permutation::identity(2).is_fixed_point_free_involution());
    REQUIRE_FALSE(Permutation::from_one_based({2, 3, 1}).is_fixed_point_free_involution());
}

TEST_CASE("permutation validation rejects non-bijections") {
    REQUIRE_THROWS_AS(Permutation::from_one_based({1, 1}), extk::validation_error);
    REQUIRE_THROWS_AS(Permutation::from_one_based({0, 1}), extk::validation_error);
    REQUIRE_THROWS_AS(Permutation::from_one_based({1, 3}), extk::validation_error);
}

TEST_CASE("for_each_permutation enumerates p! distinct elements in order") {
    std::vector<std::vector<int>> seen;
    extk::for_each_permutation(3, [&](const Permutation& a) { seen.push_back(a.images()); });
    REQUIRE(seen.size() == 6);
    REQUIRE(std::set<std::vector<int>>(seen.begin(), seen.end()).size() == 6);
    REQUIRE(std::is_sorted(seen.begin(), seen.end()));

    long count = 0;
    extk::for_each_permutation(6, [&](const Permutation&) { ++count; });
    REQUIRE(count == 720);

    extk::Caps tight = extk::default_caps();
    tight.permutations_p = 4;
    REQUIRE_THROWS_AS(extk::for_each_permutation(5, [](const Permutation&) {}, tight),
                      extk::resource_error);
}

TEST_CASE("level functions expose values, image size and level sets") {
    const LevelFunction f = LevelFunction::from_one_based({1, 2, 1}, 2);
    REQUIRE(f.size() == 3);
    REQUIRE(f.alphabet() == 2);
    REQUIRE(f.image_size() == 2);
    REQUIRE(f.level_set(0) == std::vector<int>{0, 2});
    REQUIRE(f.level_set(1) == std::vector<int>{1});
    REQUIRE_THROWS_AS(LevelFunction::from_one_based({3}, 2), extk::validation_error);
}

TEST_CASE("gamma_f is the product of full cycles on level sets") {
    const LevelFunction f = LevelFunction::from_one_based({1, 1, 2, 1}, 2);
    const Permutation gf = extk::gamma_f(f);
    REQUIRE(gf.images_one_based() == std::vector<int>{4, 1, 3, 2});
    REQUIRE(gf.cycle_count() == f.image_size());

    // constant f reproduces the canonical full cycle
    const LevelFunction c = LevelFunction::from_one_based({1, 1, 1}, 3);
    REQUIRE(extk::gamma_f(c) == canonical_full_cycle(3));
}

TEST_CASE("for_each_level_function hits all k^p words exactly once") {
    std::set<std::vector<int>> seen;
    extk::for_each_level_function(2, 3, [&](const LevelFunction& f) { seen.insert(f.values()); });
    REQUIRE(seen.size() == 9);
    // odometer order: first emitted word is all-ones, last is all-k
    std::vector<std::vector<int>> order;
    extk::for_each_level_function(2, 2, [&](const LevelFunction& f) { order.push_back(f.values()); });
    REQUIRE(order == std::vector<std::vector<int>>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
}

TEST_CASE("geodesic defect against the full cycle on S(3)") {
    REQUIRE(extk::geodesic_defect(Permutation::identity(3)) == 0);
    REQUIRE(extk::geodesic_defect(canonical_full_cycle(3)) == 0);
    REQUIRE(extk::geodesic_defect(Permutation::from_one_based({2, 1, 3})) == 0);
    // the reversed cycle is the unique defect-1 element of S(3)
    REQUIRE(extk::geodesic_defect(Permutation::from_one_based({2, 3, 1})) == 1);
}

TEST_CASE("geodesic defect is a nonnegative integer for every (alpha, f)") {
    for (int p = 1; p <= 4; ++p) {
        extk::for_each_permutation(p, [&](const Permutation& alpha) {
            extk::for_each_level_function(p, 2, [&](const LevelFunction& f) {
                const int num = p + f.image_size() - alpha.cycle_count() -
                                extk::gamma_f(f).inverse().compose(alpha).cycle_count();
                REQUIRE(num >= 0);
                REQUIRE(num % 2 == 0);
                REQUIRE(extk::geodesic_defect(alpha, f) == num / 2);
            });
        });
    }
}

TEST_CASE("defect against a constant f matches the plain defect") {
    for (int p = 2; p <= 5; ++p) {
        const LevelFunction c(std::vector<int>(static_cast<size_t>(p), 0), 1);
        extk::for_each_permutation(p, [&](const Permutation& alpha) {
            REQUIRE(extk::geodesic_defect(alpha, c) == extk::geodesic_defect(alpha));
        });
    }
}
