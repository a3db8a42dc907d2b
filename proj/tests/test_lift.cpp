#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "extk/lift.hpp"

using extk::LevelFunction;
using extk::Permutation;

TEST_CASE("lifted full cycle preserves the slot coordinate") {
    const Permutation ghat = extk::lift_gamma(3, 2);
    REQUIRE(ghat.size() == 6);
    // (i, r) flattens to (i-1)k + r; gamma moves i to i-1 and keeps r
    const Permutation g = extk::canonical_full_cycle(3);
    for (int i = 0; i < 3; ++i)
        for (int r = 0; r < 2; ++r) REQUIRE(ghat(i * 2 + r) == g(i) * 2 + r);
    REQUIRE(ghat.cycle_count() == 2);
}

TEST_CASE("lifted permutation acts only on the graph of f") {
    const Permutation alpha = Permutation::from_one_based({2, 1, 3});
    const LevelFunction f = LevelFunction::from_one_based({1, 2, 1}, 2);
    const Permutation lifted = extk::lift_alpha_f(alpha, f);
    REQUIRE(lifted.size() == 6);
    for (int i = 0; i < 3; ++i) {
        for (int r = 0; r < 2; ++r) {
            const int from = i * 2 + r;
            if (r == f(i)) {
                const int ai = alpha(i);
                REQUIRE(lifted(from) == ai * 2 + f(ai));
            } else {
                REQUIRE(lifted(from) == from);
            }
        }
    }
}

TEST_CASE("worked lifted-cycle example at p=4, k=3") {
    const Permutation alpha = Permutation::from_cycles(4, {{1, 4}, {2, 3}});
    const LevelFunction f = LevelFunction::from_one_based({1, 1, 2, 1}, 3);
    const int base = extk::gamma_f(f).inverse().compose(alpha).cycle_count();
    REQUIRE(base == 2);
    const int lifted =
        extk::lift_gamma(4, 3).inverse().compose(extk::lift_alpha_f(alpha, f)).cycle_count();
    REQUIRE(lifted == 3);
    REQUIRE(lifted == base + 3 - f.image_size());
}

TEST_CASE("lift formula sweep is clean at small sizes") {
    const auto r32 = extk::verify_lift_formula(3, 2);
    REQUIRE(r32.ok);
    REQUIRE(r32.cases == 6L * 8L);
    REQUIRE(r32.counterexamples.empty());

    const auto r43 = extk::verify_lift_formula(4, 3);
    REQUIRE(r43.ok);
    REQUIRE(r43.cases == 24L * 81L);
}

TEST_CASE("lift formula sweep covers the largest in-cap case") {
    const auto r = extk::verify_lift_formula(5, 3);
    REQUIRE(r.ok);
    REQUIRE(r.cases == 120L * 243L);
}

TEST_CASE("lift sweep rejects out-of-cap sizes") {
    REQUIRE_THROWS_AS(extk::verify_lift_formula(6, 3), extk::resource_error);
    REQUIRE_THROWS_AS(extk::verify_lift_formula(5, 4), extk::resource_error);
    REQUIRE_THROWS_AS(extk::verify_lift_formula(0, 2), extk::validation_error);
}
