#include "doctest.h"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "helpers.hpp"
#include "kcoal/game.hpp"

using namespace kcoal;
using helpers::EdgeSpec;
using helpers::make_game;

TEST_CASE("game construction validates edges") {
    CHECK_THROWS_AS(Game(-1), std::invalid_argument);
    Game g(3);
    CHECK_THROWS_AS(g.add_value(1, 1, 2), std::invalid_argument);  // self valuation
    CHECK_THROWS_AS(g.add_value(0, 1, -4), std::invalid_argument); // negative weight
    CHECK_THROWS_AS(g.add_value(0, 3, 1), std::out_of_range);      // target out of range
    CHECK_THROWS_AS(g.add_value(-1, 2, 1), std::out_of_range);
    g.add_value(0, 1, 2);
    CHECK_THROWS_AS(g.add_value(0, 1, 5), std::invalid_argument); // duplicate
    g.add_value(0, 2, 0);                                         // zero weight is a no-op
    CHECK(g.edge_count() == 1);
    CHECK(g.value(0, 1) == 2);
    CHECK(g.value(0, 2) == 0);
    CHECK(g.value(1, 0) == 0);
}

TEST_CASE("adjacency queries agree with the inserted edges") {
    Game g = make_game(4, {{0, 1, 3}, {0, 3, 1}, {0, 2, 2}, {2, 0, 5}, {3, 2, 4}});
    CHECK(g.player_count() == 4);
    CHECK(g.edge_count() == 5);
    CHECK(g.out_degree(0) == 3);
    CHECK(g.out_weight(0) == 6);
    CHECK(g.total_weight() == 15);
    const auto& out0 = g.out_edges(0);
    REQUIRE(out0.size() == 3);
    CHECK(out0[0].to == 1); // kept sorted by target
    CHECK(out0[1].to == 2);
    CHECK(out0[2].to == 3);
    const auto& in2 = g.in_edges(2);
    REQUIRE(in2.size() == 2);
    CHECK(in2[0].from == 0);
    CHECK(in2[1].from == 3);
    CHECK(g.value(3, 2) == 4);
    CHECK(!g.is_simple());
    CHECK(!g.is_symmetric());
}

TEST_CASE("simplicity and symmetry flags") {
    Game simple = make_game(3, {{0, 1, 1}, {1, 0, 1}, {2, 0, 1}});
    CHECK(simple.is_simple());
    CHECK(!simple.is_symmetric());
    Game sym = make_game(3, {{0, 1, 1}, {1, 0, 1}, {1, 2, 1}, {2, 1, 1}});
    CHECK(sym.is_simple());
    CHECK(sym.is_symmetric());
    Game wsym = make_game(2, {{0, 1, 7}, {1, 0, 7}});
    CHECK(!wsym.is_simple());
    CHECK(wsym.is_symmetric());
    Game empty(2);
    CHECK(empty.is_simple());
    CHECK(empty.is_symmetric());
}

TEST_CASE("utilities on a small fixed game") {
    // 0 values 1 at 2 and 2 at 1, 1 values 0 at 1, 2 values nobody.
    Game g = make_game(3, {{0, 1, 2}, {0, 2, 1}, {1, 0, 1}});
    CoalitionStructure grouped{2, {0, 0, 1}};
    CHECK(utility_of(g, grouped, 0) == 2);
    CHECK(utility_of(g, grouped, 1) == 1);
    CHECK(utility_of(g, grouped, 2) == 0);
    CHECK(utility_profile(g, grouped) == UtilityProfile{2, 1, 0});
    CoalitionStructure together{1, {0, 0, 0}};
    CHECK(utility_profile(g, together) == UtilityProfile{3, 1, 0});
    CoalitionStructure apart{3, {0, 1, 2}};
    CHECK(utility_profile(g, apart) == UtilityProfile{0, 0, 0});
}

TEST_CASE("profiles referee against a raw edge scan") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> npick(3, 9), kpick(1, 4), wpick(0, 6);
    std::bernoulli_distribution coin(0.4);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = npick(rng);
        std::vector<EdgeSpec> edges;
        Game g(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j || !coin(rng)) continue;
                const Weight w = wpick(rng);
                if (w == 0) continue;
                edges.push_back({i, j, w});
                g.add_value(i, j, w);
            }
        const int k = kpick(rng);
        std::uniform_int_distribution<int> lpick(0, k - 1);
        std::vector<int> labels(static_cast<std::size_t>(n));
        for (auto& l : labels) l = lpick(rng);
        CoalitionStructure cs{k, labels};
        CHECK(utility_profile(g, cs) == helpers::edge_list_utilities(n, edges, labels));
    }
}

TEST_CASE("relabelling coalitions permutes nothing in the profile") {
    Game g = make_game(4, {{0, 1, 5}, {1, 0, 2}, {2, 3, 3}, {3, 2, 3}});
    CoalitionStructure a{2, {0, 0, 1, 1}};
    CoalitionStructure b{2, {1, 1, 0, 0}};
    CHECK(utility_profile(g, a) == utility_profile(g, b));
}

TEST_CASE("coalition structure helpers") {
    CoalitionStructure cs{3, {0, 2, 0, 1, 2}};
    CHECK(cs.player_count() == 5);
    CHECK(cs.well_formed());
    CHECK(cs.coalition_sizes() == std::vector<int>{2, 1, 2});
    const auto groups = cs.members();
    REQUIRE(groups.size() == 3);
    CHECK(groups[0] == std::vector<int>{0, 2});
    CHECK(groups[1] == std::vector<int>{3});
    CHECK(groups[2] == std::vector<int>{1, 4});
    CHECK(!CoalitionStructure{2, {0, 1, 2}}.well_formed());
    CHECK(!CoalitionStructure{2, {0, -1}}.well_formed());
    CHECK(!CoalitionStructure{0, {}}.well_formed());
}

TEST_CASE("size constraint presets") {
    const auto eq = SizeConstraints::equal_split(10, 3);
    CHECK(eq.min_sizes == std::vector<int>{3, 3, 3});
    CHECK(eq.max_sizes == std::vector<int>{4, 4, 4});
    const auto eq2 = SizeConstraints::equal_split(8, 2);
    CHECK(eq2.min_sizes == std::vector<int>{4, 4});
    CHECK(eq2.max_sizes == std::vector<int>{4, 4});
    const auto cap = SizeConstraints::capped(10, 3, 0.2);
    CHECK(cap.min_sizes == std::vector<int>{1, 1, 1});
    CHECK(cap.max_sizes == std::vector<int>{4, 4, 4});
    const auto wide = SizeConstraints::capped(100, 5, 0.1);
    CHECK(wide.max_sizes == std::vector<int>{22, 22, 22, 22, 22});
    const auto least = SizeConstraints::at_least({2, 3}, 7);
    CHECK(least.min_sizes == std::vector<int>{2, 3});
    CHECK(least.max_sizes == std::vector<int>{7, 7});
    CHECK_THROWS_AS(SizeConstraints::capped(10, 20, 0.0), std::invalid_argument); // more coalitions than players
    CHECK_THROWS_AS(SizeConstraints::capped(10, 3, 0.0), std::invalid_argument);  // cap 3*3 cannot host 10
    CHECK_THROWS_AS(SizeConstraints({0, 1}, {1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(SizeConstraints({2, 2}, {1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(SizeConstraints({1}, {1, 1}), std::invalid_argument);
}

TEST_CASE("feasibility of size windows") {
    CHECK(SizeConstraints::equal_split(10, 3).feasible(10));
    CHECK(!SizeConstraints::equal_split(10, 3).feasible(13));
    CHECK(!SizeConstraints::at_least({4, 4}, 7).feasible(7));
    CHECK(SizeConstraints::at_least({4, 3}, 7).feasible(7));
}

TEST_CASE("validate reports window violations") {
    const auto cons = SizeConstraints::equal_split(4, 2);
    CoalitionStructure lopsided{2, {0, 0, 0, 1}};
    const auto bad = validate(lopsided, cons);
    CHECK(!bad.ok);
    REQUIRE(bad.violations.size() == 2);
    CHECK(bad.violations[0].coalition == 0);
    CHECK(bad.violations[0].size == 3);
    CHECK(bad.violations[0].max_size == 2);
    CHECK(bad.violations[1].coalition == 1);
    CHECK(bad.violations[1].size == 1);
    CHECK(bad.violations[1].min_size == 2);
    CoalitionStructure even{2, {0, 1, 0, 1}};
    CHECK(validate(even, cons).ok);
    CHECK_THROWS_AS(validate(CoalitionStructure{3, {0, 1, 2, 0}}, cons), std::invalid_argument);
    CHECK_THROWS_AS(validate(CoalitionStructure{2, {0, 2, 0, 1}}, cons), std::invalid_argument);
}

TEST_CASE("profile sum equals intra coalition weight") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 30; ++trial) {
        Game g = helpers::random_digraph(7, 0.5, rng);
        std::uniform_int_distribution<int> lpick(0, 2);
        std::vector<int> labels(7);
        for (auto& l : labels) l = lpick(rng);
        CoalitionStructure cs{3, labels};
        const auto profile = utility_profile(g, cs);
        Weight total = 0;
        for (auto u : profile) total += u;
        Weight expect = 0;
        for (const auto& e : helpers::edges_of(g))
            if (labels[static_cast<std::size_t>(e.from)] == labels[static_cast<std::size_t>(e.to)]) expect += e.w;
        CHECK(total == expect);
    }
}
