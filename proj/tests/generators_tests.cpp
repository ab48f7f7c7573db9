#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "unravel/ballots.hpp"
#include "unravel/errors.hpp"
#include "unravel/generators.hpp"
#include "unravel/greedy.hpp"
#include "unravel/optimal.hpp"
#include "unravel/profile_io.hpp"

using namespace unravel;

TEST_CASE("acyclic digraphs reduce to all-ones certificates") {
    digraph_instance g;
    g.vertices = 4;
    g.edges = {{0, 1}, {1, 2}, {0, 3}};
    g.k = 0;
    auto [p, m] = fvs_to_profile(g);
    CHECK(m == 4);
    auto witness = bounded_minsum(p, m);
    REQUIRE(witness.has_value());
    CHECK(witness->levels == std::vector<int>(4, 1));
}

TEST_CASE("a two-cycle needs one removal") {
    digraph_instance g;
    g.vertices = 2;
    g.edges = {{0, 1}, {1, 0}};
    g.k = 0;
    auto [p0, m0] = fvs_to_profile(g);
    CHECK_FALSE(bounded_minsum(p0, m0).has_value());

    g.k = 1;
    auto [p1, m1] = fvs_to_profile(g);
    CHECK(m1 == 3);
    CHECK(bounded_minsum(p1, m1).has_value());
}

TEST_CASE("self-loops either throw or normalize through a dummy vertex") {
    digraph_instance g;
    g.vertices = 2;
    g.edges = {{0, 0}, {0, 1}};
    g.k = 1;
    CHECK_THROWS_AS(fvs_to_profile(g), self_loop_error);

    auto [p, m] = fvs_to_profile(g, true);
    CHECK(p.size() == 3);  // dummy vertex splits the loop
    CHECK(m == 3 + 1);
    // {v1} is still the only size-1 feedback vertex set, so the bound holds
    CHECK(bounded_minsum(p, m).has_value());
}

TEST_CASE("fvs reduction agrees with the brute-force solver on sampled digraphs") {
    random_state rng(606);
    int checked = 0;
    for (int trial = 0; trial < 260; ++trial) {
        digraph_instance g;
        g.vertices = 2 + static_cast<int>(rng.uniform_index(4));  // 2..5
        for (int u = 0; u < g.vertices; ++u) {
            for (int v = 0; v < g.vertices; ++v) {
                if (u != v && rng.uniform_index(3) == 0) g.edges.emplace_back(u, v);
            }
        }
        g.k = static_cast<int>(rng.uniform_index(static_cast<std::size_t>(g.vertices) + 1));
        auto [p, m] = fvs_to_profile(g);
        bool expected = oracles::brute_force_fvs(g);
        CHECK_MESSAGE(bounded_minsum(p, m).has_value() == expected, "trial ", trial);
        ++checked;
    }
    CHECK(checked >= 200);
}

TEST_CASE("cnf reduction agrees with truth-table satisfiability") {
    random_state rng(1234);
    int checked = 0;
    for (int trial = 0; trial < 220; ++trial) {
        cnf_instance phi;
        std::size_t n_clauses = 1 + rng.uniform_index(3);
        for (std::size_t i = 0; i < n_clauses; ++i) {
            std::vector<int> clause;
            std::size_t width = 1 + rng.uniform_index(3);
            for (std::size_t j = 0; j < width; ++j) {
                int var = 1 + static_cast<int>(rng.uniform_index(3));
                clause.push_back(rng.uniform_index(2) == 0 ? var : -var);
            }
            phi.clauses.push_back(clause);
        }
        auto [p, m] = cnfsat_to_profile(phi);
        CHECK(m == 2);
        bool expected = oracles::truth_table_sat(phi);
        CHECK_MESSAGE(bounded_minmax(p, m).has_value() == expected, "trial ", trial);
        ++checked;
    }
    CHECK(checked >= 200);
}

TEST_CASE("cnf reduction rejects degenerate input") {
    CHECK_THROWS_AS(cnfsat_to_profile(cnf_instance{}), parameter_error);
    CHECK_THROWS_AS(cnfsat_to_profile(cnf_instance{{{}}}), parameter_error);
    CHECK_THROWS_AS(cnfsat_to_profile(cnf_instance{{{1, 0}}}), parameter_error);
}

TEST_CASE("a tautological clause is never the bottleneck") {
    cnf_instance phi;
    phi.clauses = {{1, -1}, {2}};
    auto [p, m] = cnfsat_to_profile(phi);
    CHECK(bounded_minmax(p, m).has_value() == oracles::truth_table_sat(phi));
}

TEST_CASE("random profiles are valid, in-language, and reproducible") {
    for (int trial = 0; trial < 30; ++trial) {
        for (auto lang : {language_tag::liquid, language_tag::liquid_star,
                          language_tag::boolean}) {
            auto p = random_profile(8, lang, 3, 0.5, 52000 + trial);
            CHECK(validate_profile(p).empty());
            auto info = classify_language(p);
            if (lang == language_tag::liquid) CHECK(info.in_liquid);
            if (lang == language_tag::liquid_star) CHECK(info.in_liquid_star);
            if (lang == language_tag::boolean) CHECK(info.in_bool);
            CHECK(info.max_delegation_count <= 2);

            auto q = random_profile(8, lang, 3, 0.5, 52000 + trial);
            CHECK(serialize_profile(p) == serialize_profile(q));
        }
    }
}

TEST_CASE("cycle_bias controls delegation density") {
    int low = 0;
    int high = 0;
    for (int trial = 0; trial < 20; ++trial) {
        auto sparse = random_profile(10, language_tag::liquid, 3, 0.0, 111 + trial);
        auto dense = random_profile(10, language_tag::liquid, 3, 1.0, 111 + trial);
        for (const auto& b : sparse.ballots) low += b.delegation_count() > 0;
        for (const auto& b : dense.ballots) high += b.delegation_count() > 0;
    }
    CHECK(low < high);
    CHECK(high > 150);  // nearly every agent delegates at full bias
}

TEST_CASE("language tags parse") {
    CHECK(parse_language_tag("liquid") == language_tag::liquid);
    CHECK(parse_language_tag("liquid*") == language_tag::liquid_star);
    CHECK(parse_language_tag("liquid_star") == language_tag::liquid_star);
    CHECK(parse_language_tag("bool") == language_tag::boolean);
    CHECK(parse_language_tag("boolean") == language_tag::boolean);
    CHECK_THROWS_AS(parse_language_tag("fancy"), parameter_error);
}
