#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "unravel/certificates.hpp"
#include "unravel/errors.hpp"
#include "unravel/generators.hpp"
#include "unravel/greedy.hpp"
#include "unravel/profile_io.hpp"

using namespace unravel;

namespace {

std::vector<std::pair<std::vector<int>, std::vector<std::string>>> branch_pairs(
    const std::vector<branch_result>& branches) {
    std::vector<std::pair<std::vector<int>, std::vector<std::string>>> out;
    for (const auto& b : branches) out.emplace_back(b.cert.levels, b.outcome.votes);
    return out;
}

}  // namespace

TEST_CASE("six-agent example: U and DU runs") {
    auto p = load_profile(oracles::fixture("fig1"));

    auto u = unravel::unravel(p, update_kind::u);
    CHECK(u.outcome.votes == std::vector<std::string>{"0", "1", "0", "0", "1", "1"});
    CHECK(u.cert.levels == std::vector<int>{1, 1, 1, 2, 2, 2});

    auto du = unravel::unravel(p, update_kind::du);
    CHECK(du.outcome.votes == std::vector<std::string>{"0", "1", "0", "0", "1", "0"});
    CHECK(du.cert.levels == std::vector<int>{1, 1, 1, 2, 2, 1});
}

TEST_CASE("six-agent example: RU reaches the all-but-c-positive branch") {
    auto p = load_profile(oracles::fixture("fig1"));
    auto branches = enumerate_random_branches(p, update_kind::ru);
    auto pairs = branch_pairs(branches);
    std::pair<std::vector<int>, std::vector<std::string>> expected{
        {1, 1, 1, 1, 1, 2}, {"1", "1", "0", "1", "1", "1"}};
    CHECK(std::find(pairs.begin(), pairs.end(), expected) != pairs.end());
}

TEST_CASE("four-agent identity example: all procedures") {
    auto p = load_profile(oracles::fixture("table4"));

    auto u = unravel::unravel(p, update_kind::u);
    CHECK(u.outcome.votes == std::vector<std::string>{"1", "0", "1", "1"});
    CHECK(u.cert.levels == std::vector<int>{3, 3, 3, 2});

    auto du = unravel::unravel(p, update_kind::du);
    CHECK(du.outcome.votes == std::vector<std::string>{"0", "0", "1", "1"});
    CHECK(du.cert.levels == std::vector<int>{1, 3, 3, 2});

    auto ru = branch_pairs(enumerate_random_branches(p, update_kind::ru));
    std::vector<std::pair<std::vector<int>, std::vector<std::string>>> ru_expected{
        {{1, 2, 3, 2}, {"1", "1", "1", "1"}},
        {{1, 3, 1, 2}, {"0", "0", "0", "1"}},
        {{2, 1, 3, 2}, {"1", "1", "1", "1"}},
        {{3, 1, 1, 2}, {"1", "1", "1", "1"}},
    };
    CHECK(ru == ru_expected);

    auto dru = branch_pairs(enumerate_random_branches(p, update_kind::dru));
    std::vector<std::pair<std::vector<int>, std::vector<std::string>>> dru_expected{
        {{1, 2, 3, 2}, {"1", "1", "1", "1"}},
        {{1, 3, 1, 2}, {"0", "0", "0", "1"}},
        {{2, 1, 3, 2}, {"1", "1", "1", "1"}},
    };
    CHECK(dru == dru_expected);
}

TEST_CASE("non-dominated greedy certificates on the three-cycle example") {
    auto p = load_profile(oracles::fixture("table6"));

    auto u = unravel::unravel(p, update_kind::u);
    CHECK(u.outcome.votes == std::vector<std::string>{"1", "1", "1", "1", "1", "0"});
    CHECK(u.cert.levels == std::vector<int>{1, 1, 1, 1, 2, 2});

    auto du = unravel::unravel(p, update_kind::du);
    CHECK(du.outcome.votes == std::vector<std::string>{"0", "0", "0", "1", "0", "0"});
    CHECK(du.cert.levels == std::vector<int>{3, 3, 3, 1, 1, 2});

    auto ru = enumerate_random_branches(p, update_kind::ru);
    bool found = false;
    for (const auto& b : ru) {
        if (b.cert.levels == std::vector<int>{3, 1, 1, 1, 1, 2}) found = true;
    }
    CHECK(found);
}

TEST_CASE("every RU run is one of the enumerated branches, and seeds reproduce") {
    auto p = load_profile(oracles::fixture("table4"));
    auto pairs = branch_pairs(enumerate_random_branches(p, update_kind::ru));
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto r1 = unravel::unravel(p, update_kind::ru, seed);
        auto r2 = unravel::unravel(p, update_kind::ru, seed);
        CHECK(r1.cert == r2.cert);
        CHECK(r1.outcome == r2.outcome);
        std::pair<std::vector<int>, std::vector<std::string>> pair{r1.cert.levels,
                                                                   r1.outcome.votes};
        CHECK(std::find(pairs.begin(), pairs.end(), pair) != pairs.end());
    }
}

TEST_CASE("greedy certificates are consistent and within the step bound") {
    for (int trial = 0; trial < 60; ++trial) {
        auto p = random_profile(7, language_tag::boolean, 3, 0.5, 4200 + trial);
        for (auto kind : {update_kind::u, update_kind::du, update_kind::ru, update_kind::dru}) {
            auto r = unravel::unravel(p, kind, trial);
            auto consistency = check_consistent(p, r.cert);
            REQUIRE(consistency.consistent);
            CHECK(consistency.witness.outcome == r.outcome);
            CHECK(step_bound_check(p, r));
        }
    }
}

TEST_CASE("DRU branch certificates are a subset of RU branch certificates") {
    for (int trial = 0; trial < 40; ++trial) {
        auto p = random_profile(6, language_tag::liquid, 3, 0.6, 7700 + trial);
        std::set<certificate> ru;
        for (const auto& b : enumerate_random_branches(p, update_kind::ru)) ru.insert(b.cert);
        for (const auto& b : enumerate_random_branches(p, update_kind::dru)) {
            CHECK(ru.count(b.cert) == 1);
        }
    }
}

TEST_CASE("U and DU coincide with the seed-0 single run") {
    auto p = load_profile(oracles::fixture("table6"));
    random_state rng(99);
    auto u1 = unravel::unravel(p, update_kind::u, rng);
    auto u2 = unravel::unravel(p, update_kind::u);
    CHECK(u1.cert == u2.cert);
}

TEST_CASE("trace records one event per agent in determination order") {
    auto p = load_profile(oracles::fixture("fig1"));
    auto r = unravel::unravel(p, update_kind::u);
    REQUIRE(r.trace.size() == p.agents.size());
    std::set<int> seen;
    for (const auto& ev : r.trace) {
        CHECK(seen.insert(ev.agent).second);
        CHECK(ev.level == r.cert.levels[static_cast<std::size_t>(ev.agent)]);
    }
}

TEST_CASE("branch enumeration rejects unknown kinds and honours the cap") {
    auto p = load_profile(oracles::fixture("table4"));
    CHECK_THROWS_AS(enumerate_random_branches(p, update_kind::u), parameter_error);
    CHECK_THROWS_AS(enumerate_random_branches(p, update_kind::ru, 1), cap_exceeded_error);
}

TEST_CASE("parse_update_kind round-trips") {
    for (const char* name : {"u", "du", "ru", "dru"}) {
        CHECK(to_string(parse_update_kind(name)) == name);
    }
    CHECK_THROWS_AS(parse_update_kind("xyz"), parameter_error);
}
