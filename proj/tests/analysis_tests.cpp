#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "unravel/analysis.hpp"
#include "unravel/certificates.hpp"
#include "unravel/errors.hpp"
#include "unravel/generators.hpp"
#include "unravel/greedy.hpp"
#include "unravel/optimal.hpp"
#include "unravel/profile_io.hpp"

using namespace unravel;
using oracles::direct;
using oracles::formula;
using oracles::id_of;

TEST_CASE("majority and relative majority") {
    CHECK(apply_rule(voting_rule::maj, outcome_vector{{"1", "1", "0"}}) == "1");
    CHECK(apply_rule(voting_rule::maj, outcome_vector{{"1", "0", "*", "*"}}) == "*");
    CHECK(apply_rule(voting_rule::maj, outcome_vector{{"0", "0", "0", "1", "1"}}) == "0");
    CHECK(apply_rule(voting_rule::rmaj, outcome_vector{{"1", "0", "*", "*"}}) == "*");
    CHECK(apply_rule(voting_rule::rmaj, outcome_vector{{"1", "*", "*"}}) == "1");
    CHECK(apply_rule(voting_rule::rmaj, outcome_vector{{"0", "1", "1", "*"}}) == "1");
    CHECK_THROWS_AS(apply_rule(voting_rule::maj, outcome_vector{{"2"}}), domain_error);
}

TEST_CASE("pareto dominance is a strict partial order") {
    certificate a{{1, 1, 2}};
    certificate b{{1, 2, 2}};
    certificate c{{2, 1, 1}};
    CHECK(pareto_dominates(a, b));
    CHECK_FALSE(pareto_dominates(b, a));
    CHECK_FALSE(pareto_dominates(a, a));
    CHECK_FALSE(pareto_dominates(a, c));
    CHECK_FALSE(pareto_dominates(c, a));
    CHECK_THROWS_AS(pareto_dominates(a, certificate{{1, 1}}), agent_mismatch_error);

    random_state rng(314);
    for (int trial = 0; trial < 200; ++trial) {
        certificate x, y, z;
        for (int i = 0; i < 5; ++i) {
            x.levels.push_back(1 + static_cast<int>(rng.uniform_index(4)));
            y.levels.push_back(1 + static_cast<int>(rng.uniform_index(4)));
            z.levels.push_back(1 + static_cast<int>(rng.uniform_index(4)));
        }
        CHECK_FALSE(pareto_dominates(x, x));                                  // irreflexive
        CHECK_FALSE((pareto_dominates(x, y) && pareto_dominates(y, x)));      // asymmetric
        if (pareto_dominates(x, y) && pareto_dominates(y, z)) {
            CHECK(pareto_dominates(x, z));                                  // transitive
        }
    }
}

TEST_CASE("minsum certificates are pareto optimal") {
    for (const char* name : {"table1", "table4", "fig1"}) {
        auto p = load_profile(oracles::fixture(name));
        for (const auto& c : minsum_exact(p).certificates) {
            CHECK_MESSAGE(is_pareto_optimal(p, c), name);
        }
    }
}

TEST_CASE("greedy DU can land on a dominated certificate") {
    // on the three-cycle fixture DU yields (3,3,3,1,1,2), dominated by e.g.
    // the RU branch (3,1,1,1,1,2)
    auto p = load_profile(oracles::fixture("table6"));
    auto du = unravel::unravel(p, update_kind::du);
    CHECK_FALSE(is_pareto_optimal(p, du.cert));
    CHECK(pareto_dominates(certificate{{3, 1, 1, 1, 1, 2}}, du.cert));
}

TEST_CASE("influence sets under a fixed certificate") {
    auto p = load_profile(oracles::fixture("table5"));
    auto u = unravel::unravel(p, update_kind::u);
    REQUIRE(u.cert.levels == std::vector<int>{1, 2, 2, 2, 1, 1});

    auto inf_a = influence_sets(p, u.cert, "a");
    CHECK(inf_a.direct == std::vector<std::string>{"b"});
    CHECK(inf_a.transitive == std::vector<std::string>{"b"});

    auto inf_f = influence_sets(p, u.cert, "f");
    CHECK(inf_f.direct == std::vector<std::string>{"c", "d"});
    CHECK(inf_f.transitive == std::vector<std::string>{"c", "d"});

    CHECK_THROWS_AS(influence_sets(p, certificate{{1, 1, 1, 1, 1, 1}}, "a"),
                    inconsistent_certificate_error);
}

TEST_CASE("influence closes transitively") {
    auto p = load_profile(oracles::fixture("table4"));
    // (3,1,1,2): d votes directly, a copies d, and b, c copy a
    certificate c{{3, 1, 1, 2}};
    REQUIRE(check_consistent(p, c).consistent);
    auto inf_d = influence_sets(p, c, "d");
    CHECK(inf_d.direct == std::vector<std::string>{"a"});
    CHECK(inf_d.transitive == std::vector<std::string>{"a", "b", "c"});
}

TEST_CASE("maj and rmaj pass the randomized monotonicity check") {
    random_state rng(161);
    CHECK(check_monotonicity(voting_rule::maj, 4000, rng).holds);
    CHECK(check_monotonicity(voting_rule::rmaj, 4000, rng).holds);
}

TEST_CASE("the monotonicity check catches a rigged rule") {
    // a rule that flips to 0 as soon as more than two agents vote 1
    rule_fn rigged = [](const outcome_vector& x) {
        int ones = 0;
        for (const auto& v : x.votes) ones += v == "1";
        return ones > 2 ? std::string("0") : std::string("1");
    };
    random_state rng(8);
    auto r = check_monotonicity(rigged, 4000, rng);
    CHECK_FALSE(r.holds);
    CHECK(r.winner == "1");
}

TEST_CASE("cast participation fails for majority with a negated delegation") {
    auto p = oracles::make_profile(
        {"0", "1"}, {"a", "b", "c"},
        {{{direct("1")}},
         {{formula("~a"), direct("0")}},
         {{formula("~a"), direct("0")}}});
    auto r = check_cast_participation(p, "a", voting_rule::maj, update_kind::u);
    CHECK_FALSE(r.holds);
    CHECK(r.original_value == "0");
    CHECK(r.improved_value == "1");
    REQUIRE(r.witness_ballot.has_value());
    REQUIRE(r.witness_ballot->levels.size() == 1);
    CHECK(r.witness_ballot->levels.front().vote() == "0");
}

TEST_CASE("cast participation holds on the liquid fixture") {
    auto p = load_profile(oracles::fixture("table3"));
    CHECK(check_cast_participation(p, "a", voting_rule::rmaj, update_kind::u).holds);
    CHECK(check_cast_participation(p, "e", voting_rule::rmaj, update_kind::du).holds);
}

TEST_CASE("cast participation requires a direct non-abstaining voter") {
    auto p = load_profile(oracles::fixture("table3"));
    CHECK_THROWS_AS(check_cast_participation(p, "b", voting_rule::rmaj, update_kind::u),
                    parameter_error);
}

TEST_CASE("guru participation counterexamples on the six-agent liquid fixture") {
    auto p = load_profile(oracles::fixture("table5"));
    for (auto kind : {update_kind::u, update_kind::du}) {
        auto r = check_guru_participation(p, "a", voting_rule::rmaj, kind);
        CHECK_FALSE(r.holds);
        CHECK(r.witness_agent == "b");
        CHECK(r.original_value == "*");
        CHECK(r.improved_value == "1");
    }
    for (auto kind : {update_kind::ru, update_kind::dru}) {
        auto r = check_guru_participation(p, "a", voting_rule::rmaj, kind);
        CHECK_FALSE(r.holds);
        CHECK(r.original_value == "0");
        CHECK(r.improved_value == "1");
    }
}

TEST_CASE("guru participation holds when no supporter can harm the guru") {
    auto p = load_profile(oracles::fixture("remark4"));
    CHECK(check_guru_participation(p, "c", voting_rule::rmaj, update_kind::u).holds);
}

TEST_CASE("all six procedures coincide on the always-abstain fixture") {
    auto p = load_profile(oracles::fixture("remark4"));
    std::vector<std::string> expected_outcome{"*", "*", "1"};
    std::vector<int> expected_cert{1, 1, 1};

    for (auto kind : {update_kind::u, update_kind::du, update_kind::ru, update_kind::dru}) {
        auto r = unravel::unravel(p, kind, 17);
        CHECK(r.outcome.votes == expected_outcome);
        CHECK(r.cert.levels == expected_cert);
    }
    auto minsum = minsum_exact(p);
    REQUIRE(minsum.certificates.size() == 1);
    CHECK(minsum.certificates.front().levels == expected_cert);
    CHECK(minsum.outcomes.front().votes == expected_outcome);

    auto minmax = minmax_exact(p);
    REQUIRE(minmax.certificates.size() == 1);
    CHECK(minmax.certificates.front().levels == expected_cert);
}

TEST_CASE("enumerate_ballots spans direct votes and liquid* delegation chains") {
    auto p = load_profile(oracles::fixture("table3"));
    ballot_space space;
    auto ballots = enumerate_ballots(p, "a", space);
    int direct_count = 0;
    int delegating = 0;
    for (const auto& b : ballots) {
        CHECK(validate_ballot(b, "a").empty());
        if (b.levels.size() == 1 && b.levels.front().is_direct()) {
            ++direct_count;
        } else {
            ++delegating;
            CHECK(b.levels.back().vote() == abstain);
            CHECK(static_cast<int>(b.levels.size()) - 1 <= space.max_delegations);
        }
    }
    CHECK(direct_count == 3);  // 0, 1, *
    CHECK(delegating > 0);
}
