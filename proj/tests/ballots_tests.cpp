#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "unravel/ballots.hpp"
#include "unravel/errors.hpp"
#include "unravel/profile_io.hpp"

using namespace unravel;
using oracles::direct;
using oracles::formula;
using oracles::id_of;

TEST_CASE("check_structure rejects malformed ballots") {
    SUBCASE("vote outside the domain") {
        CHECK_THROWS_AS(oracles::make_profile({"0", "1"}, {"a"}, {{{direct("2")}}}),
                        invalid_profile_error);
    }
    SUBCASE("undeclared delegate") {
        CHECK_THROWS_AS(
            oracles::make_profile({"0", "1"}, {"a"}, {{{id_of("z"), direct("1")}}}),
            invalid_profile_error);
    }
    SUBCASE("missing backup vote") {
        CHECK_THROWS_AS(
            oracles::make_profile({"0", "1"}, {"a", "b"},
                                  {{{id_of("b")}}, {{direct("1")}}}),
            invalid_profile_error);
    }
    SUBCASE("DNF delegation outside the binary domain") {
        CHECK_THROWS_AS(
            oracles::make_profile({"0", "1", "*"}, {"a", "b", "c"},
                                  {{{formula("b&c"), direct("1")}},
                                   {{direct("0")}},
                                   {{direct("1")}}}),
            invalid_profile_error);
    }
}

TEST_CASE("validity condition: self-delegation") {
    auto p = oracles::make_profile({"0", "1"}, {"a", "b"},
                                   {{{formula("a&b"), direct("1")}}, {{direct("0")}}});
    auto violations = validate_profile(p);
    REQUIRE(violations.count("a") == 1);
    CHECK(violations["a"].front().what == violation::kind::self_delegation);

    auto q = oracles::make_profile({"0", "1"}, {"a", "b"},
                                   {{{id_of("a"), direct("1")}}, {{direct("0")}}});
    CHECK(validate_profile(q).count("a") == 1);
}

TEST_CASE("validity condition: repeated equivalent delegation over shared delegates") {
    // identity-to-b at one level and the atom formula `b` at another are the
    // same delegation function, and they share the delegate b
    auto p = oracles::make_profile(
        {"0", "1"}, {"a", "b"},
        {{{id_of("b"), formula("b"), direct("1")}}, {{direct("0")}}});
    auto violations = validate_profile(p);
    REQUIRE(violations.count("a") == 1);
    CHECK(violations["a"].front().what == violation::kind::repeated_delegation);
    CHECK(violations["a"].front().level_s == 1);
    CHECK(violations["a"].front().level_t == 2);
}

TEST_CASE("equivalent functions over disjoint delegates are allowed") {
    auto p = oracles::make_profile(
        {"0", "1"}, {"a", "b", "c"},
        {{{id_of("b"), id_of("c"), direct("1")}}, {{direct("0")}}, {{direct("1")}}});
    CHECK(validate_profile(p).empty());
}

TEST_CASE("different functions over shared delegates are allowed") {
    auto p = oracles::make_profile(
        {"0", "1"}, {"a", "b", "c"},
        {{{formula("b&c"), formula("b | c"), direct("1")}},
         {{direct("0")}},
         {{direct("1")}}});
    CHECK(validate_profile(p).empty());
}

TEST_CASE("language classification of the fixtures") {
    auto table1 = load_profile(oracles::fixture("table1"));
    auto info1 = classify_language(table1);
    CHECK(info1.in_bool);
    CHECK_FALSE(info1.in_liquid);
    CHECK_FALSE(info1.in_liquid_star);
    CHECK(info1.max_delegation_count == 2);

    auto table3 = load_profile(oracles::fixture("table3"));
    auto info3 = classify_language(table3);
    CHECK(info3.in_liquid);
    CHECK(info3.in_liquid_star);
    CHECK_FALSE(info3.in_bool);

    auto table4 = load_profile(oracles::fixture("table4"));
    auto info4 = classify_language(table4);
    CHECK(info4.in_liquid);
    CHECK_FALSE(info4.in_liquid_star);  // delegating agents back up with real votes
    CHECK(info4.in_bool);               // identity ballots on {0,1} are Bool too
}

TEST_CASE("liquid* only constrains delegating agents' backups") {
    // a direct voter keeps a real vote without leaving Liquid*
    auto p = oracles::make_profile(
        {"0", "1", "*"}, {"a", "b"},
        {{{id_of("b"), direct("*")}}, {{direct("1")}}});
    auto info = classify_language(p);
    CHECK(info.in_liquid);
    CHECK(info.in_liquid_star);
}

TEST_CASE("every fixture is a valid profile") {
    for (const char* name : {"table1", "table2", "table3", "table4", "table5", "table6",
                             "fig1", "remark4", "example1_liquid", "example1_bool"}) {
        auto p = load_profile(oracles::fixture(name));
        CHECK_MESSAGE(validate_profile(p).empty(), name);
    }
}
