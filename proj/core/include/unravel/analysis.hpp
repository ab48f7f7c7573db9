#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "unravel/ballots.hpp"
#include "unravel/certificates.hpp"
#include "unravel/greedy.hpp"

namespace unravel {

enum class voting_rule { maj, rmaj };

voting_rule parse_voting_rule(const std::string& name);  // "maj" | "rmaj"
std::string to_string(voting_rule r);

/// Maj: the alternative with more than n/2 votes, * otherwise. RMaj: the
/// plurality winner between 0 and 1, * on a tie. Entries must lie in {0,1,*}.
std::string apply_rule(voting_rule rule, const outcome_vector& x);

using rule_fn = std::function<std::string(const outcome_vector&)>;
rule_fn rule_function(voting_rule rule);

/// Entrywise <= with at least one strict <.
bool pareto_dominates(const certificate& c1, const certificate& c2);

/// No consistent certificate of p dominates c (exhaustive, desk scale).
bool is_pareto_optimal(const profile& p, const certificate& c, std::uint64_t cap = 1'000'000);

struct influence_report {
    std::vector<std::string> direct;      // b with a in S_b at b's certified level
    std::vector<std::string> transitive;  // closure of the above
};

/// Influence of agent a under the levels actually used by certificate c.
influence_report influence_sets(const profile& p, const certificate& c, const std::string& a);

struct monotonicity_result {
    bool holds = true;
    outcome_vector before;
    outcome_vector after;  // one +x switch applied
    std::string winner;    // rule value on `before`, lost after the switch
};

/// Randomized property check of the +x switch definition over {0,1,*} vectors.
monotonicity_result check_monotonicity(const rule_fn& rule, int trials, random_state& rng);
monotonicity_result check_monotonicity(voting_rule rule, int trials, random_state& rng);

/// Finite space of alternative ballots searched by the cast checker: direct
/// votes plus Liquid* ballots (ranked identity delegations ending in *).
struct ballot_space {
    bool include_direct = true;
    int max_delegations = 2;
};

std::vector<smart_ballot> enumerate_ballots(const profile& p, const std::string& agent,
                                            const ballot_space& space);

struct participation_result {
    bool holds = true;
    std::string witness_agent;                    // guru: the harmed supporter b
    std::optional<smart_ballot> witness_ballot;   // cast: the better ballot B'_a
    std::string original_value;                   // a rule value of the original profile
    std::string improved_value;                   // the strictly preferred value reached
};

/// Cast-participation (the agent never gains by replacing their direct vote).
/// A counterexample needs a strict improvement: some branch of the modified
/// profile yields a's vote x while some branch of the original does not.
/// Requires B_a to be a direct non-abstain vote.
participation_result check_cast_participation(const profile& p, const std::string& a,
                                              voting_rule rule, update_kind kind,
                                              const ballot_space& space = {});

/// Guru-participation (no supporter in a's transitive influence set harms a by
/// participating). Compares every branch of the original against every branch
/// of the profile where the supporter abstains.
participation_result check_guru_participation(const profile& p, const std::string& a,
                                              voting_rule rule, update_kind kind);

}  // namespace unravel
