#include "unravel/analysis.hpp"

#include <algorithm>
#include <set>

namespace unravel {

voting_rule parse_voting_rule(const std::string& name) {
    if (name == "maj") return voting_rule::maj;
    if (name == "rmaj") return voting_rule::rmaj;
    throw parameter_error("unknown voting rule '" + name + "'");
}

std::string to_string(voting_rule r) { return r == voting_rule::maj ? "maj" : "rmaj"; }

std::string apply_rule(voting_rule rule, const outcome_vector& x) {
    std::size_t zeros = 0, ones = 0, stars = 0;
    for (const auto& v : x.votes) {
        if (v == "0")
            ++zeros;
        else if (v == "1")
            ++ones;
        else if (v == abstain)
            ++stars;
        else
            throw domain_error("rule input '" + v + "' outside {0,1,*}");
    }
    if (rule == voting_rule::maj) {
        std::size_t n = x.votes.size();
        if (2 * zeros > n) return "0";
        if (2 * ones > n) return "1";
        return abstain;
    }
    if (zeros > ones) return "0";
    if (ones > zeros) return "1";
    return abstain;
}

rule_fn rule_function(voting_rule rule) {
    return [rule](const outcome_vector& x) { return apply_rule(rule, x); };
}

bool pareto_dominates(const certificate& c1, const certificate& c2) {
    if (c1.levels.size() != c2.levels.size())
        throw agent_mismatch_error("certificates range over different agent sets");
    bool strict = false;
    for (std::size_t i = 0; i < c1.levels.size(); ++i) {
        if (c1.levels[i] > c2.levels[i]) return false;
        if (c1.levels[i] < c2.levels[i]) strict = true;
    }
    return strict;
}

bool is_pareto_optimal(const profile& p, const certificate& c, std::uint64_t cap) {
    for (const auto& [other, outcome] : enumerate_consistent(p, cap))
        if (pareto_dominates(other, c)) return false;
    return true;
}

influence_report influence_sets(const profile& p, const certificate& c, const std::string& a) {
    if (!check_consistent(p, c).consistent)
        throw inconsistent_certificate_error("influence sets need a consistent certificate");
    int target = p.index_of(a);
    if (target < 0) throw agent_mismatch_error("unknown agent '" + a + "'");

    // influencers[b] = delegate set of the level b actually used.
    auto influenced_by = [&](int who) {
        std::vector<int> out;
        for (int b = 0; b < p.size(); ++b) {
            const auto& lev = p.ballots[b].levels[c.levels[b] - 1];
            if (lev.is_direct()) continue;
            auto vars = lev.function().variables();
            if (std::find(vars.begin(), vars.end(), p.agents[who]) != vars.end())
                out.push_back(b);
        }
        return out;
    };

    influence_report rep;
    std::set<int> closed;
    std::vector<int> frontier = influenced_by(target);
    for (int b : frontier) rep.direct.push_back(p.agents[b]);
    while (!frontier.empty()) {
        int b = frontier.back();
        frontier.pop_back();
        if (!closed.insert(b).second) continue;
        for (int nxt : influenced_by(b)) frontier.push_back(nxt);
    }
    for (int b : closed) rep.transitive.push_back(p.agents[b]);
    std::sort(rep.direct.begin(), rep.direct.end());
    std::sort(rep.transitive.begin(), rep.transitive.end());
    return rep;
}

monotonicity_result check_monotonicity(const rule_fn& rule, int trials, random_state& rng) {
    static const std::string alts[3] = {"0", "1", "*"};
    monotonicity_result res;
    for (int t = 0; t < trials; ++t) {
        outcome_vector x;
        std::size_t n = 1 + rng.uniform_index(9);
        for (std::size_t i = 0; i < n; ++i) x.votes.push_back(alts[rng.uniform_index(3)]);
        std::string w = rule(x);
        if (w == abstain) continue;
        std::vector<std::size_t> movable;
        for (std::size_t i = 0; i < n; ++i)
            if (x.votes[i] != w) movable.push_back(i);
        if (movable.empty()) continue;
        std::size_t i = movable[rng.uniform_index(movable.size())];
        outcome_vector y = x;
        // A +x switch: 1-x moves to x or *, * moves to x.
        y.votes[i] = (x.votes[i] == abstain || rng.uniform_index(2) == 0) ? w : abstain;
        if (rule(y) != w) return {false, std::move(x), std::move(y), std::move(w)};
    }
    return res;
}

monotonicity_result check_monotonicity(voting_rule rule, int trials, random_state& rng) {
    return check_monotonicity(rule_function(rule), trials, rng);
}

std::vector<smart_ballot> enumerate_ballots(const profile& p, const std::string& agent,
                                            const ballot_space& space) {
    std::vector<smart_ballot> out;
    if (space.include_direct)
        for (const auto& alt : p.domain.alternatives)
            out.push_back({{preference_level::direct(alt)}});
    if (!p.domain.allows_abstention()) return out;

    // Ranked sequences of distinct identity delegations ending in *.
    std::vector<std::string> others;
    for (const auto& b : p.agents)
        if (b != agent) others.push_back(b);
    std::vector<std::vector<std::string>> seqs = {{}};
    for (int len = 1; len <= space.max_delegations; ++len) {
        std::vector<std::vector<std::string>> next;
        for (const auto& s : seqs)
            if (static_cast<int>(s.size()) == len - 1)
                for (const auto& b : others)
                    if (std::find(s.begin(), s.end(), b) == s.end()) {
                        auto t = s;
                        t.push_back(b);
                        next.push_back(t);
                    }
        for (auto& s : next) seqs.push_back(std::move(s));
    }
    for (const auto& s : seqs) {
        if (s.empty()) continue;
        smart_ballot b;
        for (const auto& d : s)
            b.levels.push_back(preference_level::delegation(delegation_function::identity(d)));
        b.levels.push_back(preference_level::direct(abstain));
        out.push_back(std::move(b));
    }
    return out;
}

namespace {

// Every possible (outcome, certificate) of the procedure: a single run for the
// deterministic kinds, the full branch set for the randomized ones.
std::vector<std::pair<outcome_vector, certificate>> all_outcomes(const profile& p,
                                                                 update_kind kind) {
    std::vector<std::pair<outcome_vector, certificate>> out;
    if (kind == update_kind::u || kind == update_kind::du) {
        auto r = unravel(p, kind);
        out.emplace_back(std::move(r.outcome), std::move(r.cert));
    } else {
        for (auto& b : enumerate_random_branches(p, kind))
            out.emplace_back(std::move(b.outcome), std::move(b.cert));
    }
    return out;
}

const std::string& direct_vote_of(const profile& p, const std::string& a) {
    int i = p.index_of(a);
    if (i < 0) throw agent_mismatch_error("unknown agent '" + a + "'");
    const auto& b = p.ballots[i];
    if (b.levels.size() != 1 || b.levels[0].vote() == abstain)
        throw parameter_error("participation checks need agent '" + a +
                              "' to cast a direct non-abstain vote");
    return b.levels[0].vote();
}

}  // namespace

participation_result check_cast_participation(const profile& p, const std::string& a,
                                              voting_rule rule, update_kind kind,
                                              const ballot_space& space) {
    const std::string& x = direct_vote_of(p, a);
    participation_result res;

    std::string worst_original;
    bool original_misses_x = false;
    for (const auto& [outcome, cert] : all_outcomes(p, kind)) {
        auto v = apply_rule(rule, outcome);
        if (v != x) {
            original_misses_x = true;
            worst_original = v;
        }
    }
    if (!original_misses_x) return res;  // a already gets x on every branch

    int ai = p.index_of(a);
    for (const auto& alt : enumerate_ballots(p, a, space)) {
        if (alt.levels.size() == 1 && alt.levels[0].vote() == x) continue;  // B'_a = B_a
        profile q = p;
        q.ballots[ai] = alt;
        if (!validate_profile(q).empty()) continue;
        for (const auto& [outcome, cert] : all_outcomes(q, kind))
            if (apply_rule(rule, outcome) == x) {
                res.holds = false;
                res.witness_ballot = alt;
                res.original_value = worst_original;
                res.improved_value = x;
                return res;
            }
    }
    return res;
}

participation_result check_guru_participation(const profile& p, const std::string& a,
                                              voting_rule rule, update_kind kind) {
    const std::string& x = direct_vote_of(p, a);
    if (!p.domain.allows_abstention())
        throw domain_error("guru-participation needs * in the domain");
    participation_result res;

    std::string worst_original;
    bool original_misses_x = false;
    std::set<std::string> supporters;
    for (const auto& [outcome, cert] : all_outcomes(p, kind)) {
        auto v = apply_rule(rule, outcome);
        if (v != x) {
            original_misses_x = true;
            worst_original = v;
        }
        auto rep = influence_sets(p, cert, a);
        supporters.insert(rep.transitive.begin(), rep.transitive.end());
    }
    if (!original_misses_x) return res;

    for (const auto& b : supporters) {
        profile q = p;
        q.ballots[q.index_of(b)] = {{preference_level::direct(abstain)}};
        for (const auto& [outcome, cert] : all_outcomes(q, kind))
            if (apply_rule(rule, outcome) == x) {
                res.holds = false;
                res.witness_agent = b;
                res.original_value = worst_original;
                res.improved_value = x;
                return res;
            }
    }
    return res;
}

}  // namespace unravel
