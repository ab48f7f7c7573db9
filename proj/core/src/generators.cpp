#include "unravel/generators.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "unravel/greedy.hpp"

namespace unravel {

namespace {

std::string vertex_name(int i) { return "v" + std::to_string(i + 1); }

dnf::cube positive_cube(const std::vector<std::string>& agents) {
    std::vector<dnf::literal> lits;
    for (const auto& a : agents) lits.push_back({a, true});
    return dnf::cube(std::move(lits));
}

}  // namespace

std::pair<profile, int> fvs_to_profile(const digraph_instance& g, bool normalize_self_loops) {
    if (g.vertices < 1) throw parameter_error("graph needs at least one vertex");
    int n = g.vertices;
    std::vector<std::set<int>> out(n);
    for (auto [u, v] : g.edges) {
        if (u < 0 || u >= g.vertices || v < 0 || v >= g.vertices)
            throw parameter_error("edge endpoint outside the vertex range");
        if (u == v) {
            if (!normalize_self_loops)
                throw self_loop_error("vertex " + vertex_name(u) + " has a reflexive edge");
            // Dummy-vertex gadget: replace (u,u) with a fresh u' and the
            // two-cycle u -> u' -> u.
            out.emplace_back();
            out[u].insert(n);
            out[n].insert(u);
            ++n;
        } else {
            out[u].insert(v);
        }
    }

    profile p;
    p.domain.alternatives = {"0", "1"};
    for (int v = 0; v < n; ++v) p.agents.push_back(vertex_name(v));
    for (int v = 0; v < n; ++v) {
        smart_ballot b;
        if (!out[v].empty()) {
            std::vector<std::string> targets;
            for (int u : out[v]) targets.push_back(vertex_name(u));
            auto f = dnf::complete_dnf::complete({positive_cube(targets)});
            b.levels.push_back(
                preference_level::delegation(delegation_function::formula(std::move(f))));
        }
        b.levels.push_back(preference_level::direct("1"));
        p.ballots.push_back(std::move(b));
    }
    return {std::move(p), n + g.k};
}

std::pair<profile, int> cnfsat_to_profile(const cnf_instance& phi) {
    if (phi.clauses.empty()) throw parameter_error("formula has no clauses");
    std::set<int> vars;
    for (const auto& cl : phi.clauses) {
        if (cl.empty()) throw parameter_error("empty clause");
        for (int l : cl) {
            if (l == 0) throw parameter_error("literal 0 is not allowed");
            vars.insert(std::abs(l));
        }
    }
    int m = static_cast<int>(phi.clauses.size());

    profile p;
    p.domain.alternatives = {"0", "1"};
    p.agents.push_back("x");
    p.agents.push_back("y");
    std::vector<std::string> clause_agents;
    for (int i = 0; i < m; ++i) {
        clause_agents.push_back("c" + std::to_string(i + 1));
        p.agents.push_back(clause_agents.back());
    }
    for (int v : vars) p.agents.push_back("v" + std::to_string(v));

    // B_x = (1)
    p.ballots.push_back({{preference_level::direct("1")}});

    // B_y = (x AND all clause agents) > (all clause agents) > 1
    {
        std::vector<std::string> with_x = clause_agents;
        with_x.insert(with_x.begin(), "x");
        smart_ballot b;
        b.levels.push_back(preference_level::delegation(
            delegation_function::formula(dnf::complete_dnf::complete({positive_cube(with_x)}))));
        b.levels.push_back(preference_level::delegation(delegation_function::formula(
            dnf::complete_dnf::complete({positive_cube(clause_agents)}))));
        b.levels.push_back(preference_level::direct("1"));
        p.ballots.push_back(std::move(b));
    }

    // B_c = (y) > (y OR the clause's literals) > 1, dropping the second
    // delegation when the clause is a tautology.
    for (const auto& cl : phi.clauses) {
        smart_ballot b;
        b.levels.push_back(preference_level::delegation(delegation_function::identity("y")));
        std::set<int> pos, neg;
        for (int l : cl) (l > 0 ? pos : neg).insert(std::abs(l));
        bool tautology = false;
        for (int v : pos) tautology = tautology || neg.count(v);
        if (!tautology) {
            std::vector<dnf::cube> cubes = {positive_cube({"y"})};
            for (int l : cl) {
                std::string agent = "v" + std::to_string(std::abs(l));
                cubes.push_back(dnf::cube({{agent, l > 0}}));
            }
            b.levels.push_back(preference_level::delegation(
                delegation_function::formula(dnf::complete_dnf::complete(std::move(cubes)))));
        }
        b.levels.push_back(preference_level::direct("1"));
        p.ballots.push_back(std::move(b));
    }

    // B_v = (x) > 0
    for ([[maybe_unused]] int v : vars) {
        smart_ballot b;
        b.levels.push_back(preference_level::delegation(delegation_function::identity("x")));
        b.levels.push_back(preference_level::direct("0"));
        p.ballots.push_back(std::move(b));
    }

    return {std::move(p), 2};
}

language_tag parse_language_tag(const std::string& name) {
    if (name == "liquid") return language_tag::liquid;
    if (name == "liquid*" || name == "liquid_star") return language_tag::liquid_star;
    if (name == "bool" || name == "boolean") return language_tag::boolean;
    throw parameter_error("unknown language '" + name + "'");
}

namespace {

std::string agent_name(int i) { return "a" + std::to_string(i + 1); }

// Random contingent complete DNF over a small pool of other agents.
delegation_function random_formula(const std::vector<std::string>& pool, random_state& rng) {
    for (;;) {
        std::size_t n_cubes = 1 + rng.uniform_index(2);
        std::vector<dnf::cube> cubes;
        for (std::size_t c = 0; c < n_cubes; ++c) {
            std::size_t n_lits = 1 + rng.uniform_index(std::min<std::size_t>(2, pool.size()));
            std::vector<dnf::literal> lits;
            std::set<std::size_t> used;
            while (lits.size() < n_lits) {
                std::size_t i = rng.uniform_index(pool.size());
                if (!used.insert(i).second) continue;
                lits.push_back({pool[i], rng.uniform_index(2) == 0});
            }
            cubes.push_back(dnf::cube(std::move(lits)));
        }
        try {
            return delegation_function::formula(dnf::complete_dnf::complete(std::move(cubes)));
        } catch (const error&) {
            // Tautology or contradiction; resample.
        }
    }
}

}  // namespace

profile random_profile(int n, language_tag language, int max_levels, double cycle_bias,
                       std::uint64_t seed) {
    if (n < 1) throw parameter_error("need at least one agent");
    if (max_levels < 1) throw parameter_error("need at least one preference level");
    if (cycle_bias < 0.0 || cycle_bias > 1.0) throw parameter_error("cycle_bias outside [0,1]");

    random_state rng(seed);
    auto bernoulli = [&](double prob) {
        return rng.uniform_index(1u << 20) < static_cast<std::size_t>(prob * (1u << 20));
    };

    profile p;
    p.domain.alternatives =
        language == language_tag::boolean ? std::vector<std::string>{"0", "1"}
                                          : std::vector<std::string>{"0", "1", "*"};
    for (int i = 0; i < n; ++i) p.agents.push_back(agent_name(i));

    std::vector<char> delegates(n, 0);
    if (max_levels >= 2 && n >= 2)
        for (int i = 0; i < n; ++i) delegates[i] = bernoulli(cycle_bias);

    std::vector<std::string> delegators;
    for (int i = 0; i < n; ++i)
        if (delegates[i]) delegators.push_back(p.agents[i]);

    for (int i = 0; i < n; ++i) {
        smart_ballot b;
        for (int attempt = 0; attempt < 1000; ++attempt) {
            b.levels.clear();
            if (delegates[i]) {
                int k = 1 + static_cast<int>(rng.uniform_index(max_levels - 1));
                if (language != language_tag::boolean) k = std::min(k, n - 1);
                if (language == language_tag::boolean) {
                    std::vector<std::string> others;
                    for (int j = 0; j < n; ++j)
                        if (j != i) others.push_back(p.agents[j]);
                    for (int lev = 0; lev < k; ++lev) {
                        std::vector<std::string> pool;
                        std::set<std::size_t> used;
                        std::size_t sz = 1 + rng.uniform_index(std::min<std::size_t>(4, others.size()));
                        while (pool.size() < sz) {
                            std::size_t j = rng.uniform_index(others.size());
                            if (used.insert(j).second) pool.push_back(others[j]);
                        }
                        b.levels.push_back(preference_level::delegation(random_formula(pool, rng)));
                    }
                } else {
                    // Distinct identity targets keep the ballot valid; the
                    // first target prefers another delegator to seed cycles.
                    std::vector<std::string> chosen;
                    for (int lev = 0; lev < k; ++lev) {
                        const auto& base =
                            (lev == 0 && delegators.size() > 1) ? delegators : p.agents;
                        std::string t;
                        do {
                            t = base[rng.uniform_index(base.size())];
                        } while (t == p.agents[i] ||
                                 std::find(chosen.begin(), chosen.end(), t) != chosen.end());
                        chosen.push_back(t);
                        b.levels.push_back(
                            preference_level::delegation(delegation_function::identity(t)));
                    }
                }
            }
            std::string backup;
            if (delegates[i] && language == language_tag::liquid_star)
                backup = abstain;
            else if (language == language_tag::liquid && delegates[i])
                backup = p.domain.alternatives[rng.uniform_index(3)];
            else
                backup = rng.uniform_index(2) == 0 ? "0" : "1";
            b.levels.push_back(preference_level::direct(backup));
            if (validate_ballot(b, p.agents[i]).empty()) break;
        }
        p.ballots.push_back(std::move(b));
    }
    return p;
}

}  // namespace unravel
