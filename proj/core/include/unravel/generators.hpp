#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "unravel/ballots.hpp"

namespace unravel {

/// Feedback-vertex-set instance: vertices 0..n-1, directed edges, budget k.
struct digraph_instance {
    int vertices = 0;
    std::vector<std::pair<int, int>> edges;
    int k = 0;
};

/// CNF formula: clauses of nonzero literals, negative for negated variables.
struct cnf_instance {
    std::vector<std::vector<int>> clauses;
};

/// FVS -> BoundedMinSum. Vertex i becomes agent "v<i+1>" with ballot
/// (conjunction of out-neighbours) > 1; sinks vote 1 directly. Returns the
/// profile and M = |V| + k. Self-loops throw self_loop_error unless
/// normalize_self_loops inserts the dummy-vertex gadget.
std::pair<profile, int> fvs_to_profile(const digraph_instance& g,
                                       bool normalize_self_loops = false);

/// CNF-Sat -> BoundedMinMax over agents {x, y} + clause agents + variable
/// agents; satisfiable iff bounded_minmax(profile, 2). Returns M = 2.
/// A tautological clause keeps only its identity delegation.
std::pair<profile, int> cnfsat_to_profile(const cnf_instance& phi);

enum class language_tag { liquid, liquid_star, boolean };

language_tag parse_language_tag(const std::string& name);  // "liquid" | "liquid*" | "bool"

/// Seeded random valid profile in the requested language. cycle_bias in [0,1]
/// tunes how many agents delegate at level 1 (and hence cycle density).
profile random_profile(int n, language_tag language, int max_levels, double cycle_bias,
                       std::uint64_t seed);

}  // namespace unravel
