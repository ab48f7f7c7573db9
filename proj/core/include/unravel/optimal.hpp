#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "unravel/ballots.hpp"
#include "unravel/certificates.hpp"

namespace unravel {

struct optimal_result {
    std::vector<certificate> certificates;  // sorted
    std::vector<outcome_vector> outcomes;   // sorted, deduplicated
    int objective = 0;                      // min rank or min max level
};

/// Is there a consistent certificate with rank(c) <= M? Returns a verified
/// witness or nullopt. Exact branch-and-bound, desk scale.
std::optional<certificate> bounded_minsum(const profile& p, int M);

/// All rank-minimal consistent certificates with their outcomes.
optimal_result minsum_exact(const profile& p);

/// Is there a consistent certificate with max_level(c) <= M?
std::optional<certificate> bounded_minmax(const profile& p, int M);

/// Least feasible bound M*, plus every consistent certificate with max level
/// M* (with first_only, just one witness). Throws cap_exceeded_error when the
/// tied set grows past the cap.
optimal_result minmax_exact(const profile& p, std::uint64_t cap = 1'000'000,
                            bool first_only = false);

/// Delegation graph of a Liquid profile: agents plus a root r; edge (j,i)
/// weighted by the level at which i delegates to j; edge (r,i) weighted by the
/// level of i's direct vote.
struct weighted_digraph {
    struct edge {
        int from;
        int to;
        int weight;
        auto operator<=>(const edge&) const = default;
    };
    std::vector<std::string> node_names;  // agents in canonical order, then "r"
    int root = -1;
    std::vector<edge> edges;
};

weighted_digraph build_delegation_graph(const profile& p);  // throws not_liquid_error

struct arborescence {
    // node -> (parent, weight); every non-root node has exactly one entry
    std::map<int, std::pair<int, int>> parent;

    int total_weight() const;
    bool has_edge(int from, int to) const;
};

/// Minimum-weight spanning arborescence by the contract/expand algorithm with
/// reweighting w(e_uv_C) = w(e_uv) - w(e_wv). Ties break on (weight, source,
/// input order), so the result is deterministic.
arborescence edmonds_arborescence(const weighted_digraph& g);  // throws unreachable_node_error

struct liquid_result {
    certificate cert;
    outcome_vector outcome;
    arborescence tree;
    weighted_digraph graph;
    int objective = 0;   // rank for minsum, max level for minmax
    int stop_level = 0;  // minmax: first level at which all agents are reachable
};

/// One MinSum-optimal unravelling of a Liquid profile, read off a minimum
/// arborescence of the delegation graph.
liquid_result minsum_liquid(const profile& p);

/// MinMax on Liquid profiles: add edges level by level until every agent is reachable
/// from r, then read a depth-first spanning tree off the accumulated graph.
liquid_result minmax_liquid(const profile& p);

/// Graphviz rendering of the delegation graph, for visual inspection.
std::string to_dot(const weighted_digraph& g);

}  // namespace unravel
