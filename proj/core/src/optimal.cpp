#include "unravel/optimal.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <tuple>

#include "unravel/detail/compiled.hpp"
#include "unravel/greedy.hpp"

namespace unravel {

namespace {

// Optimistic completability check for a partial level assignment (0 marks an
// unassigned agent, free to use any level up to level_cap when that is set).
// Computes a least fixpoint of per-agent possible-value sets; an agent is
// reachable if some allowed level could ever evaluate. Over-approximates, so a
// negative answer soundly prunes the subtree.
bool possibly_completable(const detail::compiled_profile& cp, const std::vector<int>& levels,
                          int level_cap) {
    std::vector<char> reach(cp.n, 0);
    std::vector<std::vector<char>> poss(cp.n, std::vector<char>(cp.n_alts, 0));

    auto allowed = [&](int a) -> std::pair<int, int> {  // [lo, hi] 1-based
        if (levels[a] > 0) return {levels[a], levels[a]};
        int hi = static_cast<int>(cp.ballots[a].size());
        if (level_cap > 0) hi = std::min(hi, level_cap);
        return {1, hi};
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (int a = 0; a < cp.n; ++a) {
            auto [lo, hi] = allowed(a);
            for (int lev = lo; lev <= hi; ++lev) {
                const auto& l = cp.ballots[a][lev - 1];
                switch (l.what) {
                    case detail::compiled_level::kind::direct:
                        if (!reach[a] || !poss[a][l.vote]) {
                            reach[a] = poss[a][l.vote] = 1;
                            changed = true;
                        }
                        break;
                    case detail::compiled_level::kind::identity:
                        if (reach[l.delegate]) {
                            if (!reach[a]) reach[a] = changed = true;
                            for (int v = 0; v < cp.n_alts; ++v)
                                if (poss[l.delegate][v] && !poss[a][v])
                                    poss[a][v] = changed = true;
                        }
                        break;
                    case detail::compiled_level::kind::formula: {
                        auto lit_can_be = [&](const detail::compiled_literal& t, bool val) {
                            int want = (t.positive == val) ? cp.alt_true : cp.alt_false;
                            return reach[t.agent] && poss[t.agent][want];
                        };
                        bool can1 = false;
                        for (const auto& c : l.cubes) {
                            bool all = true;
                            for (const auto& t : c) all = all && lit_can_be(t, true);
                            if (all) {
                                can1 = true;
                                break;
                            }
                        }
                        bool can0 = true;
                        for (const auto& c : l.cubes) {
                            bool falsifiable = false;
                            for (const auto& t : c) falsifiable = falsifiable || lit_can_be(t, false);
                            can0 = can0 && falsifiable;
                        }
                        if (can1 && (!reach[a] || !poss[a][cp.alt_true]))
                            reach[a] = poss[a][cp.alt_true] = changed = 1;
                        if (can0 && (!reach[a] || !poss[a][cp.alt_false]))
                            reach[a] = poss[a][cp.alt_false] = changed = 1;
                        break;
                    }
                }
            }
        }
    }
    return std::all_of(reach.begin(), reach.end(), [](char r) { return r != 0; });
}

// Depth-first exact search over per-agent levels. Leaves are checked by the
// deterministic fixpoint; interior nodes are pruned by the rank budget, the
// level cap, and the optimistic completability test.
class dfs_solver {
public:
    dfs_solver(const detail::compiled_profile& cp, int level_cap, long rank_budget,
               bool track_min_rank, bool first_only, std::uint64_t set_cap)
        : cp_(cp),
          level_cap_(level_cap),
          budget_(rank_budget),
          track_min_(track_min_rank),
          first_only_(first_only),
          set_cap_(set_cap),
          levels_(cp.n, 0) {}

    void run() { dfs(0, 0); }

    std::vector<certificate>& found() { return found_; }
    long best_rank() const { return best_; }

private:
    bool dfs(int i, long partial) {
        long floor = partial + (cp_.n - i);  // each open agent costs at least 1
        if (track_min_ && floor > best_) return false;
        if (budget_ >= 0 && floor > budget_) return false;
        if (i == cp_.n) {
            std::vector<int> votes;
            if (detail::resolve(cp_, levels_, votes)) {
                if (track_min_) {
                    if (partial < best_) {
                        best_ = partial;
                        found_.clear();
                    }
                    if (partial == best_) found_.push_back(certificate{levels_});
                } else {
                    found_.push_back(certificate{levels_});
                    if (found_.size() > set_cap_)
                        throw cap_exceeded_error("tied certificate set exceeds cap", found_.size());
                    if (first_only_) return true;
                }
            }
            return false;
        }
        if (!possibly_completable(cp_, levels_, level_cap_)) return false;
        int hi = static_cast<int>(cp_.ballots[i].size());
        if (level_cap_ > 0) hi = std::min(hi, level_cap_);
        for (int lev = 1; lev <= hi; ++lev) {
            levels_[i] = lev;
            if (dfs(i + 1, partial + lev)) {
                levels_[i] = 0;
                return true;
            }
        }
        levels_[i] = 0;
        return false;
    }

    const detail::compiled_profile& cp_;
    int level_cap_;
    long budget_;
    bool track_min_;
    bool first_only_;
    std::uint64_t set_cap_;
    std::vector<int> levels_;
    std::vector<certificate> found_;
    long best_ = std::numeric_limits<long>::max();
};

std::vector<outcome_vector> outcomes_of(const profile& p, const std::vector<certificate>& certs) {
    std::vector<outcome_vector> out;
    for (const auto& c : certs) out.push_back(outcome_of(p, c));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

std::optional<certificate> bounded_minsum(const profile& p, int M) {
    auto cp = detail::compile(p);
    dfs_solver s(cp, 0, M, false, true, 1);
    s.run();
    if (s.found().empty()) return std::nullopt;
    return s.found().front();
}

optimal_result minsum_exact(const profile& p) {
    auto cp = detail::compile(p);
    // A greedy run provides a consistent incumbent to seed the bound.
    long incumbent = rank(unravel(p, update_kind::u).cert);
    dfs_solver s(cp, 0, incumbent, true, false, 0);
    s.run();
    optimal_result res;
    res.certificates = std::move(s.found());
    std::sort(res.certificates.begin(), res.certificates.end());
    res.objective = static_cast<int>(s.best_rank());
    res.outcomes = outcomes_of(p, res.certificates);
    return res;
}

std::optional<certificate> bounded_minmax(const profile& p, int M) {
    auto cp = detail::compile(p);
    if (M < 1) return std::nullopt;
    dfs_solver s(cp, M, -1, false, true, 1);
    s.run();
    if (s.found().empty()) return std::nullopt;
    return s.found().front();
}

optimal_result minmax_exact(const profile& p, std::uint64_t cap, bool first_only) {
    auto cp = detail::compile(p);
    int max_p = cp.max_pref_level();
    optimal_result res;
    for (int m = 1; m <= max_p; ++m) {
        auto witness = bounded_minmax(p, m);
        if (!witness) continue;
        res.objective = m;
        if (first_only) {
            res.certificates.push_back(std::move(*witness));
        } else {
            dfs_solver s(cp, m, -1, false, false, cap);
            s.run();
            res.certificates = std::move(s.found());
            std::sort(res.certificates.begin(), res.certificates.end());
        }
        res.outcomes = outcomes_of(p, res.certificates);
        return res;
    }
    throw invalid_profile_error("no consistent certificate at any level bound");
}

weighted_digraph build_delegation_graph(const profile& p) {
    if (!classify_language(p).in_liquid)
        throw not_liquid_error("delegation graph requires a Liquid profile");
    auto cp = detail::compile(p);
    weighted_digraph g;
    g.node_names = p.agents;
    g.node_names.push_back("r");
    g.root = cp.n;
    for (int i = 0; i < cp.n; ++i)
        for (int k = 0; k < static_cast<int>(cp.ballots[i].size()); ++k) {
            const auto& lev = cp.ballots[i][k];
            int from = lev.what == detail::compiled_level::kind::direct ? g.root : lev.delegate;
            g.edges.push_back({from, i, k + 1});
        }
    return g;
}

int arborescence::total_weight() const {
    int w = 0;
    for (const auto& [node, in] : parent) w += in.second;
    return w;
}

bool arborescence::has_edge(int from, int to) const {
    auto it = parent.find(to);
    return it != parent.end() && it->second.first == from;
}

namespace {

struct raw_edge {
    int u;
    int v;
    long w;
    int parent_idx;  // index into the caller's edge list
};

// One contraction step per recursion: pick the cheapest in-edge of every
// non-root node; if the picks are acyclic they form the arborescence,
// otherwise contract one cycle with the reweighting w - w(chosen in-edge) and
// recurse. Returns, per node, the index of its in-edge (-1 at the root).
std::vector<int> edmonds_rec(int n, int root, const std::vector<raw_edge>& edges) {
    std::vector<int> best(n, -1);
    for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
        const auto& e = edges[i];
        if (e.v == root || e.u == e.v) continue;
        if (best[e.v] < 0 || std::tie(e.w, e.u, i) <
                                 std::tie(edges[best[e.v]].w, edges[best[e.v]].u, best[e.v]))
            best[e.v] = i;
    }
    for (int v = 0; v < n; ++v)
        if (v != root && best[v] < 0) throw unreachable_node_error("node has no incoming edge");

    // Chase best-parent pointers to find a cycle.
    std::vector<int> mark(n, -1);
    std::vector<int> cycle;
    for (int start = 0; start < n && cycle.empty(); ++start) {
        int v = start;
        while (v != root && mark[v] < 0) {
            mark[v] = start;
            v = edges[best[v]].u;
        }
        if (v != root && mark[v] == start) {
            int x = v;
            do {
                cycle.push_back(x);
                x = edges[best[x]].u;
            } while (x != v);
        }
    }
    if (cycle.empty()) {
        best[root] = -1;
        return best;
    }

    std::vector<char> in_cycle(n, 0);
    for (int x : cycle) in_cycle[x] = 1;
    std::vector<int> remap(n, -1);
    int n2 = 0;
    for (int v = 0; v < n; ++v)
        if (!in_cycle[v]) remap[v] = n2++;
    int cnode = n2++;
    for (int x : cycle) remap[x] = cnode;

    std::vector<raw_edge> sub;
    for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
        const auto& e = edges[i];
        int u2 = remap[e.u], v2 = remap[e.v];
        if (u2 == v2) continue;
        long w2 = e.w - (in_cycle[e.v] ? edges[best[e.v]].w : 0);
        sub.push_back({u2, v2, w2, i});
    }

    auto chosen = edmonds_rec(n2, remap[root], sub);
    std::vector<int> result(n, -1);
    for (int v2 = 0; v2 < n2; ++v2) {
        if (chosen[v2] < 0) continue;
        int idx = sub[chosen[v2]].parent_idx;
        result[edges[idx].v] = idx;
    }
    // The edge entering the contracted node displaces exactly one in-cycle pick.
    for (int x : cycle)
        if (result[x] < 0) result[x] = best[x];
    return result;
}

}  // namespace

arborescence edmonds_arborescence(const weighted_digraph& g) {
    int n = static_cast<int>(g.node_names.size());
    std::vector<raw_edge> edges;
    edges.reserve(g.edges.size());
    for (int i = 0; i < static_cast<int>(g.edges.size()); ++i)
        edges.push_back({g.edges[i].from, g.edges[i].to, g.edges[i].weight, i});
    auto chosen = edmonds_rec(n, g.root, edges);
    arborescence a;
    for (int v = 0; v < n; ++v) {
        if (v == g.root) continue;
        const auto& e = g.edges[chosen[v]];
        a.parent[v] = {e.from, e.weight};
    }
    return a;
}

namespace {

certificate certificate_of_tree(const weighted_digraph& g, const arborescence& a) {
    certificate c;
    c.levels.resize(g.node_names.size() - 1);
    for (const auto& [node, in] : a.parent) c.levels[node] = in.second;
    return c;
}

}  // namespace

liquid_result minsum_liquid(const profile& p) {
    liquid_result res;
    res.graph = build_delegation_graph(p);
    res.tree = edmonds_arborescence(res.graph);
    res.cert = certificate_of_tree(res.graph, res.tree);
    res.outcome = outcome_of(p, res.cert);
    res.objective = res.tree.total_weight();
    return res;
}

liquid_result minmax_liquid(const profile& p) {
    liquid_result res;
    res.graph = build_delegation_graph(p);
    int n = static_cast<int>(res.graph.node_names.size());
    int max_w = 0;
    for (const auto& e : res.graph.edges) max_w = std::max(max_w, e.weight);

    for (int lev = 1; lev <= max_w; ++lev) {
        std::vector<std::vector<std::pair<int, int>>> adj(n);  // (to, weight)
        for (const auto& e : res.graph.edges)
            if (e.weight <= lev) adj[e.from].emplace_back(e.to, e.weight);
        for (auto& a : adj) std::sort(a.begin(), a.end());

        std::vector<char> seen(n, 0);
        arborescence tree;
        auto dfs = [&](auto&& self, int u) -> void {
            seen[u] = 1;
            for (auto [v, w] : adj[u])
                if (!seen[v]) {
                    tree.parent[v] = {u, w};
                    self(self, v);
                }
        };
        dfs(dfs, res.graph.root);
        if (std::count(seen.begin(), seen.end(), 1) == n) {
            res.tree = std::move(tree);
            res.stop_level = lev;
            res.objective = lev;
            res.cert = certificate_of_tree(res.graph, res.tree);
            res.outcome = outcome_of(p, res.cert);
            return res;
        }
    }
    throw unreachable_node_error("some agent is unreachable at every level");
}

std::string to_dot(const weighted_digraph& g) {
    std::ostringstream os;
    os << "digraph delegations {\n";
    os << "  rankdir=LR;\n";
    for (int v = 0; v < static_cast<int>(g.node_names.size()); ++v)
        os << "  n" << v << " [label=\"" << g.node_names[v] << "\""
           << (v == g.root ? ", shape=box" : "") << "];\n";
    for (const auto& e : g.edges)
        os << "  n" << e.from << " -> n" << e.to << " [label=\"" << e.weight << "\"];\n";
    os << "}\n";
    return os.str();
}

}  // namespace unravel
