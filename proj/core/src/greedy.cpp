#include "unravel/greedy.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <utility>

#include "unravel/detail/compiled.hpp"

namespace unravel {

update_kind parse_update_kind(const std::string& name) {
    if (name == "u") return update_kind::u;
    if (name == "du") return update_kind::du;
    if (name == "ru") return update_kind::ru;
    if (name == "dru") return update_kind::dru;
    throw parameter_error("unknown update procedure '" + name + "'");
}

std::string to_string(update_kind k) {
    switch (k) {
        case update_kind::u: return "u";
        case update_kind::du: return "du";
        case update_kind::ru: return "ru";
        case update_kind::dru: return "dru";
    }
    return "?";
}

std::size_t random_state::uniform_index(std::size_t n) {
    if (n == 0) throw parameter_error("uniform_index over an empty range");
    std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % n;
    std::uint64_t r;
    do {
        r = gen_();
    } while (r >= limit);
    return static_cast<std::size_t>(r % n);
}

namespace {

struct level_value {
    int vote;
    bool computed;
};

// Determinable value of agent a's lev-th preference against the frozen copy Y,
// or nullopt. One step per agent inspected plus eval_level's literal scans.
std::optional<level_value> value_at(const detail::compiled_profile& cp, int a, int lev,
                                    const std::vector<int>& y, long& steps) {
    ++steps;
    const auto& b = cp.ballots[a];
    if (lev > static_cast<int>(b.size())) return std::nullopt;
    const auto& l = b[lev - 1];
    if (l.what == detail::compiled_level::kind::direct) return level_value{l.vote, false};
    int v = detail::eval_level(cp, l, y, &steps);
    if (v < 0) return std::nullopt;
    return level_value{v, true};
}

struct assignment {
    int agent;
    level_value val;
};

// One Update(#) call at level lev. Returns the assignments it makes.
std::vector<assignment> update_pass(const detail::compiled_profile& cp, update_kind kind, int lev,
                                    const std::vector<int>& y, random_state& rng, long& steps) {
    std::vector<assignment> out;
    switch (kind) {
        case update_kind::u:
            for (int a = 0; a < cp.n; ++a) {
                if (y[a] >= 0) continue;
                if (auto v = value_at(cp, a, lev, y, steps)) out.push_back({a, *v});
            }
            break;
        case update_kind::du: {
            for (int a = 0; a < cp.n; ++a) {
                if (y[a] >= 0) continue;
                ++steps;
                const auto& b = cp.ballots[a];
                if (lev <= static_cast<int>(b.size()) &&
                    b[lev - 1].what == detail::compiled_level::kind::direct)
                    out.push_back({a, {b[lev - 1].vote, false}});
            }
            if (out.empty())
                for (int a = 0; a < cp.n; ++a) {
                    if (y[a] >= 0) continue;
                    if (auto v = value_at(cp, a, lev, y, steps))
                        if (v->computed) out.push_back({a, *v});
                }
            break;
        }
        case update_kind::ru: {
            std::vector<assignment> pool;
            for (int a = 0; a < cp.n; ++a) {
                if (y[a] >= 0) continue;
                if (auto v = value_at(cp, a, lev, y, steps)) pool.push_back({a, *v});
            }
            if (!pool.empty()) out.push_back(pool[rng.uniform_index(pool.size())]);
            break;
        }
        case update_kind::dru: {
            std::vector<assignment> direct, computable;
            for (int a = 0; a < cp.n; ++a) {
                if (y[a] >= 0) continue;
                if (auto v = value_at(cp, a, lev, y, steps))
                    (v->computed ? computable : direct).push_back({a, *v});
            }
            auto& pool = direct.empty() ? computable : direct;
            if (!pool.empty()) out.push_back(pool[rng.uniform_index(pool.size())]);
            break;
        }
    }
    return out;
}

}  // namespace

greedy_result unravel(const profile& p, update_kind kind, random_state& rng) {
    auto cp = detail::compile(p);
    greedy_result res;
    std::vector<int> x(cp.n, -1);
    res.cert.levels.assign(cp.n, 0);
    int max_p = cp.max_pref_level();
    int determined = 0;
    while (determined < cp.n) {
        int lev = 1;
        // Inner loop of the general procedure: advance lev until some vote is
        // added, then reset. Y is the frozen copy x at the last reset.
        for (;;) {
            auto added = update_pass(cp, kind, lev, x, rng, res.step_count);
            if (!added.empty()) {
                for (const auto& [a, v] : added) {
                    x[a] = v.vote;
                    res.cert.levels[a] = lev;
                    res.trace.push_back({a, lev, v.computed});
                    ++determined;
                }
                break;
            }
            if (++lev > max_p)
                throw invalid_profile_error(
                    "unravelling stalled: no vote becomes determinable at any level");
        }
    }
    res.outcome.votes.reserve(cp.n);
    for (int a = 0; a < cp.n; ++a) res.outcome.votes.push_back(p.domain.alternatives[x[a]]);
    return res;
}

greedy_result unravel(const profile& p, update_kind kind, std::uint64_t seed) {
    random_state rng(seed);
    return unravel(p, kind, rng);
}

std::vector<branch_result> enumerate_random_branches(const profile& p, update_kind kind,
                                                     std::uint64_t cap) {
    if (kind != update_kind::ru && kind != update_kind::dru)
        throw parameter_error("branch enumeration applies to ru and dru only");
    auto cp = detail::compile(p);
    int max_p = cp.max_pref_level();
    long steps = 0;

    // Every RU/DRU transition determines exactly one agent and resets lev, so
    // a run's future depends only on (votes, certificate). Deduplicating those
    // states and counting root-to-leaf paths with a per-layer DP keeps the
    // factorially many executions tractable.
    using state_key = std::pair<std::vector<int>, std::vector<int>>;
    std::vector<std::map<state_key, std::uint64_t>> layers(cp.n + 1);
    layers[0].emplace(state_key{std::vector<int>(cp.n, -1), std::vector<int>(cp.n, 0)}, 1);
    std::uint64_t total_states = 1;

    for (int k = 0; k < cp.n; ++k) {
        for (const auto& [key, paths] : layers[k]) {
            const auto& [votes, cert] = key;
            std::vector<assignment> pool;
            int lev = 1;
            while (lev <= max_p && pool.empty()) {
                if (kind == update_kind::ru) {
                    for (int a = 0; a < cp.n; ++a) {
                        if (votes[a] >= 0) continue;
                        if (auto v = value_at(cp, a, lev, votes, steps)) pool.push_back({a, *v});
                    }
                } else {
                    std::vector<assignment> direct, computable;
                    for (int a = 0; a < cp.n; ++a) {
                        if (votes[a] >= 0) continue;
                        if (auto v = value_at(cp, a, lev, votes, steps))
                            (v->computed ? computable : direct).push_back({a, *v});
                    }
                    pool = direct.empty() ? std::move(computable) : std::move(direct);
                }
                if (pool.empty()) ++lev;
            }
            if (pool.empty())
                throw invalid_profile_error(
                    "unravelling stalled: no vote becomes determinable at any level");
            for (const auto& [a, v] : pool) {
                auto child = key;
                child.first[a] = v.vote;
                child.second[a] = lev;
                auto [it, fresh] = layers[k + 1].emplace(std::move(child), 0);
                it->second += paths;
                if (fresh && ++total_states > cap)
                    throw cap_exceeded_error("branch state space exceeds cap", total_states);
            }
        }
        layers[k].clear();
    }

    std::vector<branch_result> out;
    out.reserve(layers[cp.n].size());
    for (const auto& [key, paths] : layers[cp.n]) {
        branch_result r;
        r.cert.levels = key.second;
        r.branch_count = paths;
        r.outcome.votes.reserve(cp.n);
        for (int v : key.first) r.outcome.votes.push_back(p.domain.alternatives[v]);
        out.push_back(std::move(r));
    }
    std::sort(out.begin(), out.end(), [](const branch_result& a, const branch_result& b) {
        return std::tie(a.cert, a.outcome) < std::tie(b.cert, b.outcome);
    });
    return out;
}

bool step_bound_check(const profile& p, const greedy_result& result) {
    auto cp = detail::compile(p);
    long n = cp.n;
    long bound = 4L * n * n * cp.max_pref_level() * cp.max_formula_len();
    return result.step_count <= bound;
}

}  // namespace unravel
