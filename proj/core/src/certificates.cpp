#include "unravel/certificates.hpp"

#include <algorithm>

#include "unravel/detail/compiled.hpp"

namespace unravel {

namespace {

void check_bounds(const profile& p, const certificate& c) {
    if (static_cast<int>(c.levels.size()) != p.size())
        throw agent_mismatch_error("certificate length does not match agent count");
    for (int a = 0; a < p.size(); ++a) {
        int k = static_cast<int>(p.ballots[a].levels.size());
        if (c.levels[a] < 1 || c.levels[a] > k)
            throw bounds_error("certificate level for agent '" + p.agents[a] +
                               "' outside 1.." + std::to_string(k));
    }
}

consistency_result run_fixpoint(const profile& p, const detail::compiled_profile& cp,
                                const certificate& c) {
    consistency_result res;
    std::vector<int> votes(cp.n, -1);
    std::vector<bool> done(cp.n, false);
    int determined = 0;
    bool progress = true;
    while (progress && determined < cp.n) {
        progress = false;
        for (int a = 0; a < cp.n; ++a) {
            if (done[a]) continue;
            const auto& lev = cp.ballots[a][c.levels[a] - 1];
            int v = detail::eval_level(cp, lev, votes);
            if (v >= 0) {
                votes[a] = v;
                done[a] = true;
                ++determined;
                res.witness.ordering.push_back(a);
                progress = true;
            }
        }
    }
    if (determined == cp.n) {
        res.consistent = true;
        res.witness.outcome.votes.reserve(cp.n);
        for (int a = 0; a < cp.n; ++a)
            res.witness.outcome.votes.push_back(p.domain.alternatives[votes[a]]);
    } else {
        res.witness.ordering.clear();
        for (int a = 0; a < cp.n; ++a)
            if (!done[a]) res.stuck_agents.push_back(a);
    }
    return res;
}

}  // namespace

consistency_result check_consistent(const profile& p, const certificate& c) {
    check_bounds(p, c);
    return run_fixpoint(p, detail::compile(p), c);
}

outcome_vector outcome_of(const profile& p, const certificate& c) {
    auto res = check_consistent(p, c);
    if (!res.consistent)
        throw inconsistent_certificate_error("certificate admits no determination order");
    return std::move(res.witness.outcome);
}

int rank(const certificate& c) {
    int s = 0;
    for (int l : c.levels) s += l;
    return s;
}

int max_level(const certificate& c) {
    return c.levels.empty() ? 0 : *std::max_element(c.levels.begin(), c.levels.end());
}

std::vector<std::pair<certificate, outcome_vector>> enumerate_consistent(const profile& p,
                                                                         std::uint64_t cap) {
    auto cp = detail::compile(p);
    std::uint64_t total = 1;
    for (const auto& b : cp.ballots) {
        total *= b.size();
        if (total > cap) throw cap_exceeded_error("certificate space exceeds cap", total);
    }
    std::vector<std::pair<certificate, outcome_vector>> out;
    certificate c;
    c.levels.assign(cp.n, 1);
    for (std::uint64_t i = 0; i < total; ++i) {
        auto res = run_fixpoint(p, cp, c);
        if (res.consistent) out.emplace_back(c, std::move(res.witness.outcome));
        // Mixed-radix increment, least significant digit last.
        for (int a = cp.n - 1; a >= 0; --a) {
            if (c.levels[a] < static_cast<int>(cp.ballots[a].size())) {
                ++c.levels[a];
                break;
            }
            c.levels[a] = 1;
        }
    }
    return out;
}

}  // namespace unravel
