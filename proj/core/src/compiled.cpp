#include "unravel/detail/compiled.hpp"

#include <algorithm>

namespace unravel::detail {

int compiled_profile::max_pref_level() const {
    size_t m = 1;
    for (const auto& b : ballots) m = std::max(m, b.size());
    return static_cast<int>(m);
}

int compiled_profile::max_formula_len() const {
    int m = 1;
    for (const auto& b : ballots)
        for (const auto& lev : b) m = std::max(m, lev.literal_count);
    return m;
}

compiled_profile compile(const profile& p) {
    p.check_structure();
    compiled_profile cp;
    cp.n = p.size();
    cp.n_alts = static_cast<int>(p.domain.alternatives.size());
    cp.alt_false = p.domain.index_of("0");
    cp.alt_true = p.domain.index_of("1");
    cp.ballots.resize(cp.n);
    for (int a = 0; a < cp.n; ++a) {
        for (const auto& lev : p.ballots[a].levels) {
            compiled_level cl;
            if (lev.is_direct()) {
                cl.what = compiled_level::kind::direct;
                cl.vote = p.domain.index_of(lev.vote());
                cl.literal_count = 1;
            } else if (lev.function().is_identity()) {
                cl.what = compiled_level::kind::identity;
                cl.delegate = p.index_of(lev.function().delegate());
                cl.vars = {cl.delegate};
                cl.literal_count = 1;
            } else {
                cl.what = compiled_level::kind::formula;
                for (const auto& c : lev.function().dnf_formula().cubes()) {
                    std::vector<compiled_literal> cc;
                    for (const auto& l : c.literals) {
                        cc.push_back({p.index_of(l.agent), l.positive});
                        ++cl.literal_count;
                    }
                    cl.cubes.push_back(std::move(cc));
                }
                for (const auto& v : lev.function().dnf_formula().variables())
                    cl.vars.push_back(p.index_of(v));
            }
            cp.ballots[a].push_back(std::move(cl));
        }
    }
    return cp;
}

int eval_level(const compiled_profile& cp, const compiled_level& lev,
               const std::vector<int>& votes, long* steps) {
    switch (lev.what) {
        case compiled_level::kind::direct:
            return lev.vote;
        case compiled_level::kind::identity:
            if (steps) ++*steps;
            return votes[lev.delegate];
        case compiled_level::kind::formula: {
            bool all_cubes_false = true;
            for (const auto& c : lev.cubes) {
                bool cube_true = true;
                bool cube_false = false;
                for (const auto& l : c) {
                    if (steps) ++*steps;
                    int v = votes[l.agent];
                    if (v == -1) {
                        cube_true = false;
                    } else if ((v == cp.alt_true) != l.positive) {
                        cube_true = false;
                        cube_false = true;
                        break;
                    }
                }
                if (cube_true) return cp.alt_true;
                if (!cube_false) all_cubes_false = false;
            }
            return all_cubes_false ? cp.alt_false : -1;
        }
    }
    return -1;
}

bool resolve(const compiled_profile& cp, const std::vector<int>& levels, std::vector<int>& votes) {
    votes.assign(cp.n, -1);
    int determined = 0;
    bool progress = true;
    while (progress && determined < cp.n) {
        progress = false;
        for (int a = 0; a < cp.n; ++a) {
            if (votes[a] >= 0) continue;
            int v = eval_level(cp, cp.ballots[a][levels[a] - 1], votes);
            if (v >= 0) {
                votes[a] = v;
                ++determined;
                progress = true;
            }
        }
    }
    return determined == cp.n;
}

}  // namespace unravel::detail
