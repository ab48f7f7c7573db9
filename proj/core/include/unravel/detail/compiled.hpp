#pragma once

#include <vector>

#include "unravel/ballots.hpp"

namespace unravel::detail {

// Index-based view of a profile for the evaluation loops. Alternatives and
// agents become small integers; -1 marks the placeholder (no vote yet).

struct compiled_literal {
    int agent;
    bool positive;
};

struct compiled_level {
    enum class kind { direct, identity, formula };
    kind what;
    int vote = -1;      // direct: alternative index
    int delegate = -1;  // identity
    std::vector<std::vector<compiled_literal>> cubes;  // formula
    std::vector<int> vars;                             // delegate set S (any kind but direct)
    int literal_count = 0;                             // formula size, 1 for identity/direct
};

struct compiled_profile {
    int n = 0;
    int n_alts = 0;
    int alt_false = -1;  // index of "0" when present
    int alt_true = -1;   // index of "1" when present
    std::vector<std::vector<compiled_level>> ballots;

    int max_pref_level() const;
    int max_formula_len() const;
};

compiled_profile compile(const profile& p);

// Necessary-winner evaluation of one preference level against a partial vote
// vector (votes[a] == -1 for undetermined agents). Returns the alternative
// index or -1 if undetermined. `steps`, when given, accrues one unit per
// literal scanned.
int eval_level(const compiled_profile& cp, const compiled_level& lev,
               const std::vector<int>& votes, long* steps = nullptr);

// Deterministic fixpoint over the certified levels (1-based). Returns true and
// fills `votes` when the certificate is consistent.
bool resolve(const compiled_profile& cp, const std::vector<int>& levels, std::vector<int>& votes);

}  // namespace unravel::detail
