#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "unravel/ballots.hpp"
#include "unravel/certificates.hpp"

namespace unravel {

enum class update_kind { u, du, ru, dru };

update_kind parse_update_kind(const std::string& name);  // "u" | "du" | "ru" | "dru"
std::string to_string(update_kind k);

/// Deterministic pseudorandom source; identical seeds reproduce identical runs
/// on every platform (the index draw avoids std::uniform_int_distribution,
/// whose output is implementation-defined).
class random_state {
public:
    explicit random_state(std::uint64_t seed) : gen_(seed) {}

    /// Uniform draw from {0, ..., n-1} by rejection sampling.
    std::size_t uniform_index(std::size_t n);

private:
    std::mt19937_64 gen_;
};

struct trace_event {
    int agent;      // index into the profile's agent order
    int level;      // lev at the moment of assignment
    bool computed;  // false for a direct vote, true for a necessary winner
};

struct greedy_result {
    outcome_vector outcome;
    certificate cert;
    std::vector<trace_event> trace;
    long step_count = 0;  // one unit per (agent, level) inspection or literal scan
};

/// Unravel the profile with the chosen update procedure. lev resets to 1 after
/// every change to X; U and DU ignore the random state.
/// Throws invalid_profile_error if the profile is structurally broken or a
/// full level sweep makes no progress (impossible on valid profiles).
greedy_result unravel(const profile& p, update_kind kind, random_state& rng);
greedy_result unravel(const profile& p, update_kind kind, std::uint64_t seed = 0);

struct branch_result {
    outcome_vector outcome;
    certificate cert;
    std::uint64_t branch_count = 0;  // leaf executions reaching this pair
};

/// Exhaustive expansion of every uniform random choice point of RU or DRU.
/// Results are sorted by certificate then outcome. Throws cap_exceeded_error
/// when the number of distinct intermediate states passes the cap.
std::vector<branch_result> enumerate_random_branches(const profile& p, update_kind kind,
                                                     std::uint64_t cap = 1'000'000);

/// Termination budget: step_count <= C * n^2 * max_p * max_phi with C = 4,
/// where max_p is the longest ballot and max_phi the largest formula.
bool step_bound_check(const profile& p, const greedy_result& result);

}  // namespace unravel
