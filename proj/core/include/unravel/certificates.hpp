#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "unravel/ballots.hpp"

namespace unravel {

/// Per-agent 1-based preference levels, aligned with the profile's agent order.
struct certificate {
    std::vector<int> levels;

    bool operator==(const certificate&) const = default;
    auto operator<=>(const certificate&) const = default;
};

/// Per-agent direct votes (alternative symbols), aligned with the agent order.
struct outcome_vector {
    std::vector<std::string> votes;

    bool operator==(const outcome_vector&) const = default;
    auto operator<=>(const outcome_vector&) const = default;
};

struct consistency_witness {
    std::vector<int> ordering;  // agent indices, in determination order
    outcome_vector outcome;
};

struct consistency_result {
    bool consistent = false;
    consistency_witness witness;     // filled when consistent
    std::vector<int> stuck_agents;   // filled when inconsistent
};

/// Decide consistency by the monotone fixpoint over the determined set,
/// scanning agents in canonical order each round. Throws bounds_error if the
/// certificate is out of the ballots' level ranges.
consistency_result check_consistent(const profile& p, const certificate& c);

/// The unique outcome of a consistent certificate.
/// Throws inconsistent_certificate_error otherwise.
outcome_vector outcome_of(const profile& p, const certificate& c);

int rank(const certificate& c);
int max_level(const certificate& c);

/// Ground-truth oracle: every consistent certificate with its outcome, in
/// mixed-radix order over per-agent levels. Throws cap_exceeded_error when the
/// product of ballot lengths exceeds the cap.
std::vector<std::pair<certificate, outcome_vector>> enumerate_consistent(
    const profile& p, std::uint64_t cap = 1'000'000);

}  // namespace unravel
