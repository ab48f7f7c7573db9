#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "unravel/dnf.hpp"
#include "unravel/errors.hpp"

namespace unravel {

/// Symbol for an abstention in domains that allow it.
inline const std::string abstain = "*";

/// The finite set of alternatives for the issue, in declaration order.
struct domain {
    std::vector<std::string> alternatives;

    bool contains(const std::string& alt) const;
    bool allows_abstention() const { return contains(abstain); }
    /// Exactly the two-element Boolean domain {0,1}, required for DNF delegations.
    bool is_binary01() const;
    int index_of(const std::string& alt) const;  // -1 if absent
};

/// A resolute delegation function: either copy one agent's vote or evaluate a
/// complete-DNF Boolean formula of other agents' votes.
class delegation_function {
public:
    static delegation_function identity(std::string of);
    static delegation_function formula(dnf::complete_dnf f);

    bool is_identity() const { return std::holds_alternative<std::string>(fn_); }
    const std::string& delegate() const { return std::get<std::string>(fn_); }
    const dnf::complete_dnf& dnf_formula() const { return std::get<dnf::complete_dnf>(fn_); }

    /// The delegate set S: variables referenced by the function.
    std::vector<std::string> variables() const;

    /// Semantic equivalence; an identity delegation to b equals the atom `b`.
    bool equivalent_to(const delegation_function& other) const;

private:
    delegation_function() = default;
    std::variant<std::string, dnf::complete_dnf> fn_;
};

/// One entry of a smart ballot's ranking: a delegation or the backup direct vote.
class preference_level {
public:
    static preference_level direct(std::string vote);
    static preference_level delegation(delegation_function f);

    bool is_direct() const { return std::holds_alternative<std::string>(level_); }
    const std::string& vote() const { return std::get<std::string>(level_); }
    const delegation_function& function() const { return std::get<delegation_function>(level_); }

private:
    preference_level() = default;
    std::variant<std::string, delegation_function> level_;
};

/// Ranked delegations ending in a mandatory direct backup vote.
struct smart_ballot {
    std::vector<preference_level> levels;

    int delegation_count() const { return static_cast<int>(levels.size()) - 1; }
};

struct profile {
    struct domain domain;
    std::vector<std::string> agents;       // canonical order
    std::vector<smart_ballot> ballots;     // aligned with agents

    int size() const { return static_cast<int>(agents.size()); }
    int index_of(const std::string& agent) const;  // -1 if absent

    /// Structural well-formedness: every delegate declared, every vote in the
    /// domain, direct votes only as the final level, DNF only on {0,1}.
    /// Throws invalid_profile_error. The validity conditions on repeated and
    /// self-delegations are checked separately by validate_profile.
    void check_structure() const;
};

struct violation {
    enum class kind { repeated_delegation, self_delegation };
    kind what;
    int level_s = 0;  // 1-based; for repeated_delegation also level_t
    int level_t = 0;
    std::string message;
};

/// Ballot validity: no equivalent delegation repeated over a shared delegate
/// (condition i), no self-delegation (condition ii).
std::vector<violation> validate_ballot(const smart_ballot& b, const std::string& owner);

/// Empty map means the profile is valid.
std::map<std::string, std::vector<violation>> validate_profile(const profile& p);

struct language_info {
    bool in_bool = false;
    bool in_liquid = false;
    bool in_liquid_star = false;
    int max_delegation_count = 0;
};

language_info classify_language(const profile& p);

}  // namespace unravel
