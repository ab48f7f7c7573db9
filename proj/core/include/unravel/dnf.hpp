#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "unravel/errors.hpp"

namespace unravel::dnf {

/// A propositional variable (an agent identifier) or its negation.
struct literal {
    std::string agent;
    bool positive = true;

    auto operator<=>(const literal&) const = default;
};

/// Conjunction of literals over distinct agents. Kept sorted, agent-lexicographic
/// with positive before negative.
struct cube {
    std::vector<literal> literals;

    cube() = default;
    explicit cube(std::vector<literal> lits);

    bool contains(const literal& l) const;
    /// Subset relation on literal sets: this subsumes (absorbs) `other`.
    bool subsumes(const cube& other) const;
    bool empty() const { return literals.empty(); }

    auto operator<=>(const cube&) const = default;
};

enum class tri { false0, true1, undetermined };

/// Partial truth assignment over agent variables; absent keys are unassigned.
using partial_assignment = std::map<std::string, bool>;

/// A contingent Boolean function stored as its exact set of prime implicants.
///
/// The only construction paths run the consensus closure, so every instance
/// satisfies the invariant by construction.
class complete_dnf {
public:
    /// Canonicalize an arbitrary contingent DNF to its complete form (all and
    /// only prime implicants), via consensus + absorption.
    /// Throws tautology_error / contradiction_error on non-contingent input.
    static complete_dnf complete(std::vector<cube> cubes);

    /// Parse the textual syntax: cubes joined by `|`, literals by `&`,
    /// negation prefix `~` (e.g. "b&c | b&d"). Result is canonicalized.
    static complete_dnf parse(const std::string& expr);

    const std::vector<cube>& cubes() const { return cubes_; }
    const std::vector<std::string>& variables() const { return variables_; }

    bool equivalent(const complete_dnf& other) const { return cubes_ == other.cubes_; }
    bool operator==(const complete_dnf& other) const { return cubes_ == other.cubes_; }

    std::string to_string() const;

private:
    complete_dnf() = default;
    std::vector<cube> cubes_;       // sorted, canonical
    std::vector<std::string> variables_;  // sorted union of cube agents
};

/// Necessary-winner evaluation on a partial assignment: true1 iff some cube is
/// fully satisfied, false0 iff every cube has a falsified literal.
tri necessary_winner(const complete_dnf& f, const partial_assignment& x);

}  // namespace unravel::dnf
