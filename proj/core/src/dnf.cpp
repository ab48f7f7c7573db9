#include "unravel/dnf.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace unravel::dnf {

cube::cube(std::vector<literal> lits) : literals(std::move(lits)) {
    std::sort(literals.begin(), literals.end());
    literals.erase(std::unique(literals.begin(), literals.end()), literals.end());
    for (size_t i = 1; i < literals.size(); ++i) {
        if (literals[i].agent == literals[i - 1].agent)
            throw contradiction_error("contradictory cube: agent '" + literals[i].agent +
                                      "' occurs with both polarities");
    }
}

bool cube::contains(const literal& l) const {
    return std::binary_search(literals.begin(), literals.end(), l);
}

bool cube::subsumes(const cube& other) const {
    return std::includes(other.literals.begin(), other.literals.end(),
                         literals.begin(), literals.end());
}

namespace {

// Consensus of two cubes clashing on exactly one variable, if defined.
std::optional<cube> consensus(const cube& a, const cube& b) {
    const std::string* clash = nullptr;
    for (const auto& la : a.literals) {
        for (const auto& lb : b.literals) {
            if (la.agent == lb.agent && la.positive != lb.positive) {
                if (clash) return std::nullopt;  // two clashes: no consensus
                clash = &la.agent;
            }
        }
    }
    if (!clash) return std::nullopt;
    std::vector<literal> lits;
    for (const auto& l : a.literals)
        if (l.agent != *clash) lits.push_back(l);
    for (const auto& l : b.literals)
        if (l.agent != *clash) lits.push_back(l);
    return cube(std::move(lits));
}

// Drop cubes subsumed by another member of the set.
void absorb(std::set<cube>& cubes) {
    for (auto it = cubes.begin(); it != cubes.end();) {
        bool absorbed = false;
        for (const auto& other : cubes) {
            if (&other != &*it && other.subsumes(*it)) {
                absorbed = true;
                break;
            }
        }
        it = absorbed ? cubes.erase(it) : std::next(it);
    }
}

}  // namespace

complete_dnf complete_dnf::complete(std::vector<cube> input) {
    if (input.empty())
        throw contradiction_error("empty DNF denotes a contradiction, which is not contingent");

    std::set<cube> cubes(input.begin(), input.end());
    // Blake canonical form: iterate consensus + absorption to closure.
    bool changed = true;
    while (changed) {
        changed = false;
        absorb(cubes);
        std::vector<cube> snapshot(cubes.begin(), cubes.end());
        for (size_t i = 0; i < snapshot.size() && !changed; ++i) {
            for (size_t j = i + 1; j < snapshot.size() && !changed; ++j) {
                auto c = consensus(snapshot[i], snapshot[j]);
                if (!c) continue;
                if (c->empty())
                    throw tautology_error("DNF is a tautology, which is not contingent");
                bool absorbed = false;
                for (const auto& other : cubes)
                    if (other.subsumes(*c)) { absorbed = true; break; }
                if (!absorbed) {
                    cubes.insert(*c);
                    changed = true;
                }
            }
        }
    }

    complete_dnf f;
    f.cubes_.assign(cubes.begin(), cubes.end());
    std::set<std::string> vars;
    for (const auto& c : f.cubes_)
        for (const auto& l : c.literals) vars.insert(l.agent);
    f.variables_.assign(vars.begin(), vars.end());
    return f;
}

namespace {

struct token_stream {
    const std::string& s;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) { ++pos; return true; }
        return false;
    }
    bool done() {
        skip_ws();
        return pos == s.size();
    }
    literal parse_literal() {
        skip_ws();
        bool positive = !eat('~');
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        if (pos == start)
            throw parse_error("expected agent identifier at position " + std::to_string(pos) +
                              " in formula '" + s + "'");
        return literal{s.substr(start, pos - start), positive};
    }
};

}  // namespace

complete_dnf complete_dnf::parse(const std::string& expr) {
    token_stream ts{expr};
    std::vector<cube> cubes;
    do {
        std::vector<literal> lits;
        lits.push_back(ts.parse_literal());
        while (ts.eat('&')) lits.push_back(ts.parse_literal());
        cubes.push_back(cube(std::move(lits)));
    } while (ts.eat('|'));
    if (!ts.done())
        throw parse_error("unexpected character '" + std::string(1, ts.s[ts.pos]) +
                          "' in formula '" + expr + "'");
    return complete(std::move(cubes));
}

std::string complete_dnf::to_string() const {
    std::ostringstream out;
    for (size_t i = 0; i < cubes_.size(); ++i) {
        if (i) out << " | ";
        const auto& lits = cubes_[i].literals;
        for (size_t j = 0; j < lits.size(); ++j) {
            if (j) out << "&";
            if (!lits[j].positive) out << "~";
            out << lits[j].agent;
        }
    }
    return out.str();
}

tri necessary_winner(const complete_dnf& f, const partial_assignment& x) {
    bool all_cubes_false = true;
    for (const auto& c : f.cubes()) {
        bool cube_true = true;
        bool cube_false = false;
        for (const auto& l : c.literals) {
            auto it = x.find(l.agent);
            if (it == x.end()) {
                cube_true = false;
            } else if (it->second != l.positive) {
                cube_true = false;
                cube_false = true;
                break;
            }
        }
        if (cube_true) return tri::true1;
        if (!cube_false) all_cubes_false = false;
    }
    return all_cubes_false ? tri::false0 : tri::undetermined;
}

}  // namespace unravel::dnf
