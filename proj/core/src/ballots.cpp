#include "unravel/ballots.hpp"

#include <algorithm>

namespace unravel {

bool domain::contains(const std::string& alt) const {
    return std::find(alternatives.begin(), alternatives.end(), alt) != alternatives.end();
}

bool domain::is_binary01() const {
    return alternatives.size() == 2 && contains("0") && contains("1");
}

int domain::index_of(const std::string& alt) const {
    auto it = std::find(alternatives.begin(), alternatives.end(), alt);
    return it == alternatives.end() ? -1 : static_cast<int>(it - alternatives.begin());
}

delegation_function delegation_function::identity(std::string of) {
    delegation_function f;
    f.fn_ = std::move(of);
    return f;
}

delegation_function delegation_function::formula(dnf::complete_dnf d) {
    delegation_function f;
    f.fn_ = std::move(d);
    return f;
}

std::vector<std::string> delegation_function::variables() const {
    if (is_identity()) return {delegate()};
    return dnf_formula().variables();
}

bool delegation_function::equivalent_to(const delegation_function& other) const {
    if (is_identity() && other.is_identity()) return delegate() == other.delegate();
    // An atom is the identity function on that agent's vote.
    auto as_dnf = [](const delegation_function& f) {
        return f.is_identity() ? dnf::complete_dnf::parse(f.delegate()) : f.dnf_formula();
    };
    return as_dnf(*this).equivalent(as_dnf(other));
}

preference_level preference_level::direct(std::string vote) {
    preference_level l;
    l.level_ = std::move(vote);
    return l;
}

preference_level preference_level::delegation(delegation_function f) {
    preference_level l;
    l.level_ = std::move(f);
    return l;
}

int profile::index_of(const std::string& agent) const {
    auto it = std::find(agents.begin(), agents.end(), agent);
    return it == agents.end() ? -1 : static_cast<int>(it - agents.begin());
}

void profile::check_structure() const {
    if (agents.empty()) throw invalid_profile_error("profile has no agents");
    if (domain.alternatives.empty()) throw invalid_profile_error("empty domain");
    if (ballots.size() != agents.size())
        throw invalid_profile_error("ballot count does not match agent count");
    if (domain.allows_abstention() !=
        (std::count(domain.alternatives.begin(), domain.alternatives.end(), abstain) == 1))
        throw invalid_profile_error("duplicate abstention symbol in domain");

    for (int a = 0; a < size(); ++a) {
        const auto& b = ballots[a];
        if (b.levels.empty())
            throw invalid_profile_error("agent '" + agents[a] + "' has an empty ballot");
        for (size_t h = 0; h < b.levels.size(); ++h) {
            const auto& lev = b.levels[h];
            bool last = h + 1 == b.levels.size();
            if (lev.is_direct()) {
                if (!last)
                    throw invalid_profile_error("agent '" + agents[a] +
                                                "': direct vote before the final level");
                if (!domain.contains(lev.vote()))
                    throw invalid_profile_error("agent '" + agents[a] + "': vote '" + lev.vote() +
                                                "' not in the domain");
            } else {
                if (last)
                    throw invalid_profile_error("agent '" + agents[a] +
                                                "': ballot does not end in a direct vote");
                if (!lev.function().is_identity() && !domain.is_binary01())
                    throw invalid_profile_error("agent '" + agents[a] +
                                                "': DNF delegation on a non-binary domain");
                for (const auto& d : lev.function().variables())
                    if (index_of(d) < 0)
                        throw invalid_profile_error("agent '" + agents[a] +
                                                    "': unknown delegate '" + d + "'");
            }
        }
    }
}

std::vector<violation> validate_ballot(const smart_ballot& b, const std::string& owner) {
    std::vector<violation> out;
    int k = b.delegation_count();
    for (int s = 0; s < k; ++s) {
        const auto& fs = b.levels[s].function();
        auto vars_s = fs.variables();
        if (std::find(vars_s.begin(), vars_s.end(), owner) != vars_s.end())
            out.push_back({violation::kind::self_delegation, s + 1, 0,
                           "level " + std::to_string(s + 1) + " delegates to the ballot's owner"});
        for (int t = s + 1; t < k; ++t) {
            const auto& ft = b.levels[t].function();
            auto vars_t = ft.variables();
            bool share = std::any_of(vars_s.begin(), vars_s.end(), [&](const std::string& v) {
                return std::find(vars_t.begin(), vars_t.end(), v) != vars_t.end();
            });
            if (share && fs.equivalent_to(ft))
                out.push_back({violation::kind::repeated_delegation, s + 1, t + 1,
                               "levels " + std::to_string(s + 1) + " and " + std::to_string(t + 1) +
                                   " carry equivalent delegations"});
        }
    }
    return out;
}

std::map<std::string, std::vector<violation>> validate_profile(const profile& p) {
    p.check_structure();
    std::map<std::string, std::vector<violation>> out;
    for (int a = 0; a < p.size(); ++a) {
        auto v = validate_ballot(p.ballots[a], p.agents[a]);
        if (!v.empty()) out.emplace(p.agents[a], std::move(v));
    }
    return out;
}

language_info classify_language(const profile& p) {
    language_info info;
    info.in_bool = p.domain.is_binary01();
    info.in_liquid = true;
    info.in_liquid_star = true;
    for (const auto& b : p.ballots) {
        info.max_delegation_count = std::max(info.max_delegation_count, b.delegation_count());
        for (const auto& lev : b.levels) {
            if (lev.is_direct()) continue;
            if (!lev.function().is_identity()) {
                info.in_liquid = false;
                info.in_liquid_star = false;
            }
        }
        // Liquid* constrains the backup of delegating ballots; pure direct
        // voters keep their vote.
        if (b.delegation_count() > 0 && b.levels.back().vote() != abstain)
            info.in_liquid_star = false;
    }
    info.in_liquid_star = info.in_liquid_star && info.in_liquid;
    return info;
}

}  // namespace unravel
