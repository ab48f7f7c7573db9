#include "unravel/profile_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace unravel {

namespace {

using nlohmann::json;

preference_level parse_level(const json& j) {
    if (j.contains("vote")) return preference_level::direct(j.at("vote").get<std::string>());
    if (!j.contains("delegates") || !j.contains("fn"))
        throw parse_error("ballot level needs either \"vote\" or \"delegates\"+\"fn\"");
    auto delegates = j.at("delegates").get<std::vector<std::string>>();
    const auto& fn = j.at("fn");
    auto kind = fn.at("kind").get<std::string>();
    delegation_function f = [&] {
        if (kind == "id") return delegation_function::identity(fn.at("of").get<std::string>());
        if (kind == "dnf")
            return delegation_function::formula(
                dnf::complete_dnf::parse(fn.at("expr").get<std::string>()));
        throw parse_error("unknown delegation kind '" + kind + "'");
    }();
    auto vars = f.variables();
    std::sort(delegates.begin(), delegates.end());
    std::sort(vars.begin(), vars.end());
    if (delegates != vars)
        throw parse_error("\"delegates\" does not match the function's variables");
    return preference_level::delegation(std::move(f));
}

json level_to_json(const preference_level& lev) {
    json j;
    if (lev.is_direct()) {
        j["vote"] = lev.vote();
        return j;
    }
    j["delegates"] = lev.function().variables();
    if (lev.function().is_identity())
        j["fn"] = {{"kind", "id"}, {"of", lev.function().delegate()}};
    else
        j["fn"] = {{"kind", "dnf"}, {"expr", lev.function().dnf_formula().to_string()}};
    return j;
}

}  // namespace

profile parse_profile(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_error(e.what());
    }
    try {
        profile p;
        p.domain.alternatives = j.at("domain").get<std::vector<std::string>>();
        p.agents = j.at("agents").get<std::vector<std::string>>();
        const auto& ballots = j.at("ballots");
        for (const auto& a : p.agents) {
            if (!ballots.contains(a)) throw parse_error("no ballot for agent '" + a + "'");
            smart_ballot b;
            for (const auto& lev : ballots.at(a)) b.levels.push_back(parse_level(lev));
            p.ballots.push_back(std::move(b));
        }
        if (ballots.size() != p.agents.size())
            throw parse_error("ballots listed for undeclared agents");
        p.check_structure();
        return p;
    } catch (const json::exception& e) {
        throw parse_error(e.what());
    }
}

profile load_profile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_profile(buf.str());
}

std::string serialize_profile(const profile& p, bool pretty) {
    json j;
    j["domain"] = p.domain.alternatives;
    j["agents"] = p.agents;
    json ballots = json::object();
    for (int a = 0; a < p.size(); ++a) {
        json levels = json::array();
        for (const auto& lev : p.ballots[a].levels) levels.push_back(level_to_json(lev));
        ballots[p.agents[a]] = std::move(levels);
    }
    j["ballots"] = std::move(ballots);
    return pretty ? j.dump(2) : j.dump();
}

void save_profile(const profile& p, const std::string& path, bool pretty) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot write '" + path + "'");
    out << serialize_profile(p, pretty) << "\n";
}

}  // namespace unravel
