#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "unravel/analysis.hpp"
#include "unravel/ballots.hpp"
#include "unravel/certificates.hpp"
#include "unravel/errors.hpp"
#include "unravel/generators.hpp"
#include "unravel/greedy.hpp"
#include "unravel/optimal.hpp"
#include "unravel/profile_io.hpp"

using nlohmann::json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_validation = 1;
constexpr int exit_capability = 2;
constexpr int exit_resource_cap = 3;

std::uint64_t default_cap() {
    if (const char* env = std::getenv("UNRAVEL_ENUM_CAP")) {
        return std::strtoull(env, nullptr, 10);
    }
    return 1'000'000;
}

json certificate_json(const unravel::profile& p, const unravel::certificate& c) {
    json out = json::object();
    for (std::size_t i = 0; i < p.agents.size(); ++i) out[p.agents[i]] = c.levels[i];
    return out;
}

json outcome_json(const unravel::profile& p, const unravel::outcome_vector& x) {
    json out = json::object();
    for (std::size_t i = 0; i < p.agents.size(); ++i) out[p.agents[i]] = x.votes[i];
    return out;
}

std::string tuple_string(const std::vector<std::string>& parts) {
    std::string s = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) s += ",";
        s += parts[i];
    }
    return s + ")";
}

std::string cert_string(const unravel::certificate& c) {
    std::vector<std::string> parts;
    for (int lev : c.levels) parts.push_back(std::to_string(lev));
    return tuple_string(parts);
}

void emit(const json& report, bool pretty_json_off = false) {
    (void)pretty_json_off;
    std::cout << report.dump(2) << "\n";
}

struct run_options {
    std::string path;
    std::string procedure = "u";
    std::uint64_t seed = 0;
    std::uint64_t cap = default_cap();
    bool all_branches = false;
    bool trace = false;
    bool timing = false;
    bool pretty = false;
    bool first = false;
    int bound = -1;
    std::string rule;  // "", "maj", "rmaj"
    std::string dot_path;
};

class stopwatch {
public:
    stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        auto d = std::chrono::steady_clock::now() - start_;
        return std::chrono::duration<double, std::milli>(d).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

void attach_rule(json& report, const std::string& rule, const unravel::outcome_vector& x) {
    if (rule.empty()) return;
    report["rule"] = rule;
    report["rule_value"] = unravel::apply_rule(unravel::parse_voting_rule(rule), x);
}

json greedy_report(const unravel::profile& p, const run_options& opt) {
    unravel::update_kind kind = unravel::parse_update_kind(opt.procedure);
    json report;
    report["procedure"] = opt.procedure;
    if (opt.all_branches) {
        auto branches = unravel::enumerate_random_branches(p, kind, opt.cap);
        json rows = json::array();
        std::uint64_t total = 0;
        for (const auto& b : branches) {
            json row;
            row["outcome"] = outcome_json(p, b.outcome);
            row["certificate"] = certificate_json(p, b.cert);
            row["rank"] = unravel::rank(b.cert);
            row["max_level"] = unravel::max_level(b.cert);
            row["branch_count"] = b.branch_count;
            if (!opt.rule.empty()) {
                row["rule_value"] =
                    unravel::apply_rule(unravel::parse_voting_rule(opt.rule), b.outcome);
            }
            rows.push_back(row);
            total += b.branch_count;
        }
        report["branches"] = rows;
        report["branch_total"] = total;
        return report;
    }
    report["seed"] = opt.seed;
    auto result = unravel::unravel(p, kind, opt.seed);
    report["outcome"] = outcome_json(p, result.outcome);
    report["certificate"] = certificate_json(p, result.cert);
    report["rank"] = unravel::rank(result.cert);
    report["max_level"] = unravel::max_level(result.cert);
    report["step_count"] = result.step_count;
    attach_rule(report, opt.rule, result.outcome);
    if (opt.trace) {
        json events = json::array();
        for (const auto& ev : result.trace) {
            events.push_back({{"agent", p.agents[ev.agent]},
                              {"level", ev.level},
                              {"computed", ev.computed}});
        }
        report["trace"] = events;
    }
    return report;
}

json exact_report(const unravel::profile& p, const run_options& opt) {
    json report;
    report["procedure"] = opt.procedure;
    bool minmax = opt.procedure == "minmax";
    if (opt.bound >= 0) {
        auto witness = minmax ? unravel::bounded_minmax(p, opt.bound)
                              : unravel::bounded_minsum(p, opt.bound);
        report["bound"] = opt.bound;
        report["feasible"] = witness.has_value();
        if (witness) {
            report["certificate"] = certificate_json(p, *witness);
            report["outcome"] = outcome_json(p, unravel::outcome_of(p, *witness));
        }
        return report;
    }
    unravel::optimal_result result = minmax ? unravel::minmax_exact(p, opt.cap, opt.first)
                                            : unravel::minsum_exact(p);
    report["objective"] = result.objective;
    json certs = json::array();
    for (const auto& c : result.certificates) certs.push_back(certificate_json(p, c));
    report["certificates"] = certs;
    json outs = json::array();
    for (const auto& x : result.outcomes) outs.push_back(outcome_json(p, x));
    report["outcomes"] = outs;
    if (!opt.rule.empty() && result.outcomes.size() == 1) {
        attach_rule(report, opt.rule, result.outcomes.front());
    }
    return report;
}

json liquid_report(const unravel::profile& p, const run_options& opt) {
    bool minmax = opt.procedure == "minmax-liquid";
    unravel::liquid_result result = minmax ? unravel::minmax_liquid(p)
                                           : unravel::minsum_liquid(p);
    json report;
    report["procedure"] = opt.procedure;
    report["objective"] = result.objective;
    if (minmax) report["stop_level"] = result.stop_level;
    report["certificate"] = certificate_json(p, result.cert);
    report["outcome"] = outcome_json(p, result.outcome);
    report["rank"] = unravel::rank(result.cert);
    report["max_level"] = unravel::max_level(result.cert);
    json edges = json::array();
    for (const auto& [node, pw] : result.tree.parent) {
        edges.push_back({{"from", result.graph.node_names[pw.first]},
                         {"to", result.graph.node_names[node]},
                         {"weight", pw.second}});
    }
    report["tree"] = edges;
    attach_rule(report, opt.rule, result.outcome);
    if (!opt.dot_path.empty()) {
        std::ofstream out(opt.dot_path);
        out << unravel::to_dot(result.graph);
    }
    return report;
}

void print_pretty_unravel(const json& report) {
    std::cout << "procedure: " << report["procedure"].get<std::string>() << "\n";
    auto print_row = [](const json& row) {
        std::vector<std::string> outcome;
        std::vector<std::string> cert;
        for (const auto& [k, v] : row["outcome"].items()) {
            (void)k;
            outcome.push_back(v.get<std::string>());
        }
        for (const auto& [k, v] : row["certificate"].items()) {
            (void)k;
            cert.push_back(std::to_string(v.get<int>()));
        }
        std::cout << "  outcome " << tuple_string(outcome) << "  certificate "
                  << tuple_string(cert) << "  rank " << row["rank"].get<int>() << "  max "
                  << row["max_level"].get<int>() << "\n";
    };
    if (report.contains("branches")) {
        for (const auto& row : report["branches"]) print_row(row);
        std::cout << "branch total: " << report["branch_total"].get<std::uint64_t>() << "\n";
    } else if (report.contains("certificates")) {
        std::cout << "objective: " << report["objective"].get<int>() << "\n";
        std::cout << "certificates: " << report["certificates"].size() << "\n";
        for (const auto& c : report["certificates"]) {
            std::vector<std::string> cert;
            for (const auto& [k, v] : c.items()) {
                (void)k;
                cert.push_back(std::to_string(v.get<int>()));
            }
            std::cout << "  " << tuple_string(cert) << "\n";
        }
    } else if (report.contains("outcome")) {
        print_row(report);
    }
    if (report.contains("rule_value")) {
        std::cout << "rule value: " << report["rule_value"].get<std::string>() << "\n";
    }
}

int cmd_validate(const std::string& path, bool pretty) {
    unravel::profile p = unravel::load_profile(path);
    auto violations = unravel::validate_profile(p);
    auto info = unravel::classify_language(p);
    json report;
    report["valid"] = violations.empty();
    json vio = json::object();
    for (const auto& [agent, list] : violations) {
        json rows = json::array();
        for (const auto& v : list) {
            rows.push_back({{"kind", v.what == unravel::violation::kind::self_delegation
                                         ? "self_delegation"
                                         : "repeated_delegation"},
                            {"level_s", v.level_s},
                            {"level_t", v.level_t},
                            {"message", v.message}});
        }
        vio[agent] = rows;
    }
    report["violations"] = vio;
    json langs = json::array();
    if (info.in_bool) langs.push_back("Bool");
    if (info.in_liquid) langs.push_back("Liquid");
    if (info.in_liquid_star) langs.push_back("Liquid*");
    report["languages"] = langs;
    report["max_delegation_count"] = info.max_delegation_count;
    if (pretty) {
        std::cout << (violations.empty() ? "valid" : "invalid") << "\n";
        std::cout << "languages:";
        for (const auto& l : langs) std::cout << " " << l.get<std::string>();
        std::cout << "\n";
        for (const auto& [agent, list] : violations) {
            for (const auto& v : list) std::cout << "  " << agent << ": " << v.message << "\n";
        }
    } else {
        emit(report);
    }
    return violations.empty() ? exit_ok : exit_validation;
}

int cmd_unravel(const run_options& opt) {
    unravel::profile p = unravel::load_profile(opt.path);
    auto violations = unravel::validate_profile(p);
    if (!violations.empty()) {
        std::cerr << "invalid profile; run `validate` for diagnostics\n";
        return exit_validation;
    }
    stopwatch timer;
    json report;
    if (opt.procedure == "minsum" || opt.procedure == "minmax") {
        report = exact_report(p, opt);
    } else if (opt.procedure == "minsum-liquid" || opt.procedure == "minmax-liquid") {
        report = liquid_report(p, opt);
    } else {
        report = greedy_report(p, opt);
    }
    if (opt.timing) report["timing_ms"] = timer.ms();
    if (opt.pretty) {
        print_pretty_unravel(report);
    } else {
        emit(report);
    }
    return exit_ok;
}

int cmd_compare(const std::string& path, std::vector<std::string> procedures,
                std::uint64_t cap, bool pretty) {
    unravel::profile p = unravel::load_profile(path);
    if (!unravel::validate_profile(p).empty()) {
        std::cerr << "invalid profile; run `validate` for diagnostics\n";
        return exit_validation;
    }
    if (procedures.empty()) {
        procedures = {"u", "du", "ru", "dru", "minsum", "minmax"};
    }
    json table = json::array();
    for (const auto& proc : procedures) {
        auto add_row = [&](const unravel::outcome_vector& x, const unravel::certificate& c) {
            table.push_back({{"procedure", proc},
                             {"outcome", outcome_json(p, x)},
                             {"certificate", certificate_json(p, c)},
                             {"rank", unravel::rank(c)},
                             {"max_level", unravel::max_level(c)}});
        };
        if (proc == "u" || proc == "du") {
            auto r = unravel::unravel(p, unravel::parse_update_kind(proc));
            add_row(r.outcome, r.cert);
        } else if (proc == "ru" || proc == "dru") {
            for (const auto& b :
                 unravel::enumerate_random_branches(p, unravel::parse_update_kind(proc), cap)) {
                add_row(b.outcome, b.cert);
            }
        } else if (proc == "minsum" || proc == "minmax") {
            auto r = proc == "minsum" ? unravel::minsum_exact(p)
                                      : unravel::minmax_exact(p, cap);
            for (const auto& c : r.certificates) add_row(unravel::outcome_of(p, c), c);
            table.back()["objective"] = r.objective;
            table.back()["set_size"] = r.certificates.size();
        } else if (proc == "minsum-liquid" || proc == "minmax-liquid") {
            auto r = proc == "minsum-liquid" ? unravel::minsum_liquid(p)
                                             : unravel::minmax_liquid(p);
            add_row(r.outcome, r.cert);
        } else {
            throw unravel::parameter_error("unknown procedure: " + proc);
        }
    }
    if (pretty) {
        for (const auto& row : table) {
            std::vector<std::string> outcome;
            std::vector<std::string> cert;
            for (const auto& [k, v] : row["outcome"].items()) {
                (void)k;
                outcome.push_back(v.get<std::string>());
            }
            for (const auto& [k, v] : row["certificate"].items()) {
                (void)k;
                cert.push_back(std::to_string(v.get<int>()));
            }
            std::cout << row["procedure"].get<std::string>() << "\t"
                      << tuple_string(outcome) << "\t" << tuple_string(cert) << "\trank "
                      << row["rank"].get<int>() << "\tmax " << row["max_level"].get<int>()
                      << "\n";
        }
    } else {
        emit(json{{"rows", table}});
    }
    return exit_ok;
}

int cmd_axioms(const std::string& path, const std::string& axiom, const std::string& rule,
               const std::string& procedure, const std::string& agent, int max_delegations,
               bool pretty) {
    unravel::profile p = unravel::load_profile(path);
    if (!unravel::validate_profile(p).empty()) {
        std::cerr << "invalid profile; run `validate` for diagnostics\n";
        return exit_validation;
    }
    unravel::voting_rule r = unravel::parse_voting_rule(rule);
    unravel::update_kind kind = unravel::parse_update_kind(procedure);
    std::vector<std::string> agents =
        agent.empty() ? p.agents : std::vector<std::string>{agent};
    json report;
    report["axiom"] = axiom;
    report["rule"] = rule;
    report["procedure"] = procedure;
    report["holds"] = true;
    for (const auto& a : agents) {
        unravel::participation_result result;
        try {
            if (axiom == "cast") {
                unravel::ballot_space space;
                space.max_delegations = max_delegations;
                result = unravel::check_cast_participation(p, a, r, kind, space);
            } else if (axiom == "guru") {
                result = unravel::check_guru_participation(p, a, r, kind);
            } else {
                throw unravel::parameter_error("unknown axiom: " + axiom);
            }
        } catch (const unravel::parameter_error& e) {
            if (axiom != "cast" && axiom != "guru") throw;
            continue;  // agent does not satisfy the axiom's precondition
        }
        if (!result.holds) {
            report["holds"] = false;
            report["agent"] = a;
            report["original_value"] = result.original_value;
            report["improved_value"] = result.improved_value;
            if (!result.witness_agent.empty()) report["witness_agent"] = result.witness_agent;
            if (result.witness_ballot) {
                report["witness_ballot_levels"] =
                    static_cast<int>(result.witness_ballot->levels.size());
            }
            break;
        }
    }
    if (pretty) {
        if (report["holds"].get<bool>()) {
            std::cout << axiom << "-participation holds for all checked agents\n";
        } else {
            std::cout << axiom << "-participation counterexample for agent "
                      << report["agent"].get<std::string>() << ": "
                      << report["original_value"].get<std::string>() << " -> "
                      << report["improved_value"].get<std::string>() << "\n";
        }
    } else {
        emit(report);
    }
    return exit_ok;
}

int cmd_enumerate(const std::string& path, std::uint64_t cap, bool pretty) {
    unravel::profile p = unravel::load_profile(path);
    auto items = unravel::enumerate_consistent(p, cap);
    json rows = json::array();
    for (const auto& [c, x] : items) {
        rows.push_back({{"certificate", certificate_json(p, c)},
                        {"outcome", outcome_json(p, x)},
                        {"rank", unravel::rank(c)},
                        {"max_level", unravel::max_level(c)}});
    }
    if (pretty) {
        for (const auto& [c, x] : items) {
            std::cout << cert_string(c) << " -> " << tuple_string(x.votes) << "\n";
        }
        std::cout << "count: " << items.size() << "\n";
    } else {
        emit(json{{"count", items.size()}, {"items", rows}});
    }
    return exit_ok;
}

unravel::digraph_instance read_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw unravel::parse_error("cannot open " + path);
    unravel::digraph_instance g;
    std::string line;
    bool header = false;
    while (std::getline(in, line)) {
        std::istringstream row(line);
        std::string first;
        if (!(row >> first)) continue;
        if (first == "#" || first == "c") continue;
        if (!header) {
            g.vertices = std::stoi(first);
            row >> g.k;
            header = true;
            continue;
        }
        int u = std::stoi(first);
        int v = 0;
        if (!(row >> v)) throw unravel::parse_error("edge line needs two vertices: " + line);
        g.edges.emplace_back(u - 1, v - 1);  // file is 1-based
    }
    if (!header) throw unravel::parse_error("edge list needs a '<vertices> <k>' header line");
    return g;
}

unravel::cnf_instance read_clauses(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw unravel::parse_error("cannot open " + path);
    unravel::cnf_instance phi;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream row(line);
        std::string first;
        if (!(row >> first)) continue;
        if (first == "c" || first == "p" || first == "#") continue;
        std::vector<int> clause;
        int lit = std::stoi(first);
        while (lit != 0) {
            clause.push_back(lit);
            if (!(row >> lit)) break;
        }
        if (!clause.empty()) phi.clauses.push_back(clause);
    }
    return phi;
}

struct generate_options {
    std::string kind = "random";
    std::string input;
    std::string output;
    int n = 8;
    std::string language = "bool";
    int max_levels = 3;
    double cycle_bias = 0.5;
    std::uint64_t seed = 0;
    bool normalize_self_loops = false;
};

int cmd_generate(const generate_options& opt) {
    unravel::profile p;
    std::optional<int> bound;
    if (opt.kind == "fvs") {
        auto [prof, m] = unravel::fvs_to_profile(read_edge_list(opt.input),
                                                 opt.normalize_self_loops);
        p = std::move(prof);
        bound = m;
    } else if (opt.kind == "cnf") {
        auto [prof, m] = unravel::cnfsat_to_profile(read_clauses(opt.input));
        p = std::move(prof);
        bound = m;
    } else if (opt.kind == "random") {
        p = unravel::random_profile(opt.n, unravel::parse_language_tag(opt.language),
                                    opt.max_levels, opt.cycle_bias, opt.seed);
    } else {
        throw unravel::parameter_error("unknown generator kind: " + opt.kind);
    }
    if (bound) std::cerr << "bound M = " << *bound << "\n";
    if (opt.output.empty()) {
        std::cout << unravel::serialize_profile(p, true);
    } else {
        unravel::save_profile(p, opt.output);
    }
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Unravelling procedures for ranked-delegation voting profiles"};
    app.require_subcommand(1);

    bool pretty = false;
    app.add_flag("--pretty", pretty, "Human-readable tables instead of the JSON payload");

    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "Check ballot validity and language");
    validate->add_option("path", validate_path, "Profile file")->required();

    run_options run;
    auto* unravel_cmd = app.add_subcommand("unravel", "Unravel a profile");
    unravel_cmd->add_option("path", run.path, "Profile file")->required();
    unravel_cmd->add_option("--procedure", run.procedure,
                            "u|du|ru|dru|minsum|minmax|minsum-liquid|minmax-liquid");
    unravel_cmd->add_option("--seed", run.seed, "Seed for RU/DRU");
    unravel_cmd->add_option("--cap", run.cap, "Enumeration cap (default $UNRAVEL_ENUM_CAP)");
    unravel_cmd->add_flag("--all-branches", run.all_branches, "Enumerate every RU/DRU branch");
    unravel_cmd->add_flag("--trace", run.trace, "Emit the assignment event log");
    unravel_cmd->add_flag("--timing", run.timing, "Include wall-clock timing in the report");
    unravel_cmd->add_flag("--first", run.first, "MinMax: stop at one witness");
    unravel_cmd->add_option("--bound", run.bound, "Decide the bounded problem instead");
    unravel_cmd->add_option("--rule", run.rule, "Apply maj or rmaj to the outcome");
    unravel_cmd->add_option("--dot", run.dot_path, "Write the delegation graph as DOT");

    std::string compare_path;
    std::vector<std::string> compare_procs;
    std::uint64_t compare_cap = default_cap();
    auto* compare = app.add_subcommand("compare", "Run several procedures side by side");
    compare->add_option("path", compare_path, "Profile file")->required();
    compare->add_option("--procedures", compare_procs, "Procedures (default: all six)");
    compare->add_option("--cap", compare_cap, "Enumeration cap");

    std::string ax_path, ax_axiom, ax_rule = "rmaj", ax_proc = "u", ax_agent;
    int ax_max_delegations = 2;
    auto* axioms = app.add_subcommand("axioms", "Search for participation counterexamples");
    axioms->add_option("path", ax_path, "Profile file")->required();
    axioms->add_option("--axiom", ax_axiom, "cast|guru")->required();
    axioms->add_option("--rule", ax_rule, "maj|rmaj");
    axioms->add_option("--procedure", ax_proc, "u|du|ru|dru");
    axioms->add_option("--agent", ax_agent, "Restrict the search to one agent");
    axioms->add_option("--max-delegations", ax_max_delegations,
                       "Cast: longest alternative delegation chain tried");

    std::string enum_path;
    std::uint64_t enum_cap = default_cap();
    auto* enumerate = app.add_subcommand("enumerate", "Dump all consistent certificates");
    enumerate->add_option("path", enum_path, "Profile file")->required();
    enumerate->add_option("--cap", enum_cap, "Enumeration cap");

    generate_options gen;
    auto* generate = app.add_subcommand("generate", "Emit a profile file");
    generate->add_option("--kind", gen.kind, "fvs|cnf|random");
    generate->add_option("--input", gen.input, "Edge list (fvs) or clause file (cnf)");
    generate->add_option("-o,--output", gen.output, "Write the profile here");
    generate->add_option("--n", gen.n, "Random: number of agents");
    generate->add_option("--language", gen.language, "Random: liquid|liquid*|bool");
    generate->add_option("--max-levels", gen.max_levels, "Random: longest ballot");
    generate->add_option("--cycle-bias", gen.cycle_bias, "Random: delegation density in [0,1]");
    generate->add_option("--seed", gen.seed, "Random: seed");
    generate->add_flag("--normalize-self-loops", gen.normalize_self_loops,
                       "FVS: rewrite self-loops through a dummy vertex");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*validate) return cmd_validate(validate_path, pretty);
        if (*unravel_cmd) {
            run.pretty = pretty;
            return cmd_unravel(run);
        }
        if (*compare) return cmd_compare(compare_path, compare_procs, compare_cap, pretty);
        if (*axioms) {
            return cmd_axioms(ax_path, ax_axiom, ax_rule, ax_proc, ax_agent,
                              ax_max_delegations, pretty);
        }
        if (*enumerate) return cmd_enumerate(enum_path, enum_cap, pretty);
        if (*generate) return cmd_generate(gen);
    } catch (const unravel::cap_exceeded_error& e) {
        std::cerr << "resource cap exceeded: " << e.what() << "\n";
        return exit_resource_cap;
    } catch (const unravel::not_liquid_error& e) {
        std::cerr << "capability error: " << e.what() << "\n";
        return exit_capability;
    } catch (const unravel::unreachable_node_error& e) {
        std::cerr << "capability error: " << e.what() << "\n";
        return exit_capability;
    } catch (const unravel::domain_error& e) {
        std::cerr << "capability error: " << e.what() << "\n";
        return exit_capability;
    } catch (const unravel::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_validation;
    }
    return exit_ok;
}
