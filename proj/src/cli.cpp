#include "setcalc/cli.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "setcalc/decider.hpp"
#include "setcalc/structures.hpp"

namespace setcalc::cli {

namespace {

using Json = nlohmann::ordered_json;

int report_error(const Error& e, const std::string& input, std::ostream& err) {
    err << "error: " << e.what() << "\n";
    if (const auto* se = dynamic_cast<const SyntaxError*>(&e)) {
        err << "  " << input << "\n  " << std::string(se->position(), ' ') << "^\n";
    }
    return kUsage;
}

bool show_coords(const std::vector<Var>& vars) {
    for (const auto& v : vars) {
        if (v.coord > 1) return true;
    }
    return false;
}

bool show_coords(const Identity& id, const Pattern& pt) {
    if (id.goal.lhs->arity() > 1) return true;
    for (const auto& [v, bit] : pt) {
        if (v.coord > 1) return true;
    }
    return false;
}

std::string pattern_text(const Pattern& pt, bool coords) {
    std::string out;
    for (const auto& [v, bit] : pt) {
        if (!out.empty()) out += ' ';
        out += to_string(v, coords) + "=" + (bit ? "1" : "0");
    }
    return out.empty() ? "(no variables)" : out;
}

Json value_json(const SetValue& v) {
    if (const auto* s = std::get_if<ConcreteSet>(&v)) return s->labels();
    const auto& t = std::get<TupleSet>(v);
    Json arr = Json::array();
    for (const auto& tuple : t.members) {
        Json row = Json::array();
        for (auto i : tuple) row.push_back(t.universe->label(i));
        arr.push_back(row);
    }
    return arr;
}

void write_witness_text(const Witness& w, std::ostream& out) {
    out << "universe:";
    for (const auto& p : w.universe->points()) out << ' ' << p;
    out << "\n";
    for (const auto& [name, set] : w.assignment) out << name << " = " << to_string(set) << "\n";
    out << "lhs = " << to_string(w.lhs_value) << "\n";
    out << "rhs = " << to_string(w.rhs_value) << "\n";
}

const char* verdict_word(const Verdict& v) {
    if (!v.valid()) return "invalid";
    return v.vacuous ? "vacuous" : "valid";
}

Json verdict_json(const Identity& id, const Verdict& v) {
    Json j;
    j["statement"] = to_string(Statement(id));
    j["verdict"] = verdict_word(v);
    if (v.pattern) {
        const bool coords = show_coords(id, *v.pattern);
        Json p = Json::object();
        for (const auto& [var, bit] : *v.pattern) p[to_string(var, coords)] = bit ? 1 : 0;
        j["pattern"] = p;
    } else {
        j["pattern"] = nullptr;
    }
    if (v.witness) {
        Json sets = Json::object();
        for (const auto& [name, set] : v.witness->assignment) sets[name] = set.labels();
        j["witness"] = {{"universe", v.witness->universe->points()}, {"sets", sets}};
        j["lhs_value"] = value_json(v.witness->lhs_value);
        j["rhs_value"] = value_json(v.witness->rhs_value);
    } else {
        j["witness"] = nullptr;
        j["lhs_value"] = nullptr;
        j["rhs_value"] = nullptr;
    }
    return j;
}

std::string row_label(const std::vector<Var>& params, std::size_t k) {
    if (params.empty()) return "(no parameters)";
    std::string out;
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (i) out += ' ';
        out += params[i].set + "=" + ((k >> i & 1) ? "1" : "0");
    }
    return out;
}

std::string unknown_vector(std::uint32_t bits, std::size_t m) {
    std::string out = "(";
    for (std::size_t j = 0; j < m; ++j) {
        if (j) out += ",";
        out += (bits >> j & 1) ? "1" : "0";
    }
    return out + ")";
}

std::string joined_solution(const SolutionTable& t, bool exprs) {
    std::string out;
    for (std::size_t j = 0; j < t.unknowns.size(); ++j) {
        if (j) out += "; ";
        out += t.unknowns[j] + " = " + (exprs ? to_string(t.solution_exprs[j]) : to_string(t.solution_polys[j]));
    }
    return out;
}

Expectation parse_expectation(const std::string& word, std::size_t line) {
    static const std::map<std::string, Expectation> words = {
        {"valid", Expectation::valid},         {"invalid", Expectation::invalid},
        {"vacuous", Expectation::vacuous},     {"solvable", Expectation::solvable},
        {"unsolvable", Expectation::unsolvable}, {"report", Expectation::report},
    };
    const auto it = words.find(word);
    if (it == words.end()) throw CorpusFormatError(line, "unknown expectation '" + word + "'");
    return it->second;
}

std::string expectation_word(Expectation e) {
    switch (e) {
    case Expectation::valid: return "valid";
    case Expectation::invalid: return "invalid";
    case Expectation::vacuous: return "vacuous";
    case Expectation::solvable: return "solvable";
    case Expectation::unsolvable: return "unsolvable";
    case Expectation::report: return "report";
    }
    return "?";
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<StructureReport> run_suite(const std::string& suite, const Options& opt) {
    const UniverseRef u = make_universe(opt.universe_size);
    if (suite == "monoid-union") return {check_monoid(MonoidOp::unite, u)};
    if (suite == "monoid-intersect") return {check_monoid(MonoidOp::intersect, u)};
    if (suite == "group") return {check_group_symdiff(u)};
    if (suite == "boolean-ring") return {check_boolean_ring(u)};
    if (suite == "isomorphism") return {check_isomorphism(u)};
    if (suite == "metric") return {check_metric_space(u, opt.seed)};
    if (suite == "all") {
        return {check_monoid(MonoidOp::unite, u), check_monoid(MonoidOp::intersect, u), check_group_symdiff(u),
                check_boolean_ring(u), check_isomorphism(u), check_metric_space(u, opt.seed)};
    }
    if (suite == "maps") {
        std::vector<StructureReport> out;
        for (const auto& spec : standard_map_specs()) out.push_back(map_property_scan(spec, u));
        return out;
    }
    if (suite == "distinct-unions") {
        StructureReport r;
        r.structure = "distinct-unions";
        r.universe_size = u->size();
        const auto found = find_distinct_equal_triple_unions(u);
        std::string text = "none";
        if (found) {
            text.clear();
            const char* names[] = {"A", "B", "C", "D"};
            for (std::size_t i = 0; i < 4; ++i) {
                if (i) text += ", ";
                text += std::string(names[i]) + " = " + to_string((*found)[i]);
            }
        }
        r.extras.push_back({"pairwise distinct sets with equal triple unions", text});
        return {r};
    }
    throw StatementError("unknown suite '" + suite +
                         "' (monoid-union, monoid-intersect, group, boolean-ring, isomorphism, metric, all, maps, "
                         "distinct-unions)");
}

} // namespace

std::vector<CorpusEntry> parse_corpus(std::istream& in) {
    std::vector<CorpusEntry> out;
    std::set<std::string> ids;
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        const std::string text = trim(raw);
        if (text.empty()) continue;
        if (text.front() != '[') throw CorpusFormatError(line, "expected '[id]'");
        const auto close = text.find(']');
        if (close == std::string::npos || close == 1) throw CorpusFormatError(line, "expected '[id]'");
        std::string id = text.substr(1, close - 1);
        if (!ids.insert(id).second) throw CorpusFormatError(line, "duplicate id '" + id + "'");
        const auto sep = text.rfind("::");
        if (sep == std::string::npos || sep < close) throw CorpusFormatError(line, "expected ':: expect <verdict>'");
        std::istringstream tail(text.substr(sep + 2));
        std::string keyword, word, extra;
        tail >> keyword >> word;
        if (keyword != "expect" || word.empty() || (tail >> extra)) {
            throw CorpusFormatError(line, "expected ':: expect <verdict>'");
        }
        const Expectation expectation = parse_expectation(word, line);
        Statement stmt;
        try {
            stmt = parse(text.substr(close + 1, sep - close - 1));
        } catch (const Error& e) {
            throw CorpusFormatError(line, e.what());
        }
        const bool is_solve = std::holds_alternative<SolveRequest>(stmt);
        const bool solve_word = expectation == Expectation::solvable || expectation == Expectation::unsolvable;
        if (expectation != Expectation::report && is_solve != solve_word) {
            throw CorpusFormatError(line, "expectation '" + word + "' does not fit the statement kind");
        }
        out.push_back({std::move(id), std::move(stmt), expectation, line});
    }
    return out;
}

int cmd_check(const std::string& text, const Options& opt, std::ostream& out, std::ostream& err) {
    try {
        const Statement stmt = parse(text);
        const auto* id = std::get_if<Identity>(&stmt);
        if (!id) {
            err << "error: 'check' expects an identity; use 'solve' for equation systems\n";
            return kUsage;
        }
        const Verdict v = decide(*id, opt.guard);
        if (opt.json) {
            out << verdict_json(*id, v).dump() << "\n";
        } else {
            out << "statement: " << to_string(stmt) << "\n";
            out << "verdict: " << verdict_word(v) << "\n";
            if (v.pattern) out << "pattern: " << pattern_text(*v.pattern, show_coords(*id, *v.pattern)) << "\n";
            if (opt.witness && v.witness) write_witness_text(*v.witness, out);
        }
        return v.valid() ? kOk : kFailed;
    } catch (const Error& e) {
        return report_error(e, text, err);
    }
}

int cmd_normalize(const std::string& text, const Options& opt, std::ostream& out, std::ostream& err) {
    try {
        const ExprPtr e = parse_expr(text);
        const Poly p = poly_from_expr(e, opt.guard);
        const bool coords = e->arity() > 1 || show_coords(p.variables());
        if (opt.json) {
            Json j;
            j["expression"] = to_string(e);
            j["arity"] = e->arity();
            j["polynomial"] = to_string(p, coords);
            out << j.dump() << "\n";
        } else {
            out << to_string(p, coords) << "\n";
        }
        return kOk;
    } catch (const Error& e) {
        return report_error(e, text, err);
    }
}

int cmd_solve(const std::string& text, const Options& opt, std::ostream& out, std::ostream& err) {
    try {
        const Statement stmt = parse(text);
        const auto* req = std::get_if<SolveRequest>(&stmt);
        if (!req) {
            err << "error: 'solve' expects 'solve <unknowns> : <equations>'\n";
            return kUsage;
        }
        const SolutionTable t = solve(*req, opt.guard);
        const std::size_t m = t.unknowns.size();
        std::string unknown_list;
        for (std::size_t j = 0; j < m; ++j) unknown_list += (j ? "," : "") + t.unknowns[j];
        if (opt.json) {
            Json j;
            j["statement"] = to_string(stmt);
            Json params = Json::array();
            for (const auto& p : t.parameters) params.push_back(p.set);
            j["parameters"] = params;
            j["unknowns"] = t.unknowns;
            Json rows = Json::array();
            for (std::size_t k = 0; k < t.rows.size(); ++k) {
                Json allowed = Json::array();
                for (auto bits : t.rows[k]) {
                    Json assignment = Json::object();
                    for (std::size_t u = 0; u < m; ++u) assignment[t.unknowns[u]] = (bits >> u & 1) ? 1 : 0;
                    allowed.push_back(assignment);
                }
                Json pattern = Json::object();
                for (std::size_t i = 0; i < t.parameters.size(); ++i) pattern[t.parameters[i].set] = (k >> i & 1) ? 1 : 0;
                rows.push_back({{"parameters", pattern}, {"allowed", allowed}});
            }
            j["rows"] = rows;
            j["solvable"] = t.solvable();
            j["unique"] = t.unique();
            if (t.unique()) {
                Json sol = Json::object();
                for (std::size_t u = 0; u < m; ++u) {
                    sol[t.unknowns[u]] = {{"expression", to_string(t.solution_exprs[u])},
                                          {"indicator", to_string(t.solution_polys[u])}};
                }
                j["solution"] = sol;
            }
            out << j.dump() << "\n";
        } else {
            out << "parameters:";
            for (const auto& p : t.parameters) out << ' ' << p.set;
            out << "\nunknowns: " << unknown_list << "\n";
            for (std::size_t k = 0; k < t.rows.size(); ++k) {
                out << row_label(t.parameters, k) << " : (" << unknown_list << ") in {";
                for (std::size_t i = 0; i < t.rows[k].size(); ++i) out << (i ? ", " : "") << unknown_vector(t.rows[k][i], m);
                out << "}\n";
            }
            if (!t.solvable()) {
                out << "unsolvable\n";
            } else if (t.unique()) {
                out << joined_solution(t, true) << "\n";
                out << "indicator: " << joined_solution(t, false) << "\n";
            } else {
                out << "solvable, not unique\n";
            }
        }
        return t.solvable() ? kOk : kFailed;
    } catch (const Error& e) {
        return report_error(e, text, err);
    }
}

int cmd_structures(const std::string& suite, const Options& opt, std::ostream& out, std::ostream& err) {
    try {
        const auto reports = run_suite(suite, opt);
        bool ok = true;
        if (opt.json) {
            Json arr = Json::array();
            for (const auto& r : reports) arr.push_back(Json::parse(render_json(r)));
            out << (arr.size() == 1 ? arr[0] : arr).dump(2) << "\n";
        }
        for (std::size_t i = 0; i < reports.size(); ++i) {
            ok = ok && reports[i].passed();
            if (opt.json) continue;
            if (i) out << "\n";
            out << render_text(reports[i]);
        }
        return ok ? kOk : kFailed;
    } catch (const Error& e) {
        return report_error(e, suite, err);
    }
}

int cmd_corpus(std::istream& in, const Options& opt, std::ostream& out, std::ostream& err) {
    std::vector<CorpusEntry> entries;
    try {
        entries = parse_corpus(in);
    } catch (const CorpusFormatError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    std::size_t passed = 0, failed = 0;
    Json results = Json::array();
    for (const auto& entry : entries) {
        std::string got;
        std::string detail;
        try {
            if (const auto* id = std::get_if<Identity>(&entry.statement)) {
                const Verdict v = decide(*id, opt.guard);
                got = verdict_word(v);
                if (v.pattern) detail = "pattern " + pattern_text(*v.pattern, show_coords(*id, *v.pattern));
            } else {
                const SolutionTable t = solve(std::get<SolveRequest>(entry.statement), opt.guard);
                got = t.solvable() ? "solvable" : "unsolvable";
                if (t.unique()) detail = joined_solution(t, true);
            }
        } catch (const Error& e) {
            got = "error";
            detail = e.what();
        }
        const std::string expected = expectation_word(entry.expectation);
        const bool ok = entry.expectation == Expectation::report ? got != "error" : got == expected;
        ok ? ++passed : ++failed;
        if (opt.json) {
            results.push_back({{"id", entry.id}, {"expected", expected}, {"got", got}, {"pass", ok}});
            continue;
        }
        out << (ok ? "PASS" : "FAIL") << " [" << entry.id << "] ";
        if (ok) {
            out << got;
        } else {
            out << "expected " << expected << ", got " << got;
        }
        if (!detail.empty()) out << " (" << detail << ")";
        out << "\n";
    }
    if (opt.json) {
        out << Json{{"entries", results}, {"passed", passed}, {"failed", failed}}.dump(2) << "\n";
    } else {
        out << passed << " passed, " << failed << " failed\n";
    }
    return failed == 0 ? kOk : kFailed;
}

int cmd_corpus(const std::string& path, const Options& opt, std::ostream& out, std::ostream& err) {
    std::ifstream in(path);
    if (!in) {
        err << "error: cannot open corpus file '" << path << "'\n";
        return kUsage;
    }
    return cmd_corpus(in, opt, out, err);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"setcalc: decide set identities through indicator polynomials"};
    app.require_subcommand(1);
    Options opt;
    app.add_flag("--json", opt.json, "Emit JSON");
    app.add_flag("--witness", opt.witness, "Print a concrete counterexample for invalid identities");
    app.add_option("--guard", opt.guard, "Maximum number of membership variables")->check(CLI::Range(0, 62));
    app.add_option("--seed", opt.seed, "Seed for sampled checks");
    app.add_option("-k,--universe-size", opt.universe_size, "Universe size for structure suites");

    std::string text;
    auto* check = app.add_subcommand("check", "Decide an identity or conditional identity");
    check->add_option("statement", text, "e.g. \"A & B = 0 |- A ^ B = A | B\"")->required();
    auto* normalize = app.add_subcommand("normalize", "Print the indicator polynomial of an expression");
    normalize->add_option("expression", text)->required();
    auto* solve_cmd = app.add_subcommand("solve", "Solve a system of set equations");
    solve_cmd->add_option("statement", text, "e.g. \"solve X : A ^ X = B\"")->required();
    auto* structures = app.add_subcommand("structures", "Run an algebraic-structure suite over P(E)");
    structures->add_option("suite", text)->required();
    auto* corpus = app.add_subcommand("corpus", "Run every entry of a corpus file");
    corpus->add_option("path", text)->required();
    for (auto* sub : {check, normalize, solve_cmd, structures, corpus}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (check->parsed()) return cmd_check(text, opt, out, err);
        if (normalize->parsed()) return cmd_normalize(text, opt, out, err);
        if (solve_cmd->parsed()) {
            // Accept the system with or without the leading keyword.
            const std::string t = trim(text);
            const bool keyword = t.rfind("solve", 0) == 0 && t.size() > 5 && std::isspace(static_cast<unsigned char>(t[5]));
            return cmd_solve(keyword ? t : "solve " + t, opt, out, err);
        }
        if (structures->parsed()) return cmd_structures(text, opt, out, err);
        return cmd_corpus(text, opt, out, err);
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kUsage;
    }
}

} // namespace setcalc::cli
