#include "hyperpdl/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "hyperpdl/criticality.hpp"
#include "hyperpdl/formula_automata.hpp"
#include "hyperpdl/kts.hpp"
#include "hyperpdl/marked_nfa.hpp"
#include "hyperpdl/model_checker.hpp"
#include "hyperpdl/omega.hpp"
#include "hyperpdl/oracle.hpp"
#include "hyperpdl/satisfiability.hpp"

namespace hyperpdl {

using json = nlohmann::json;

namespace {

class CliError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

std::vector<std::string> words(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string w;
    while (in >> w) out.push_back(w);
    return out;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

// "line L, column C" for an offset into content
std::string where(const std::string& content, std::size_t offset) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < content.size(); ++i) {
        if (content[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

struct LoadedFormula {
    FormulaFile file;
    std::string content;
    FormulaPtr f;
};

LoadedFormula load_formula(const std::string& path, const Signature* fixed, const std::vector<std::string>& free_vars,
                           const std::string& aps_flag = "", const std::string& programs_flag = "") {
    LoadedFormula lf;
    lf.content = read_file(path);
    lf.file = split_formula_file(lf.content);
    Signature sig = fixed ? *fixed : lf.file.sig;
    if (!fixed) {
        if (!aps_flag.empty()) sig.aps = split_list(aps_flag);
        if (!programs_flag.empty()) sig.programs = split_list(programs_flag);
    }
    lf.file.sig = sig;
    std::vector<std::string> vars = free_vars.empty() ? lf.file.paths : free_vars;
    try {
        lf.f = parse_formula(lf.file.text, sig, vars);
    } catch (const ParseError& e) {
        throw CliError(path + ": " + where(lf.content, lf.file.text_offset + e.position()) + ": " + e.what());
    }
    return lf;
}

Kts load_kts(const std::string& path, const std::string& format) {
    KtsFormat fmt = KtsFormat::Kts;
    if (format == "kripke") fmt = KtsFormat::Kripke;
    else if (format == "lts") fmt = KtsFormat::Lts;
    else if (format != "kts") throw CliError("unknown KTS format '" + format + "'");
    try {
        return parse_kts(read_file(path), fmt);
    } catch (const KtsError& e) {
        throw CliError(path + ": " + e.what());
    }
}

GuardMode guard_mode(const std::string& s) {
    if (s == "succinct") return GuardMode::Succinct;
    if (s == "explicit") return GuardMode::Explicit;
    throw CliError("unknown guard mode '" + s + "'");
}

json lasso_json(const std::string& name, const PathLasso& p, const Signature& sig, const Kts* kts) {
    auto world = [&](int w) {
        if (kts) return json(kts->state_names.at(w));
        json set = json::array();
        for (std::size_t a = 0; a < sig.aps.size(); ++a)
            if ((static_cast<std::uint64_t>(w) >> a) & 1) set.push_back(sig.aps[a]);
        return set;
    };
    json j;
    j["path"] = name;
    j["stem"] = json::array();
    j["period"] = json::array();
    for (const auto& s : p.stem) j["stem"].push_back({{"world", world(s.world)}, {"program", sig.programs.at(s.prog)}});
    for (const auto& s : p.period)
        j["period"].push_back({{"world", world(s.world)}, {"program", sig.programs.at(s.prog)}});
    j["text"] = print_lasso(name, p, sig, kts);
    return j;
}

json report(const std::string& command) {
    json j;
    j["schema"] = kReportSchema;
    j["command"] = command;
    j["sizes"] = json::array();
    j["timings"] = json::object();
    j["witnesses"] = json::array();
    j["warnings"] = json::array();
    return j;
}

struct Common {
    std::string config_path;
    bool as_json = false;
    CliConfig cfg;

    void load() {
        if (!config_path.empty()) cfg = parse_config(read_file(config_path));
    }
};

int cmd_check(const std::string& kts_path, const std::string& formula_path, const std::string& format,
              const std::string& mode, Common& c, std::ostream& out) {
    Kts kts = load_kts(kts_path, format);
    LoadedFormula lf = load_formula(formula_path, &kts.sig, {});
    CheckOptions opt;
    opt.guard_mode = guard_mode(mode.empty() ? c.cfg.guard_mode : mode);
    opt.not_delta_cap = c.cfg.not_delta_cap;
    opt.concurrent = c.cfg.concurrent;
    Verdict v;
    try {
        v = model_check(kts, lf.f, opt);
    } catch (const ModelCheckError& e) {
        throw CliError(e.what());
    }
    std::vector<CriticalQuantifier> listing;
    criticality(to_nnf(lf.f), listing);

    if (c.as_json) {
        json j = report("check");
        j["verdict"] = v.result;
        j["formula"] = print(*lf.f, kts.sig);
        j["criticality"] = v.criticality;
        j["subformulas"] = json::array();
        for (const auto& s : v.subformulas) {
            j["subformulas"].push_back({{"formula", s.formula},
                                        {"nonempty", s.nonempty},
                                        {"negated", s.negated},
                                        {"seconds", s.seconds}});
            for (const auto& z : s.sizes)
                j["sizes"].push_back({{"stage", z.stage}, {"detail", z.detail}, {"states", z.states}});
            if (s.witness) {
                json w = lasso_json("p1", *s.witness, kts.sig, &kts);
                w["subformula"] = s.formula;
                w["run"] = s.run;
                j["witnesses"].push_back(w);
            }
        }
        for (const auto& w : v.warnings) j["warnings"].push_back(w);
        j["timings"]["total_seconds"] = v.seconds;
        out << j.dump(2) << '\n';
    } else {
        out << "verdict: " << (v.result ? "true" : "false") << '\n';
        out << "criticality: " << v.criticality << '\n';
        for (const auto& q : listing) out << "  critical " << q.name << " at depth " << q.depth << ": " << q.reason << '\n';
        for (const auto& w : v.warnings) out << "warning: " << w << '\n';
        for (const auto& s : v.subformulas) {
            out << "subformula: " << s.formula << '\n';
            out << "  automaton " << (s.nonempty ? "nonempty" : "empty") << (s.negated ? " (negated)" : "") << ", "
                << s.seconds << " s\n";
            for (const auto& z : s.sizes) out << "  " << z.stage << ": " << z.states << " states  " << z.detail << '\n';
            if (s.witness) out << "  witness " << print_lasso("p1", *s.witness, kts.sig, &kts) << '\n';
        }
        out << "time: " << v.seconds << " s\n";
    }
    return v.result ? kExitHolds : kExitFails;
}

int cmd_sat(const std::string& formula_path, const std::string& aps, const std::string& programs, Common& c,
            std::ostream& out, std::ostream& err) {
    LoadedFormula lf = load_formula(formula_path, nullptr, {}, aps, programs);
    const Signature& sig = lf.file.sig;
    Fragment fr = classify_fragment(lf.f);
    if (fr == Fragment::Unsupported) {
        err << "error: formula is not in the forall*, exists* or exists*forall* fragment; satisfiability of "
               "linear HyperPDL-Delta is undecidable, so no decision procedure applies\n";
        if (c.as_json) {
            json j = report("sat");
            j["fragment"] = fragment_name(fr);
            j["verdict"] = nullptr;
            out << j.dump(2) << '\n';
        } else {
            out << "fragment: " << fragment_name(fr) << '\n';
        }
        return kExitUnsupported;
    }
    SatOptions opt;
    opt.letter_cap = c.cfg.trace_letter_cap;
    opt.guard_mode = guard_mode(c.cfg.guard_mode);
    auto t0 = std::chrono::steady_clock::now();
    SatResult r;
    try {
        r = decide_satisfiability(lf.f, sig, opt);
    } catch (const SatError& e) {
        throw CliError(e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.as_json) {
        json j = report("sat");
        j["fragment"] = fragment_name(fr);
        j["verdict"] = r.satisfiable;
        j["reduced"] = print(*r.reduced, sig);
        j["sizes"].push_back({{"stage", "nba"}, {"detail", "trace automaton"}, {"states", r.automaton_states}});
        for (std::size_t k = 0; k < r.witness.size(); ++k)
            j["witnesses"].push_back(lasso_json(r.path_names.at(k), r.witness[k], sig, nullptr));
        j["timings"]["total_seconds"] = secs;
        out << j.dump(2) << '\n';
    } else {
        out << "fragment: " << fragment_name(fr) << '\n';
        out << "reduced: " << print(*r.reduced, sig) << '\n';
        out << "verdict: " << (r.satisfiable ? "satisfiable" : "unsatisfiable") << '\n';
        for (std::size_t k = 0; k < r.witness.size(); ++k)
            out << print_lasso(r.path_names.at(k), r.witness[k], sig, nullptr) << '\n';
        out << "time: " << secs << " s\n";
    }
    return r.satisfiable ? kExitHolds : kExitFails;
}

int cmd_compile_omega(const std::string& spec_path, Common& c, std::ostream& out) {
    OmegaRegularSpec spec;
    try {
        spec = parse_omega_spec(read_file(spec_path));
    } catch (const OmegaError& e) {
        throw CliError(spec_path + ": " + e.what());
    }
    FormulaPtr f = compile_omega(spec);
    if (c.as_json) {
        json j = report("compile-omega");
        j["formula"] = print(*f, spec.sig);
        j["paths"] = omega_path_names(spec.arity);
        out << j.dump(2) << '\n';
    } else {
        out << print(*f, spec.sig) << '\n';
    }
    return kExitHolds;
}

int cmd_criticality(const std::string& formula_path, Common& c, std::ostream& out) {
    LoadedFormula lf = load_formula(formula_path, nullptr, {});
    FormulaPtr g = to_nnf(lf.f);
    std::vector<CriticalQuantifier> listing;
    std::size_t k = criticality(g, listing);
    if (c.as_json) {
        json j = report("criticality");
        j["criticality"] = k;
        j["nnf"] = print(*g, lf.file.sig);
        j["critical"] = json::array();
        for (const auto& q : listing)
            j["critical"].push_back({{"name", q.name}, {"depth", q.depth}, {"reason", q.reason}});
        out << j.dump(2) << '\n';
    } else {
        out << k << '\n';
        for (const auto& q : listing) out << q.name << " at depth " << q.depth << ": " << q.reason << '\n';
    }
    return kExitHolds;
}

int cmd_dot(const std::string& input, const std::string& stage, const std::string& kts_path,
            const std::string& program_text, std::size_t arity, const std::string& aps,
            const std::string& programs, Common& c, std::ostream& out) {
    if (stage == "marked-nfa") {
        Signature sig;
        std::string text = program_text;
        if (text.empty()) {
            if (input.empty()) throw CliError("dot needs a program (--program) or a file");
            FormulaFile ff = split_formula_file(read_file(input));
            sig = ff.sig;
            text = ff.text;
            if (!ff.paths.empty()) arity = ff.paths.size();
        }
        if (!aps.empty()) sig.aps = split_list(aps);
        if (!programs.empty()) sig.programs = split_list(programs);
        ProgramPtr p;
        try {
            p = parse_program(text, sig, arity);
        } catch (const ParseError& e) {
            throw CliError("program, column " + std::to_string(e.position() + 1) + ": " + e.what());
        }
        out << to_dot(build_marked_nfa(to_nnf(p), arity), sig);
        return kExitHolds;
    }
    if (stage != "aba" && stage != "nba") throw CliError("unknown stage '" + stage + "' (marked-nfa, aba, nba)");
    if (input.empty()) throw CliError("dot needs a formula file for stage " + stage);
    std::optional<Kts> kts;
    if (!kts_path.empty()) kts = load_kts(kts_path, "kts");
    LoadedFormula lf = load_formula(input, kts ? &kts->sig : nullptr, {}, aps, programs);
    const Signature& sig = lf.file.sig;
    FormulaPtr g = to_nnf(lf.f);
    std::size_t n = lf.file.paths.size();
    if (n > 0 && !is_quantifier_free(*g)) throw CliError("free paths are only allowed in quantifier-free formulas");
    if (n == 0 && !kts) throw CliError("closed formulas need --kts for the automaton stages");
    // the nba of a negated existential is the one whose emptiness is tested
    if (stage == "nba" && g->kind == FKind::NotExists) g = f_exists(g->var, g->name, g->left);
    WorldInterp w = kts ? WorldInterp::states(*kts) : WorldInterp::prop_sets(sig.aps.size());
    BuildOptions bo;
    bo.guard_mode = guard_mode(c.cfg.guard_mode);
    bo.not_delta_cap = c.cfg.not_delta_cap;
    bo.sig = &sig;
    auto aba = build_aba(g, n, w, kts ? &*kts : nullptr, bo);
    if (stage == "aba") {
        out << aba->to_dot();
    } else {
        // explored lazily up to the state cap of to_dot
        out << to_dot(MhNba(aba));
    }
    return kExitHolds;
}

int cmd_eval_lasso(const std::string& formula_path, const std::string& lasso_path, const std::string& kts_path,
                   bool bounded, Common& c, std::ostream& out) {
    std::optional<Kts> kts;
    if (!kts_path.empty()) kts = load_kts(kts_path, "kts");
    std::string content = read_file(formula_path);
    FormulaFile ff = split_formula_file(content);
    Signature sig = kts ? kts->sig : ff.sig;
    ParsedLassos pl;
    try {
        pl = parse_lassos(read_file(lasso_path), sig, kts ? &*kts : nullptr);
    } catch (const std::exception& e) {
        throw CliError(lasso_path + ": " + e.what());
    }
    if (pl.paths.empty()) throw CliError(lasso_path + ": no paths");
    LoadedFormula lf = load_formula(formula_path, &sig, pl.names);
    LassoAssignment pa = align_lassos(pl.paths);
    OracleOptions opt;
    WorldInterp w = WorldInterp::prop_sets(sig.aps.size());
    if (kts) {
        w = WorldInterp::states(*kts);
        opt.kts = &*kts;
        opt.quantifiers = bounded ? OracleOptions::Quantifiers::Bounded : OracleOptions::Quantifiers::Deterministic;
        opt.bound = c.cfg.oracle_bound;
    }
    OracleVerdict v;
    try {
        v = eval_formula(pa, 0, lf.f, w, opt);
    } catch (const OracleError& e) {
        throw CliError(e.what());
    } catch (const std::invalid_argument& e) {
        throw CliError(e.what());
    }
    if (c.as_json) {
        json j = report("eval-lasso");
        j["verdict"] = v.value;
        j["bounded"] = v.bounded;
        if (v.bounded) j["bound"] = v.bound;
        out << j.dump(2) << '\n';
    } else {
        out << "verdict: " << (v.value ? "true" : "false") << '\n';
        if (v.bounded) out << "note: quantifiers ranged over lassos with stem + period <= " << v.bound << '\n';
    }
    return v.value ? kExitHolds : kExitFails;
}

}  // namespace

CliConfig parse_config(const std::string& text) {
    CliConfig c;
    std::istringstream in(text);
    std::string raw;
    std::size_t ln = 0;
    auto number = [&](const std::string& v) {
        try {
            std::size_t used = 0;
            unsigned long long x = std::stoull(v, &used);
            if (used != v.size()) throw std::invalid_argument(v);
            return static_cast<std::size_t>(x);
        } catch (const std::exception&) {
            throw CliError("config line " + std::to_string(ln) + ": expected a number, got '" + v + "'");
        }
    };
    while (std::getline(in, raw)) {
        ++ln;
        auto h = raw.find('#');
        if (h != std::string::npos) raw.erase(h);
        std::string line = trim(raw);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw CliError("config line " + std::to_string(ln) + ": expected key=value");
        std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        if (key == "not_delta_cap") {
            c.not_delta_cap = number(val);
        } else if (key == "trace_letter_cap") {
            c.trace_letter_cap = number(val);
        } else if (key == "oracle_bound") {
            c.oracle_bound = number(val);
        } else if (key == "concurrent") {
            if (val != "true" && val != "false" && val != "on" && val != "off")
                throw CliError("config line " + std::to_string(ln) + ": concurrent is on/off");
            c.concurrent = val == "true" || val == "on";
        } else if (key == "guard_mode") {
            if (val != "succinct" && val != "explicit")
                throw CliError("config line " + std::to_string(ln) + ": guard_mode is succinct or explicit");
            c.guard_mode = val;
        } else {
            throw CliError("config line " + std::to_string(ln) + ": unknown key '" + key + "'");
        }
    }
    return c;
}

FormulaFile split_formula_file(const std::string& content) {
    FormulaFile ff;
    std::size_t pos = 0;
    while (pos < content.size()) {
        std::size_t end = content.find('\n', pos);
        if (end == std::string::npos) end = content.size();
        std::string line = content.substr(pos, end - pos);
        auto h = line.find('#');
        std::string body = trim(h == std::string::npos ? line : line.substr(0, h));
        auto w = words(body);
        if (w.empty()) {
            pos = end + 1;
            continue;
        }
        if (w[0] == "aps") {
            ff.sig.aps.assign(w.begin() + 1, w.end());
            ff.has_aps = true;
        } else if (w[0] == "programs") {
            ff.sig.programs.assign(w.begin() + 1, w.end());
            ff.has_programs = true;
        } else if (w[0] == "paths") {
            ff.paths.assign(w.begin() + 1, w.end());
        } else {
            break;
        }
        pos = end + 1;
    }
    ff.text_offset = std::min(pos, content.size());
    ff.text = content.substr(ff.text_offset);
    return ff;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"HyperPDL-Delta model checker, satisfiability decider and omega-regular compiler", "hyperpdl"};
    app.require_subcommand(1);
    Common c;
    app.add_option("--config", c.config_path, "key=value configuration file");
    app.add_flag("--json", c.as_json, "machine readable report");

    std::string kts_path, formula_path, format = "kts", mode, aps, programs, lasso_path, spec_path, stage = "aba",
                                        program_text;
    std::size_t arity = 1;
    bool bounded = false;

    auto* check = app.add_subcommand("check", "model check a closed formula against a KTS");
    check->add_option("kts", kts_path, "KTS file")->required();
    check->add_option("formula", formula_path, "formula file")->required();
    check->add_option("--format", format, "kts, kripke or lts");
    check->add_option("--guard-mode", mode, "succinct or explicit");

    auto* sat = app.add_subcommand("sat", "decide satisfiability of a linear formula");
    sat->add_option("formula", formula_path, "formula file")->required();
    sat->add_option("--aps", aps, "comma separated propositions");
    sat->add_option("--programs", programs, "comma separated atomic programs");

    auto* omega = app.add_subcommand("compile-omega", "compile an omega-regular specification into a formula");
    omega->add_option("spec", spec_path, "specification file")->required();

    auto* crit = app.add_subcommand("criticality", "criticality of a formula");
    crit->add_option("formula", formula_path, "formula file")->required();

    auto* dot = app.add_subcommand("dot", "Graphviz output of a construction stage");
    dot->add_option("formula", formula_path, "formula or program file");
    dot->add_option("--stage", stage, "marked-nfa, aba or nba");
    dot->add_option("--kts", kts_path, "KTS file for closed formulas");
    dot->add_option("--program", program_text, "program text for the marked-nfa stage");
    dot->add_option("--arity", arity, "number of paths of the program");
    dot->add_option("--aps", aps, "comma separated propositions");
    dot->add_option("--programs", programs, "comma separated atomic programs");

    auto* ev = app.add_subcommand("eval-lasso", "evaluate a formula on a lasso path assignment");
    ev->add_option("formula", formula_path, "formula file")->required();
    ev->add_option("lassos", lasso_path, "lasso file")->required();
    ev->add_option("--kts", kts_path, "KTS whose states the lassos visit");
    ev->add_flag("--bounded", bounded, "quantify over short lassos only (incomplete)");

    for (auto* s : {check, sat, omega, crit, dot, ev}) {
        s->add_option("--config", c.config_path, "key=value configuration file");
        s->add_flag("--json", c.as_json, "machine readable report");
    }

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitHolds;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }

    try {
        c.load();
        if (*check) return cmd_check(kts_path, formula_path, format, mode, c, out);
        if (*sat) return cmd_sat(formula_path, aps, programs, c, out, err);
        if (*omega) return cmd_compile_omega(spec_path, c, out);
        if (*crit) return cmd_criticality(formula_path, c, out);
        if (*dot) return cmd_dot(formula_path, stage, kts_path, program_text, arity, aps, programs, c, out);
        if (*ev) return cmd_eval_lasso(formula_path, lasso_path, kts_path, bounded, c, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}

}  // namespace hyperpdl
