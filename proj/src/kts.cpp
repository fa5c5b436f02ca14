#include "hyperpdl/kts.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace hyperpdl {

int Kts::state_id(const std::string& name) const {
    auto it = std::find(state_names.begin(), state_names.end(), name);
    return it == state_names.end() ? -1 : static_cast<int>(it - state_names.begin());
}

const std::vector<int>& Kts::successors(int s, int sigma) const {
    static const std::vector<int> none;
    if (sigma < 0 || sigma >= num_programs()) return none;
    return succ.at(s)[sigma];
}

int Kts::add_state(const std::string& name, std::uint64_t label) {
    state_names.push_back(name);
    labels.push_back(label);
    succ.emplace_back(sig.programs.size());
    return num_states() - 1;
}

void Kts::add_edge(int src, int sigma, int dst) {
    auto& v = succ.at(src).at(sigma);
    if (std::find(v.begin(), v.end(), dst) == v.end()) {
        v.push_back(dst);
        std::sort(v.begin(), v.end());
    }
}

void Kts::validate() const {
    if (init < 0) throw KtsError(0, "missing init declaration");
    for (int s = 0; s < num_states(); ++s) {
        bool any = std::any_of(succ[s].begin(), succ[s].end(), [](const auto& v) { return !v.empty(); });
        if (!any) throw KtsError(0, "dead state '" + state_names[s] + "' has no outgoing edge");
    }
}

namespace {

std::vector<std::string> words(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == '{' || c == '}') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
            out.emplace_back(1, c);
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

}  // namespace

Kts parse_kts(const std::string& text, KtsFormat format) {
    Kts k;
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    bool programs_fixed = false;
    std::string init_name;
    std::size_t init_line = 0;
    auto ensure_programs = [&](std::size_t ln) {
        if (programs_fixed) return;
        if (format == KtsFormat::Kripke && k.sig.programs.empty()) {
            k.sig.programs.push_back("step");
        } else if (k.sig.programs.empty()) {
            throw KtsError(ln, "programs must be declared before states and edges");
        }
        programs_fixed = true;
    };
    while (std::getline(in, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        auto w = words(raw);
        if (w.empty()) continue;
        const std::string& kw = w[0];
        if (kw == "aps") {
            if (!k.state_names.empty()) throw KtsError(lineno, "aps must be declared before states");
            for (std::size_t i = 1; i < w.size(); ++i) {
                if (k.sig.ap_id(w[i]) >= 0) throw KtsError(lineno, "duplicate proposition '" + w[i] + "'");
                k.sig.aps.push_back(w[i]);
            }
            if (k.sig.aps.size() > 64) throw KtsError(lineno, "at most 64 atomic propositions are supported");
        } else if (kw == "programs") {
            if (programs_fixed) throw KtsError(lineno, "programs must be declared before states and edges");
            for (std::size_t i = 1; i < w.size(); ++i) {
                if (k.sig.program_id(w[i]) >= 0) throw KtsError(lineno, "duplicate program '" + w[i] + "'");
                k.sig.programs.push_back(w[i]);
            }
        } else if (kw == "state") {
            ensure_programs(lineno);
            if (w.size() < 2) throw KtsError(lineno, "state needs a name");
            if (k.state_id(w[1]) >= 0) throw KtsError(lineno, "duplicate state '" + w[1] + "'");
            std::uint64_t label = 0;
            if (w.size() > 2) {
                if (w[2] != "{" || w.back() != "}") throw KtsError(lineno, "expected '{ ... }' label set");
                for (std::size_t i = 3; i + 1 < w.size(); ++i) {
                    int a = k.sig.ap_id(w[i]);
                    if (a < 0) throw KtsError(lineno, "undeclared proposition '" + w[i] + "'");
                    label |= std::uint64_t{1} << a;
                }
            }
            if (format == KtsFormat::Lts) label = 0;
            k.add_state(w[1], label);
        } else if (kw == "init") {
            if (w.size() != 2) throw KtsError(lineno, "init takes one state name");
            init_name = w[1];
            init_line = lineno;
        } else if (kw == "edge") {
            ensure_programs(lineno);
            std::string src, prog, dst;
            if (w.size() == 4) {
                src = w[1];
                prog = w[2];
                dst = w[3];
            } else if (w.size() == 3 && format == KtsFormat::Kripke) {
                src = w[1];
                prog = k.sig.programs.front();
                dst = w[2];
            } else {
                throw KtsError(lineno, "edge expects SRC PROG DST");
            }
            int s = k.state_id(src), d = k.state_id(dst), p = k.sig.program_id(prog);
            if (s < 0) throw KtsError(lineno, "unknown state '" + src + "'");
            if (d < 0) throw KtsError(lineno, "unknown state '" + dst + "'");
            if (p < 0) throw KtsError(lineno, "unknown program '" + prog + "'");
            k.add_edge(s, p, d);
        } else {
            throw KtsError(lineno, "unknown directive '" + kw + "'");
        }
    }
    if (init_name.empty()) throw KtsError(lineno, "missing init declaration");
    k.init = k.state_id(init_name);
    if (k.init < 0) throw KtsError(init_line, "unknown state '" + init_name + "'");
    k.validate();
    return k;
}

std::string print_kts(const Kts& k) {
    std::ostringstream os;
    os << "aps";
    for (const auto& a : k.sig.aps) os << ' ' << a;
    os << "\nprograms";
    for (const auto& p : k.sig.programs) os << ' ' << p;
    os << '\n';
    for (int s = 0; s < k.num_states(); ++s) {
        os << "state " << k.state_names[s] << " {";
        for (std::size_t a = 0; a < k.sig.aps.size(); ++a)
            if (k.holds(static_cast<int>(a), s)) os << ' ' << k.sig.aps[a];
        os << " }\n";
    }
    os << "init " << k.state_names[k.init] << '\n';
    for (int s = 0; s < k.num_states(); ++s)
        for (int p = 0; p < k.num_programs(); ++p)
            for (int d : k.succ[s][p])
                os << "edge " << k.state_names[s] << ' ' << k.sig.programs[p] << ' ' << k.state_names[d] << '\n';
    return os.str();
}

PathLasso deterministic_path(const Kts& k, int s) {
    std::vector<PathStep> steps;
    std::map<int, std::size_t> first_seen;
    int cur = s;
    while (!first_seen.count(cur)) {
        first_seen[cur] = steps.size();
        int prog = -1, next = -1;
        for (int p = 0; p < k.num_programs(); ++p) {
            for (int d : k.succ[cur][p]) {
                if (prog >= 0)
                    throw std::invalid_argument("state '" + k.state_names[cur] + "' has more than one successor");
                prog = p;
                next = d;
            }
        }
        if (prog < 0) throw std::invalid_argument("dead state '" + k.state_names[cur] + "'");
        steps.push_back({cur, prog});
        cur = next;
    }
    std::size_t loop = first_seen[cur];
    PathLasso out;
    out.stem.assign(steps.begin(), steps.begin() + static_cast<std::ptrdiff_t>(loop));
    out.period.assign(steps.begin() + static_cast<std::ptrdiff_t>(loop), steps.end());
    return out;
}

}  // namespace hyperpdl
