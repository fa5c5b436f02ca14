#include "hyperpdl/oracle.hpp"

#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace hyperpdl {

LassoAssignment LassoAssignment::suffix(std::size_t p) const {
    std::vector<PathLasso> ps;
    for (const auto& path : paths) ps.push_back(path.suffix(p));
    if (ps.empty()) return *this;
    return align_lassos(ps);
}

LassoAssignment align_lassos(const std::vector<PathLasso>& ls) {
    if (ls.empty()) throw std::invalid_argument("align_lassos needs at least one lasso");
    std::size_t stem = 0, period = 1;
    for (const auto& l : ls) {
        if (l.period.empty()) throw std::invalid_argument("lasso with an empty period");
        stem = std::max(stem, l.stem.size());
        period = std::lcm(period, l.period.size());
    }
    LassoAssignment pa;
    pa.stem = stem;
    pa.period = period;
    for (const auto& l : ls) pa.paths.push_back(l.unrolled(stem, period));
    return pa;
}

LassoWord<Letter> encode(const LassoAssignment& pa) {
    LassoWord<Letter> w;
    for (std::size_t j = 0; j < pa.length(); ++j) {
        Letter a;
        for (const auto& path : pa.paths) {
            a.worlds.push_back(path.at(j).world);
            a.progs.push_back(path.at(j).prog);
        }
        (j < pa.stem ? w.stem : w.period).push_back(std::move(a));
    }
    return w;
}

std::vector<PathLasso> enumerate_paths(const Kts& k, int s, std::size_t bound) {
    std::vector<PathLasso> out;
    std::vector<PathStep> steps;
    std::vector<int> states;
    // depth-first over walks; a lasso closes when the walk returns to one of
    // its own positions
    std::function<void(int)> walk = [&](int cur) {
        if (steps.size() >= bound) return;
        for (int p = 0; p < k.num_programs(); ++p) {
            for (int d : k.successors(cur, p)) {
                steps.push_back({cur, p});
                states.push_back(cur);
                for (std::size_t back = 0; back < states.size(); ++back) {
                    if (states[back] == d) {
                        PathLasso l;
                        l.stem.assign(steps.begin(), steps.begin() + static_cast<std::ptrdiff_t>(back));
                        l.period.assign(steps.begin() + static_cast<std::ptrdiff_t>(back), steps.end());
                        out.push_back(std::move(l));
                    }
                }
                walk(d);
                steps.pop_back();
                states.pop_back();
            }
        }
    };
    walk(s);
    return out;
}

namespace {

using Matrix = std::vector<std::vector<char>>;

struct PairHash {
    std::size_t operator()(const std::pair<const void*, std::size_t>& k) const {
        return std::hash<const void*>()(k.first) * 31 + k.second;
    }
};

class Evaluator {
public:
    Evaluator(const LassoAssignment& pa, const WorldInterp& w, const OracleOptions& opt)
        : pa_(pa), w_(w), opt_(opt), n_(pa.length()) {}

    bool bounded_used = false;

    bool eval(std::size_t p, const Formula& f) {
        p = pa_.normalize(p);
        if (opt_.memoize) {
            auto it = memo_.find({&f, p});
            if (it != memo_.end()) return it->second;
        }
        bool v = compute(p, f);
        if (opt_.memoize) memo_[{&f, p}] = v;
        return v;
    }

    const Matrix& rel(const Program& a) {
        auto it = rel_.find(&a);
        if (it != rel_.end() && opt_.memoize) return it->second;
        Matrix m = compute_rel(a);
        return rel_[&a] = std::move(m);
    }

    bool delta(std::size_t p, const Program& a) {
        const Matrix& e = rel(a);
        // transitive closure with at least one step
        Matrix plus = e;
        for (std::size_t k = 0; k < n_; ++k)
            for (std::size_t i = 0; i < n_; ++i)
                if (plus[i][k])
                    for (std::size_t j = 0; j < n_; ++j)
                        if (plus[k][j]) plus[i][j] = 1;
        p = pa_.normalize(p);
        for (std::size_t v = 0; v < n_; ++v) {
            bool reach = v == p || plus[p][v];
            if (reach && plus[v][v]) return true;
        }
        return false;
    }

private:
    const LassoAssignment& pa_;
    const WorldInterp& w_;
    const OracleOptions& opt_;
    std::size_t n_;
    std::unordered_map<std::pair<const void*, std::size_t>, bool, PairHash> memo_;
    std::unordered_map<const void*, Matrix> rel_;

    Matrix zero() const { return Matrix(n_, std::vector<char>(n_, 0)); }

    Matrix compute_rel(const Program& a) {
        Matrix m = zero();
        switch (a.kind) {
        case PKind::Tup:
            for (std::size_t p = 0; p < n_; ++p) {
                bool ok = true;
                for (std::size_t l = 0; l < a.tup.arity(); ++l) {
                    int e = a.tup.entries[l];
                    if (e != kWildcard && e != pa_.step(l, p).prog) ok = false;
                }
                if (a.tup.arity() != pa_.paths.size()) throw OracleError("tuple arity differs from path count");
                if (ok) m[p][pa_.next(p)] = 1;
            }
            break;
        case PKind::Eps:
            for (std::size_t p = 0; p < n_; ++p) m[p][p] = 1;
            break;
        case PKind::Test:
            for (std::size_t p = 0; p < n_; ++p) m[p][p] = eval(p, *a.test) ? 1 : 0;
            break;
        case PKind::Sum: {
            Matrix l = rel(*a.left);
            const Matrix& r = rel(*a.right);
            for (std::size_t i = 0; i < n_; ++i)
                for (std::size_t j = 0; j < n_; ++j) m[i][j] = l[i][j] || r[i][j];
            break;
        }
        case PKind::Concat: {
            Matrix l = rel(*a.left);
            const Matrix& r = rel(*a.right);
            for (std::size_t i = 0; i < n_; ++i)
                for (std::size_t k = 0; k < n_; ++k)
                    if (l[i][k])
                        for (std::size_t j = 0; j < n_; ++j)
                            if (r[k][j]) m[i][j] = 1;
            break;
        }
        case PKind::Star: {
            m = rel(*a.left);
            for (std::size_t p = 0; p < n_; ++p) m[p][p] = 1;
            for (std::size_t k = 0; k < n_; ++k)
                for (std::size_t i = 0; i < n_; ++i)
                    if (m[i][k])
                        for (std::size_t j = 0; j < n_; ++j)
                            if (m[k][j]) m[i][j] = 1;
            break;
        }
        }
        return m;
    }

    bool quantified(std::size_t p, const Formula& f) {
        using Q = OracleOptions::Quantifiers;
        std::vector<PathLasso> candidates;
        LassoAssignment base = pa_.paths.empty() ? pa_ : pa_.suffix(p);
        switch (opt_.quantifiers) {
        case Q::None:
            throw OracleError("quantifier met but no quantifier mode enabled");
        case Q::Deterministic:
        case Q::Bounded: {
            if (!opt_.kts || w_.mode != WorldInterp::Mode::KtsStates)
                throw OracleError("quantifier evaluation over a KTS needs kts worlds");
            int branch = base.paths.empty() ? opt_.kts->init : base.paths.back().at(0).world;
            if (opt_.quantifiers == Q::Deterministic) {
                candidates.push_back(deterministic_path(*opt_.kts, branch));
            } else {
                bounded_used = true;
                candidates = enumerate_paths(*opt_.kts, branch, opt_.bound);
            }
            break;
        }
        case Q::TraceSet:
            if (p != 0) throw OracleError("trace-set quantifiers are only evaluated at position 0");
            candidates = opt_.traces;
            break;
        }
        bool want_all = f.kind == FKind::Forall;
        bool result = want_all;
        for (const auto& c : candidates) {
            std::vector<PathLasso> ps = base.paths;
            ps.push_back(c);
            LassoAssignment next = align_lassos(ps);
            Evaluator sub(next, w_, opt_);
            bool v = sub.eval(0, *f.left);
            bounded_used = bounded_used || sub.bounded_used;
            if (want_all && !v) {
                result = false;
                break;
            }
            if (!want_all && v) {
                result = true;
                break;
            }
        }
        return f.kind == FKind::NotExists ? !result : result;
    }

    bool compute(std::size_t p, const Formula& f) {
        switch (f.kind) {
        case FKind::True: return true;
        case FKind::False: return false;
        case FKind::Atom:
            if (f.var < 0 || static_cast<std::size_t>(f.var) >= pa_.paths.size())
                throw OracleError("atom refers to an unassigned path");
            return w_.holds(f.ap, pa_.step(f.var, p).world);
        case FKind::Not: return !eval(p, *f.left);
        case FKind::And: return eval(p, *f.left) && eval(p, *f.right);
        case FKind::Or: return eval(p, *f.left) || eval(p, *f.right);
        case FKind::Exists:
        case FKind::Forall:
        case FKind::NotExists:
            return quantified(p, f);
        case FKind::Diamond: {
            const Matrix& m = rel(*f.prog);
            for (std::size_t k = 0; k < n_; ++k)
                if (m[p][k] && eval(k, *f.left)) return true;
            return false;
        }
        case FKind::Box: {
            const Matrix& m = rel(*f.prog);
            for (std::size_t k = 0; k < n_; ++k)
                if (m[p][k] && !eval(k, *f.left)) return false;
            return true;
        }
        case FKind::Delta: return delta(p, *f.prog);
        case FKind::NotDelta: return !delta(p, *f.prog);
        }
        return false;
    }
};

}  // namespace

OracleVerdict eval_formula(const LassoAssignment& pa, std::size_t pos, const FormulaPtr& f, const WorldInterp& w,
                           const OracleOptions& opt) {
    Evaluator e(pa, w, opt);
    OracleVerdict v;
    v.value = e.eval(pos, *f);
    v.bounded = e.bounded_used;
    v.bound = e.bounded_used ? opt.bound : 0;
    return v;
}

std::vector<std::size_t> eval_segments(const LassoAssignment& pa, std::size_t pos, const ProgramPtr& alpha,
                                       const WorldInterp& w, const OracleOptions& opt) {
    Evaluator e(pa, w, opt);
    const auto& m = e.rel(*alpha);
    std::vector<std::size_t> out;
    pos = pa.normalize(pos);
    for (std::size_t k = 0; k < pa.length(); ++k)
        if (m[pos][k]) out.push_back(k);
    return out;
}

bool eval_delta(const LassoAssignment& pa, std::size_t pos, const ProgramPtr& alpha, const WorldInterp& w,
                const OracleOptions& opt) {
    Evaluator e(pa, w, opt);
    return e.delta(pos, *alpha);
}

// --------------------------------------------------------------- lasso I/O

namespace {

struct LassoLexer {
    const std::string& s;
    std::size_t i = 0;
    std::size_t line;

    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        skip();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    std::string word() {
        skip();
        std::size_t j = i;
        while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '\'')) ++j;
        std::string w = s.substr(i, j - i);
        i = j;
        return w;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw std::runtime_error("lasso line " + std::to_string(line) + ": " + msg);
    }
};

}  // namespace

ParsedLassos parse_lassos(const std::string& text, const Signature& sig, const Kts* kts) {
    ParsedLassos out;
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        LassoLexer lx{raw, 0, lineno};
        lx.skip();
        if (lx.i == raw.size()) continue;
        if (lx.word() != "path") lx.fail("expected 'path'");
        std::string name = lx.word();
        if (name.empty()) lx.fail("expected path name");
        if (!lx.eat(':')) lx.fail("expected ':'");
        PathLasso p;
        bool in_period = false;
        while (true) {
            lx.skip();
            if (lx.i == raw.size()) break;
            if (lx.eat('|')) {
                if (in_period) lx.fail("second '|'");
                in_period = true;
                continue;
            }
            if (!lx.eat('(')) lx.fail("expected '('");
            PathStep st;
            if (lx.eat('{')) {
                std::uint64_t mask = 0;
                while (!lx.eat('}')) {
                    std::string a = lx.word();
                    int id = sig.ap_id(a);
                    if (a.empty() || id < 0) lx.fail("unknown proposition '" + a + "'");
                    mask |= std::uint64_t{1} << id;
                }
                st.world = static_cast<int>(mask);
            } else {
                std::string s = lx.word();
                if (!kts) lx.fail("state names need a KTS");
                st.world = kts->state_id(s);
                if (st.world < 0) lx.fail("unknown state '" + s + "'");
            }
            std::string prog = lx.word();
            st.prog = sig.program_id(prog);
            if (st.prog < 0) lx.fail("unknown program '" + prog + "'");
            if (!lx.eat(')')) lx.fail("expected ')'");
            (in_period ? p.period : p.stem).push_back(st);
        }
        if (!in_period || p.period.empty()) lx.fail("missing period after '|'");
        out.names.push_back(name);
        out.paths.push_back(std::move(p));
    }
    return out;
}

std::string print_lasso(const std::string& name, const PathLasso& p, const Signature& sig, const Kts* kts) {
    auto entry = [&](const PathStep& st) {
        std::string w;
        if (kts) {
            w = kts->state_names.at(st.world);
        } else {
            w = "{";
            bool first = true;
            for (std::size_t a = 0; a < sig.aps.size(); ++a) {
                if ((static_cast<std::uint64_t>(st.world) >> a) & 1) {
                    w += (first ? "" : " ") + sig.aps[a];
                    first = false;
                }
            }
            w += "}";
        }
        return "(" + w + " " + sig.programs.at(st.prog) + ")";
    };
    std::string out = "path " + name + ":";
    for (const auto& st : p.stem) out += " " + entry(st);
    out += " |";
    for (const auto& st : p.period) out += " " + entry(st);
    return out;
}

}  // namespace hyperpdl
