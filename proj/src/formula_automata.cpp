#include "hyperpdl/formula_automata.hpp"

#include <algorithm>
#include <sstream>

namespace hyperpdl {

// ------------------------------------------------------------------- rules

RulePtr Rule::constant(bool v) {
    static const RulePtr t = std::make_shared<const Rule>(Rule{Kind::Const, true, 0, -1, -1, {}, {}});
    static const RulePtr f = std::make_shared<const Rule>(Rule{Kind::Const, false, 0, -1, -1, {}, {}});
    return v ? t : f;
}

RulePtr Rule::var(StateId q) {
    if (q == kSinkTrue) return constant(true);
    if (q == kSinkFalse) return constant(false);
    return std::make_shared<const Rule>(Rule{Kind::Var, true, q, -1, -1, {}, {}});
}

RulePtr Rule::inline_state(StateId q) {
    if (q == kSinkTrue) return constant(true);
    if (q == kSinkFalse) return constant(false);
    return std::make_shared<const Rule>(Rule{Kind::Inline, true, q, -1, -1, {}, {}});
}

RulePtr Rule::atom(int ap, int path, bool positive) {
    return std::make_shared<const Rule>(Rule{Kind::Atom, positive, 0, ap, path, {}, {}});
}

RulePtr Rule::guard(TupleSym t, bool positive) {
    if (t.all_wildcard()) return constant(positive);
    return std::make_shared<const Rule>(Rule{Kind::Guard, positive, 0, -1, -1, std::move(t), {}});
}

namespace {

RulePtr junction(Rule::Kind k, std::vector<RulePtr> kids) {
    bool unit = k == Rule::Kind::And;  // neutral constant
    std::vector<RulePtr> keep;
    for (auto& r : kids) {
        if (r->kind == Rule::Kind::Const) {
            if (r->positive == unit) continue;
            return Rule::constant(!unit);
        }
        if (r->kind == k) {
            keep.insert(keep.end(), r->kids.begin(), r->kids.end());
        } else {
            keep.push_back(std::move(r));
        }
    }
    if (keep.empty()) return Rule::constant(unit);
    if (keep.size() == 1) return keep.front();
    return std::make_shared<const Rule>(Rule{k, true, 0, -1, -1, {}, std::move(keep)});
}

}  // namespace

RulePtr Rule::conj(std::vector<RulePtr> kids) { return junction(Kind::And, std::move(kids)); }
RulePtr Rule::disj(std::vector<RulePtr> kids) { return junction(Kind::Or, std::move(kids)); }

std::string Rule::str() const {
    switch (kind) {
    case Kind::Const: return positive ? "true" : "false";
    case Kind::Var: return "q" + std::to_string(state);
    case Kind::Inline: return "rho(q" + std::to_string(state) + ")";
    case Kind::Atom: return std::string(positive ? "" : "!") + "ap" + std::to_string(ap) + "@" + std::to_string(path);
    case Kind::Guard: {
        std::string s = positive ? "(" : "!(";
        for (std::size_t i = 0; i < tup.entries.size(); ++i)
            s += (i ? "," : "") + (tup.entries[i] == kWildcard ? std::string("_") : std::to_string(tup.entries[i]));
        return s + ")";
    }
    case Kind::And:
    case Kind::Or: {
        std::string s = "(";
        for (std::size_t i = 0; i < kids.size(); ++i) {
            if (i) s += kind == Kind::And ? " & " : " | ";
            s += kids[i]->str();
        }
        return s + ")";
    }
    }
    return "?";
}

// -------------------------------------------------------------- FormulaAba

FormulaAba::FormulaAba(LetterDomain dom, WorldInterp w) : dom_(dom), w_(w) {
    owner_ = {0, 1};
    own_.push_back({Rule::constant(true), true, "true", -1});
    own_.push_back({Rule::constant(false), false, "false", -1});
}

int FormulaAba::add_group(std::string label) {
    groups_.push_back(std::move(label));
    return static_cast<int>(groups_.size()) - 1;
}

StateId FormulaAba::add_state(bool acc, std::string name, int group) {
    auto q = static_cast<StateId>(owner_.size());
    owner_.push_back(static_cast<long>(own_.size()));
    own_.push_back({Rule::constant(false), acc, std::move(name), group});
    return q;
}

void FormulaAba::set_rule(StateId q, RulePtr r) { own_.at(owner_.at(q)).rule = std::move(r); }

StateId FormulaAba::embed(AutomatonPtr child, int group) {
    auto offset = static_cast<StateId>(owner_.size());
    long ci = static_cast<long>(comps_.size());
    std::size_t n = child->num_states();
    for (std::size_t i = 2; i < n; ++i) owner_.push_back(-ci - 1);
    StateId init = child->initial();
    comps_.push_back({std::move(child), offset, group});
    if (init == kSinkTrue || init == kSinkFalse) return init;
    return offset + init - 2;
}

bool FormulaAba::accepting(StateId q) const {
    long o = owner_.at(q);
    if (o >= 0) return own_[o].acc;
    const Component& c = comps_[-o - 1];
    return c.a->accepting(q - c.offset + 2);
}

std::string FormulaAba::state_name(StateId q) const {
    long o = owner_.at(q);
    if (o >= 0) return own_[o].name.empty() ? Automaton::state_name(q) : own_[o].name;
    const Component& c = comps_[-o - 1];
    return c.a->state_name(q - c.offset + 2);
}

PosBool FormulaAba::eval(const Rule& r, const Letter& a) const {
    switch (r.kind) {
    case Rule::Kind::Const: return r.positive ? PosBool::t() : PosBool::f();
    case Rule::Kind::Var: return PosBool::var(r.state);
    case Rule::Kind::Inline: return rho_uncached(r.state, a);
    case Rule::Kind::Atom: return w_.holds(r.ap, a.worlds.at(r.path)) == r.positive ? PosBool::t() : PosBool::f();
    case Rule::Kind::Guard: return r.tup.matches(a.progs) == r.positive ? PosBool::t() : PosBool::f();
    case Rule::Kind::And: {
        std::vector<PosBool> ks;
        for (const auto& k : r.kids) {
            PosBool b = eval(*k, a);
            if (b.is_false()) return b;
            ks.push_back(std::move(b));
        }
        return PosBool::conj(std::move(ks));
    }
    case Rule::Kind::Or: {
        std::vector<PosBool> ks;
        for (const auto& k : r.kids) {
            PosBool b = eval(*k, a);
            if (b.is_true()) return b;
            ks.push_back(std::move(b));
        }
        return PosBool::disj(std::move(ks));
    }
    }
    return PosBool::f();
}

PosBool FormulaAba::rho_uncached(StateId q, const Letter& a) const {
    if (q == kSinkTrue) return PosBool::t();
    if (q == kSinkFalse) return PosBool::f();
    long o = owner_.at(q);
    if (o >= 0) return eval(*own_[o].rule, a);
    const Component& c = comps_[-o - 1];
    StateId off = c.offset;
    return c.a->rho(q - off + 2, a).map_vars([off](StateId x) { return PosBool::var(x + off - 2); });
}

PosBool FormulaAba::rho(StateId q, const Letter& a) const {
    if (q == kSinkTrue) return PosBool::t();
    if (q == kSinkFalse) return PosBool::f();
    if (!dom_.contains(a)) throw std::out_of_range("letter outside the automaton's domain");
    std::uint64_t key = static_cast<std::uint64_t>(q) * dom_.size() + dom_.index(a);
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
    }
    PosBool b = rho_uncached(q, a);
    std::lock_guard<std::mutex> lock(mu_);
    cache_.emplace(key, b);
    return b;
}

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

void rule_refs(const Rule& r, std::vector<std::pair<StateId, bool>>& out) {
    if (r.kind == Rule::Kind::Var) out.emplace_back(r.state, false);
    if (r.kind == Rule::Kind::Inline) out.emplace_back(r.state, true);
    for (const auto& k : r.kids) rule_refs(*k, out);
}

}  // namespace

std::string FormulaAba::to_dot() const {
    std::ostringstream os;
    os << "digraph formula_automaton {\n  rankdir=LR;\n  compound=true;\n";
    auto node_of = [&](StateId q) -> std::string {
        long o = owner_.at(q);
        if (o >= 0) return "s" + std::to_string(q);
        return "c" + std::to_string(-o - 1);
    };
    for (std::size_t g = 0; g < groups_.size(); ++g) {
        os << "  subgraph cluster_" << g << " {\n    label=\"" << dot_escape(groups_[g]) << "\";\n";
        for (StateId q = 2; q < owner_.size(); ++q) {
            long o = owner_[q];
            if (o < 0 || own_[o].group != static_cast<int>(g)) continue;
            os << "    s" << q << " [label=\"" << dot_escape(state_name(q)) << "\", shape="
               << (own_[o].acc ? "doublecircle" : "circle") << "];\n";
        }
        for (std::size_t c = 0; c < comps_.size(); ++c) {
            if (comps_[c].group != static_cast<int>(g)) continue;
            os << "    c" << c << " [shape=box, label=\"embedded automaton\\n" << comps_[c].a->num_states()
               << " states\"];\n";
        }
        os << "  }\n";
    }
    os << "  s0 [label=\"true\", shape=doublecircle];\n  s1 [label=\"false\", shape=circle];\n";
    os << "  start [shape=point];\n  start -> " << node_of(init_) << ";\n";
    for (StateId q = 2; q < owner_.size(); ++q) {
        long o = owner_[q];
        if (o < 0) continue;
        std::vector<std::pair<StateId, bool>> refs;
        rule_refs(*own_[o].rule, refs);
        for (auto [t, inl] : refs)
            os << "  s" << q << " -> " << node_of(t) << (inl ? " [style=dashed]" : "") << ";\n";
    }
    os << "}\n";
    return os.str();
}

// ---------------------------------------------------------------- ExistsNba

ExistsNba::ExistsNba(AutomatonPtr body, const Kts& kts, std::size_t n)
    : mh_(std::make_shared<MhNba>(std::move(body))), kts_(kts), n_(n),
      dom_{n, kts.num_states(), kts.num_programs()} {
    const LetterDomain& bd = mh_->domain();
    if (bd.arity != n + 1 || bd.num_worlds != kts.num_states() || bd.num_programs != kts.num_programs())
        throw BuildError("existential body automaton has the wrong letter domain");
    triples_.resize(3, Triple{kSinkFalse, -1, -1});
    reachable_states(*this);
}

StateId ExistsNba::intern(StateId mh, int s, int sigma) const {
    auto key = std::make_tuple(mh, s, sigma);
    auto it = ids_.find(key);
    if (it != ids_.end()) return it->second;
    auto id = static_cast<StateId>(triples_.size());
    triples_.push_back({mh, s, sigma});
    ids_.emplace(key, id);
    return id;
}

std::size_t ExistsNba::num_states() const {
    std::lock_guard<std::mutex> lock(mu_);
    return triples_.size();
}

bool ExistsNba::accepting(StateId q) const {
    if (q == kSinkTrue) return true;
    if (q == kSinkFalse || q == 2) return false;
    Triple t = triple_of(q);
    return mh_->accepting(t.mh);
}

ExistsNba::Triple ExistsNba::triple_of(StateId q) const {
    std::lock_guard<std::mutex> lock(mu_);
    return triples_.at(q);
}

std::string ExistsNba::state_name(StateId q) const {
    if (q == kSinkTrue || q == kSinkFalse) return Automaton::state_name(q);
    if (q == 2) return "init";
    Triple t = triple_of(q);
    return "(" + mh_->state_name(t.mh) + "," + kts_.state_names.at(t.s) + "," + kts_.sig.programs.at(t.sigma) + ")";
}

PosBool ExistsNba::successors(StateId mh_state, int s, int sigma, const Letter& a) const {
    const auto& next = kts_.successors(s, sigma);
    if (next.empty()) return PosBool::f();
    Letter b = a;
    b.worlds.push_back(s);
    b.progs.push_back(sigma);
    std::vector<PosBool> out;
    for (const StateSet& m : minimal_models(mh_->rho(mh_state, b))) {
        StateId q = m.empty() ? kSinkTrue : m.front();
        // no dead states, so the simulated path always continues
        if (q == kSinkTrue) return PosBool::t();
        for (int s2 : next)
            for (int sg = 0; sg < kts_.num_programs(); ++sg) out.push_back(PosBool::var(intern(q, s2, sg)));
    }
    return PosBool::disj(std::move(out));
}

PosBool ExistsNba::rho(StateId q, const Letter& a) const {
    if (q == kSinkTrue) return PosBool::t();
    if (q == kSinkFalse) return PosBool::f();
    std::lock_guard<std::mutex> lock(mu_);
    std::uint64_t key = static_cast<std::uint64_t>(q) * dom_.size() + dom_.index(a);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    PosBool res = PosBool::f();
    if (q == 2) {
        int branch = n_ == 0 ? kts_.init : a.worlds[n_ - 1];
        std::vector<PosBool> alts;
        for (int sg = 0; sg < kts_.num_programs(); ++sg) alts.push_back(successors(mh_->initial(), branch, sg, a));
        res = PosBool::disj(std::move(alts));
    } else {
        Triple t = triples_.at(q);
        res = successors(t.mh, t.s, t.sigma, a);
    }
    cache_.emplace(key, res);
    return res;
}

std::shared_ptr<ExistsNba> exists_construction(AutomatonPtr body, const Kts& kts, std::size_t n) {
    return std::make_shared<ExistsNba>(std::move(body), kts, n);
}

// ----------------------------------------------------------------- builder

namespace {

class Builder {
public:
    Builder(FormulaAba& a, std::size_t n, const WorldInterp& w, const Kts* kts, const BuildOptions& opt,
            std::size_t not_delta_depth)
        : a_(a), n_(n), w_(w), kts_(kts), opt_(opt), nd_depth_(not_delta_depth) {}

    StateId build(const FormulaPtr& fp) {
        const Formula& f = *fp;
        switch (f.kind) {
        case FKind::True: return kSinkTrue;
        case FKind::False: return kSinkFalse;
        case FKind::Atom: {
            StateId q = a_.add_state(false, label(fp), group(fp));
            a_.set_rule(q, Rule::atom(f.ap, f.var, true));
            return q;
        }
        case FKind::Not: {
            if (f.left->kind != FKind::Atom) throw BuildError("formula is not in negation normal form");
            StateId q = a_.add_state(false, label(fp), group(fp));
            a_.set_rule(q, Rule::atom(f.left->ap, f.left->var, false));
            return q;
        }
        case FKind::And:
        case FKind::Or: {
            int g = group(fp);
            StateId l = build(f.left);
            StateId r = build(f.right);
            StateId q = a_.add_state(false, f.kind == FKind::And ? "and" : "or", g);
            std::vector<RulePtr> ks{Rule::inline_state(l), Rule::inline_state(r)};
            a_.set_rule(q, f.kind == FKind::And ? Rule::conj(std::move(ks)) : Rule::disj(std::move(ks)));
            return q;
        }
        case FKind::Forall:
            throw BuildError("formula is not in negation normal form");
        case FKind::Exists:
        case FKind::NotExists:
            return quantifier(fp);
        case FKind::Diamond:
        case FKind::Box:
        case FKind::Delta:
            return modal(fp);
        case FKind::NotDelta:
            return not_delta(fp);
        }
        throw BuildError("unknown formula kind");
    }

private:
    FormulaAba& a_;
    std::size_t n_;
    const WorldInterp& w_;
    const Kts* kts_;
    const BuildOptions& opt_;
    std::size_t nd_depth_;

    std::string label(const FormulaPtr& f) const {
        if (opt_.sig) {
            try {
                return print(*f, *opt_.sig);
            } catch (const std::exception&) {
            }
        }
        return "phi";
    }

    int group(const FormulaPtr& f) { return a_.add_group(label(f)); }

    void record(const std::string& stage, const std::string& detail, std::size_t states) const {
        if (opt_.sizes) opt_.sizes->push_back({stage, detail, states});
    }

    StateId quantifier(const FormulaPtr& fp) {
        const Formula& f = *fp;
        if (!kts_ || w_.mode != WorldInterp::Mode::KtsStates)
            throw BuildError("path quantifiers are only supported over a KTS");
        if (static_cast<std::size_t>(f.var) != n_)
            throw BuildError("quantifier binds path " + std::to_string(f.var + 1) + " at depth " +
                             std::to_string(n_ + 1));
        auto body = build_aba(f.left, n_ + 1, w_, kts_, opt_);
        record("formula-aba", label(f.left), body->num_states());
        auto ex = exists_construction(body, *kts_, n_);
        record("mh", label(f.left), ex->mh().num_states());
        record("exists", label(fp), ex->num_states());
        int g = group(fp);
        if (f.kind == FKind::Exists) return a_.embed(ex, g);
        auto comp = std::make_shared<ComplementAba>(ex);
        record("complement", label(fp), comp->num_states());
        return a_.embed(comp, g);
    }

    StateId not_delta(const FormulaPtr& fp) {
        if (nd_depth_ + 1 > opt_.not_delta_cap && opt_.warnings) {
            opt_.warnings->push_back("negated delta nested " + std::to_string(nd_depth_ + 1) +
                                     " deep exceeds the configured cap of " + std::to_string(opt_.not_delta_cap));
        }
        auto d = std::make_shared<FormulaAba>(a_.domain(), w_);
        Builder sub(*d, n_, w_, kts_, opt_, nd_depth_ + 1);
        d->set_initial(sub.build(f_delta(fp->prog)));
        auto comp = std::make_shared<ComplementAba>(d);
        record("complement", label(fp), comp->num_states());
        return a_.embed(comp, group(fp));
    }

    // v_k replaced by rho of test entry k (or a move to it when as_var)
    static RulePtr subst(const Guard& g, const std::vector<StateId>& tests, bool as_var) {
        switch (g.kind) {
        case Guard::Kind::True: return Rule::constant(true);
        case Guard::Kind::False: return Rule::constant(false);
        case Guard::Kind::Var: return as_var ? Rule::var(tests.at(g.var)) : Rule::inline_state(tests.at(g.var));
        case Guard::Kind::And: return Rule::conj({subst(*g.left, tests, as_var), subst(*g.right, tests, as_var)});
        case Guard::Kind::Or: return Rule::disj({subst(*g.left, tests, as_var), subst(*g.right, tests, as_var)});
        }
        return Rule::constant(false);
    }

    // dual of the guard with v_k replaced by rho of the negated test entry
    static RulePtr subst_dual(const Guard& g, const std::vector<StateId>& neg_tests) {
        switch (g.kind) {
        case Guard::Kind::True: return Rule::constant(false);
        case Guard::Kind::False: return Rule::constant(true);
        case Guard::Kind::Var: return Rule::inline_state(neg_tests.at(g.var));
        case Guard::Kind::And: return Rule::disj({subst_dual(*g.left, neg_tests), subst_dual(*g.right, neg_tests)});
        case Guard::Kind::Or: return Rule::conj({subst_dual(*g.left, neg_tests), subst_dual(*g.right, neg_tests)});
        }
        return Rule::constant(true);
    }

    static RulePtr mask_rule(TestMask x, const std::vector<StateId>& tests, bool conj, bool as_var) {
        std::vector<RulePtr> ks;
        for (std::size_t k = 0; k < tests.size(); ++k) {
            if (!((x >> k) & 1)) continue;
            ks.push_back(as_var ? Rule::var(tests[k]) : Rule::inline_state(tests[k]));
        }
        return conj ? Rule::conj(std::move(ks)) : Rule::disj(std::move(ks));
    }

    StateId modal(const FormulaPtr& fp) {
        const Formula& f = *fp;
        MarkedNfa m = build_marked_nfa(f.prog, n_);
        record("marked-nfa", label(fp), static_cast<std::size_t>(m.num_states()));
        int g = group(fp);
        bool box = f.kind == FKind::Box;
        bool delta = f.kind == FKind::Delta;
        std::vector<StateId> tests;
        for (const auto& t : m.tests) tests.push_back(build(box ? to_nnf(f_not(t)) : t));
        StateId body = delta ? kSinkTrue : build(f.left);
        std::vector<StateId> s(m.num_states());
        for (int q = 0; q < m.num_states(); ++q)
            s[q] = a_.add_state(box, "m" + std::to_string(q), g);
        StateId d0 = delta ? a_.add_state(true, "delta", g) : kSinkTrue;
        bool explicit_mode = opt_.guard_mode == GuardMode::Explicit;

        for (int q = 0; q < m.num_states(); ++q) {
            std::vector<RulePtr> alts;
            if (explicit_mode) {
                for (auto [x, q1] : eps_closure(m, q)) {
                    for (int ei : m.tup_out[q1]) {
                        const TupEdge& e = m.tup_edges[ei];
                        if (box) {
                            alts.push_back(Rule::disj({Rule::guard(e.guard, false), Rule::var(s[e.dst]),
                                                       mask_rule(x, tests, false, false)}));
                        } else if (delta) {
                            std::vector<RulePtr> ends{Rule::var(s[e.dst])};
                            for (auto [y, q2] : eps_closure(m, e.dst))
                                if (q2 == m.final_state)
                                    ends.push_back(Rule::conj({Rule::var(d0), mask_rule(y, tests, true, true)}));
                            alts.push_back(Rule::conj({Rule::guard(e.guard, true), mask_rule(x, tests, true, false),
                                                       Rule::disj(std::move(ends))}));
                        } else {
                            alts.push_back(Rule::conj({Rule::guard(e.guard, true), Rule::var(s[e.dst]),
                                                       mask_rule(x, tests, true, false)}));
                        }
                    }
                    if (q1 == m.final_state && !delta) {
                        if (box) alts.push_back(Rule::disj({Rule::inline_state(body), mask_rule(x, tests, false, false)}));
                        else alts.push_back(Rule::conj({Rule::inline_state(body), mask_rule(x, tests, true, false)}));
                    }
                }
            } else {
                for (const TupEdge& e : m.tup_edges) {
                    GuardPtr ep = eps_formula(m, q, e.src);
                    if (ep->kind == Guard::Kind::False) continue;
                    if (box) {
                        alts.push_back(Rule::disj({Rule::guard(e.guard, false), Rule::var(s[e.dst]),
                                                   subst_dual(*ep, tests)}));
                    } else if (delta) {
                        GuardPtr fin = eps_formula(m, e.dst, m.final_state);
                        RulePtr end = Rule::disj({Rule::var(s[e.dst]),
                                                  Rule::conj({Rule::var(d0), subst(*fin, tests, true)})});
                        alts.push_back(Rule::conj({Rule::guard(e.guard, true), subst(*ep, tests, false), end}));
                    } else {
                        alts.push_back(Rule::conj({Rule::guard(e.guard, true), Rule::var(s[e.dst]),
                                                   subst(*ep, tests, false)}));
                    }
                }
                if (!delta) {
                    GuardPtr ef = eps_formula(m, q, m.final_state);
                    if (box) alts.push_back(Rule::disj({Rule::inline_state(body), subst_dual(*ef, tests)}));
                    else alts.push_back(Rule::conj({Rule::inline_state(body), subst(*ef, tests, false)}));
                }
            }
            a_.set_rule(s[q], box ? Rule::conj(std::move(alts)) : Rule::disj(std::move(alts)));
        }

        if (!delta) return s[m.initial];

        // the fresh delta state starts a segment like the initial state and
        // accepts outright when the program matches the empty word
        std::vector<RulePtr> alts;
        if (explicit_mode) {
            for (auto [x, q1] : eps_closure(m, m.initial)) {
                for (int ei : m.tup_out[q1]) {
                    const TupEdge& e = m.tup_edges[ei];
                    std::vector<RulePtr> ends{Rule::var(s[e.dst])};
                    for (auto [y, q2] : eps_closure(m, e.dst))
                        if (q2 == m.final_state)
                            ends.push_back(Rule::conj({Rule::var(d0), mask_rule(y, tests, true, true)}));
                    alts.push_back(Rule::conj({Rule::guard(e.guard, true), mask_rule(x, tests, true, false),
                                               Rule::disj(std::move(ends))}));
                }
                if (q1 == m.final_state) alts.push_back(mask_rule(x, tests, true, false));
            }
        } else {
            for (const TupEdge& e : m.tup_edges) {
                GuardPtr ep = eps_formula(m, m.initial, e.src);
                if (ep->kind == Guard::Kind::False) continue;
                GuardPtr fin = eps_formula(m, e.dst, m.final_state);
                RulePtr end = Rule::disj({Rule::var(s[e.dst]), Rule::conj({Rule::var(d0), subst(*fin, tests, true)})});
                alts.push_back(Rule::conj({Rule::guard(e.guard, true), subst(*ep, tests, false), end}));
            }
            alts.push_back(subst(*eps_formula(m, m.initial, m.final_state), tests, false));
        }
        a_.set_rule(d0, Rule::disj(std::move(alts)));
        return d0;
    }
};

}  // namespace

std::shared_ptr<FormulaAba> build_aba(const FormulaPtr& f, std::size_t n, const WorldInterp& w, const Kts* kts,
                                      const BuildOptions& opt) {
    if (w.mode == WorldInterp::Mode::KtsStates && !w.kts) throw BuildError("kts worlds without a KTS");
    int programs = kts ? kts->num_programs() : (opt.sig ? static_cast<int>(opt.sig->programs.size()) : 0);
    if (programs <= 0) throw BuildError("no atomic programs known for the letter domain");
    LetterDomain dom{n, w.num_worlds(), programs};
    auto a = std::make_shared<FormulaAba>(dom, w);
    Builder b(*a, n, w, kts, opt, 0);
    a->set_initial(b.build(f));
    return a;
}

}  // namespace hyperpdl
