#include "hyperpdl/satisfiability.hpp"

#include <set>

#include "hyperpdl/oracle.hpp"

namespace hyperpdl {

const char* fragment_name(Fragment f) {
    switch (f) {
    case Fragment::ForallStar: return "forall*";
    case Fragment::ExistsStar: return "exists*";
    case Fragment::ExistsForall: return "exists*forall*";
    case Fragment::Unsupported: return "unsupported";
    }
    return "?";
}

Prefix split_prefix(const FormulaPtr& f) {
    Prefix p;
    FormulaPtr cur = f;
    while (cur->kind == FKind::Exists || cur->kind == FKind::Forall) {
        p.universal.push_back(cur->kind == FKind::Forall);
        p.names.push_back(cur->name);
        cur = cur->left;
    }
    p.body = cur;
    return p;
}

Fragment classify_fragment(const FormulaPtr& f) {
    Prefix p = split_prefix(f);
    if (!is_quantifier_free(*p.body)) return Fragment::Unsupported;
    std::size_t i = 0;
    while (i < p.universal.size() && !p.universal[i]) ++i;
    std::size_t exist = i;
    while (i < p.universal.size() && p.universal[i]) ++i;
    if (i != p.universal.size()) return Fragment::Unsupported;
    std::size_t univ = p.universal.size() - exist;
    if (univ == 0) return Fragment::ExistsStar;
    if (exist == 0) return Fragment::ForallStar;
    return Fragment::ExistsForall;
}

ProgramPtr compress_tuple(const TupleSym& t, const std::vector<std::size_t>& group) {
    std::set<int> progs;
    for (std::size_t k : group)
        if (t.entries.at(k) != kWildcard) progs.insert(t.entries[k]);
    if (progs.empty()) return p_tup(TupleSym{{kWildcard}});
    if (progs.size() == 1) return p_tup(TupleSym{{*progs.begin()}});
    return p_concat(p_test(f_false()), p_tup(TupleSym{{kWildcard}}));
}

namespace {

int shift(int v, std::size_t from, std::size_t into) {
    if (static_cast<std::size_t>(v) == from) v = static_cast<int>(into);
    return static_cast<std::size_t>(v) > from ? v - 1 : v;
}

struct Merger {
    std::size_t from, into;
    std::string into_name;

    FormulaPtr f(const FormulaPtr& x) {
        switch (x->kind) {
        case FKind::True:
        case FKind::False:
            return x;
        case FKind::Atom:
            return f_atom(x->ap, shift(x->var, from, into),
                          static_cast<std::size_t>(x->var) == from && !into_name.empty() ? into_name : x->name);
        case FKind::Not: return f_not(f(x->left));
        case FKind::And: return f_and(f(x->left), f(x->right));
        case FKind::Or: return f_or(f(x->left), f(x->right));
        case FKind::Diamond: return f_diamond(p(x->prog), f(x->left));
        case FKind::Box: return f_box(p(x->prog), f(x->left));
        case FKind::Delta: return f_delta(p(x->prog));
        case FKind::NotDelta: return f_not_delta(p(x->prog));
        default:
            throw SatError("path merging needs a quantifier-free formula");
        }
    }

    ProgramPtr p(const ProgramPtr& x) {
        switch (x->kind) {
        case PKind::Eps: return x;
        case PKind::Tup: {
            const auto& e = x->tup.entries;
            ProgramPtr c = compress_tuple(x->tup, {into, from});
            TupleSym out;
            for (std::size_t k = 0; k < e.size(); ++k) {
                if (k == from) continue;
                out.entries.push_back(k == into ? kWildcard : e[k]);
            }
            if (c->kind == PKind::Concat) return p_concat(p_test(f_false()), p_any(out.arity()));
            out.entries[into > from ? into - 1 : into] = c->tup.entries[0];
            return p_tup(out);
        }
        case PKind::Sum: return p_sum(p(x->left), p(x->right));
        case PKind::Concat: return p_concat(p(x->left), p(x->right));
        case PKind::Star: return p_star(p(x->left));
        case PKind::Test: return p_test(f(x->test));
        }
        return x;
    }
};

SatResult from_prefix_body(Fragment fr, const FormulaPtr& psi, std::vector<std::string> names,
                           const Signature& sig, const SatOptions& opt) {
    SatResult r = sat_body(psi, names.size(), sig, opt);
    r.fragment = fr;
    r.path_names = std::move(names);
    return r;
}

}  // namespace

FormulaPtr merge_paths(const FormulaPtr& psi, std::size_t from, std::size_t into) {
    Merger m{from, into, {}};
    return m.f(psi);
}

ProgramPtr merge_paths(const ProgramPtr& alpha, std::size_t from, std::size_t into) {
    Merger m{from, into, {}};
    return m.p(alpha);
}

SatResult sat_body(const FormulaPtr& psi, std::size_t n, const Signature& sig, const SatOptions& opt) {
    if (!is_quantifier_free(*psi)) throw SatError("the body must be quantifier free");
    if (sig.programs.empty()) throw SatError("no atomic programs declared");
    if (sig.aps.size() > 20) throw SatError("too many atomic propositions for trace mode");
    double letters = 1;
    for (std::size_t i = 0; i < n; ++i) letters *= static_cast<double>(1u << sig.aps.size()) * sig.programs.size();
    if (letters > static_cast<double>(opt.letter_cap))
        throw SatError("trace alphabet has " + std::to_string(static_cast<long long>(letters)) +
                       " letters, above the cap of " + std::to_string(opt.letter_cap));
    SatResult r;
    r.fragment = Fragment::ExistsStar;
    r.reduced = psi;
    r.paths = n;
    WorldInterp w = WorldInterp::prop_sets(sig.aps.size());
    BuildOptions bo;
    bo.guard_mode = opt.guard_mode;
    bo.sig = &sig;
    auto aba = build_aba(to_nnf(psi), n, w, nullptr, bo);
    auto nba = std::make_shared<MhNba>(aba);
    EmptinessResult e = is_empty(*nba);
    r.automaton_states = nba->num_states();
    r.satisfiable = !e.empty;
    if (e.witness) {
        r.witness.resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            for (const Letter& a : e.witness->stem) r.witness[k].stem.push_back({a.worlds[k], a.progs[k]});
            for (const Letter& a : e.witness->period) r.witness[k].period.push_back({a.worlds[k], a.progs[k]});
        }
    }
    return r;
}

FormulaPtr forall_reduction(const FormulaPtr& f) {
    Prefix p = split_prefix(f);
    FormulaPtr psi = p.body;
    std::string name = p.names.empty() ? "p" : p.names.front();
    for (std::size_t k = p.names.size(); k-- > 1;) {
        Merger m{k, 0, name};
        psi = m.f(psi);
    }
    return psi;
}

SatResult sat_forall(const FormulaPtr& f, const Signature& sig, const SatOptions& opt) {
    if (classify_fragment(f) != Fragment::ForallStar) throw SatError("not a universal formula");
    Prefix p = split_prefix(f);
    return from_prefix_body(Fragment::ForallStar, forall_reduction(f), {p.names.front()}, sig, opt);
}

SatResult sat_exists(const FormulaPtr& f, const Signature& sig, const SatOptions& opt) {
    if (classify_fragment(f) != Fragment::ExistsStar) throw SatError("not an existential formula");
    Prefix p = split_prefix(f);
    return from_prefix_body(Fragment::ExistsStar, p.body, p.names, sig, opt);
}

FormulaPtr exists_forall_expansion(const FormulaPtr& f) {
    Prefix p = split_prefix(f);
    std::size_t n = 0;
    while (n < p.universal.size() && !p.universal[n]) ++n;
    std::size_t m = p.universal.size() - n;
    if (m == 0) return f;
    if (n == 0) throw SatError("no existential path to merge into");
    FormulaPtr conj;
    std::vector<std::size_t> choice(m, 0);
    while (true) {
        FormulaPtr psi = p.body;
        for (std::size_t k = 0; k < m; ++k) {
            Merger mg{n, choice[k], p.names[choice[k]]};
            psi = mg.f(psi);
        }
        conj = conj ? f_and(conj, psi) : psi;
        std::size_t k = m;
        while (k > 0 && ++choice[k - 1] == n) choice[--k] = 0;
        if (k == 0) break;
    }
    for (std::size_t i = n; i-- > 0;) conj = f_exists(static_cast<int>(i), p.names[i], conj);
    return conj;
}

SatResult sat_exists_forall(const FormulaPtr& f, const Signature& sig, const SatOptions& opt) {
    Fragment fr = classify_fragment(f);
    if (fr != Fragment::ExistsForall && fr != Fragment::ExistsStar) throw SatError("not an exists-forall formula");
    FormulaPtr g = exists_forall_expansion(f);
    Prefix p = split_prefix(g);
    SatResult r = from_prefix_body(Fragment::ExistsForall, p.body, p.names, sig, opt);
    r.fragment = fr;
    r.reduced = g;
    return r;
}

SatResult decide_satisfiability(const FormulaPtr& f, const Signature& sig, const SatOptions& opt) {
    switch (classify_fragment(f)) {
    case Fragment::ForallStar: return sat_forall(f, sig, opt);
    case Fragment::ExistsStar: return sat_exists(f, sig, opt);
    case Fragment::ExistsForall: return sat_exists_forall(f, sig, opt);
    case Fragment::Unsupported: break;
    }
    throw SatError(
        "formula is outside the forall*, exists* and exists*forall* fragments; satisfiability of linear "
        "HyperPDL-Delta is undecidable in general");
}

}  // namespace hyperpdl
