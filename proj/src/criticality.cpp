#include "hyperpdl/criticality.hpp"

#include <algorithm>
#include <stdexcept>

#include "hyperpdl/marked_nfa.hpp"

namespace hyperpdl {

namespace {

// Positions passed since the nearest enclosing quantifier.
struct Ctx {
    bool test = false;      // inside a test
    bool det_test = false;  // inside a test of a box with deterministic M_alpha
    bool box_body = false;  // inside the body of a box
};

class Critic {
public:
    explicit Critic(std::vector<CriticalQuantifier>* listing) : listing_(listing) {}

    std::size_t formula(const Formula& f, bool under_q, Ctx ctx, int depth) {
        switch (f.kind) {
        case FKind::True:
        case FKind::False:
        case FKind::Atom:
            return 0;
        case FKind::Not:
            if (f.left->kind != FKind::Atom) throw std::invalid_argument("criticality expects a formula in NNF");
            return 0;
        case FKind::Forall:
            throw std::invalid_argument("criticality expects a formula in NNF");
        case FKind::And:
        case FKind::Or:
            return std::max(formula(*f.left, under_q, ctx, depth), formula(*f.right, under_q, ctx, depth));
        case FKind::Exists:
        case FKind::NotExists: {
            bool negated = f.kind == FKind::NotExists;
            const char* reason = nullptr;
            if (under_q && !(negated && ctx.det_test)) {
                if (negated) reason = "negated";
                else if (ctx.test) reason = "outermost in a test";
                else if (ctx.box_body) reason = "outermost in a box body";
            }
            std::size_t own = reason ? 1 : 0;
            if (reason && listing_) listing_->push_back({f.name, depth, reason});
            return own + formula(*f.left, true, Ctx{}, depth + 1);
        }
        case FKind::Diamond:
            return std::max(program(*f.prog, under_q, false, ctx, depth), formula(*f.left, under_q, ctx, depth));
        case FKind::Box: {
            bool det = has_test(*f.prog) && is_deterministic(build_marked_nfa(f.prog, arity_of(*f.prog, depth)));
            Ctx body = ctx;
            body.box_body = true;
            return std::max(program(*f.prog, under_q, det, ctx, depth), formula(*f.left, under_q, body, depth));
        }
        case FKind::Delta:
        case FKind::NotDelta:
            return program(*f.prog, under_q, false, ctx, depth);
        }
        return 0;
    }

private:
    std::vector<CriticalQuantifier>* listing_;

    static std::size_t arity_of(const Program& p, int fallback) {
        if (p.kind == PKind::Tup) return p.tup.arity();
        for (const auto& c : {p.left, p.right}) {
            if (!c) continue;
            std::size_t a = arity_of(*c, -1);
            if (a != static_cast<std::size_t>(-1)) return a;
        }
        return static_cast<std::size_t>(fallback);
    }

    static bool has_test(const Program& p) {
        if (p.kind == PKind::Test) return true;
        return (p.left && has_test(*p.left)) || (p.right && has_test(*p.right));
    }

    std::size_t program(const Program& p, bool under_q, bool det_box, Ctx ctx, int depth) {
        switch (p.kind) {
        case PKind::Tup:
        case PKind::Eps:
            return 0;
        case PKind::Test: {
            ctx.test = true;
            ctx.det_test = ctx.det_test || det_box;
            return formula(*p.test, under_q, ctx, depth);
        }
        default: {
            std::size_t a = p.left ? program(*p.left, under_q, det_box, ctx, depth) : 0;
            std::size_t b = p.right ? program(*p.right, under_q, det_box, ctx, depth) : 0;
            return std::max(a, b);
        }
        }
    }
};

}  // namespace

std::size_t criticality(const FormulaPtr& f) {
    Critic c(nullptr);
    return c.formula(*f, false, Ctx{}, 0);
}

std::size_t criticality(const FormulaPtr& f, std::vector<CriticalQuantifier>& listing) {
    Critic c(&listing);
    return c.formula(*f, false, Ctx{}, 0);
}

namespace {

CtlPtr mk(CtlFormula::Kind k, CtlPtr l = nullptr, CtlPtr r = nullptr) {
    auto f = std::make_shared<CtlFormula>();
    f->kind = k;
    f->left = std::move(l);
    f->right = std::move(r);
    return f;
}

}  // namespace

CtlPtr ctl_true() { return mk(CtlFormula::Kind::True); }

CtlPtr ctl_atom(int ap, int var, std::string name) {
    auto f = std::make_shared<CtlFormula>();
    f->kind = CtlFormula::Kind::Atom;
    f->ap = ap;
    f->var = var;
    f->name = std::move(name);
    return f;
}

CtlPtr ctl_not(CtlPtr f) { return mk(CtlFormula::Kind::Not, std::move(f)); }
CtlPtr ctl_and(CtlPtr l, CtlPtr r) { return mk(CtlFormula::Kind::And, std::move(l), std::move(r)); }
CtlPtr ctl_or(CtlPtr l, CtlPtr r) { return mk(CtlFormula::Kind::Or, std::move(l), std::move(r)); }
CtlPtr ctl_next(CtlPtr f) { return mk(CtlFormula::Kind::Next, std::move(f)); }
CtlPtr ctl_until(CtlPtr l, CtlPtr r) { return mk(CtlFormula::Kind::Until, std::move(l), std::move(r)); }
CtlPtr ctl_release(CtlPtr l, CtlPtr r) { return mk(CtlFormula::Kind::Release, std::move(l), std::move(r)); }

CtlPtr ctl_exists(int var, std::string name, CtlPtr body) {
    auto f = mk(CtlFormula::Kind::Exists, std::move(body));
    std::const_pointer_cast<CtlFormula>(f)->var = var;
    std::const_pointer_cast<CtlFormula>(f)->name = std::move(name);
    return f;
}

CtlPtr ctl_forall(int var, std::string name, CtlPtr body) {
    auto f = mk(CtlFormula::Kind::Forall, std::move(body));
    std::const_pointer_cast<CtlFormula>(f)->var = var;
    std::const_pointer_cast<CtlFormula>(f)->name = std::move(name);
    return f;
}

namespace {

FormulaPtr tr(const CtlFormula& f, std::size_t n) {
    using K = CtlFormula::Kind;
    switch (f.kind) {
    case K::True: return f_true();
    case K::Atom: return f_atom(f.ap, f.var, f.name);
    case K::Not: return f_not(tr(*f.left, n));
    case K::And: return f_and(tr(*f.left, n), tr(*f.right, n));
    case K::Or: return f_or(tr(*f.left, n), tr(*f.right, n));
    case K::Next: return f_diamond(p_any(n), tr(*f.left, n));
    case K::Until:
        return f_diamond(p_star(p_concat(p_test(tr(*f.left, n)), p_any(n))), tr(*f.right, n));
    case K::Release:
        return f_box(p_star(p_concat(p_test(f_not(tr(*f.left, n))), p_any(n))), tr(*f.right, n));
    case K::Exists: return f_exists(f.var, f.name, tr(*f.left, n + 1));
    case K::Forall: return f_forall(f.var, f.name, tr(*f.left, n + 1));
    }
    throw std::logic_error("unknown HyperCTL* node");
}

}  // namespace

FormulaPtr translate_hyperctlstar(const CtlPtr& f) { return tr(*f, 0); }

}  // namespace hyperpdl
