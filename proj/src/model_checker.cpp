#include "hyperpdl/model_checker.hpp"

#include <chrono>
#include <future>
#include <map>
#include <unordered_map>

#include "hyperpdl/criticality.hpp"

namespace hyperpdl {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Greedy continuation from s: first program, first successor.
void extend_greedy(const Kts& kts, int s, std::vector<PathStep>& steps, PathLasso& out) {
    std::map<int, std::size_t> seen;
    int cur = s;
    while (true) {
        if (seen.count(cur)) break;
        seen[cur] = steps.size();
        int prog = 0, next = -1;
        for (int p = 0; p < kts.num_programs() && next < 0; ++p) {
            if (!kts.succ[cur][p].empty()) {
                prog = p;
                next = kts.succ[cur][p].front();
            }
        }
        steps.push_back({cur, prog});
        cur = next;
    }
    std::size_t loop = seen[cur];
    out.stem.assign(steps.begin(), steps.begin() + static_cast<std::ptrdiff_t>(loop));
    out.period.assign(steps.begin() + static_cast<std::ptrdiff_t>(loop), steps.end());
}

int program_between(const Kts& kts, int s, int t) {
    for (int p = 0; p < kts.num_programs(); ++p)
        for (int d : kts.successors(s, p))
            if (d == t) return p;
    return 0;
}

int first_accepting_program(const Kts& kts, const ExistsNba& ex) {
    const MhNba& mh = ex.mh();
    for (int p = 0; p < kts.num_programs(); ++p) {
        if (kts.successors(kts.init, p).empty()) continue;
        Letter b{{kts.init}, {p}};
        for (const StateSet& m : minimal_models(mh.rho(mh.initial(), b)))
            if (m.empty() || m.front() == kSinkTrue) return p;
    }
    return 0;
}

// Reads the first path off an accepting run of the quantifier automaton.
std::optional<PathLasso> decode_path(const Kts& kts, const ExistsNba& ex, const LassoWord<StateId>& run) {
    std::vector<StateId> states(run.stem);
    states.insert(states.end(), run.period.begin(), run.period.end());
    if (states.empty() || states[0] != ex.initial()) return std::nullopt;
    std::vector<PathStep> steps{{kts.init, 0}};
    for (std::size_t j = 1; j < states.size(); ++j) {
        StateId q = states[j];
        if (q == kSinkFalse) return std::nullopt;
        if (q == kSinkTrue) {
            // any continuation of the last step works
            if (j == 1) steps[0].prog = first_accepting_program(kts, ex);
            const PathStep& last = steps.back();
            PathLasso out;
            extend_greedy(kts, kts.successors(last.world, last.prog).front(), steps, out);
            return out;
        }
        auto t = ex.triple_of(q);
        if (j == 1) steps[0].prog = program_between(kts, steps[0].world, t.s);
        steps.push_back({t.s, t.sigma});
    }
    PathLasso out;
    out.stem.assign(steps.begin(), steps.begin() + static_cast<std::ptrdiff_t>(run.stem.size()));
    out.period.assign(steps.begin() + static_cast<std::ptrdiff_t>(run.stem.size()), steps.end());
    if (out.period.empty()) return std::nullopt;
    return out;
}

struct Skeleton {
    std::vector<FormulaPtr> leaves;  // distinct existential subformulas
    std::unordered_map<FormulaPtr, std::size_t, FormulaHash, FormulaEq> index;

    void collect(const FormulaPtr& f) {
        switch (f->kind) {
        case FKind::True:
        case FKind::False:
            return;
        case FKind::And:
        case FKind::Or:
            collect(f->left);
            collect(f->right);
            return;
        case FKind::Exists:
        case FKind::NotExists: {
            FormulaPtr e = f->kind == FKind::Exists ? f : f_exists(f->var, f->name, f->left);
            if (!index.count(e)) {
                index.emplace(e, leaves.size());
                leaves.push_back(e);
            }
            return;
        }
        default:
            throw ModelCheckError("formula is not closed: atoms and modalities need an enclosing quantifier");
        }
    }

    bool eval(const FormulaPtr& f, const std::vector<bool>& v) const {
        switch (f->kind) {
        case FKind::True: return true;
        case FKind::False: return false;
        case FKind::And: return eval(f->left, v) && eval(f->right, v);
        case FKind::Or: return eval(f->left, v) || eval(f->right, v);
        case FKind::Exists: return v[index.at(f)];
        case FKind::NotExists: return !v[index.at(f_exists(f->var, f->name, f->left))];
        default: return false;
        }
    }

    void mark_negated(const FormulaPtr& f, std::vector<bool>& neg) const {
        if (f->kind == FKind::And || f->kind == FKind::Or) {
            mark_negated(f->left, neg);
            mark_negated(f->right, neg);
        } else if (f->kind == FKind::NotExists) {
            neg[index.at(f_exists(f->var, f->name, f->left))] = true;
        }
    }
};

}  // namespace

SubformulaVerdict check_exists(const Kts& kts, const FormulaPtr& e, const CheckOptions& opt,
                               std::vector<std::string>* warnings) {
    if (e->kind != FKind::Exists || e->var != 0) throw ModelCheckError("expected an outermost existential");
    auto t0 = Clock::now();
    SubformulaVerdict v;
    v.formula = print(*e, kts.sig);
    BuildOptions bo;
    bo.guard_mode = opt.guard_mode;
    bo.not_delta_cap = opt.not_delta_cap;
    bo.warnings = warnings;
    bo.sizes = &v.sizes;
    bo.sig = &kts.sig;
    WorldInterp w = WorldInterp::states(kts);
    auto body = build_aba(e->left, 1, w, &kts, bo);
    v.sizes.push_back({"formula-aba", print(*e->left, kts.sig), body->num_states()});
    auto ex = exists_construction(body, kts, 0);
    v.sizes.push_back({"mh", print(*e->left, kts.sig), ex->mh().num_states()});
    v.sizes.push_back({"exists", v.formula, ex->num_states()});
    EmptinessResult r = is_empty(*ex);
    v.nonempty = !r.empty;
    if (v.nonempty) {
        v.witness = decode_path(kts, *ex, r.run);
        for (StateId q : r.run.stem) v.run.push_back(ex->state_name(q));
        v.run.push_back("|");
        for (StateId q : r.run.period) v.run.push_back(ex->state_name(q));
    }
    v.seconds = since(t0);
    return v;
}

Verdict model_check(const Kts& kts, const FormulaPtr& f, const CheckOptions& opt) {
    auto t0 = Clock::now();
    kts.validate();
    FormulaPtr g = to_nnf(f);
    Verdict out;
    out.criticality = criticality(g);
    Skeleton sk;
    sk.collect(g);

    std::vector<SubformulaVerdict> results(sk.leaves.size());
    std::vector<std::vector<std::string>> warn(sk.leaves.size());
    if (opt.concurrent && sk.leaves.size() > 1) {
        std::vector<std::future<SubformulaVerdict>> jobs;
        for (std::size_t i = 0; i < sk.leaves.size(); ++i)
            jobs.push_back(std::async(std::launch::async,
                                      [&, i] { return check_exists(kts, sk.leaves[i], opt, &warn[i]); }));
        for (std::size_t i = 0; i < jobs.size(); ++i) results[i] = jobs[i].get();
    } else {
        for (std::size_t i = 0; i < sk.leaves.size(); ++i) results[i] = check_exists(kts, sk.leaves[i], opt, &warn[i]);
    }

    std::vector<bool> vals(results.size()), neg(results.size(), false);
    for (std::size_t i = 0; i < results.size(); ++i) vals[i] = results[i].nonempty;
    sk.mark_negated(g, neg);
    for (std::size_t i = 0; i < results.size(); ++i) {
        results[i].negated = neg[i];
        for (auto& w : warn[i]) out.warnings.push_back(w);
    }
    out.result = sk.eval(g, vals);
    out.subformulas = std::move(results);
    out.seconds = since(t0);
    return out;
}

}  // namespace hyperpdl
