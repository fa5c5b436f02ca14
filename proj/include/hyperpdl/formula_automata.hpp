#pragma once

#include <memory>
#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "hyperpdl/automaton.hpp"
#include "hyperpdl/kts.hpp"
#include "hyperpdl/marked_nfa.hpp"
#include "hyperpdl/oracle.hpp"
#include "hyperpdl/syntax.hpp"

namespace hyperpdl {

// Transition rules of a formula automaton.  Inline(q) stands for rho(q, a)
// on the current letter; Var(q) moves to q for the next letter.
struct Rule;
using RulePtr = std::shared_ptr<const Rule>;

struct Rule {
    enum class Kind { Const, Var, Inline, And, Or, Atom, Guard };
    Kind kind = Kind::Const;
    bool positive = true;  // Const value; Atom/Guard polarity
    StateId state = 0;
    int ap = -1, path = -1;
    TupleSym tup;
    std::vector<RulePtr> kids;

    static RulePtr constant(bool v);
    static RulePtr var(StateId q);
    static RulePtr inline_state(StateId q);
    static RulePtr atom(int ap, int path, bool positive);
    static RulePtr guard(TupleSym t, bool positive);
    static RulePtr conj(std::vector<RulePtr> kids);
    static RulePtr disj(std::vector<RulePtr> kids);
    std::string str() const;
};

enum class GuardMode { Succinct, Explicit };

struct StageSize {
    std::string stage;
    std::string detail;
    std::size_t states;
};

struct BuildOptions {
    GuardMode guard_mode = GuardMode::Succinct;
    std::size_t not_delta_cap = 2;
    std::vector<std::string>* warnings = nullptr;
    std::vector<StageSize>* sizes = nullptr;
    const Signature* sig = nullptr;  // names in reports
};

class FormulaAba : public Automaton {
public:
    FormulaAba(LetterDomain dom, WorldInterp w);

    StateId initial() const override { return init_; }
    std::size_t num_states() const override { return owner_.size(); }
    bool accepting(StateId q) const override;
    PosBool rho(StateId q, const Letter& a) const override;
    const LetterDomain& domain() const override { return dom_; }
    std::string state_name(StateId q) const override;

    // construction interface
    StateId add_state(bool acc, std::string name, int group);
    void set_rule(StateId q, RulePtr r);
    StateId embed(AutomatonPtr child, int group);  // returns the child's initial state
    void set_initial(StateId q) { init_ = q; }
    int add_group(std::string label);

    const std::vector<std::string>& groups() const { return groups_; }
    std::string to_dot() const;

private:
    struct Own {
        RulePtr rule;
        bool acc;
        std::string name;
        int group;
    };
    struct Component {
        AutomatonPtr a;
        StateId offset;
        int group;
    };

    LetterDomain dom_;
    WorldInterp w_;
    StateId init_ = kSinkTrue;
    // per state: index into own_ (>= 0) or -(component index) - 1
    std::vector<long> owner_;
    std::vector<Own> own_;
    std::vector<Component> comps_;
    std::vector<std::string> groups_;
    mutable std::mutex mu_;
    mutable std::unordered_map<std::uint64_t, PosBool> cache_;

    PosBool eval(const Rule& r, const Letter& a) const;
    PosBool rho_uncached(StateId q, const Letter& a) const;
};

// Eliminates the last path of an automaton over n+1 paths by simulating it in
// the KTS.  States are (MH state, KTS state, next program) plus a fresh
// initial state; all reachable states are built on construction.
class ExistsNba : public Automaton {
public:
    ExistsNba(AutomatonPtr body, const Kts& kts, std::size_t n);

    struct Triple {
        StateId mh;
        int s;
        int sigma;
    };

    StateId initial() const override { return 2; }
    std::size_t num_states() const override;
    bool accepting(StateId q) const override;
    PosBool rho(StateId q, const Letter& a) const override;
    const LetterDomain& domain() const override { return dom_; }
    std::string state_name(StateId q) const override;

    Triple triple_of(StateId q) const;
    const MhNba& mh() const { return *mh_; }

private:
    std::shared_ptr<MhNba> mh_;
    const Kts& kts_;
    std::size_t n_;
    LetterDomain dom_;
    mutable std::mutex mu_;
    mutable std::vector<Triple> triples_;
    mutable std::map<std::tuple<StateId, int, int>, StateId> ids_;
    mutable std::unordered_map<std::uint64_t, PosBool> cache_;

    StateId intern(StateId mh, int s, int sigma) const;
    PosBool successors(StateId mh_state, int s, int sigma, const Letter& a) const;
};

// A_phi for an NNF formula over n paths.  Quantifiers need kts mode.
std::shared_ptr<FormulaAba> build_aba(const FormulaPtr& f, std::size_t n, const WorldInterp& w,
                                      const Kts* kts, const BuildOptions& opt = {});

// The nondeterministic automaton over n paths for an (NNF) existential
// formula exists v. body at level n.
std::shared_ptr<ExistsNba> exists_construction(AutomatonPtr body, const Kts& kts, std::size_t n);

class BuildError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace hyperpdl
