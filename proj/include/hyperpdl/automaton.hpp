#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hyperpdl/lasso.hpp"

namespace hyperpdl {

using StateId = std::uint32_t;
inline constexpr StateId kSinkTrue = 0;
inline constexpr StateId kSinkFalse = 1;

using StateSet = std::vector<StateId>;  // sorted, duplicate free

// Positive boolean combination of states.  Var of a sink folds into the
// matching constant.
class PosBool {
public:
    enum class Kind { True, False, Var, And, Or };

    static PosBool t();
    static PosBool f();
    static PosBool var(StateId q);
    static PosBool conj(std::vector<PosBool> kids);
    static PosBool disj(std::vector<PosBool> kids);
    static PosBool conj(PosBool a, PosBool b) { return conj(std::vector<PosBool>{std::move(a), std::move(b)}); }
    static PosBool disj(PosBool a, PosBool b) { return disj(std::vector<PosBool>{std::move(a), std::move(b)}); }

    Kind kind() const { return node_->kind; }
    StateId state() const { return node_->var; }
    const std::vector<PosBool>& kids() const { return node_->kids; }

    bool is_true() const { return kind() == Kind::True; }
    bool is_false() const { return kind() == Kind::False; }

    // swap And/Or and True/False
    PosBool dual() const;
    // replace every Var(q) by f(q)
    template <class F>
    PosBool map_vars(F&& f) const;
    bool eval(const StateSet& chosen) const;
    void collect_vars(StateSet& out) const;
    std::string str() const;

private:
    struct Node {
        Kind kind;
        StateId var;
        std::vector<PosBool> kids;
    };
    explicit PosBool(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

template <class F>
PosBool PosBool::map_vars(F&& f) const {
    switch (kind()) {
    case Kind::True:
    case Kind::False:
        return *this;
    case Kind::Var:
        return f(state());
    case Kind::And:
    case Kind::Or: {
        std::vector<PosBool> ks;
        ks.reserve(kids().size());
        for (const auto& k : kids()) ks.push_back(k.map_vars(f));
        return kind() == Kind::And ? conj(std::move(ks)) : disj(std::move(ks));
    }
    }
    return *this;
}

// Minimal satisfying sets, subsumption pruned.  True gives {{}}, False {}.
std::vector<StateSet> minimal_models(const PosBool& b);

// A letter of (W^n x Sigma^n): one world and one program per path.
struct Letter {
    std::vector<int> worlds;
    std::vector<int> progs;
    bool operator==(const Letter&) const = default;
    bool operator<(const Letter& o) const {
        return worlds != o.worlds ? worlds < o.worlds : progs < o.progs;
    }
};

struct LetterDomain {
    std::size_t arity = 0;
    int num_worlds = 1;
    int num_programs = 1;

    std::size_t size() const;
    Letter letter(std::size_t index) const;
    std::size_t index(const Letter& a) const;
    bool contains(const Letter& a) const;
};

class Automaton {
public:
    virtual ~Automaton() = default;
    virtual StateId initial() const = 0;
    // State ids are below this bound.  Lazily built automata report the
    // states discovered so far.
    virtual std::size_t num_states() const = 0;
    virtual bool accepting(StateId q) const = 0;
    virtual PosBool rho(StateId q, const Letter& a) const = 0;
    virtual const LetterDomain& domain() const = 0;
    virtual std::string state_name(StateId q) const;
};

using AutomatonPtr = std::shared_ptr<const Automaton>;

// Wraps a reference without taking ownership.
AutomatonPtr borrow(const Automaton& a);

// Transition table indexed by letter index; used for explicit automata.
class ExplicitAba : public Automaton {
public:
    ExplicitAba(LetterDomain d, std::size_t n, StateId init);

    void set_accepting(StateId q, bool acc) { acc_.at(q) = acc; }
    void set_rho(StateId q, std::size_t letter, PosBool b) { table_.at(q).at(letter) = std::move(b); }
    void set_name(StateId q, std::string name) { names_.at(q) = std::move(name); }

    StateId initial() const override { return init_; }
    std::size_t num_states() const override { return acc_.size(); }
    bool accepting(StateId q) const override { return acc_.at(q); }
    PosBool rho(StateId q, const Letter& a) const override;
    const LetterDomain& domain() const override { return dom_; }
    std::string state_name(StateId q) const override;

private:
    LetterDomain dom_;
    StateId init_;
    std::vector<bool> acc_;
    std::vector<std::vector<PosBool>> table_;
    std::vector<std::string> names_;
};

// Miyano-Hayashi dealternation, built lazily.  Thread safe.
class MhNba : public Automaton {
public:
    explicit MhNba(AutomatonPtr src);

    StateId initial() const override { return init_; }
    std::size_t num_states() const override;
    bool accepting(StateId q) const override;
    PosBool rho(StateId q, const Letter& a) const override;
    const LetterDomain& domain() const override { return src_->domain(); }
    std::string state_name(StateId q) const override;

    // explores every state reachable over the whole letter domain
    std::size_t materialize() const;
    std::pair<StateSet, StateSet> pair_of(StateId q) const;
    const Automaton& source() const { return *src_; }

private:
    AutomatonPtr src_;
    StateId init_;
    mutable std::mutex mu_;
    mutable std::map<std::pair<StateSet, StateSet>, StateId> ids_;
    mutable std::vector<std::pair<StateSet, StateSet>> pairs_;
    mutable std::unordered_map<std::uint64_t, PosBool> cache_;

    StateId intern(StateSet s, StateSet o) const;
};

// Dualization plus the rank construction.  The source is explored over its
// letter domain to fix the state count.
class ComplementAba : public Automaton {
public:
    explicit ComplementAba(AutomatonPtr src);

    StateId initial() const override { return init_; }
    std::size_t num_states() const override { return 2 + m_ * (2 * m_ + 1); }
    bool accepting(StateId q) const override;
    PosBool rho(StateId q, const Letter& a) const override;
    const LetterDomain& domain() const override { return src_->domain(); }
    std::string state_name(StateId q) const override;

    // number of non-sink source states the ranks range over
    std::size_t source_states() const { return m_; }
    std::size_t max_rank() const { return 2 * m_; }

private:
    AutomatonPtr src_;
    std::vector<StateId> states_;  // reachable non-sink source states
    std::unordered_map<StateId, std::size_t> index_;
    std::size_t m_ = 0;
    StateId init_ = kSinkFalse;

    StateId encode(std::size_t i, std::size_t r) const { return static_cast<StateId>(2 + i * (2 * m_ + 1) + r); }
    PosBool release(StateId q, std::size_t r) const;
};

// States reachable from the initial state over the full letter domain.
std::vector<StateId> reachable_states(const Automaton& a, std::size_t limit = 1000000);

struct EmptinessResult {
    bool empty = true;
    std::optional<LassoWord<Letter>> witness;
    LassoWord<StateId> run;  // automaton states along the witness
};

// Requires a nondeterministic automaton; throws std::invalid_argument on a
// conjunctive transition.
EmptinessResult is_empty(const Automaton& nba);

// Decided as a Buchi game on the product with the lasso positions.
bool accepts_lasso(const Automaton& a, const LassoWord<Letter>& w);

std::string to_dot(const Automaton& a, std::size_t max_states = 400);

}  // namespace hyperpdl
