#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "hyperpdl/syntax.hpp"

namespace hyperpdl {

using TestMask = std::uint64_t;  // set of TestIds

struct Guard;
using GuardPtr = std::shared_ptr<const Guard>;

// Positive boolean formula over test variables v_k.
struct Guard {
    enum class Kind { True, False, Var, And, Or };
    Kind kind = Kind::True;
    int var = -1;
    GuardPtr left, right;

    static GuardPtr t();
    static GuardPtr f();
    static GuardPtr v(int k);
    // constant-folding constructors
    static GuardPtr conj(GuardPtr a, GuardPtr b);
    static GuardPtr disj(GuardPtr a, GuardPtr b);

    bool eval(TestMask assignment) const;
    std::size_t size() const;
    std::string str() const;
};

struct TupEdge {
    int src;
    TupleSym guard;
    int dst;
};

struct ReachFact {
    int src;
    TestMask tests;
    int dst;
    bool operator==(const ReachFact&) const = default;
};

struct MarkedNfa {
    std::size_t arity = 0;
    std::size_t program_size = 0;
    int initial = 0;
    int final_state = 0;
    std::vector<std::vector<int>> eps;          // eps successors per node
    std::vector<std::vector<int>> tup_out;      // indices into tup_edges per node
    std::vector<TupEdge> tup_edges;
    std::vector<int> marking;                   // TestId or -1
    std::vector<std::vector<int>> star_scope;   // innermost last
    std::vector<int> star_q0, star_qf;          // per star id
    std::vector<FormulaPtr> tests;              // indexed by TestId
    // dp over the automaton without star back edges; filled during build
    std::vector<std::vector<GuardPtr>> dp;

    int num_states() const { return static_cast<int>(eps.size()); }
    TestMask mark_mask(int q) const { return marking[q] < 0 ? 0 : TestMask{1} << marking[q]; }
};

// Throws std::logic_error if a structural bound is violated.
MarkedNfa build_marked_nfa(const ProgramPtr& alpha, std::size_t n);

// pairs (X, q') with q =>eps_X q'
std::vector<std::pair<TestMask, int>> eps_closure(const MarkedNfa& m, int q);
std::vector<ReachFact> eps_reach(const MarkedNfa& m);
std::vector<std::pair<TestMask, int>> tau_reach(const MarkedNfa& m, int q, const std::vector<int>& progs);

const GuardPtr& dp(const MarkedNfa& m, int q, int q2);
GuardPtr eps_formula(const MarkedNfa& m, int q, int q2);
// innermost star construction containing both nodes, or -1
int common_star(const MarkedNfa& m, int q, int q2);

bool is_deterministic(const MarkedNfa& m);

std::string to_dot(const MarkedNfa& m, const Signature& sig);

}  // namespace hyperpdl
