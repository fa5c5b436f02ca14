#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "hyperpdl/automaton.hpp"
#include "hyperpdl/criticality.hpp"
#include "hyperpdl/kts.hpp"
#include "hyperpdl/marked_nfa.hpp"
#include "hyperpdl/omega.hpp"
#include "hyperpdl/oracle.hpp"
#include "hyperpdl/syntax.hpp"

namespace testsupport {

using namespace hyperpdl;
using Rng = std::mt19937_64;

int uniform(Rng& rng, int lo, int hi);  // inclusive
bool coin(Rng& rng, double p = 0.5);

std::vector<std::string> path_names(std::size_t n);

// ---- generators

Kts random_kts(Rng& rng, int max_states, const Signature& sig);
// lasso path through k from its initial state with stem <= max_stem and
// 1 <= period <= max_period
PathLasso random_kts_path(Rng& rng, const Kts& k, std::size_t max_stem, std::size_t max_period);
PathLasso random_trace(Rng& rng, std::size_t aps, int programs, std::size_t stem, std::size_t period);

struct GenLimits {
    std::size_t paths = 1;
    int aps = 1;
    int programs = 1;
    bool allow_delta = true;
    bool allow_tests = true;
};

// quantifier-free formula with at most max_nodes nodes (size()); not NNF
FormulaPtr random_formula(Rng& rng, const GenLimits& lim, std::size_t max_nodes);
ProgramPtr random_program(Rng& rng, const GenLimits& lim, std::size_t max_nodes);

// random alternating automaton with explicit transition table
std::shared_ptr<ExplicitAba> random_aba(Rng& rng, std::size_t states, const LetterDomain& dom);
LassoWord<Letter> random_word(Rng& rng, const LetterDomain& dom, std::size_t max_stem, std::size_t max_period);

// ---- independent oracles

// Acceptance of a lasso by an alternating automaton, decided by solving
// the Buchi game on the product with the lasso positions.
bool game_accepts(const Automaton& a, const LassoWord<Letter>& w);

// Membership of a lasso over ((2^AP)^n x Sigma^n) in the language of the
// spec, through a position automaton per regex.
bool omega_spec_accepts(const OmegaRegularSpec& spec, const LassoWord<Letter>& w);

// Alternation depth of a HyperCTL* formula, counted on its negation normal
// form.  Nested quantifiers count when they switch the quantifier type of the
// enclosing scope, or when they sit first in the left operand of an until
// (right operand of a release) of an existential scope, and dually.
std::size_t alternation_depth(const CtlPtr& f);

// Normalized end positions k with a state sequence through M_alpha from
// position i to k; tests are decided by the oracle.
std::set<std::size_t> state_sequence_ends(const MarkedNfa& m, const LassoAssignment& pa, std::size_t i,
                                          const WorldInterp& w);

// All sets X with q =>eps_X q2, by direct path enumeration.
std::vector<TestMask> eps_path_sets(const MarkedNfa& m, int q, int q2);

// DOT syntax check: strict subset of the Graphviz grammar used here.
bool valid_dot(const std::string& text, std::string* error = nullptr);

}  // namespace testsupport
