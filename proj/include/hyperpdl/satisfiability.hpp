#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperpdl/formula_automata.hpp"
#include "hyperpdl/lasso.hpp"
#include "hyperpdl/syntax.hpp"

namespace hyperpdl {

enum class Fragment { ForallStar, ExistsStar, ExistsForall, Unsupported };

const char* fragment_name(Fragment f);

Fragment classify_fragment(const FormulaPtr& f);

// Leading quantifiers and the quantifier-free body.
struct Prefix {
    std::vector<bool> universal;
    std::vector<std::string> names;
    FormulaPtr body;
};
Prefix split_prefix(const FormulaPtr& f);

// Compresses the entries of t at the positions in group into one entry.
// The result is a single-path program: (_), (s) or {false}? ; (_).
ProgramPtr compress_tuple(const TupleSym& t, const std::vector<std::size_t>& group);

// psi[into/from]: path `from` is identified with path `into` and removed;
// tuples are compressed pairwise on the two positions.
FormulaPtr merge_paths(const FormulaPtr& psi, std::size_t from, std::size_t into);
ProgramPtr merge_paths(const ProgramPtr& alpha, std::size_t from, std::size_t into);

struct SatOptions {
    std::size_t letter_cap = 1000000;
    GuardMode guard_mode = GuardMode::Succinct;
};

struct SatResult {
    Fragment fragment = Fragment::Unsupported;
    bool satisfiable = false;
    // formula handed to the automaton: psi' for the universal fragment, the
    // expansion for the existential-universal one, the body otherwise
    FormulaPtr reduced;
    std::size_t paths = 0;  // number of paths of `reduced`
    std::vector<std::string> path_names;
    std::vector<PathLasso> witness;  // one trace per path of `reduced`
    std::size_t automaton_states = 0;
};

class SatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// n-path quantifier-free psi over proposition-set worlds.
SatResult sat_body(const FormulaPtr& psi, std::size_t n, const Signature& sig, const SatOptions& opt = {});

SatResult sat_forall(const FormulaPtr& f, const Signature& sig, const SatOptions& opt = {});
SatResult sat_exists(const FormulaPtr& f, const Signature& sig, const SatOptions& opt = {});
SatResult sat_exists_forall(const FormulaPtr& f, const Signature& sig, const SatOptions& opt = {});

// the compressed psi' of a universal formula
FormulaPtr forall_reduction(const FormulaPtr& f);
// exists p1..pn. conjunction over all choices of merge targets
FormulaPtr exists_forall_expansion(const FormulaPtr& f);

// dispatches on the fragment; throws SatError for Unsupported
SatResult decide_satisfiability(const FormulaPtr& f, const Signature& sig, const SatOptions& opt = {});

}  // namespace hyperpdl
