#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperpdl/formula_automata.hpp"
#include "hyperpdl/kts.hpp"
#include "hyperpdl/syntax.hpp"

namespace hyperpdl {

struct CheckOptions {
    GuardMode guard_mode = GuardMode::Succinct;
    std::size_t not_delta_cap = 2;
    bool concurrent = false;
};

struct SubformulaVerdict {
    std::string formula;   // the existential subformula that was checked
    bool nonempty = false;
    bool negated = false;  // occurs under a top-level negation
    double seconds = 0;
    std::vector<StageSize> sizes;
    // first path of a satisfying assignment, when one was found
    std::optional<PathLasso> witness;
    // the accepted word of the unit-alphabet automaton, as states
    std::vector<std::string> run;
};

struct Verdict {
    bool result = false;
    std::size_t criticality = 0;
    std::vector<SubformulaVerdict> subformulas;
    std::vector<std::string> warnings;
    double seconds = 0;
};

class ModelCheckError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Verdict model_check(const Kts& kts, const FormulaPtr& f, const CheckOptions& opt = {});

// Checks a single existential formula exists p. body (NNF body).
SubformulaVerdict check_exists(const Kts& kts, const FormulaPtr& exists_formula, const CheckOptions& opt = {},
                               std::vector<std::string>* warnings = nullptr);

}  // namespace hyperpdl
