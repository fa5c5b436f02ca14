#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hyperpdl/syntax.hpp"

namespace hyperpdl {

struct CriticalQuantifier {
    std::string name;
    int depth;      // number of enclosing quantifiers
    std::string reason;
};

// f must be in NNF.
std::size_t criticality(const FormulaPtr& f);
std::size_t criticality(const FormulaPtr& f, std::vector<CriticalQuantifier>& listing);

// HyperCTL* over the same signature; path variables are resolved by index
// exactly as for HyperPDL-Delta.
struct CtlFormula;
using CtlPtr = std::shared_ptr<const CtlFormula>;

struct CtlFormula {
    enum class Kind { True, Atom, Not, And, Or, Next, Until, Release, Exists, Forall };
    Kind kind = Kind::True;
    int ap = -1;
    int var = -1;
    std::string name;
    CtlPtr left, right;
};

CtlPtr ctl_true();
CtlPtr ctl_atom(int ap, int var, std::string name);
CtlPtr ctl_not(CtlPtr f);
CtlPtr ctl_and(CtlPtr l, CtlPtr r);
CtlPtr ctl_or(CtlPtr l, CtlPtr r);
CtlPtr ctl_next(CtlPtr f);
CtlPtr ctl_until(CtlPtr l, CtlPtr r);
CtlPtr ctl_release(CtlPtr l, CtlPtr r);
CtlPtr ctl_exists(int var, std::string name, CtlPtr body);
CtlPtr ctl_forall(int var, std::string name, CtlPtr body);

// Modalities need the current number of paths for the wildcard tuple; it
// is tracked from the enclosing quantifiers.
FormulaPtr translate_hyperctlstar(const CtlPtr& f);

}  // namespace hyperpdl
