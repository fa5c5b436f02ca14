#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperpdl/automaton.hpp"
#include "hyperpdl/kts.hpp"
#include "hyperpdl/lasso.hpp"
#include "hyperpdl/syntax.hpp"

namespace hyperpdl {

// How worlds are read: KTS states with their labels, or proposition sets
// encoded as bit masks.
struct WorldInterp {
    enum class Mode { KtsStates, PropSets };
    Mode mode = Mode::PropSets;
    const Kts* kts = nullptr;
    std::size_t num_aps = 0;

    static WorldInterp states(const Kts& k) { return {Mode::KtsStates, &k, k.sig.aps.size()}; }
    static WorldInterp prop_sets(std::size_t aps) { return {Mode::PropSets, nullptr, aps}; }

    bool holds(int ap, int world) const {
        if (mode == Mode::KtsStates) return kts->holds(ap, world);
        return (static_cast<std::uint64_t>(world) >> ap) & 1;
    }
    int num_worlds() const {
        if (mode == Mode::KtsStates) return kts->num_states();
        return 1 << num_aps;
    }
};

// Paths with equal stem and period lengths.
struct LassoAssignment {
    std::vector<PathLasso> paths;
    std::size_t stem = 0;
    std::size_t period = 1;

    std::size_t length() const { return stem + period; }
    std::size_t next(std::size_t p) const { return p + 1 < length() ? p + 1 : stem; }
    std::size_t normalize(std::size_t p) const { return p < stem ? p : stem + (p - stem) % period; }
    const PathStep& step(std::size_t path, std::size_t pos) const { return paths[path].at(pos); }
    // the assignment seen from position p on
    LassoAssignment suffix(std::size_t p) const;
};

LassoAssignment align_lassos(const std::vector<PathLasso>& ls);

// nu: letter j holds the worlds at step j and the programs leading to j+1
LassoWord<Letter> encode(const LassoAssignment& pa);

class OracleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct OracleOptions {
    enum class Quantifiers { None, Deterministic, Bounded, TraceSet };
    Quantifiers quantifiers = Quantifiers::None;
    const Kts* kts = nullptr;          // Deterministic and Bounded
    std::size_t bound = 4;             // Bounded: stem + period
    std::vector<PathLasso> traces;     // TraceSet
    bool memoize = true;
};

struct OracleVerdict {
    bool value = false;
    bool bounded = false;  // true when a bounded quantifier was used
    std::size_t bound = 0;
};

OracleVerdict eval_formula(const LassoAssignment& pa, std::size_t pos, const FormulaPtr& f,
                           const WorldInterp& w, const OracleOptions& opt = {});

// Normalized end positions k with (pa, pos, k) in R(alpha).
std::vector<std::size_t> eval_segments(const LassoAssignment& pa, std::size_t pos, const ProgramPtr& alpha,
                                       const WorldInterp& w, const OracleOptions& opt = {});

bool eval_delta(const LassoAssignment& pa, std::size_t pos, const ProgramPtr& alpha, const WorldInterp& w,
                const OracleOptions& opt = {});

// All lasso paths of k from s with stem + period <= bound.
std::vector<PathLasso> enumerate_paths(const Kts& k, int s, std::size_t bound);

// Lasso file format: `path p1: (q0 s) (q1 t) | (q1 t)`; in trace mode the
// world entry is a proposition set `{a b}`.
struct ParsedLassos {
    std::vector<std::string> names;
    std::vector<PathLasso> paths;
};
ParsedLassos parse_lassos(const std::string& text, const Signature& sig, const Kts* kts);
std::string print_lasso(const std::string& name, const PathLasso& p, const Signature& sig, const Kts* kts);

}  // namespace hyperpdl
