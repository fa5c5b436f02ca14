#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hyperpdl {

struct Formula;
struct Program;
using FormulaPtr = std::shared_ptr<const Formula>;
using ProgramPtr = std::shared_ptr<const Program>;

inline constexpr int kWildcard = -1;

// Names of atomic propositions and atomic programs; ids are indices.
struct Signature {
    std::vector<std::string> aps;
    std::vector<std::string> programs;

    int ap_id(const std::string& name) const;
    int program_id(const std::string& name) const;
};

struct TupleSym {
    std::vector<int> entries;  // program id or kWildcard

    std::size_t arity() const { return entries.size(); }
    bool matches(const std::vector<int>& progs) const;
    bool all_wildcard() const;
    bool operator==(const TupleSym&) const = default;
};

enum class FKind {
    True, False, Atom, Not, And, Or,
    Exists, Forall, NotExists,
    Diamond, Box, Delta, NotDelta
};

struct Formula {
    FKind kind = FKind::True;
    int ap = -1;
    // Atom: 0-based path index it refers to.  Quantifiers: index bound.
    int var = -1;
    std::string name;  // path variable name
    FormulaPtr left, right;  // unary operators and quantifiers use left
    ProgramPtr prog;
};

enum class PKind { Tup, Eps, Sum, Concat, Star, Test };

struct Program {
    PKind kind = PKind::Eps;
    TupleSym tup;
    ProgramPtr left, right;  // Star uses left
    FormulaPtr test;
};

// constructors
FormulaPtr f_true();
FormulaPtr f_false();
FormulaPtr f_atom(int ap, int var, std::string name);
FormulaPtr f_not(FormulaPtr f);
FormulaPtr f_and(FormulaPtr l, FormulaPtr r);
FormulaPtr f_or(FormulaPtr l, FormulaPtr r);
FormulaPtr f_exists(int var, std::string name, FormulaPtr body);
FormulaPtr f_forall(int var, std::string name, FormulaPtr body);
FormulaPtr f_not_exists(int var, std::string name, FormulaPtr body);
FormulaPtr f_diamond(ProgramPtr p, FormulaPtr body);
FormulaPtr f_box(ProgramPtr p, FormulaPtr body);
FormulaPtr f_delta(ProgramPtr p);
FormulaPtr f_not_delta(ProgramPtr p);

ProgramPtr p_tup(TupleSym t);
ProgramPtr p_any(std::size_t arity);
ProgramPtr p_eps();
ProgramPtr p_sum(ProgramPtr l, ProgramPtr r);
ProgramPtr p_concat(ProgramPtr l, ProgramPtr r);
ProgramPtr p_star(ProgramPtr body);
ProgramPtr p_test(FormulaPtr f);

bool equal(const Formula& a, const Formula& b);
bool equal(const Program& a, const Program& b);
std::size_t hash_value(const Formula& f);
std::size_t hash_value(const Program& p);

struct FormulaHash {
    std::size_t operator()(const FormulaPtr& f) const { return hash_value(*f); }
};
struct FormulaEq {
    bool operator()(const FormulaPtr& a, const FormulaPtr& b) const { return equal(*a, *b); }
};

std::size_t size(const Formula& f);   // formula nodes, programs included
std::size_t size(const Program& p);   // program nodes; a test counts once

bool is_quantifier(FKind k);
bool is_quantifier_free(const Formula& f);
bool is_nnf(const Formula& f);

// Canonical printer.  parse_formula(print(f)) reproduces f.
std::string print(const Formula& f, const Signature& sig);
std::string print(const Program& p, const Signature& sig);

class ParseError : public std::runtime_error {
public:
    enum class Kind { Syntax, Arity, Unbound, ModalityOutsideQuantifier };
    ParseError(Kind k, std::size_t pos, const std::string& msg);
    Kind kind() const { return kind_; }
    std::size_t position() const { return pos_; }

private:
    Kind kind_;
    std::size_t pos_;
};

// free_vars names π_1..π_n available without quantifiers (used for
// quantifier-free formulas evaluated on path assignments).  With no free
// variables the result is checked to be closed.
FormulaPtr parse_formula(const std::string& text, const Signature& sig,
                         const std::vector<std::string>& free_vars = {});
ProgramPtr parse_program(const std::string& text, const Signature& sig,
                         std::size_t arity,
                         const std::vector<std::string>& free_vars = {});

FormulaPtr to_nnf(const FormulaPtr& f);
ProgramPtr to_nnf(const ProgramPtr& p);

}  // namespace hyperpdl
