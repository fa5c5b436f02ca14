#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperpdl/syntax.hpp"

namespace hyperpdl {

// ((P_1..P_n), tau): exact proposition sets per path and a program tuple.
struct OmegaSymbol {
    std::vector<std::uint64_t> sets;
    TupleSym tup;
    bool operator==(const OmegaSymbol&) const = default;
};

struct Regex;
using RegexPtr = std::shared_ptr<const Regex>;

struct Regex {
    enum class Kind { Eps, Sym, Union, Concat, Star };
    Kind kind = Kind::Eps;
    OmegaSymbol sym;
    RegexPtr left, right;
};

RegexPtr re_eps();
RegexPtr re_sym(OmegaSymbol s);
RegexPtr re_union(RegexPtr a, RegexPtr b);
RegexPtr re_concat(RegexPtr a, RegexPtr b);
RegexPtr re_star(RegexPtr a);

bool nullable(const Regex& r);

struct OmegaPair {
    RegexPtr stem;
    RegexPtr loop;
};

struct OmegaRegularSpec {
    Signature sig;
    std::size_t arity = 1;
    std::vector<OmegaPair> pairs;
};

class OmegaError : public std::runtime_error {
public:
    OmegaError(std::size_t line, const std::string& msg)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Format:
//   aps a b
//   programs s t
//   arity 2
//   pair:
//     stem: eps
//     loop: [{a},{}]|(s,_) ([{},{b}]|(t,t))*
// Regexes use juxtaposition or `;` for concatenation, `+` for union,
// postfix `*`, parentheses and `eps`.
OmegaRegularSpec parse_omega_spec(const std::string& text);
RegexPtr parse_regex(const std::string& text, const Signature& sig, std::size_t arity);

std::string print_regex(const Regex& r, const Signature& sig);

// Program for a regex: every symbol becomes a label test followed by its tuple.
ProgramPtr regex_program(const Regex& r, std::size_t arity, const Signature& sig);
FormulaPtr symbol_test(const OmegaSymbol& s, const Signature& sig);

// Disjunction of <stem> delta loop over paths p1..pn.
FormulaPtr compile_omega(const OmegaRegularSpec& spec);

// Path names used by compile_omega.
std::vector<std::string> omega_path_names(std::size_t arity);

}  // namespace hyperpdl
