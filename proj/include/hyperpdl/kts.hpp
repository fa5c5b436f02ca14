#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperpdl/lasso.hpp"
#include "hyperpdl/syntax.hpp"

namespace hyperpdl {

class KtsError : public std::runtime_error {
public:
    KtsError(std::size_t line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

struct Kts {
    Signature sig;
    std::vector<std::string> state_names;
    std::vector<std::uint64_t> labels;  // bit a set iff a in L(s)
    int init = -1;
    // succ[s][sigma]
    std::vector<std::vector<std::vector<int>>> succ;

    int num_states() const { return static_cast<int>(state_names.size()); }
    int num_programs() const { return static_cast<int>(sig.programs.size()); }
    int state_id(const std::string& name) const;
    bool holds(int ap, int s) const { return (labels[s] >> ap) & 1; }
    const std::vector<int>& successors(int s, int sigma) const;

    // Adds a state; returns its id.
    int add_state(const std::string& name, std::uint64_t label);
    void add_edge(int src, int sigma, int dst);
    // throws KtsError naming a dead state
    void validate() const;
};

enum class KtsFormat { Kts, Kripke, Lts };

Kts parse_kts(const std::string& text, KtsFormat format = KtsFormat::Kts);
std::string print_kts(const Kts& k);

PathLasso deterministic_path(const Kts& k, int s);

}  // namespace hyperpdl
