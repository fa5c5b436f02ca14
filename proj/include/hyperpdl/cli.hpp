#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "hyperpdl/syntax.hpp"

namespace hyperpdl {

// Exit codes of the command line tool.
enum ExitCode { kExitHolds = 0, kExitFails = 1, kExitError = 2, kExitUnsupported = 3 };

inline constexpr const char* kReportSchema = "hyperpdl-report/1";

// key=value settings; unknown keys are rejected.
struct CliConfig {
    std::size_t not_delta_cap = 2;
    std::size_t trace_letter_cap = 1000000;
    std::size_t oracle_bound = 4;
    bool concurrent = false;
    std::string guard_mode = "succinct";
};

CliConfig parse_config(const std::string& text);

// A formula file: optional `aps`, `programs` and `paths` header lines
// followed by the formula text.
struct FormulaFile {
    Signature sig;
    bool has_aps = false, has_programs = false;
    std::vector<std::string> paths;
    std::string text;
    std::size_t text_offset = 0;  // characters before the formula text
};

FormulaFile split_formula_file(const std::string& content);

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hyperpdl
