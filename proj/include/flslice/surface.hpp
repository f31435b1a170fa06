#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "flslice/program.hpp"
#include "flslice/term.hpp"

namespace flslice {

struct SourceSpan {
    std::string file;
    int line = 1;
    int column = 1;
};

enum class Severity { Error, Warning };

struct Diagnostic {
    Severity severity = Severity::Error;
    SourceSpan span;
    std::string message;
};

std::string format_diagnostic(const Diagnostic& d);

struct ParseResult {
    std::optional<Program> program;
    std::vector<Diagnostic> diagnostics;
    bool ok() const { return program.has_value(); }
};

struct GoalResult {
    std::optional<Term> goal;
    std::vector<Diagnostic> diagnostics;
    bool ok() const { return goal.has_value(); }
};

ParseResult parse_program(std::string_view text, const std::string& file = "<input>");
GoalResult parse_goal(std::string_view text, const std::string& file = "<goal>");
// Any Case-free term; used for tests and slice-file fragments.
GoalResult parse_term(std::string_view text, const std::string& file = "<term>");

enum class PrintMode { Full, Simplified };

std::string print_term(const Term& t);
std::string print_rule(const Rule& r, PrintMode mode = PrintMode::Full);
std::string print_program(const Program& p, PrintMode mode = PrintMode::Full);

}  // namespace flslice
