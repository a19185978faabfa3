#pragma once

#include <stdexcept>
#include <string>

namespace leaguestat {

/// Malformed input text (CSV rows, headers). Carries the 1-based source line.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, int line)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                      : message),
          line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

/// Structurally invalid data or arguments (duplicate fixtures, unknown
/// seasons, empty selections, inconsistent configuration).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical procedure could not produce a trustworthy result
/// (non-convergence, degenerate regression).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace leaguestat
