#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace treedepth {

/// Precondition violation on a caller-supplied value (bad vertex id, invalid
/// decomposition handed to an operation that requires a valid one, ...).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed text input. Carries the 1-based line number of the offending line
/// (0 when the error is not tied to a single line, e.g. a missing header).
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Broken internal invariant (missing provenance, table blow-up past a cap).
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace treedepth
