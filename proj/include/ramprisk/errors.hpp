#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ramprisk {

/// Bad argument to a library call (non-finite reals, p < 1, alpha outside (0,1), ...).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An operation that needs at least one sample was handed none.
class EmptyInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed input file content. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Structurally invalid data, e.g. unordered or duplicate timestamps.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The simplex ran into a numerically singular pivot or its iteration cap.
class SolverFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ramprisk
