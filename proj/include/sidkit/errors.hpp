#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace sidkit {

// Malformed input text; carries the 1-based line/column of the offending token.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, int line, int column)
        : std::runtime_error(message + " (line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ")"),
          line_(line),
          column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

// Structural invariant violation: cycle, undirected edge in a DAG,
// non-chordal chain component, not a completed PDAG, ...
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Linear-algebra failure, e.g. a near-singular adjustment covariance.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An enumeration size cap was exceeded (oracle path counts, extension
// enumeration of a chain component). Callers may catch this and switch
// to a fallback strategy.
class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace sidkit
