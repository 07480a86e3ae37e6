#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace edmnet {

// Structural problems in an input file: bad header, wrong column count,
// unparseable fields. `line` is 1-based; 0 means "not tied to a line".
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& message, std::size_t line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                      : message),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Input parsed fine but violates a domain rule (non-positive price,
// missing sector, weight sum off, ...).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Optimization problem has no feasible point.
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace edmnet
