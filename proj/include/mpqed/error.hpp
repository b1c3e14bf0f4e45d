#pragma once

#include <stdexcept>
#include <string>

namespace mpqed {

// Base class for all rejected-input conditions.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Bad configuration or malformed input files (maps to CLI exit code 2).
struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(what) {}
};

// Syntax error in the canonical expression grammar, with 1-based location.
struct ParseError : Error {
    int line;
    int column;
    ParseError(const std::string& what, int line_, int column_)
        : Error(what + " at line " + std::to_string(line_) + ", column " + std::to_string(column_)),
          line(line_),
          column(column_) {}
};

// Violated precondition of a kernel operation.
struct AlgebraError : Error {
    explicit AlgebraError(const std::string& what) : Error(what) {}
};

}  // namespace mpqed
