// Error taxonomy shared by all modules. Exit-code mapping lives in the CLI:
// parse -> 2, type/degree -> 3, oracle -> 4, property failures -> 1.
#pragma once

#include <stdexcept>
#include <string>

namespace defq {

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error("parse error: " + msg) {}
};

// Degree, truncation-order, variable-list and model mismatches.
struct DegreeError : std::runtime_error {
    explicit DegreeError(const std::string& msg) : std::runtime_error("degree/type error: " + msg) {}
};

struct ShapeError : std::runtime_error {
    explicit ShapeError(const std::string& msg) : std::runtime_error("shape error: " + msg) {}
};

struct OracleError : std::runtime_error {
    explicit OracleError(const std::string& msg) : std::runtime_error("oracle failure: " + msg) {}
};

struct InternalError : std::logic_error {
    explicit InternalError(const std::string& msg) : std::logic_error("internal error: " + msg) {}
};

} // namespace defq
