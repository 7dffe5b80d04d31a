#pragma once

#include <stdexcept>
#include <string>

namespace mwelect {

// Invalid argument / precondition violation.
struct ArgError : std::invalid_argument {
    explicit ArgError(const std::string& what) : std::invalid_argument(what) {}
};

// Malformed input file. `line` is 1-based, 0 if unknown.
struct ParseError : std::runtime_error {
    int line;
    ParseError(const std::string& what, int line_no = 0)
        : std::runtime_error(line_no > 0 ? what + " (line " + std::to_string(line_no) + ")" : what),
          line(line_no) {}
};

// A configured resource cap was exceeded; `required` describes what would be needed.
struct CapError : std::runtime_error {
    std::string required;
    CapError(const std::string& what, std::string required_budget = "")
        : std::runtime_error(what), required(std::move(required_budget)) {}
};

}  // namespace mwelect
