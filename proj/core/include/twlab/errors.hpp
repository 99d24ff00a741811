#pragma once

#include <stdexcept>
#include <string>

namespace twlab {

// Bad arguments or malformed input. Maps to CLI exit code 1.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A configured enumeration / memory / size budget would be exceeded.
// This is a refusal, not a negative answer. Maps to CLI exit code 2.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A wall-clock budget ran out before the computation finished.
class Timeout : public BudgetExceeded {
public:
    using BudgetExceeded::BudgetExceeded;
};

class ParseError : public InvalidArgument {
public:
    ParseError(const std::string& what, std::size_t line)
        : InvalidArgument("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace twlab
