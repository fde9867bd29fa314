#pragma once

#include <stdexcept>
#include <string>

namespace rpm {

// Contract violations (bad arguments, domain mismatches) use std::invalid_argument.

struct GenerationError : std::runtime_error {
    explicit GenerationError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DegenerateBeliefError : std::runtime_error {
    explicit DegenerateBeliefError(const std::string& msg) : std::runtime_error(msg) {}
};

struct PreconditionError : std::runtime_error {
    explicit PreconditionError(const std::string& msg) : std::runtime_error(msg) {}
};

// Carries the identity of the rule whose precondition mass vanished.
struct ExecutionInfeasibleError : std::runtime_error {
    std::string rule_name;
    ExecutionInfeasibleError(const std::string& rule, const std::string& msg)
        : std::runtime_error(msg), rule_name(rule) {}
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace rpm
