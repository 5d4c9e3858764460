#pragma once

#include <stdexcept>
#include <string>

namespace abelint {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad inputs: violated invariants or preconditions. CLI exit code 2.
struct ValidationError : Error {
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

struct NonSymmetricError : ValidationError {
    explicit NonSymmetricError(const std::string& msg) : ValidationError(msg) {}
};

struct NotPositiveDefiniteError : ValidationError {
    explicit NotPositiveDefiniteError(const std::string& msg) : ValidationError(msg) {}
};

struct NotComplexLinearError : ValidationError {
    explicit NotComplexLinearError(const std::string& msg) : ValidationError(msg) {}
};

struct TolOutOfRangeError : ValidationError {
    explicit TolOutOfRangeError(const std::string& msg) : ValidationError(msg) {}
};

struct SingularPointError : ValidationError {
    explicit SingularPointError(const std::string& msg) : ValidationError(msg) {}
};

struct ParseError : ValidationError {
    explicit ParseError(const std::string& msg) : ValidationError(msg) {}
};

// Exhausted numerical budgets (retry with different parameters). CLI exit code 3.
struct BudgetError : Error {
    explicit BudgetError(const std::string& msg) : Error(msg) {}
};

struct SamplingExhaustedError : BudgetError {
    explicit SamplingExhaustedError(const std::string& msg) : BudgetError(msg) {}
};

struct ModulusOverflowError : BudgetError {
    explicit ModulusOverflowError(const std::string& msg) : BudgetError(msg) {}
};

struct GridOverflowError : BudgetError {
    explicit GridOverflowError(const std::string& msg) : BudgetError(msg) {}
};

} // namespace abelint
