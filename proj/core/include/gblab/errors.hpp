#pragma once

#include <stdexcept>
#include <string>

namespace gblab {

// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Violated operation contract: mismatched rings, hypothesis gates of a
// criterion, invalid cipher parameters, and similar. CLI maps this to exit 2.
struct PreconditionError : Error {
    explicit PreconditionError(const std::string& what) : Error(what) {}
};

// A configured resource budget ran out (degree cap, pair budget, deadline).
// CLI maps this to exit 3.
struct BudgetError : Error {
    explicit BudgetError(const std::string& what) : Error(what) {}
};

// Malformed input files (JSON, polynomial text). CLI maps this to exit 1.
struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

}
