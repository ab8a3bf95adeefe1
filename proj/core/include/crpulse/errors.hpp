#pragma once

#include <stdexcept>
#include <string>

namespace crpulse {

struct InvalidDimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Raised when a numerical contract is violated (non-Hermitian input,
// projector trace mismatch, shape mismatch between coupled arguments).
struct ContractViolationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DegenerateQubitsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dressed-state assignment failed: some eigenstate has no bare partner
// with population above 0.5.
struct StrongCouplingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& what, int line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"),
          line_number(line) {}
    int line_number;
};

struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace crpulse
