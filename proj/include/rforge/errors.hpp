#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rforge {

struct ConstantTermError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NegativeCoefficientError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnassignedVariableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ZeroDivisorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExponentOverflowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A coloring was asked about a value outside its declared domain.
// Finite table colorings fail loudly instead of defaulting.
struct ColorDomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A search produced a witness that does not re-verify against the oracle.
// Raised by the witness constructors, which always re-check.
struct WitnessVerificationError : std::logic_error {
    using std::logic_error::logic_error;
};

// An enumeration or bounded factor search would exceed its desk-scale cap.
struct SearchSpaceError : std::length_error {
    using std::length_error::length_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t position, std::string expected)
        : std::runtime_error(message + " at position " + std::to_string(position) +
                             " (expected " + expected + ")"),
          position_(position),
          expected_(std::move(expected)) {}

    std::size_t position() const { return position_; }
    const std::string& expected() const { return expected_; }

private:
    std::size_t position_;
    std::string expected_;
};

}  // namespace rforge
