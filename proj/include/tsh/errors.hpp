#ifndef TSH_ERRORS_HPP
#define TSH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tsh {

// Input is structurally valid but numerically unusable (constant series,
// zero-mean denominator, ...).
struct DegenerateInput : std::runtime_error {
    explicit DegenerateInput(const std::string& msg) : std::runtime_error(msg) {}
};

// Square system has no solution to working precision.
struct SingularMatrix : std::runtime_error {
    explicit SingularMatrix(const std::string& msg) : std::runtime_error(msg) {}
};

// A value object violates its own structural invariants.
struct CorruptStructure : std::runtime_error {
    explicit CorruptStructure(const std::string& msg) : std::runtime_error(msg) {}
};

// File system / parsing failure.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace tsh

#endif
