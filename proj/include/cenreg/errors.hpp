#pragma once

#include <stdexcept>
#include <string>

namespace cenreg {

enum class ErrorKind {
    InvalidSize,
    InvalidSparsity,
    InvalidGraphon,
    InvalidBound,
    InvalidLevel,
    EmptyGraph,
    NoConvergence,
    DegenerateSpectrum,
    OddLength,
    BudgetExceeded,
    Unsupported,
    ZeroRegressor,
    ConfigMismatch,
    MissingComponents,
    NonpositiveAttenuation,
    DuplicateEdge,
    IdMismatch,
    ParseError,
    InvalidConfig,
    IoError,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what, double residual = 0.0)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), residual_(residual) {}

    ErrorKind kind() const noexcept { return kind_; }
    // Only meaningful for NoConvergence.
    double residual() const noexcept { return residual_; }

private:
    ErrorKind kind_;
    double residual_;
};

}  // namespace cenreg
