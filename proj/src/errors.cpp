#include "cenreg/errors.hpp"

namespace cenreg {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidSize: return "InvalidSize";
        case ErrorKind::InvalidSparsity: return "InvalidSparsity";
        case ErrorKind::InvalidGraphon: return "InvalidGraphon";
        case ErrorKind::InvalidBound: return "InvalidBound";
        case ErrorKind::InvalidLevel: return "InvalidLevel";
        case ErrorKind::EmptyGraph: return "EmptyGraph";
        case ErrorKind::NoConvergence: return "NoConvergence";
        case ErrorKind::DegenerateSpectrum: return "DegenerateSpectrum";
        case ErrorKind::OddLength: return "OddLength";
        case ErrorKind::BudgetExceeded: return "BudgetExceeded";
        case ErrorKind::Unsupported: return "Unsupported";
        case ErrorKind::ZeroRegressor: return "ZeroRegressor";
        case ErrorKind::ConfigMismatch: return "ConfigMismatch";
        case ErrorKind::MissingComponents: return "MissingComponents";
        case ErrorKind::NonpositiveAttenuation: return "NonpositiveAttenuation";
        case ErrorKind::DuplicateEdge: return "DuplicateEdge";
        case ErrorKind::IdMismatch: return "IdMismatch";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::InvalidConfig: return "InvalidConfig";
        case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

}  // namespace cenreg
