#include "wom/errors.hpp"

namespace wom {

const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::NonConvergent: return "NonConvergent";
        case ErrorKind::ComplexEffectiveParams: return "ComplexEffectiveParams";
        case ErrorKind::RootFindingFailure: return "RootFindingFailure";
        case ErrorKind::NearDegeneratePoles: return "NearDegeneratePoles";
        case ErrorKind::RealAxisPole: return "RealAxisPole";
        case ErrorKind::NotPositive: return "NotPositive";
        case ErrorKind::FactorizationMismatch: return "FactorizationMismatch";
        case ErrorKind::Divergent: return "Divergent";
        case ErrorKind::OracleDisagreement: return "OracleDisagreement";
        case ErrorKind::ZeroGain: return "ZeroGain";
        case ErrorKind::BiasMismatch: return "BiasMismatch";
        case ErrorKind::ComplexBranch: return "ComplexBranch";
        case ErrorKind::InvalidInput: return "InvalidInput";
    }
    return "Unknown";
}

Error::Error(const char* module, ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(module) + ": " + to_string(kind) + ": " + detail),
      module_(module),
      kind_(kind) {}

}  // namespace wom
