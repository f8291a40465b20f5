#pragma once

#include <stdexcept>
#include <string>

namespace wom {

enum class ErrorKind {
    NonConvergent,
    ComplexEffectiveParams,
    RootFindingFailure,
    NearDegeneratePoles,
    RealAxisPole,
    NotPositive,
    FactorizationMismatch,
    Divergent,
    OracleDisagreement,
    ZeroGain,
    BiasMismatch,
    ComplexBranch,
    InvalidInput,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(const char* module, ErrorKind kind, const std::string& detail);

    const char* module() const noexcept { return module_; }
    ErrorKind kind() const noexcept { return kind_; }

private:
    const char* module_;
    ErrorKind kind_;
};

}  // namespace wom
