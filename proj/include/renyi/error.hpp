#pragma once

#include <stdexcept>
#include <string>

namespace renyi {

enum class ErrorCode {
    InvalidArgument,
    TooCoarse,
    LengthMismatch,
    ZeroMass,
    ZeroEnergy,
    SupportOverflow,
    InadmissibleExponent,
    GridTooSmall,
    RootFinderFailed,
    RelativeEntropyUndefined,
    TooFewSnapshots,
    NonuniformSpacing,
    SolverAbort,
    ConfigError,
    Io,
};

const char* to_string(ErrorCode code);

/// Every failure raised by the library carries a machine-readable code so the
/// CLI can map it to a distinct exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace renyi
