#include "renyi/error.hpp"

namespace renyi {

const char* to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::TooCoarse: return "too coarse";
    case ErrorCode::LengthMismatch: return "length mismatch";
    case ErrorCode::ZeroMass: return "zero mass";
    case ErrorCode::ZeroEnergy: return "zero energy";
    case ErrorCode::SupportOverflow: return "support overflow";
    case ErrorCode::InadmissibleExponent: return "inadmissible exponent";
    case ErrorCode::GridTooSmall: return "grid too small";
    case ErrorCode::RootFinderFailed: return "root finder failed";
    case ErrorCode::RelativeEntropyUndefined: return "relative entropy undefined";
    case ErrorCode::TooFewSnapshots: return "too few snapshots";
    case ErrorCode::NonuniformSpacing: return "nonuniform spacing";
    case ErrorCode::SolverAbort: return "solver abort";
    case ErrorCode::ConfigError: return "config error";
    case ErrorCode::Io: return "io error";
    }
    return "unknown error";
}

}  // namespace renyi
