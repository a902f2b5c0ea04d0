#include "liqcurve/errors.hpp"

namespace liqcurve {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NonPositiveInput: return "NonPositiveInput";
        case ErrorCode::KOutOfRange: return "KOutOfRange";
        case ErrorCode::PolicyViolation: return "PolicyViolation";
        case ErrorCode::MalformedDocument: return "MalformedDocument";
        case ErrorCode::InvariantViolation: return "InvariantViolation";
        case ErrorCode::NonPositiveGrowth: return "NonPositiveGrowth";
        case ErrorCode::NoPositiveRoot: return "NoPositiveRoot";
        case ErrorCode::MultipleUnknowns: return "MultipleUnknowns";
        case ErrorCode::NoUnknown: return "NoUnknown";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::SignViolation: return "SignViolation";
        case ErrorCode::UnknownToken: return "UnknownToken";
        case ErrorCode::InsufficientBalance: return "InsufficientBalance";
        case ErrorCode::InfeasibleTrade: return "InfeasibleTrade";
        case ErrorCode::KRestriction: return "KRestriction";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::NoSignChange: return "NoSignChange";
        case ErrorCode::MaxIterations: return "MaxIterations";
        case ErrorCode::InvalidTrade: return "InvalidTrade";
        case ErrorCode::ResidualCheckFailed: return "ResidualCheckFailed";
    }
    return "Unknown";
}

void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

}  // namespace liqcurve
