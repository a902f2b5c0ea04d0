#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace liqcurve {

enum class ErrorCode {
    NonPositiveInput,
    KOutOfRange,
    PolicyViolation,
    MalformedDocument,
    InvariantViolation,
    NonPositiveGrowth,
    NoPositiveRoot,
    MultipleUnknowns,
    NoUnknown,
    LengthMismatch,
    SignViolation,
    UnknownToken,
    InsufficientBalance,
    InfeasibleTrade,
    KRestriction,
    ShapeMismatch,
    NoSignChange,
    MaxIterations,
    InvalidTrade,
    ResidualCheckFailed,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so that
/// callers (the CLI in particular) can map it to an exit status without
/// parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace liqcurve
