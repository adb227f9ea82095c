#pragma once

#include <stdexcept>
#include <string>

namespace rankdyn {

// Every failure the library reports carries one of these kinds so callers
// (and the CLI exit-code mapping) can dispatch without parsing messages.
enum class ErrorKind {
    // csv / series
    MissingColumn,
    DuplicateRank,
    NonContiguousRanks,
    MalformedRow,
    DuplicateElement,
    ScoreOrder,
    InsufficientDepth,
    OutOfRange,
    TooFewSnapshots,
    // model fitting
    InvalidParams,
    InsufficientData,
    NonPositiveScore,
    FitDiverged,
    AllZero,
    // goodness of fit
    LengthMismatch,
    ZeroVariance,
    SupportMismatch,
    // sigmoid / calibration
    DegenerateCurve,
    EmptyCurve,
    // anything else that violates a documented precondition
    InvalidArgument,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
          kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace rankdyn
