#include "rankdyn/error.hpp"

namespace rankdyn {

const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::MissingColumn: return "MissingColumn";
        case ErrorKind::DuplicateRank: return "DuplicateRank";
        case ErrorKind::NonContiguousRanks: return "NonContiguousRanks";
        case ErrorKind::MalformedRow: return "MalformedRow";
        case ErrorKind::DuplicateElement: return "DuplicateElement";
        case ErrorKind::ScoreOrder: return "ScoreOrder";
        case ErrorKind::InsufficientDepth: return "InsufficientDepth";
        case ErrorKind::OutOfRange: return "OutOfRange";
        case ErrorKind::TooFewSnapshots: return "TooFewSnapshots";
        case ErrorKind::InvalidParams: return "InvalidParams";
        case ErrorKind::InsufficientData: return "InsufficientData";
        case ErrorKind::NonPositiveScore: return "NonPositiveScore";
        case ErrorKind::FitDiverged: return "FitDiverged";
        case ErrorKind::AllZero: return "AllZero";
        case ErrorKind::LengthMismatch: return "LengthMismatch";
        case ErrorKind::ZeroVariance: return "ZeroVariance";
        case ErrorKind::SupportMismatch: return "SupportMismatch";
        case ErrorKind::DegenerateCurve: return "DegenerateCurve";
        case ErrorKind::EmptyCurve: return "EmptyCurve";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "UnknownError";
}

} // namespace rankdyn
