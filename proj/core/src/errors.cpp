#include "surrox/errors.hpp"

namespace surrox {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::DegenerateSeries: return "DegenerateSeries";
        case ErrorCode::MissingPeriod: return "MissingPeriod";
        case ErrorCode::PanelMismatch: return "PanelMismatch";
        case ErrorCode::RankDeficient: return "RankDeficient";
        case ErrorCode::InsufficientSample: return "InsufficientSample";
        case ErrorCode::IndexError: return "IndexError";
        case ErrorCode::MissingExogenous: return "MissingExogenous";
        case ErrorCode::BootstrapUnstable: return "BootstrapUnstable";
        case ErrorCode::InvalidCovariance: return "InvalidCovariance";
        case ErrorCode::PenaltyUndefined: return "PenaltyUndefined";
        case ErrorCode::NonStationarySpec: return "NonStationarySpec";
        case ErrorCode::BaselineDegenerate: return "BaselineDegenerate";
        case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    }
    return "Unknown";
}

ErrorCategory category(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument:
            return ErrorCategory::Usage;
        case ErrorCode::RankDeficient:
        case ErrorCode::BootstrapUnstable:
        case ErrorCode::InvalidCovariance:
        case ErrorCode::PenaltyUndefined:
        case ErrorCode::NonStationarySpec:
        case ErrorCode::BaselineDegenerate:
            return ErrorCategory::Numerical;
        default:
            return ErrorCategory::Data;
    }
}

Error::Error(ErrorCode code, std::string detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail),
      code_(code),
      detail_(std::move(detail)) {}

}  // namespace surrox
