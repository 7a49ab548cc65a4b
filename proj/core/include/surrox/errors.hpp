#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace surrox {

enum class ErrorCode {
    InvalidArgument,
    ParseError,
    DegenerateSeries,
    MissingPeriod,
    PanelMismatch,
    RankDeficient,
    InsufficientSample,
    IndexError,
    MissingExogenous,
    BootstrapUnstable,
    InvalidCovariance,
    PenaltyUndefined,
    NonStationarySpec,
    BaselineDegenerate,
    SchemaMismatch,
};

/// Coarse grouping used by the CLI to pick an exit code.
enum class ErrorCategory { Usage, Data, Numerical };

std::string_view to_string(ErrorCode code) noexcept;
ErrorCategory category(ErrorCode code) noexcept;

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string detail);

    ErrorCode code() const noexcept { return code_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorCode code_;
    std::string detail_;
};

}  // namespace surrox
