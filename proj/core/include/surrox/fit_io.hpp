#pragma once

#include "surrox/estimator.hpp"
#include "surrox/forecaster.hpp"
#include "surrox/panel.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace surrox {

inline constexpr std::string_view kFitSchema = "surrox.joint-fit";
inline constexpr int kFitSchemaVersion = 1;

/// A fitted joint model together with the training data it was fitted on.
/// The data travel with the fit so forecasts and bootstrap refits need no
/// second input.
struct FitDocument {
    JointFit fit;
    std::vector<Month> months;
    History history;
};

/// Pretty-printed JSON with `schema` and `version` fields. Deterministic.
std::string to_json(const FitDocument& doc);

/// Throws SchemaMismatch for a wrong schema or version and ParseError for
/// malformed JSON or missing fields.
FitDocument fit_from_json(std::string_view text);

}  // namespace surrox
