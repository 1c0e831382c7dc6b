#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "lfpc/diagnose.hpp"
#include "lfpc/estimate.hpp"
#include "lfpc/linear_model.hpp"

namespace lfpc::cli {

using Json = nlohmann::ordered_json;

// Canonical spec file:
//   { "response": "u", "predictors": [{"series": "cpi", "lag": 0, "shared": false}],
//     "estimator": "ols"|"cumulative", "window": [1982, 2012], "break_year": 1977,
//     "intercept_shared": true, "max_abs_lag": 10 }
LinkSpec link_spec_from_json(const Json& j);
Json to_json(const LinkSpec& spec);
LinkSpec load_link_spec(const std::filesystem::path& path);

Json to_json(const LinearModel& model);
LinearModel linear_model_from_json(const Json& j);

Json to_json(const FitResult& fit);
Json to_json(const AdfResult& adf);

YearRange parse_year_range(std::string_view text);  // "Y1:Y2"

}  // namespace lfpc::cli
