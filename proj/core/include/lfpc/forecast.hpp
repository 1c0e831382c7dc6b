#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lfpc/linear_model.hpp"
#include "lfpc/series.hpp"

namespace lfpc {

// Labor-force projection and its backward log-difference growth.
struct Scenario {
  AnnualSeries labor_force;  // persons
  AnnualSeries growth;       // fraction-per-year, log_growth(labor_force)
  YearRange horizon;
};

// The path must cover the horizon plus the year before it.
Scenario build_scenario(const AnnualSeries& labor_force, YearRange horizon);
Scenario build_scenario(const AnnualSeries& population, double participation_rate,
                        YearRange horizon);

// Straight line between two anchor years, one value per year (inclusive).
AnnualSeries linear_path(int first_year, double first_value, int last_year, double last_value,
                         Units units, std::string label = {});

enum class ResponseKind { Inflation, Unemployment };
std::string_view to_string(ResponseKind kind);
ResponseKind response_kind_for(Units response_units);

// Printed models with frozen coefficients. Predictor names: "l" is labor-force
// growth, "u" unemployment, "pi" inflation.
struct ModelRegistryEntry {
  std::string id;
  std::string equation;
  std::string description;
  ResponseKind kind;
  LinearModel model;
};

const std::vector<ModelRegistryEntry>& model_registry();
const ModelRegistryEntry& registry_model(std::string_view id);

// Terms named "l" or "dlog(...)" bind to scenario growth; any other term is
// taken as unemployment and needs `unemployment`.
AnnualSeries forecast_inflation(const LinearModel& model, const Scenario& scenario,
                                const AnnualSeries* unemployment = nullptr);
AnnualSeries forecast_unemployment(const LinearModel& model, const Scenario& scenario);

struct ForecastModel {
  LinearModel model;
  ResponseKind kind;
  std::string equation;  // free-text provenance, echoed in reports
};

ForecastModel forecast_model(const ModelRegistryEntry& entry);

struct ForecastPath {
  std::string model_id;
  std::string equation;
  ResponseKind kind;
  AnnualSeries values;
};

struct ForecastResult {
  Scenario scenario;
  std::vector<ForecastPath> paths;
};

// Unemployment models run first so that inflation models with an unemployment
// term can consume the first unemployment path.
ForecastResult forecast_report(const std::vector<ForecastModel>& models, const Scenario& scenario);

// One row per horizon year: year,labor_force,growth,<id>_<kind>...
std::string forecast_csv(const ForecastResult& result);
std::string forecast_json(const ForecastResult& result);

}  // namespace lfpc
