#include "lfpc/forecast.hpp"

#include <algorithm>
#include <charconv>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "lfpc/error.hpp"
#include "lfpc/ingest.hpp"

namespace lfpc {

namespace {

std::string range_text(YearRange r) {
  return std::to_string(r.first) + "-" + std::to_string(r.last);
}

bool is_growth_term(const Term& term) {
  return term.series == "l" || term.series.starts_with("dlog(");
}

std::string shortest(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

Scenario build_scenario(const AnnualSeries& labor_force, YearRange horizon) {
  if (labor_force.units() != Units::Persons) {
    throw InputError("scenario labor force must be in persons");
  }
  if (horizon.first > horizon.last) throw InputError("scenario horizon is empty");
  if (!labor_force.covers({horizon.first - 1, horizon.last})) {
    throw InputError("labor-force path " + range_text(labor_force.years()) +
                     " must cover the horizon " + range_text(horizon) + " and the year before it");
  }
  AnnualSeries growth = log_growth(labor_force).relabeled("l");
  return {labor_force, std::move(growth), horizon};
}

Scenario build_scenario(const AnnualSeries& population, double participation_rate,
                        YearRange horizon) {
  return build_scenario(participation_labor_force(population, participation_rate), horizon);
}

AnnualSeries linear_path(int first_year, double first_value, int last_year, double last_value,
                         Units units, std::string label) {
  if (last_year <= first_year) throw InputError("linear_path needs last_year > first_year");
  const int span = last_year - first_year;
  std::vector<double> values(static_cast<std::size_t>(span + 1));
  for (int i = 0; i <= span; ++i) {
    values[static_cast<std::size_t>(i)] =
        first_value + (last_value - first_value) * static_cast<double>(i) / span;
  }
  values.back() = last_value;
  return AnnualSeries(first_year, std::move(values), units, std::move(label));
}

std::string_view to_string(ResponseKind kind) {
  return kind == ResponseKind::Inflation ? "inflation" : "unemployment";
}

ResponseKind response_kind_for(Units response_units) {
  switch (response_units) {
    case Units::FractionPerYear: return ResponseKind::Inflation;
    case Units::Fraction: return ResponseKind::Unemployment;
    case Units::Persons: break;
  }
  throw InputError("a model with a response in persons is neither inflation nor unemployment");
}

AnnualSeries forecast_inflation(const LinearModel& model, const Scenario& scenario,
                                const AnnualSeries* unemployment) {
  Dataset inputs;
  for (const auto& term : model.predictors) {
    if (is_growth_term(term)) {
      inputs.insert_or_assign(term.series, scenario.growth);
    } else if (unemployment) {
      inputs.insert_or_assign(term.series, *unemployment);
    } else {
      throw InputError("model '" + model.id + "' uses '" + term.series +
                       "' and needs a companion unemployment path");
    }
  }
  return predict(model, inputs, scenario.horizon).relabeled(model.id);
}

AnnualSeries forecast_unemployment(const LinearModel& model, const Scenario& scenario) {
  Dataset inputs;
  for (const auto& term : model.predictors) {
    if (!is_growth_term(term)) {
      throw InputError("unemployment model '" + model.id + "' uses '" + term.series +
                       "', which a labor-force scenario does not provide");
    }
    inputs.insert_or_assign(term.series, scenario.growth);
  }
  return predict(model, inputs, scenario.horizon).relabeled(model.id);
}

ForecastModel forecast_model(const ModelRegistryEntry& entry) {
  return {entry.model, entry.kind, entry.equation};
}

ForecastResult forecast_report(const std::vector<ForecastModel>& models, const Scenario& scenario) {
  if (models.empty()) throw InputError("forecast_report needs at least one model");
  ForecastResult out{scenario, {}};
  std::vector<std::optional<ForecastPath>> slots(models.size());
  const AnnualSeries* first_unemployment = nullptr;
  for (std::size_t i = 0; i < models.size(); ++i) {
    const auto& m = models[i];
    if (m.kind != ResponseKind::Unemployment) continue;
    slots[i] = ForecastPath{m.model.id, m.equation, m.kind, forecast_unemployment(m.model, scenario)};
    if (!first_unemployment) first_unemployment = &slots[i]->values;
  }
  for (std::size_t i = 0; i < models.size(); ++i) {
    const auto& m = models[i];
    if (m.kind != ResponseKind::Inflation) continue;
    slots[i] = ForecastPath{m.model.id, m.equation, m.kind,
                            forecast_inflation(m.model, scenario, first_unemployment)};
  }
  for (auto& s : slots) out.paths.push_back(std::move(*s));
  return out;
}

std::string forecast_csv(const ForecastResult& result) {
  std::ostringstream out;
  out << "year,labor_force,growth";
  for (const auto& p : result.paths) out << ',' << p.model_id << '_' << to_string(p.kind);
  out << '\n';
  const auto& h = result.scenario.horizon;
  for (int y = h.first; y <= h.last; ++y) {
    out << y << ',' << shortest(result.scenario.labor_force.at(y)) << ','
        << shortest(result.scenario.growth.at(y));
    for (const auto& p : result.paths) out << ',' << shortest(p.values.at(y));
    out << '\n';
  }
  return out.str();
}

std::string forecast_json(const ForecastResult& result) {
  using nlohmann::ordered_json;
  auto series_json = [](const AnnualSeries& s) {
    ordered_json j;
    j["start_year"] = s.start_year();
    j["units"] = std::string(to_string(s.units()));
    j["values"] = std::vector<double>(s.values().begin(), s.values().end());
    return j;
  };
  const auto& h = result.scenario.horizon;
  ordered_json doc;
  doc["scenario"]["horizon"] = {h.first, h.last};
  doc["scenario"]["labor_force"] = series_json(result.scenario.labor_force.slice({h.first - 1, h.last}));
  doc["scenario"]["growth"] = series_json(result.scenario.growth.slice(h));
  doc["paths"] = ordered_json::array();
  for (const auto& p : result.paths) {
    ordered_json j;
    j["model"] = p.model_id;
    j["equation"] = p.equation;
    j["kind"] = std::string(to_string(p.kind));
    j["series"] = series_json(p.values);
    doc["paths"].push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

}  // namespace lfpc
