#include "spec_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "lfpc/error.hpp"

namespace lfpc::cli {

namespace {

template <typename T>
T get_or(const Json& j, const char* key, T fallback) {
  if (!j.contains(key) || j[key].is_null()) return fallback;
  try {
    return j[key].get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InputError(std::string("spec field '") + key + "' has the wrong type");
  }
}

Json coefficient_json(const Coefficient& c) {
  return Json{{"value", c.value}, {"std_error", c.std_error}, {"t_stat", c.t_stat},
              {"p_value", c.p_value}};
}

Json years_json(YearRange r) { return Json::array({r.first, r.last}); }

YearRange years_from_json(const Json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer()) {
    throw InputError(std::string(what) + " must be [first_year, last_year]");
  }
  return {j[0].get<int>(), j[1].get<int>()};
}

}  // namespace

LinkSpec link_spec_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("link spec must be a JSON object");
  LinkSpec spec;
  spec.response = get_or<std::string>(j, "response", "");
  if (spec.response.empty()) throw InputError("link spec needs 'response'");
  if (!j.contains("predictors") || !j["predictors"].is_array()) {
    throw InputError("link spec needs a 'predictors' array");
  }
  for (const auto& p : j["predictors"]) {
    PredictorSpec ps;
    if (p.is_string()) {
      ps.series = p.get<std::string>();
    } else {
      ps.series = get_or<std::string>(p, "series", "");
      ps.lag = get_or<int>(p, "lag", 0);
      ps.shared = get_or<bool>(p, "shared", false);
    }
    if (ps.series.empty()) throw InputError("predictor without 'series'");
    spec.predictors.push_back(std::move(ps));
  }
  spec.estimator = estimator_from_string(get_or<std::string>(j, "estimator", "ols"));
  if (j.contains("window") && !j["window"].is_null()) spec.window = years_from_json(j["window"], "window");
  if (j.contains("break_year") && !j["break_year"].is_null()) spec.break_year = get_or<int>(j, "break_year", 0);
  spec.intercept_shared = get_or<bool>(j, "intercept_shared", false);
  spec.max_abs_lag = get_or<int>(j, "max_abs_lag", spec.max_abs_lag);
  return spec;
}

Json to_json(const LinkSpec& spec) {
  Json j;
  j["response"] = spec.response;
  j["predictors"] = Json::array();
  for (const auto& p : spec.predictors) {
    j["predictors"].push_back(Json{{"series", p.series}, {"lag", p.lag}, {"shared", p.shared}});
  }
  j["estimator"] = std::string(to_string(spec.estimator));
  j["window"] = spec.window ? years_json(*spec.window) : Json(nullptr);
  j["break_year"] = spec.break_year ? Json(*spec.break_year) : Json(nullptr);
  j["intercept_shared"] = spec.intercept_shared;
  j["max_abs_lag"] = spec.max_abs_lag;
  return j;
}

LinkSpec load_link_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open spec file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return link_spec_from_json(Json::parse(buf.str()));
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("spec file " + path.string() + " is not valid JSON: " + e.what());
  }
}

Json to_json(const LinearModel& model) {
  Json j;
  j["id"] = model.id;
  j["response"] = model.response;
  j["response_units"] = std::string(to_string(model.response_units));
  j["predictors"] = Json::array();
  for (const auto& t : model.predictors) j["predictors"].push_back(Json{{"series", t.series}, {"lag", t.lag}});
  j["break_year"] = model.break_year ? Json(*model.break_year) : Json(nullptr);
  j["segments"] = Json::array();
  for (const auto& s : model.segments) {
    j["segments"].push_back(Json{{"intercept", s.intercept}, {"slopes", s.slopes}});
  }
  return j;
}

LinearModel linear_model_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("model must be a JSON object");
  LinearModel m;
  m.id = get_or<std::string>(j, "id", "model");
  m.response = get_or<std::string>(j, "response", "");
  m.response_units = units_from_string(get_or<std::string>(j, "response_units", "fraction-per-year"));
  if (j.contains("predictors") && j["predictors"].is_array()) {
    for (const auto& t : j["predictors"]) {
      m.predictors.push_back({get_or<std::string>(t, "series", ""), get_or<int>(t, "lag", 0)});
    }
  }
  if (j.contains("break_year") && !j["break_year"].is_null()) m.break_year = j["break_year"].get<int>();
  if (!j.contains("segments") || !j["segments"].is_array() || j["segments"].empty()) {
    throw InputError("model needs a non-empty 'segments' array");
  }
  for (const auto& s : j["segments"]) {
    SegmentCoefficients seg;
    seg.intercept = get_or<double>(s, "intercept", 0.0);
    seg.slopes = get_or<std::vector<double>>(s, "slopes", {});
    if (seg.slopes.size() != m.predictors.size()) {
      throw InputError("model segment slope count does not match predictors");
    }
    m.segments.push_back(std::move(seg));
  }
  return m;
}

Json to_json(const FitResult& fit) {
  Json j;
  j["spec"] = to_json(fit.spec);
  j["window"] = years_json(fit.window);
  j["observations"] = fit.observations;
  j["parameters"] = fit.parameters;
  j["dof"] = fit.dof;
  j["segments"] = Json::array();
  for (const auto& s : fit.segments) {
    Json seg;
    seg["years"] = years_json(s.years);
    seg["intercept"] = coefficient_json(s.intercept);
    seg["slopes"] = Json::array();
    for (std::size_t k = 0; k < s.slopes.size(); ++k) {
      Json c = coefficient_json(s.slopes[k]);
      c["series"] = fit.spec.predictors[k].series;
      c["lag"] = fit.spec.predictors[k].lag;
      seg["slopes"].push_back(std::move(c));
    }
    j["segments"].push_back(std::move(seg));
  }
  j["r2_annual"] = fit.r2_annual;
  j["r2_cumulative"] = fit.r2_cumulative;
  j["sigma"] = fit.sigma;
  j["sse_annual"] = fit.sse_annual;
  j["sse_cumulative"] = fit.sse_cumulative;
  j["cumulative_endpoint_gap"] = fit.cumulative_endpoint_gap();
  j["model"] = to_json(fit.model);
  return j;
}

Json to_json(const AdfResult& adf) {
  return Json{{"specification", "constant, no trend"},
              {"statistic", adf.statistic},
              {"lag_order", adf.lag_order},
              {"observations", adf.observations},
              {"table_size", adf.table_size == 0 ? Json("asymptotic") : Json(adf.table_size)},
              {"critical_values", {{"1%", adf.critical[0]}, {"5%", adf.critical[1]}, {"10%", adf.critical[2]}}},
              {"reject_unit_root", {{"1%", adf.reject[0]}, {"5%", adf.reject[1]}, {"10%", adf.reject[2]}}}};
}

YearRange parse_year_range(std::string_view text) {
  const auto colon = text.find(':', text.starts_with('-') ? 1 : 0);
  auto parse = [&](std::string_view part) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc() || ptr != part.data() + part.size()) {
      throw InputError("expected A:B, got '" + std::string(text) + "'");
    }
    return v;
  };
  if (colon == std::string_view::npos) throw InputError("expected A:B, got '" + std::string(text) + "'");
  YearRange r{parse(text.substr(0, colon)), parse(text.substr(colon + 1))};
  if (r.first > r.last) throw InputError("range '" + std::string(text) + "' is empty");
  return r;
}

}  // namespace lfpc::cli
