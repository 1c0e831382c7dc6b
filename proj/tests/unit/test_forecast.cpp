#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "lfpc/error.hpp"
#include "lfpc/forecast.hpp"

using namespace lfpc;

namespace {

Scenario declining() {
  return build_scenario(linear_path(2010, 67e6, 2050, 57e6, Units::Persons, "lf"), {2011, 2050});
}

Scenario constant_path() {
  return build_scenario(AnnualSeries(2010, std::vector<double>(41, 67e6), Units::Persons), {2011, 2050});
}

double mean(const AnnualSeries& s) {
  return std::accumulate(s.values().begin(), s.values().end(), 0.0) / static_cast<double>(s.size());
}

const LinearModel& model(const char* id) { return registry_model(id).model; }

}  // namespace

TEST_CASE("linear path") {
  const auto p = linear_path(2010, 67e6, 2050, 57e6, Units::Persons);
  CHECK(p.size() == 41);
  CHECK(p.at(2010) == 67e6);
  CHECK(p.at(2050) == 57e6);
  CHECK(p.at(2030) == doctest::Approx(62e6));
  CHECK_THROWS_AS(linear_path(2010, 1, 2010, 2, Units::Persons), InputError);
}

TEST_CASE("scenario growth") {
  const auto flat = constant_path();
  for (double g : flat.growth.values()) CHECK(g == 0.0);
  const auto s = declining();
  CHECK(s.growth.at(2011) == doctest::Approx(std::log(66.75 / 67.0)).epsilon(1e-12));
  CHECK(s.growth.at(2050) == doctest::Approx(std::log(57.0 / 57.25)).epsilon(1e-12));
  CHECK(mean(s.growth.slice(s.horizon)) == doctest::Approx(std::log(57.0 / 67.0) / 40.0).epsilon(1e-12));
  CHECK(std::abs(mean(s.growth.slice(s.horizon)) + 0.00404) < 5e-5);
}

TEST_CASE("population scenario equals the scaled direct path") {
  const auto pop = linear_path(2010, 128.6e6, 2050, 109.4e6, Units::Persons, "population");
  const auto via_rate = build_scenario(pop, 0.521, {2011, 2050});
  const auto direct = build_scenario(pop.scaled(0.521), {2011, 2050});
  for (int y = 2010; y <= 2050; ++y) CHECK(via_rate.labor_force.at(y) == direct.labor_force.at(y));
  for (int y = 2011; y <= 2050; ++y) {
    CHECK(via_rate.growth.at(y) == doctest::Approx(direct.growth.at(y)).epsilon(1e-15));
    CHECK(via_rate.growth.at(y) == doctest::Approx(std::log(pop.at(y) / pop.at(y - 1))).epsilon(1e-12));
  }
}

TEST_CASE("scenario coverage") {
  const auto p = linear_path(2010, 67e6, 2050, 57e6, Units::Persons);
  CHECK_THROWS_AS(build_scenario(p, {2010, 2050}), InputError);
  CHECK_THROWS_AS(build_scenario(p, {2011, 2051}), InputError);
  CHECK_THROWS_AS(build_scenario(p, {2020, 2019}), InputError);
  CHECK_THROWS_AS(build_scenario(AnnualSeries(2010, {1, 2}, Units::Fraction), {2011, 2011}), InputError);
}

TEST_CASE("registry holds the printed models") {
  CHECK(model_registry().size() == 5);
  CHECK(model("eq8").segments[0].intercept == -0.0084);
  CHECK(model("eq8").segments[0].slopes[0] == 1.90);
  CHECK(model("eq9").break_year == 1977);
  CHECK(model("eq9").segments[1].slopes[0] == -1.556);
  CHECK(model("eq10").segments[0].slopes[1] == model("eq10").segments[1].slopes[1]);
  CHECK(registry_model("eq10").kind == ResponseKind::Inflation);
  CHECK(registry_model("eq6").kind == ResponseKind::Unemployment);
  CHECK_THROWS_AS(registry_model("eq11"), InputError);
}

TEST_CASE("inflation forecasts") {
  const auto flat = forecast_inflation(model("eq8"), constant_path());
  for (double v : flat.values()) CHECK(v == doctest::Approx(-0.0084).epsilon(1e-15));

  const auto pi = forecast_inflation(model("eq8"), declining());
  CHECK(pi.start_year() == 2011);
  CHECK(pi.end_year() == 2050);
  CHECK(pi.at(2011) == doctest::Approx(-0.0084 + 1.90 * std::log(66.75 / 67.0)).epsilon(1e-12));
  CHECK(pi.at(2050) == doctest::Approx(-0.0084 + 1.90 * std::log(57.0 / 57.25)).epsilon(1e-12));
  CHECK(std::abs(mean(pi) - (-0.0084 + 1.90 * -0.00404)) < 2e-4);
  for (double v : pi.values()) {
    CHECK(v >= -0.022);
    CHECK(v <= -0.004);
  }
  CHECK(std::abs(pi.at(2050) + 0.020) <= 0.004);
}

TEST_CASE("unemployment forecasts") {
  const auto flat = forecast_unemployment(model("eq9"), constant_path());
  for (double v : flat.values()) CHECK(v == 0.0432);
  Scenario s = declining();
  const auto u = forecast_unemployment(model("eq9"), s);
  CHECK(u.at(2050) == doctest::Approx(0.0432 - 1.556 * std::log(57.0 / 57.25)).epsilon(1e-12));
  CHECK(u.at(2050) >= 0.050);
  CHECK(u.at(2050) <= 0.060);
  CHECK_THROWS_AS(forecast_unemployment(model("eq6"), s), InputError);
}

TEST_CASE("generalized model needs an unemployment path") {
  const auto s = declining();
  CHECK_THROWS_AS(forecast_inflation(model("eq10"), s), InputError);
  const auto u = forecast_unemployment(model("eq9"), s);
  const auto pi = forecast_inflation(model("eq10"), s, &u);
  for (int y = 2011; y <= 2050; ++y) {
    CHECK(pi.at(y) == doctest::Approx(-0.0392 + 2.80 * s.growth.at(y) + 0.9 * u.at(y)).epsilon(1e-12));
  }
}

TEST_CASE("forecasts are affine in growth") {
  const auto a = declining();
  const auto b = build_scenario(linear_path(2010, 60e6, 2050, 70e6, Units::Persons), {2011, 2050});
  std::vector<double> avg;
  for (int y = 2010; y <= 2050; ++y) avg.push_back(std::sqrt(a.labor_force.at(y) * b.labor_force.at(y)));
  const auto c = build_scenario(AnnualSeries(2010, avg, Units::Persons), {2011, 2050});
  const auto fa = forecast_inflation(model("eq8"), a);
  const auto fb = forecast_inflation(model("eq8"), b);
  const auto fc = forecast_inflation(model("eq8"), c);
  for (int y = 2011; y <= 2050; ++y) {
    CHECK(fc.at(y) == doctest::Approx(0.5 * (fa.at(y) + fb.at(y))).epsilon(1e-12));
  }
}

TEST_CASE("forecast report") {
  const auto s = declining();
  CHECK_THROWS_AS(forecast_report({}, s), InputError);
  const auto single = forecast_report({forecast_model(registry_model("eq8"))}, s);
  REQUIRE(single.paths.size() == 1);
  CHECK(single.paths[0].kind == ResponseKind::Inflation);

  const auto both = forecast_report(
      {forecast_model(registry_model("eq10")), forecast_model(registry_model("eq8")),
       forecast_model(registry_model("eq9"))},
      s);
  REQUIRE(both.paths.size() == 3);
  CHECK(both.paths[0].model_id == "eq10");
  CHECK(both.paths[1].values == forecast_inflation(model("eq8"), s));
  CHECK(both.paths[2].values == forecast_unemployment(model("eq9"), s));

  const auto again = forecast_report(
      {forecast_model(registry_model("eq10")), forecast_model(registry_model("eq8")),
       forecast_model(registry_model("eq9"))},
      s);
  CHECK(forecast_csv(both) == forecast_csv(again));
  CHECK(forecast_json(both) == forecast_json(again));
}

TEST_CASE("forecast serialization") {
  const auto r = forecast_report({forecast_model(registry_model("eq8")), forecast_model(registry_model("eq9"))},
                                 declining());
  const auto csv = forecast_csv(r);
  CHECK(csv.rfind("year,labor_force,growth,eq8_inflation,eq9_unemployment\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 41);
  const auto j = nlohmann::json::parse(forecast_json(r));
  CHECK(j["scenario"]["horizon"][0] == 2011);
  CHECK(j["paths"].size() == 2);
  CHECK(j["paths"][1]["kind"] == "unemployment");
  CHECK(j["paths"][0]["series"]["values"].size() == 40);
}
