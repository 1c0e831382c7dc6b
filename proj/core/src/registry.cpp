#include <string>

#include "lfpc/error.hpp"
#include "lfpc/forecast.hpp"

namespace lfpc {

namespace {

LinearModel single(std::string id, std::string response, Units units, std::vector<Term> terms,
                   double intercept, std::vector<double> slopes) {
  return {std::move(id), std::move(response), units, std::move(terms), std::nullopt,
          {{intercept, std::move(slopes)}}};
}

LinearModel split(std::string id, std::string response, Units units, std::vector<Term> terms,
                  int break_year, SegmentCoefficients before, SegmentCoefficients after) {
  return {std::move(id), std::move(response), units, std::move(terms), break_year,
          {std::move(before), std::move(after)}};
}

std::vector<ModelRegistryEntry> build() {
  std::vector<ModelRegistryEntry> r;
  r.push_back({"eq6", "u(t) = 0.044 - 1.10 pi(t), t > 1981",
               "unemployment driven by CPI inflation (anti-Phillips)", ResponseKind::Unemployment,
               single("eq6", "u", Units::Fraction, {{"pi", 0}}, 0.044, {-1.10})});
  r.push_back({"eq7", "pi(t) = 0.0007 + 1.31 l(t)", "CPI inflation from labor-force growth",
               ResponseKind::Inflation,
               single("eq7", "cpi", Units::FractionPerYear, {{"l", 0}}, 0.0007, {1.31})});
  r.push_back({"eq8", "pi(t) = -0.0084 + 1.90 l(t)",
               "GDP-deflator inflation from labor-force growth", ResponseKind::Inflation,
               single("eq8", "dgdp", Units::FractionPerYear, {{"l", 0}}, -0.0084, {1.90})});
  r.push_back({"eq9", "u(t) = 0.0432 - 1.556 l(t), t >= 1977; u(t) = 0.0432 - 0.179 l(t), t < 1977",
               "unemployment from labor-force growth with a break in 1977",
               ResponseKind::Unemployment,
               split("eq9", "u", Units::Fraction, {{"l", 0}}, 1977, {0.0432, {-0.179}},
                     {0.0432, {-1.556}})});
  // Recorded as a GDP-deflator model.
  r.push_back({"eq10",
               "pi(t) = -0.0392 + 2.80 l(t) + 0.9 u(t), t >= 1982; "
               "pi(t) = 0.161 - 10.0 l(t) + 0.9 u(t), t < 1982",
               "GDP-deflator inflation from labor-force growth and unemployment, break in 1982",
               ResponseKind::Inflation,
               split("eq10", "dgdp", Units::FractionPerYear, {{"l", 0}, {"u", 0}}, 1982,
                     {0.161, {-10.0, 0.9}}, {-0.0392, {2.80, 0.9}})});
  return r;
}

}  // namespace

const std::vector<ModelRegistryEntry>& model_registry() {
  static const std::vector<ModelRegistryEntry> registry = build();
  return registry;
}

const ModelRegistryEntry& registry_model(std::string_view id) {
  for (const auto& e : model_registry()) {
    if (e.id == id) return e;
  }
  throw InputError("unknown registry model '" + std::string(id) + "' (known: eq6..eq10)");
}

}  // namespace lfpc
