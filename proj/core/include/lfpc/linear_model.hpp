#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lfpc/ingest.hpp"
#include "lfpc/series.hpp"

namespace lfpc {

// Predictor reference: the value used at year t is series(t - lag).
struct Term {
  std::string series;
  int lag = 0;

  bool operator==(const Term&) const = default;
};

struct SegmentCoefficients {
  double intercept = 0.0;
  std::vector<double> slopes;  // one per Term, same order

  bool operator==(const SegmentCoefficients&) const = default;
};

// A lagged linear link response(t) = a + sum_j b_j * x_j(t - lag_j), optionally
// with a break: segments[0] applies before break_year, segments[1] from it on.
struct LinearModel {
  std::string id;
  std::string response;
  Units response_units = Units::FractionPerYear;
  std::vector<Term> predictors;
  std::optional<int> break_year;
  std::vector<SegmentCoefficients> segments;

  const SegmentCoefficients& segment_for(int year) const;
  double evaluate(int year, std::span<const double> predictor_values) const;
};

// Evaluates the model year by year. Predictor series are resolved from `data`
// (`dlog(NAME)` allowed); every year must be covered at the required lag.
AnnualSeries predict(const LinearModel& model, const Dataset& data, YearRange years);

}  // namespace lfpc
