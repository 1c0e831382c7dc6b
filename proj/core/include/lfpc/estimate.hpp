#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lfpc/ingest.hpp"
#include "lfpc/linear_model.hpp"
#include "lfpc/series.hpp"

namespace lfpc {

enum class Estimator {
  Ols,         // least squares on annual values
  Cumulative,  // least squares on cumulative curves, final level pinned to the observed one
};

std::string_view to_string(Estimator estimator);
Estimator estimator_from_string(std::string_view text);

struct PredictorSpec {
  std::string series;
  int lag = 0;
  bool shared = false;  // same slope in both segments (only meaningful with a break)

  bool operator==(const PredictorSpec&) const = default;
};

// Declarative description of one lagged linear link.
struct LinkSpec {
  std::string response;
  std::vector<PredictorSpec> predictors;
  std::optional<int> break_year;  // second segment starts at this year
  bool intercept_shared = false;
  Estimator estimator = Estimator::Ols;
  std::optional<YearRange> window;  // intersected with data coverage
  int max_abs_lag = 10;

  bool operator==(const LinkSpec&) const = default;
};

// Minimum observations per segment when a break carries per-segment coefficients.
inline constexpr int kMinSegmentObservations = 5;

struct Coefficient {
  double value = 0.0;
  double std_error = 0.0;
  double t_stat = 0.0;
  double p_value = 1.0;
};

struct SegmentFit {
  YearRange years;
  Coefficient intercept;
  std::vector<Coefficient> slopes;
};

struct FitResult {
  LinkSpec spec;
  LinearModel model;
  YearRange window;
  std::vector<SegmentFit> segments;
  std::size_t observations = 0;
  std::size_t parameters = 0;  // free parameters before the endpoint constraint
  int dof = 0;
  double r2_annual = 0.0;
  double r2_cumulative = 0.0;
  double sse_annual = 0.0;
  double sse_cumulative = 0.0;
  double sigma = 0.0;  // N-divisor standard deviation of annual residuals
  AnnualSeries observed;
  AnnualSeries fitted;
  AnnualSeries residuals;

  // Objective the estimator minimized (annual SSE for OLS, cumulative SSE otherwise).
  double objective() const;
  // C_pred(T_last) - C_obs(T_last).
  double cumulative_endpoint_gap() const;
};

// Dispatches on spec.estimator.
FitResult fit(const LinkSpec& spec, const Dataset& data);
FitResult ols_fit(LinkSpec spec, const Dataset& data);
FitResult cumulative_fit(LinkSpec spec, const Dataset& data);
// Requires spec.break_year; one joint solve across both segments.
FitResult fit_piecewise(const LinkSpec& spec, const Dataset& data);

// Applies a fitted model to (possibly new) predictor data.
AnnualSeries predict(const FitResult& fit, const Dataset& data, YearRange years);

enum class Criterion { Auto, AnnualR2, CumulativeR2 };

struct LagScanOptions {
  int first_lag = -5;
  int last_lag = 5;
  std::size_t predictor = 0;  // which predictor's lag is varied
  Criterion criterion = Criterion::Auto;
  unsigned threads = 0;       // 0: hardware concurrency
};

struct LagPoint {
  int lag;
  double score;
  FitResult fit;
};

struct LagScanResult {
  std::vector<LagPoint> points;  // ascending lag; lags without a legal sample are omitted
  std::size_t best = 0;
  int best_lag() const { return points[best].lag; }
};

// Exhaustive lag search. Best is the maximal criterion; ties go to the
// smallest |lag|, then to the negative lag.
LagScanResult scan_lag(const LinkSpec& spec, const Dataset& data, const LagScanOptions& options = {});

struct BreakScanOptions {
  unsigned threads = 0;
};

struct BreakPoint {
  int year;
  double sse;
  FitResult fit;
};

struct BreakScanResult {
  std::vector<BreakPoint> points;  // ascending year; illegal candidates omitted
  std::size_t best = 0;
  int best_year() const { return points[best].year; }
};

// Exhaustive break search minimizing the estimator's SSE; ties go to the earliest year.
BreakScanResult scan_break(const LinkSpec& spec, const Dataset& data, std::vector<int> candidates,
                           const BreakScanOptions& options = {});

// Phillips (1958): wage growth (percent) = -0.90 + 9.64 * u^-1.39, u in percent.
double original_phillips(double unemployment_percent);

}  // namespace lfpc
