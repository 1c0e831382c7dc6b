#include "lfpc/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "least_squares.hpp"
#include "lfpc/diagnose.hpp"
#include "lfpc/error.hpp"

namespace lfpc {

std::string_view to_string(Estimator estimator) {
  return estimator == Estimator::Ols ? "ols" : "cumulative";
}

Estimator estimator_from_string(std::string_view text) {
  if (text == "ols") return Estimator::Ols;
  if (text == "cumulative" || text == "bem") return Estimator::Cumulative;
  throw InputError("unknown estimator '" + std::string(text) + "' (expected ols|cumulative)");
}

double FitResult::objective() const {
  return spec.estimator == Estimator::Ols ? sse_annual : sse_cumulative;
}

double FitResult::cumulative_endpoint_gap() const {
  double obs = 0.0;
  double pred = 0.0;
  for (double v : observed.values()) obs += v;
  for (double v : fitted.values()) pred += v;
  return pred - obs;
}

namespace {

struct Sample {
  YearRange years;
  Units response_units = Units::FractionPerYear;
  std::vector<double> y;
  std::vector<std::vector<double>> x;  // one vector per predictor
};

std::string year_text(YearRange r) {
  return std::to_string(r.first) + "-" + std::to_string(r.last);
}

Sample build_sample(const LinkSpec& spec, const Dataset& data) {
  if (spec.response.empty()) throw InputError("link spec has no response series");
  if (spec.predictors.empty()) throw InputError("link spec needs at least one predictor");
  for (const auto& p : spec.predictors) {
    if (std::abs(p.lag) > spec.max_abs_lag) {
      throw InputError("lag " + std::to_string(p.lag) + " of '" + p.series +
                       "' exceeds the configured bound of " + std::to_string(spec.max_abs_lag));
    }
  }
  const AnnualSeries response = resolve_series(data, spec.response);
  std::vector<AnnualSeries> predictors;
  int first = response.start_year();
  int last = response.end_year();
  for (const auto& p : spec.predictors) {
    predictors.push_back(resolve_series(data, p.series));
    first = std::max(first, predictors.back().start_year() + p.lag);
    last = std::min(last, predictors.back().end_year() + p.lag);
  }
  if (spec.window) {
    if (spec.window->first > spec.window->last) {
      throw InputError("empty window " + year_text(*spec.window));
    }
    first = std::max(first, spec.window->first);
    last = std::min(last, spec.window->last);
  }
  if (first > last) {
    throw InputError("response '" + spec.response + "' and its predictors share no years");
  }
  Sample s;
  s.years = {first, last};
  s.response_units = response.units();
  for (int t = first; t <= last; ++t) s.y.push_back(response.at(t));
  s.x.resize(predictors.size());
  for (std::size_t j = 0; j < predictors.size(); ++j) {
    for (int t = first; t <= last; ++t) s.x[j].push_back(predictors[j].at(t - spec.predictors[j].lag));
  }
  return s;
}

// One design column: coefficient 0 is the intercept, j+1 the slope of
// predictor j. Segment -1 spans every year, 0 the years before the break, 1 the rest.
struct Column {
  std::size_t coef;
  int segment;
};

std::vector<Column> layout(const LinkSpec& spec) {
  std::vector<Column> cols;
  const bool split = spec.break_year.has_value();
  auto add = [&](std::size_t coef, bool shared) {
    if (!split || shared) {
      cols.push_back({coef, -1});
    } else {
      cols.push_back({coef, 0});
      cols.push_back({coef, 1});
    }
  };
  add(0, spec.intercept_shared);
  for (std::size_t j = 0; j < spec.predictors.size(); ++j) add(j + 1, spec.predictors[j].shared);
  return cols;
}

bool has_per_segment(const std::vector<Column>& cols) {
  return std::any_of(cols.begin(), cols.end(), [](const Column& c) { return c.segment >= 0; });
}

double r2_or_degenerate(double sse, double sst) {
  if (sst > 0.0) return 1.0 - sse / sst;
  return sse == 0.0 ? 1.0 : -std::numeric_limits<double>::infinity();
}

double centered_ss(const Eigen::VectorXd& v) {
  return (v.array() - v.mean()).square().sum();
}

Coefficient make_coefficient(double value, double variance, int dof) {
  Coefficient c;
  c.value = value;
  c.std_error = std::sqrt(std::max(variance, 0.0));
  if (c.std_error > 0.0) {
    c.t_stat = value / c.std_error;
    c.p_value = t_pvalue(c.t_stat, dof);
  } else {
    c.t_stat = value == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), value);
    c.p_value = value == 0.0 ? 1.0 : 0.0;
  }
  return c;
}

FitResult run_fit(const LinkSpec& spec, const Dataset& data) {
  const Sample sample = build_sample(spec, data);
  const auto n = static_cast<Eigen::Index>(sample.y.size());
  const std::vector<Column> cols = layout(spec);
  const auto p = static_cast<Eigen::Index>(cols.size());

  int segment_count = 1;
  if (spec.break_year) {
    const int b = *spec.break_year;
    if (b <= sample.years.first || b > sample.years.last) {
      throw InputError("break year " + std::to_string(b) + " is not strictly inside " +
                       year_text(sample.years));
    }
    if (has_per_segment(cols)) {
      const int before = b - sample.years.first;
      const int after = sample.years.last - b + 1;
      if (before < kMinSegmentObservations || after < kMinSegmentObservations) {
        throw InputError("break year " + std::to_string(b) + " leaves " + std::to_string(before) +
                         "/" + std::to_string(after) + " observations; each segment needs " +
                         std::to_string(kMinSegmentObservations));
      }
    }
    segment_count = 2;
  }
  if (n < p + 1) {
    throw InputError("sample " + year_text(sample.years) + " has " + std::to_string(n) +
                     " observations; " + std::to_string(p + 1) + " needed for " +
                     std::to_string(p) + " coefficients");
  }

  auto segment_of = [&](Eigen::Index row) {
    return spec.break_year && sample.years.first + row >= *spec.break_year ? 1 : 0;
  };

  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, p);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    y(i) = sample.y[static_cast<std::size_t>(i)];
    for (Eigen::Index k = 0; k < p; ++k) {
      const Column& c = cols[static_cast<std::size_t>(k)];
      if (c.segment >= 0 && c.segment != segment_of(i)) continue;
      x(i, k) = c.coef == 0 ? 1.0 : sample.x[c.coef - 1][static_cast<std::size_t>(i)];
    }
  }
  // A slope column that is constant where it is active duplicates the intercept.
  for (Eigen::Index k = 0; k < p; ++k) {
    const Column& c = cols[static_cast<std::size_t>(k)];
    if (c.coef == 0) continue;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (c.segment >= 0 && c.segment != segment_of(i)) continue;
      lo = std::min(lo, x(i, k));
      hi = std::max(hi, x(i, k));
    }
    if (!(hi > lo)) {
      throw EstimationError("predictor '" + spec.predictors[c.coef - 1].series +
                            "' has zero variance" +
                            (c.segment >= 0 ? " in segment " + std::to_string(c.segment + 1) : ""));
    }
  }

  const int dof = static_cast<int>(n - p);
  Eigen::VectorXd coef(p);
  Eigen::VectorXd variance(p);

  if (spec.estimator == Estimator::Ols) {
    const auto ls = detail::solve_least_squares(x, y);
    coef = ls.coef;
    const double s2 = ls.sse / dof;
    variance = s2 * ls.xtx_inverse.diagonal();
  } else {
    // Cumulative curves start at zero before the first year. The endpoint
    // constraint C_pred(T) = C_obs(T) eliminates the intercept that is active
    // in the final year; the remaining coefficients solve a reduced problem.
    Eigen::MatrixXd cx = x;
    Eigen::VectorXd cy = y;
    for (Eigen::Index i = 1; i < n; ++i) {
      cx.row(i) += cx.row(i - 1);
      cy(i) += cy(i - 1);
    }
    Eigen::Index elim = -1;
    for (Eigen::Index k = 0; k < p; ++k) {
      const Column& c = cols[static_cast<std::size_t>(k)];
      if (c.coef == 0 && c.segment != 0) elim = k;
    }
    const double k_e = cx(n - 1, elim);
    const double c_total = cy(n - 1);

    Eigen::MatrixXd w(n, p - 1);
    Eigen::VectorXd g(p - 1);
    for (Eigen::Index k = 0, r = 0; k < p; ++k) {
      if (k == elim) continue;
      g(r) = cx(n - 1, k) / k_e;
      w.col(r) = cx.col(k) - cx.col(elim) * g(r);
      ++r;
    }
    const Eigen::VectorXd z = cy - cx.col(elim) * (c_total / k_e);
    const auto ls = detail::solve_least_squares(w, z);
    const double s2 = ls.sse / dof;
    const Eigen::MatrixXd cov = s2 * ls.xtx_inverse;

    double eliminated = c_total / k_e;
    for (Eigen::Index k = 0, r = 0; k < p; ++k) {
      if (k == elim) continue;
      coef(k) = ls.coef(r);
      variance(k) = cov(r, r);
      eliminated -= g(r) * ls.coef(r);
      ++r;
    }
    coef(elim) = eliminated;
    variance(elim) = g.dot(cov * g);
  }

  const Eigen::VectorXd fitted = x * coef;
  const Eigen::VectorXd resid = y - fitted;
  Eigen::VectorXd cum_obs = y;
  Eigen::VectorXd cum_fit = fitted;
  for (Eigen::Index i = 1; i < n; ++i) {
    cum_obs(i) += cum_obs(i - 1);
    cum_fit(i) += cum_fit(i - 1);
  }

  auto to_vec = [](const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); };

  FitResult out{
      .spec = spec,
      .model = {},
      .window = sample.years,
      .segments = {},
      .observations = static_cast<std::size_t>(n),
      .parameters = static_cast<std::size_t>(p),
      .dof = dof,
      .r2_annual = r2_or_degenerate(resid.squaredNorm(), centered_ss(y)),
      .r2_cumulative = r2_or_degenerate((cum_obs - cum_fit).squaredNorm(), centered_ss(cum_obs)),
      .sse_annual = resid.squaredNorm(),
      .sse_cumulative = (cum_obs - cum_fit).squaredNorm(),
      .sigma = 0.0,
      .observed = AnnualSeries(sample.years.first, sample.y, sample.response_units, spec.response),
      .fitted = AnnualSeries(sample.years.first, to_vec(fitted), sample.response_units,
                             "fitted " + spec.response),
      .residuals = AnnualSeries(sample.years.first, to_vec(resid), sample.response_units,
                                "residuals " + spec.response),
  };
  out.sigma = residual_sigma(out.residuals.values());

  out.model.id = "fit";
  out.model.response = spec.response;
  out.model.response_units = sample.response_units;
  out.model.break_year = spec.break_year;
  for (const auto& pr : spec.predictors) out.model.predictors.push_back({pr.series, pr.lag});

  for (int s = 0; s < segment_count; ++s) {
    SegmentFit seg;
    if (segment_count == 1) {
      seg.years = sample.years;
    } else if (s == 0) {
      seg.years = {sample.years.first, *spec.break_year - 1};
    } else {
      seg.years = {*spec.break_year, sample.years.last};
    }
    SegmentCoefficients plain;
    for (std::size_t c = 0; c <= spec.predictors.size(); ++c) {
      for (Eigen::Index k = 0; k < p; ++k) {
        const Column& col = cols[static_cast<std::size_t>(k)];
        if (col.coef != c || (col.segment >= 0 && col.segment != s)) continue;
        const Coefficient coefficient = make_coefficient(coef(k), variance(k), dof);
        if (c == 0) {
          seg.intercept = coefficient;
          plain.intercept = coefficient.value;
        } else {
          seg.slopes.push_back(coefficient);
          plain.slopes.push_back(coefficient.value);
        }
      }
    }
    out.segments.push_back(std::move(seg));
    out.model.segments.push_back(std::move(plain));
  }
  return out;
}

}  // namespace

FitResult fit(const LinkSpec& spec, const Dataset& data) { return run_fit(spec, data); }

FitResult ols_fit(LinkSpec spec, const Dataset& data) {
  spec.estimator = Estimator::Ols;
  return run_fit(spec, data);
}

FitResult cumulative_fit(LinkSpec spec, const Dataset& data) {
  spec.estimator = Estimator::Cumulative;
  return run_fit(spec, data);
}

FitResult fit_piecewise(const LinkSpec& spec, const Dataset& data) {
  if (!spec.break_year) throw InputError("fit_piecewise requires a break year");
  return run_fit(spec, data);
}

AnnualSeries predict(const FitResult& fit, const Dataset& data, YearRange years) {
  return predict(fit.model, data, years);
}

double original_phillips(double unemployment_percent) {
  if (!(unemployment_percent > 0.0)) {
    throw DomainError("original Phillips curve needs u > 0, got " +
                      std::to_string(unemployment_percent));
  }
  return -0.90 + 9.64 * std::pow(unemployment_percent, -1.39);
}

}  // namespace lfpc
