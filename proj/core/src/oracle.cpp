#include "lfpc/oracle.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "lfpc/error.hpp"

namespace lfpc::oracle {

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Dataset SynthData::dataset() const {
  Dataset d;
  for (const auto& p : predictors) d.emplace(p.label(), p);
  d.emplace("y", response);
  return d;
}

SynthData generate(const SynthSpec& spec) {
  if (spec.length < 10) throw InputError("synthetic series need length >= 10");
  if (spec.noise_sigma < 0.0) throw InputError("noise sigma must be >= 0");
  if (spec.slopes.empty()) throw InputError("synthetic spec needs at least one slope");
  if (spec.break_year && spec.post_slopes.size() != spec.slopes.size()) {
    throw InputError("post-break slopes must match the number of predictors");
  }
  Rng rng(spec.seed);
  const int end_year = spec.start_year + spec.length - 1;
  const int x_first = spec.start_year - std::max(spec.lag, 0);
  const int x_last = end_year + std::max(-spec.lag, 0);
  const int x_len = x_last - x_first + 1;

  SynthData out{{}, AnnualSeries(spec.start_year, {0.0}, Units::FractionPerYear, "y")};
  for (std::size_t j = 0; j < spec.slopes.size(); ++j) {
    std::vector<double> x(static_cast<std::size_t>(x_len));
    double v = rng.uniform(-spec.bound / 2.0, spec.bound / 2.0);
    for (auto& xi : x) {
      v += spec.step_sigma * rng.normal();
      while (v > spec.bound || v < -spec.bound) v = v > spec.bound ? 2.0 * spec.bound - v : -2.0 * spec.bound - v;
      xi = v;
    }
    out.predictors.emplace_back(x_first, std::move(x), Units::FractionPerYear,
                                "x" + std::to_string(j));
  }

  std::vector<double> y(static_cast<std::size_t>(spec.length));
  for (int t = spec.start_year; t <= end_year; ++t) {
    const bool post = spec.break_year && t >= *spec.break_year;
    double v = post ? spec.post_intercept : spec.intercept;
    const auto& slopes = post ? spec.post_slopes : spec.slopes;
    for (std::size_t j = 0; j < slopes.size(); ++j) v += slopes[j] * out.predictors[j].at(t - spec.lag);
    if (spec.noise_sigma > 0.0) v += spec.noise_sigma * rng.normal();
    y[static_cast<std::size_t>(t - spec.start_year)] = v;
  }
  out.response = AnnualSeries(spec.start_year, std::move(y), Units::FractionPerYear, "y");
  return out;
}

std::vector<double> brute_force_ols(const Sample& sample) {
  const std::size_t n = sample.y.size();
  const std::size_t p = sample.columns.size() + 1;
  for (const auto& c : sample.columns) {
    if (c.size() != n) throw InputError("oracle sample columns differ in length");
  }
  auto design = [&](std::size_t row, std::size_t col) {
    return col == 0 ? 1.0 : sample.columns[col - 1][row];
  };
  // Augmented normal equations [X'X | X'y].
  std::vector<std::vector<double>> a(p, std::vector<double>(p + 1, 0.0));
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      for (std::size_t r = 0; r < n; ++r) a[i][j] += design(r, i) * design(r, j);
    }
    for (std::size_t r = 0; r < n; ++r) a[i][p] += design(r, i) * sample.y[r];
  }
  double scale = 0.0;
  for (std::size_t i = 0; i < p; ++i) scale = std::max(scale, std::fabs(a[i][i]));
  for (std::size_t col = 0; col < p; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < p; ++r) {
      if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
    }
    if (std::fabs(a[pivot][col]) <= 1e-12 * scale) {
      throw EstimationError("normal equations are singular");
    }
    std::swap(a[pivot], a[col]);
    for (std::size_t r = col + 1; r < p; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c <= p; ++c) a[r][c] -= f * a[col][c];
    }
  }
  std::vector<double> b(p);
  for (std::size_t i = p; i-- > 0;) {
    double s = a[i][p];
    for (std::size_t c = i + 1; c < p; ++c) s -= a[i][c] * b[c];
    b[i] = s / a[i][i];
  }
  return b;
}

double cumulative_sse(const std::vector<double>& x, const std::vector<double>& y, double alpha,
                      double beta) {
  double cx = 0.0;
  double cy = 0.0;
  double sse = 0.0;
  for (std::size_t t = 0; t < y.size(); ++t) {
    cx += x[t];
    cy += y[t];
    const double pred = alpha * static_cast<double>(t + 1) + beta * cx;
    sse += (cy - pred) * (cy - pred);
  }
  return sse;
}

GridResult brute_force_constrained(const std::vector<double>& x, const std::vector<double>& y,
                                   const Grid& grid) {
  if (x.size() != y.size() || y.empty()) throw InputError("oracle sample is empty or ragged");
  if (!(grid.step > 0.0) || grid.hi < grid.lo) throw InputError("invalid grid");
  double total_x = 0.0;
  double total_y = 0.0;
  for (std::size_t t = 0; t < y.size(); ++t) {
    total_x += x[t];
    total_y += y[t];
  }
  const double n = static_cast<double>(y.size());
  const auto steps = static_cast<long>(std::floor((grid.hi - grid.lo) / grid.step + 1e-9));
  GridResult best{0.0, 0.0, INFINITY};
  for (long k = 0; k <= steps; ++k) {
    const double beta = grid.lo + static_cast<double>(k) * grid.step;
    const double alpha = (total_y - beta * total_x) / n;
    const double sse = cumulative_sse(x, y, alpha, beta);
    if (sse < best.sse) best = {alpha, beta, sse};
  }
  return best;
}

}  // namespace lfpc::oracle
