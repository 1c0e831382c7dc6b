#include "lfpc/diagnose.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "least_squares.hpp"
#include "lfpc/error.hpp"

namespace lfpc {

double r_squared(std::span<const double> observed, std::span<const double> predicted) {
  if (observed.size() != predicted.size()) throw InputError("r_squared: length mismatch");
  if (observed.size() < 3) throw InputError("r_squared needs at least 3 points");
  double mean = 0.0;
  for (double v : observed) mean += v;
  mean /= static_cast<double>(observed.size());
  double sse = 0.0;
  double sst = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    sse += (observed[i] - predicted[i]) * (observed[i] - predicted[i]);
    sst += (observed[i] - mean) * (observed[i] - mean);
  }
  if (!(sst > 0.0)) throw DomainError("r_squared: observed series has zero variance");
  return 1.0 - sse / sst;
}

double r_squared(const AnnualSeries& observed, const AnnualSeries& predicted) {
  if (observed.years() != predicted.years()) {
    throw InputError("r_squared: observed and predicted cover different years");
  }
  return r_squared(observed.values(), predicted.values());
}

double residual_sigma(std::span<const double> residuals) {
  if (residuals.size() < 2) throw InputError("residual_sigma needs at least 2 points");
  double mean = 0.0;
  for (double v : residuals) mean += v;
  mean /= static_cast<double>(residuals.size());
  double ss = 0.0;
  for (double v : residuals) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(residuals.size()));
}

double residual_sigma(const AnnualSeries& residuals) { return residual_sigma(residuals.values()); }

std::array<double, 3> dickey_fuller_critical_values(int observations, int* table_size) {
  // Constant, no trend (tau_mu). Fuller (1976), Table 8.5.2.
  struct Row {
    int n;
    std::array<double, 3> cv;
  };
  static constexpr Row kTable[] = {
      {25, {-3.75, -3.00, -2.63}},
      {50, {-3.58, -2.93, -2.60}},
      {100, {-3.51, -2.89, -2.58}},
      {0, {-3.43, -2.86, -2.57}},  // asymptotic
  };
  // Largest tabulated size not above the sample; the asymptotic row from 250 on.
  const Row* row = &kTable[0];
  if (observations >= 250) {
    row = &kTable[3];
  } else if (observations >= 100) {
    row = &kTable[2];
  } else if (observations >= 50) {
    row = &kTable[1];
  }
  if (table_size) *table_size = row->n;
  return row->cv;
}

AdfResult adf_test(std::span<const double> s, int lag_order) {
  if (lag_order < 0) throw InputError("adf_test: lag order must be >= 0");
  const auto n = static_cast<int>(s.size());
  if (n < lag_order + 10) {
    throw InputError("adf_test: " + std::to_string(n) + " points; lag order " +
                     std::to_string(lag_order) + " needs at least " + std::to_string(lag_order + 10));
  }
  const auto [lo, hi] = std::minmax_element(s.begin(), s.end());
  if (!(*hi > *lo)) throw DomainError("adf_test: series is constant");

  const int rows = n - 1 - lag_order;
  const int cols = 2 + lag_order;
  Eigen::MatrixXd x(rows, cols);
  Eigen::VectorXd y(rows);
  for (int r = 0; r < rows; ++r) {
    const int t = r + 1 + lag_order;
    y(r) = s[t] - s[t - 1];
    x(r, 0) = 1.0;
    x(r, 1) = s[t - 1];
    for (int i = 1; i <= lag_order; ++i) x(r, 1 + i) = s[t - i] - s[t - i - 1];
  }
  const auto ls = detail::solve_least_squares(x, y);
  const double s2 = ls.sse / (rows - cols);

  AdfResult out;
  out.lag_order = lag_order;
  out.observations = rows;
  out.statistic = ls.coef(1) / std::sqrt(s2 * ls.xtx_inverse(1, 1));
  out.critical = dickey_fuller_critical_values(rows, &out.table_size);
  for (int i = 0; i < 3; ++i) out.reject[i] = out.statistic < out.critical[i];
  return out;
}

AdfResult adf_test(const AnnualSeries& series, int lag_order) {
  return adf_test(series.values(), lag_order);
}

}  // namespace lfpc
