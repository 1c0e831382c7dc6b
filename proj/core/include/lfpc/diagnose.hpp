#pragma once

#include <array>
#include <span>

#include "lfpc/series.hpp"

namespace lfpc {

// 1 - SSE/SST. Can be negative for predictions worse than the mean.
double r_squared(std::span<const double> observed, std::span<const double> predicted);
// Series must cover identical years.
double r_squared(const AnnualSeries& observed, const AnnualSeries& predicted);

// Standard deviation with the N divisor.
double residual_sigma(std::span<const double> residuals);
double residual_sigma(const AnnualSeries& residuals);

// Regularized incomplete beta I_x(a, b) by Lentz's continued fraction.
double regularized_incomplete_beta(double a, double b, double x);

// Two-sided Student-t tail probability P(|T| >= |t|) with `dof` degrees of freedom.
double t_pvalue(double t, int dof);

enum class Significance { OnePercent = 0, FivePercent = 1, TenPercent = 2 };

struct AdfResult {
  double statistic = 0.0;  // t-ratio on the lagged level
  int lag_order = 0;
  int observations = 0;    // rows in the test regression
  int table_size = 0;      // sample-size bracket of the critical values (0 = asymptotic)
  std::array<double, 3> critical{};  // 1%, 5%, 10%
  std::array<bool, 3> reject{};

  bool rejects(Significance level) const { return reject[static_cast<int>(level)]; }
};

// Constant-only Dickey-Fuller critical values (1%, 5%, 10%) for the bracket
// containing `observations`.
std::array<double, 3> dickey_fuller_critical_values(int observations, int* table_size = nullptr);

// Augmented Dickey-Fuller, constant and no trend:
//   ds(t) = c + rho * s(t-1) + sum_{i=1..p} phi_i * ds(t-i) + e(t)
// Requires size >= lag_order + 10.
AdfResult adf_test(std::span<const double> series, int lag_order = 0);
AdfResult adf_test(const AnnualSeries& series, int lag_order = 0);

}  // namespace lfpc
