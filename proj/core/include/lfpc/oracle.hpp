#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "lfpc/ingest.hpp"
#include "lfpc/series.hpp"

// Synthetic data and brute-force references for validating the estimators.
// Nothing here shares code with the estimator implementation.
namespace lfpc::oracle {

// Seeded generator with a stable stream: std::mt19937_64 (fully specified by
// the standard) feeding 53-bit uniforms and Box-Muller normals. Standard
// library distributions are avoided because their output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();  // [0, 1)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();   // N(0, 1)

 private:
  std::mt19937_64 engine_;
};

struct SynthSpec {
  int start_year = 1971;
  int length = 40;
  double intercept = 0.0;
  std::vector<double> slopes{1.0};  // one per predictor
  int lag = 0;                      // response(t) uses x(t - lag)
  std::optional<int> break_year;    // coefficients below apply from this year on
  double post_intercept = 0.0;
  std::vector<double> post_slopes;
  double noise_sigma = 0.0;
  std::uint64_t seed = 1;
  double bound = 0.02;       // predictor random walk reflects at +-bound
  double step_sigma = 0.004;
};

struct SynthData {
  std::vector<AnnualSeries> predictors;  // labelled x0, x1, ...
  AnnualSeries response;                 // labelled y

  Dataset dataset() const;
};

SynthData generate(const SynthSpec& spec);

// Columns without the intercept; the oracle adds it.
struct Sample {
  std::vector<std::vector<double>> columns;
  std::vector<double> y;
};

// Solves X'X b = X'y by Gaussian elimination with partial pivoting.
// Returns {intercept, slopes...}; throws EstimationError if singular.
std::vector<double> brute_force_ols(const Sample& sample);

struct GridResult {
  double alpha = 0.0;
  double beta = 0.0;
  double sse = 0.0;  // cumulative SSE at the optimum
};

struct Grid {
  double lo = -5.0;
  double hi = 5.0;
  double step = 1e-3;
};

// Exhaustive search over slope values; the intercept follows from pinning the
// final cumulative level, so every grid point satisfies the endpoint constraint.
GridResult brute_force_constrained(const std::vector<double>& x, const std::vector<double>& y,
                                   const Grid& grid);

// Cumulative SSE of (alpha, beta) on annual data.
double cumulative_sse(const std::vector<double>& x, const std::vector<double>& y, double alpha,
                      double beta);

}  // namespace lfpc::oracle
