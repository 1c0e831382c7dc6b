#include <doctest.h>

#include <cmath>
#include <numeric>

#include "lfpc/error.hpp"
#include "lfpc/oracle.hpp"

using namespace lfpc;
using namespace lfpc::oracle;

TEST_CASE("rng is reproducible and in range") {
  Rng a(11);
  Rng b(11);
  Rng c(12);
  bool differs = false;
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform();
    CHECK(u == b.uniform());
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    differs = differs || u != c.uniform();
  }
  CHECK(differs);
}

TEST_CASE("rng normal has unit moments") {
  Rng r(5);
  const int n = 200000;
  double s = 0.0;
  double s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = r.normal();
    s += z;
    s2 += z * z;
  }
  CHECK(std::abs(s / n) < 0.01);
  CHECK(std::abs(s2 / n - 1.0) < 0.02);
}

TEST_CASE("brute_force_ols on an exact line") {
  const auto b = brute_force_ols({{{1, 2, 3}}, {2, 4, 6}});
  CHECK(b[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(b[1] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("brute_force_ols matches closed-form simple regression") {
  Rng r(3);
  std::vector<double> x(50);
  std::vector<double> y(50);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = r.normal();
    y[i] = 0.3 - 1.7 * x[i] + 0.5 * r.normal();
  }
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / 50.0;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / 50.0;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  const auto b = brute_force_ols({{x}, y});
  CHECK(b[1] == doctest::Approx(sxy / sxx).epsilon(1e-12));
  CHECK(b[0] == doctest::Approx(my - sxy / sxx * mx).epsilon(1e-12));
}

TEST_CASE("brute_force_ols rejects a singular design") {
  CHECK_THROWS_AS(brute_force_ols({{{1, 1, 1}}, {1, 2, 3}}), EstimationError);
  CHECK_THROWS_AS(brute_force_ols({{{1, 2, 3}, {2, 4, 6}}, {1, 2, 3}}), EstimationError);
}

TEST_CASE("grid oracle pins the final cumulative level") {
  const std::vector<double> x{0.01, -0.02, 0.015, 0.0, 0.02, -0.01};
  const std::vector<double> y{0.03, -0.01, 0.02, 0.005, 0.04, 0.0};
  const auto g = brute_force_constrained(x, y, {-5, 5, 0.01});
  const double cx = std::accumulate(x.begin(), x.end(), 0.0);
  const double cy = std::accumulate(y.begin(), y.end(), 0.0);
  CHECK(std::abs(g.alpha * 6 + g.beta * cx - cy) < 1e-14);
  CHECK(g.sse == doctest::Approx(cumulative_sse(x, y, g.alpha, g.beta)));
}

TEST_CASE("grid oracle recovers an exact relation") {
  std::vector<double> x{0.01, -0.02, 0.015, 0.0, 0.02, -0.01, 0.005};
  std::vector<double> y;
  for (double v : x) y.push_back(-0.0084 + 1.9 * v);
  const auto g = brute_force_constrained(x, y, {0, 4, 0.001});
  CHECK(g.beta == doctest::Approx(1.9).epsilon(1e-9));
  CHECK(g.alpha == doctest::Approx(-0.0084).epsilon(1e-9));
  CHECK(g.sse < 1e-20);
}

TEST_CASE("generate is deterministic and honours the lag") {
  SynthSpec s;
  s.intercept = 0.01;
  s.slopes = {2.0};
  s.lag = 2;
  s.seed = 99;
  const auto a = generate(s);
  const auto b = generate(s);
  CHECK(a.response == b.response);
  CHECK(a.predictors[0] == b.predictors[0]);
  CHECK(a.response.size() == 40);
  CHECK(a.predictors[0].start_year() == s.start_year - 2);
  for (int t = a.response.start_year(); t <= a.response.end_year(); ++t) {
    CHECK(a.response.at(t) == doctest::Approx(0.01 + 2.0 * a.predictors[0].at(t - 2)));
  }
}

TEST_CASE("generated predictors stay within the reflection bound") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    SynthSpec s;
    s.seed = seed;
    s.length = 200;
    const auto data = generate(s);
    for (double v : data.predictors[0].values()) {
      CHECK(std::abs(v) <= s.bound);
    }
  }
}

TEST_CASE("generate applies post-break coefficients") {
  SynthSpec s;
  s.break_year = 1990;
  s.intercept = 0.01;
  s.slopes = {1.0};
  s.post_intercept = 0.02;
  s.post_slopes = {-2.0};
  const auto d = generate(s);
  const auto& x = d.predictors[0];
  CHECK(d.response.at(1989) == doctest::Approx(0.01 + x.at(1989)));
  CHECK(d.response.at(1990) == doctest::Approx(0.02 - 2.0 * x.at(1990)));
  s.post_slopes = {};
  CHECK_THROWS_AS(generate(s), InputError);
}

TEST_CASE("grid refinement never worsens the optimum") {
  SynthSpec s;
  s.intercept = -0.005;
  s.slopes = {1.4};
  s.noise_sigma = 0.002;
  s.seed = 17;
  const auto d = generate(s);
  const auto& xs = d.predictors[0];
  std::vector<double> x;
  for (int t = d.response.start_year(); t <= d.response.end_year(); ++t) x.push_back(xs.at(t));
  const std::vector<double> y(d.response.values().begin(), d.response.values().end());
  double previous = INFINITY;
  for (double step = 0.08; step >= 0.00125; step /= 2.0) {
    const auto g = brute_force_constrained(x, y, {-4.0, 4.0, step});
    CHECK(g.sse <= previous);
    previous = g.sse;
  }
}
