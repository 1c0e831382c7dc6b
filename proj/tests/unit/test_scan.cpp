#include <doctest.h>

#include <algorithm>

#include "lfpc/error.hpp"
#include "lfpc/estimate.hpp"
#include "lfpc/oracle.hpp"
#include "test_support.hpp"

using namespace lfpc;
using lfpc::test::link;

namespace {

Dataset periodic(int shift_by) {
  const std::vector<double> pattern{0, 1, 5, 2, 7, 3};
  std::vector<double> x;
  for (int i = 0; i < 60; ++i) x.push_back(pattern[static_cast<std::size_t>(i) % pattern.size()]);
  Dataset d;
  const AnnualSeries xs(1950, x, Units::FractionPerYear, "x");
  d.emplace("x", xs);
  d.emplace("y", shift(xs, shift_by).slice({1960, 2000}).relabeled("y"));
  return d;
}

oracle::SynthData lagged(std::uint64_t seed) {
  oracle::SynthSpec s;
  s.slopes = {2.0};
  s.lag = 2;
  s.noise_sigma = 0.002;
  s.seed = seed;
  return oracle::generate(s);
}

oracle::SynthData broken(std::uint64_t seed, int break_year) {
  oracle::SynthSpec s;
  s.intercept = 0.01;
  s.slopes = {1.0};
  s.break_year = break_year;
  s.post_intercept = 0.01;
  s.post_slopes = {-2.0};
  s.noise_sigma = 0.001;
  s.seed = seed;
  return oracle::generate(s);
}

LinkSpec xy_spec(Estimator est) { return link("y", {"x0"}, est); }

}  // namespace

TEST_CASE("lag scan on an identity fixture picks lag zero") {
  Dataset d;
  oracle::SynthSpec s;
  s.seed = 3;
  const auto g = oracle::generate(s);
  d.emplace("x", g.predictors[0]);
  d.emplace("y", g.predictors[0].relabeled("y"));
  const auto r = scan_lag(link("y", {"x"}, Estimator::Ols), d);
  CHECK(r.best_lag() == 0);
  CHECK(r.points[r.best].score == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("lag scan recovers an injected lag") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto r = scan_lag(xy_spec(Estimator::Ols), lagged(seed).dataset(), {.first_lag = -2, .last_lag = 2});
    CHECK(r.best_lag() == 2);
  }
}

TEST_CASE("lag tie-break prefers the smallest magnitude, then the negative lag") {
  // Pattern of period 6: y(t) = x(t - 1) also equals x(t + 5).
  const auto r1 = scan_lag(link("y", {"x"}, Estimator::Ols), periodic(1), {.first_lag = -5, .last_lag = 5});
  CHECK(r1.best_lag() == 1);
  // y(t) = x(t - 3) = x(t + 3): exact tie between +3 and -3.
  const auto r3 = scan_lag(link("y", {"x"}, Estimator::Ols), periodic(3), {.first_lag = -5, .last_lag = 5});
  CHECK(r3.best_lag() == -3);
  const auto& pts = r3.points;
  const auto plus = std::find_if(pts.begin(), pts.end(), [](const LagPoint& p) { return p.lag == 3; });
  const auto minus = std::find_if(pts.begin(), pts.end(), [](const LagPoint& p) { return p.lag == -3; });
  REQUIRE(plus != pts.end());
  REQUIRE(minus != pts.end());
  CHECK(plus->score == minus->score);
}

TEST_CASE("lag scan criterion follows the estimator unless overridden") {
  const auto d = lagged(7).dataset();
  const auto ols = scan_lag(xy_spec(Estimator::Ols), d, {.first_lag = 0, .last_lag = 2});
  for (const auto& p : ols.points) CHECK(p.score == p.fit.r2_annual);
  const auto cum = scan_lag(xy_spec(Estimator::Cumulative), d, {.first_lag = 0, .last_lag = 2});
  for (const auto& p : cum.points) CHECK(p.score == p.fit.r2_cumulative);
  const auto forced = scan_lag(xy_spec(Estimator::Cumulative), d,
                               {.first_lag = 0, .last_lag = 2, .criterion = Criterion::AnnualR2});
  for (const auto& p : forced.points) CHECK(p.score == p.fit.r2_annual);
}

TEST_CASE("lag scan errors") {
  const auto d = lagged(1).dataset();
  CHECK_THROWS_AS(scan_lag(xy_spec(Estimator::Ols), d, {.first_lag = 2, .last_lag = 1}), InputError);
  CHECK_THROWS_AS(scan_lag(xy_spec(Estimator::Ols), d, {.first_lag = 100, .last_lag = 101}), InputError);
  CHECK_THROWS_AS(scan_lag(xy_spec(Estimator::Ols), d, {.predictor = 1}), InputError);
}

TEST_CASE("Japan: CPI inflation and labor-force growth peak at lag zero") {
  const auto r = scan_lag(link("cpi", {"dlog(lf)"}, Estimator::Cumulative, YearRange{1982, 2012}),
                          lfpc::test::japan());
  CHECK(r.best_lag() == 0);
}

TEST_CASE("break scan recovers an injected break") {
  LinkSpec spec = xy_spec(Estimator::Ols);
  std::vector<int> candidates;
  for (int y = 1976; y <= 2005; ++y) candidates.push_back(y);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto r = scan_break(spec, broken(seed, 1990).dataset(), candidates);
    CHECK(r.best_year() == 1990);
  }
}

TEST_CASE("break scan without a break") {
  oracle::SynthSpec s;
  s.intercept = 0.02;
  s.slopes = {-1.0};
  s.seed = 8;
  const auto d = oracle::generate(s).dataset();
  std::vector<int> candidates;
  for (int y = 1976; y <= 2005; ++y) candidates.push_back(y);
  const auto flat = scan_break(xy_spec(Estimator::Ols), d, candidates);
  for (const auto& p : flat.points) CHECK(p.sse < 1e-20);

  LinkSpec shared = xy_spec(Estimator::Ols);
  shared.intercept_shared = true;
  shared.predictors[0].shared = true;
  const auto tied = scan_break(shared, d, {1995, 1980, 1990});
  CHECK(tied.points.front().year == 1980);
  CHECK(tied.best_year() == 1980);
}

TEST_CASE("break scan skips illegal candidates and fails when none remain") {
  const auto d = broken(1, 1990).dataset();
  const auto r = scan_break(xy_spec(Estimator::Ols), d, {1972, 1990, 2009});
  REQUIRE(r.points.size() == 1);
  CHECK(r.best_year() == 1990);
  CHECK_THROWS_AS(scan_break(xy_spec(Estimator::Ols), d, {1960, 1972, 2030}), InputError);
  CHECK_THROWS_AS(scan_break(xy_spec(Estimator::Ols), d, {}), InputError);
}

TEST_CASE("scans do not depend on the thread count") {
  const auto d = broken(5, 1988).dataset();
  std::vector<int> candidates;
  for (int y = 1976; y <= 2005; ++y) candidates.push_back(y);
  const auto a = scan_break(xy_spec(Estimator::Cumulative), d, candidates, {1});
  const auto b = scan_break(xy_spec(Estimator::Cumulative), d, candidates, {8});
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    CHECK(a.points[i].year == b.points[i].year);
    CHECK(a.points[i].sse == b.points[i].sse);
  }
  CHECK(a.best == b.best);

  const auto la = scan_lag(xy_spec(Estimator::Ols), d, {.threads = 1});
  const auto lb = scan_lag(xy_spec(Estimator::Ols), d, {.threads = 6});
  REQUIRE(la.points.size() == lb.points.size());
  for (std::size_t i = 0; i < la.points.size(); ++i) CHECK(la.points[i].score == lb.points[i].score);
  CHECK(la.best == lb.best);
}

TEST_CASE("scan selections are scale invariant") {
  const auto g = broken(9, 1993);
  Dataset scaled = g.dataset();
  scaled.insert_or_assign("y", g.response.scaled(-40.0));
  std::vector<int> candidates;
  for (int y = 1976; y <= 2005; ++y) candidates.push_back(y);
  CHECK(scan_break(xy_spec(Estimator::Ols), g.dataset(), candidates).best_year() ==
        scan_break(xy_spec(Estimator::Ols), scaled, candidates).best_year());
  CHECK(scan_lag(xy_spec(Estimator::Cumulative), g.dataset()).best_lag() ==
        scan_lag(xy_spec(Estimator::Cumulative), scaled).best_lag());
}

TEST_CASE("Japan: inflation-unemployment break near 1982") {
  std::vector<int> candidates;
  for (int y = 1977; y <= 2005; ++y) candidates.push_back(y);
  const auto r = scan_break(link("cpi", {"u"}, Estimator::Ols, YearRange{1975, 2012}),
                            lfpc::test::japan(), candidates);
  CHECK(r.best_year() >= 1981);
  CHECK(r.best_year() <= 1983);
}
