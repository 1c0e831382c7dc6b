#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "lfpc/error.hpp"
#include "lfpc/series.hpp"

using namespace lfpc;

namespace {

AnnualSeries rates(int start, std::vector<double> v) {
  return AnnualSeries(start, std::move(v), Units::FractionPerYear, "s");
}

AnnualSeries persons(int start, std::vector<double> v) {
  return AnnualSeries(start, std::move(v), Units::Persons, "lf");
}

void check_values(const AnnualSeries& s, const std::vector<double>& expected, double tol = 1e-12) {
  REQUIRE(s.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(s.values()[i] == doctest::Approx(expected[i]).epsilon(tol));
  }
}

}  // namespace

TEST_CASE("series construction rejects empty values") {
  CHECK_THROWS_AS(AnnualSeries(1980, {}, Units::Fraction), InputError);
}

TEST_CASE("series at and slice") {
  const auto s = rates(1980, {1, 2, 3, 4});
  CHECK(s.end_year() == 1983);
  CHECK(s.at(1982) == 3);
  CHECK_THROWS_AS(s.at(1979), InputError);
  CHECK_THROWS_AS(s.at(1984), InputError);
  const auto sl = s.slice({1981, 1982});
  CHECK(sl.start_year() == 1981);
  check_values(sl, {2, 3});
  CHECK_THROWS_AS(s.slice({1979, 1981}), InputError);
}

TEST_CASE("arithmetic across mismatched units is rejected") {
  const auto a = rates(1980, {1, 2});
  const auto b = AnnualSeries(1980, {1, 2}, Units::Fraction);
  CHECK_THROWS_AS(a - b, InputError);
  CHECK_THROWS_AS(a + b, InputError);
  const auto d = a - rates(1981, {5, 7});
  CHECK(d.start_year() == 1981);
  check_values(d, {-3});
}

TEST_CASE("log_growth examples") {
  check_values(log_growth(persons(2000, {100, 100})), {0.0});
  check_values(log_growth(persons(2000, {100, 101})), {0.00995033085316809});
  const auto g = log_growth(persons(2000, {100, 110, 99}));
  CHECK(g.start_year() == 2001);
  CHECK(g.units() == Units::FractionPerYear);
  CHECK(g.label() == "dlog(lf)");
  check_values(g, {0.0953101798043249, -0.1053605156578263});
}

TEST_CASE("log_growth errors") {
  CHECK_THROWS_AS(log_growth(persons(2000, {100})), InputError);
  CHECK_THROWS_AS(log_growth(persons(2000, {100, 0})), DomainError);
  CHECK_THROWS_AS(log_growth(persons(2000, {-1, 5})), DomainError);
  CHECK_THROWS_AS(log_growth(rates(2000, {1, 2})), InputError);
}

TEST_CASE("shift examples") {
  const auto s = rates(1980, {1, 2, 3});
  CHECK(shift(s, 0) == s);
  const auto p = shift(s, 2);
  CHECK(p.start_year() == 1982);
  check_values(p, {1, 2, 3});
  CHECK(shift(s, -1).start_year() == 1979);
}

TEST_CASE("cumulate examples") {
  check_values(cumulate(rates(1980, {1, 2, 3})), {1, 3, 6});
  check_values(cumulate(rates(1980, {0, 0, 0})), {0, 0, 0});
  check_values(cumulate(rates(1980, {0.02, -0.01, 0.03})), {0.02, 0.01, 0.04});
}

TEST_CASE("moving_average_3 examples") {
  check_values(moving_average_3(rates(1980, {0.3, 0.3, 0.3, 0.3})), {0.3, 0.3, 0.3, 0.3});
  check_values(moving_average_3(rates(1980, {0, 3, 0})), {1.5, 1.0, 1.5});
  check_values(moving_average_3(rates(1980, {7})), {7});
  check_values(moving_average_3(rates(1980, {1, 5})), {3, 3});
}

TEST_CASE("align examples") {
  const auto a = rates(1980, std::vector<double>(11, 1.0));
  CHECK(align(a, rates(1980, std::vector<double>(11, 2.0)), 0).a.size() == 11);
  const auto p = align(a, rates(1985, std::vector<double>(11, 2.0)), 0);
  CHECK(p.years == YearRange{1985, 1990});
  CHECK(p.a.size() == 6);
  CHECK(p.b.size() == 6);
  CHECK_THROWS_AS(align(rates(1980, std::vector<double>(6, 1.0)),
                        rates(1990, std::vector<double>(6, 1.0)), 0),
                  InputError);
}

TEST_CASE("align pairs a(t) with b(t - lag)") {
  const auto a = rates(2000, {10, 11, 12, 13});
  const auto b = rates(2000, {0, 1, 2, 3});
  const auto p = align(a, b, 1);
  CHECK(p.years == YearRange{2001, 2003});
  CHECK(p.a == std::vector<double>{11, 12, 13});
  CHECK(p.b == std::vector<double>{0, 1, 2});
}

TEST_CASE("property: cumulated log growth telescopes") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> level(1e6, 1e8);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> v(30);
    for (auto& x : v) x = level(rng);
    const auto lf = persons(1970, v);
    const auto c = cumulate(log_growth(lf));
    CHECK(std::abs(c.at(1999) - (std::log(v.back()) - std::log(v.front()))) < 1e-12);
  }
}

TEST_CASE("property: shift round trip and align length") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> lag(-8, 8);
  std::uniform_int_distribution<int> len(1, 20);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = rates(1960 + lag(rng), std::vector<double>(len(rng), 0.5));
    const int k = lag(rng);
    CHECK(shift(shift(s, k), -k) == s);

    const auto b = rates(1960 + lag(rng), std::vector<double>(len(rng), 0.1));
    const int lo = std::max(s.start_year(), b.start_year() + k);
    const int hi = std::min(s.end_year(), b.end_year() + k);
    if (lo <= hi) {
      CHECK(static_cast<int>(align(s, b, k).a.size()) == hi - lo + 1);
    } else {
      CHECK_THROWS_AS(align(s, b, k), InputError);
    }
  }
}

TEST_CASE("property: moving average stays within range") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> noise(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> v(2 + trial % 15);
    for (auto& x : v) x = noise(rng);
    const auto m = moving_average_3(rates(1990, v));
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    for (double x : m.values()) {
      CHECK(x >= *lo - 1e-15);
      CHECK(x <= *hi + 1e-15);
    }
  }
}
