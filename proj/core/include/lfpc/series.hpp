#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lfpc {

// Measurement units carried by a series. Rates are always dimensionless
// fractions internally (0.05 == 5%); percent only exists at I/O boundaries.
enum class Units { FractionPerYear, Fraction, Persons };

std::string_view to_string(Units units);
Units units_from_string(std::string_view text);

struct YearRange {
  int first = 0;
  int last = 0;

  int size() const { return last - first + 1; }
  bool contains(int year) const { return year >= first && year <= last; }
  bool operator==(const YearRange&) const = default;
};

// Year-indexed annual series: one value per consecutive calendar year.
//
// Immutable after construction. Every transform returns a new series.
class AnnualSeries {
 public:
  AnnualSeries(int start_year, std::vector<double> values, Units units,
               std::string label = {});

  int start_year() const { return start_year_; }
  int end_year() const { return start_year_ + static_cast<int>(values_.size()) - 1; }
  YearRange years() const { return {start_year(), end_year()}; }
  std::size_t size() const { return values_.size(); }
  Units units() const { return units_; }
  const std::string& label() const { return label_; }
  std::span<const double> values() const { return values_; }

  bool covers(int year) const { return years().contains(year); }
  bool covers(YearRange range) const { return covers(range.first) && covers(range.last); }

  // Value at a calendar year; throws InputError when the year is not covered.
  double at(int year) const;

  // Sub-series restricted to [range.first, range.last] (must be covered).
  AnnualSeries slice(YearRange range) const;

  AnnualSeries relabeled(std::string label) const;
  AnnualSeries scaled(double factor) const;

  bool operator==(const AnnualSeries&) const = default;

 private:
  int start_year_;
  std::vector<double> values_;
  Units units_;
  std::string label_;
};

// Element-wise difference over the common year range. Units must agree.
AnnualSeries operator-(const AnnualSeries& a, const AnnualSeries& b);
AnnualSeries operator+(const AnnualSeries& a, const AnnualSeries& b);

// Backward log-difference ln(x(t)) - ln(x(t-1)); starts one year after `level`.
AnnualSeries log_growth(const AnnualSeries& level);

// Re-index: the value at year y moves to year y + lag.
AnnualSeries shift(const AnnualSeries& series, int lag);

// Running sum starting from the first year.
AnnualSeries cumulate(const AnnualSeries& series);

// Centered 3-year mean; endpoints average the two available points.
AnnualSeries moving_average_3(const AnnualSeries& series);

struct AlignedPair {
  YearRange years;
  std::vector<double> a;
  std::vector<double> b;
};

// Pairs a(t) with b(t - lag_b) over the common years.
AlignedPair align(const AnnualSeries& a, const AnnualSeries& b, int lag_b);

}  // namespace lfpc
