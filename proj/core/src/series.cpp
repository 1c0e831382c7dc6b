#include "lfpc/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lfpc/error.hpp"

namespace lfpc {

std::string_view to_string(Units units) {
  switch (units) {
    case Units::FractionPerYear: return "fraction-per-year";
    case Units::Fraction: return "fraction";
    case Units::Persons: return "persons";
  }
  return "unknown";
}

Units units_from_string(std::string_view text) {
  if (text == "fraction-per-year") return Units::FractionPerYear;
  if (text == "fraction") return Units::Fraction;
  if (text == "persons") return Units::Persons;
  throw InputError("unknown units '" + std::string(text) + "'");
}

AnnualSeries::AnnualSeries(int start_year, std::vector<double> values, Units units,
                           std::string label)
    : start_year_(start_year), values_(std::move(values)), units_(units), label_(std::move(label)) {
  if (values_.empty()) throw InputError("series '" + label_ + "' has no values");
}

double AnnualSeries::at(int year) const {
  if (!covers(year)) {
    throw InputError("series '" + label_ + "' has no value for year " + std::to_string(year) +
                     " (covers " + std::to_string(start_year()) + "-" +
                     std::to_string(end_year()) + ")");
  }
  return values_[static_cast<std::size_t>(year - start_year_)];
}

AnnualSeries AnnualSeries::slice(YearRange range) const {
  if (range.first > range.last || !covers(range)) {
    throw InputError("series '" + label_ + "' does not cover " + std::to_string(range.first) +
                     "-" + std::to_string(range.last));
  }
  auto begin = values_.begin() + (range.first - start_year_);
  return AnnualSeries(range.first, std::vector<double>(begin, begin + range.size()), units_,
                      label_);
}

AnnualSeries AnnualSeries::relabeled(std::string label) const {
  return AnnualSeries(start_year_, values_, units_, std::move(label));
}

AnnualSeries AnnualSeries::scaled(double factor) const {
  std::vector<double> out(values_);
  for (double& v : out) v *= factor;
  return AnnualSeries(start_year_, std::move(out), units_, label_);
}

namespace {

template <typename Op>
AnnualSeries combine(const AnnualSeries& a, const AnnualSeries& b, Op op, const char* name) {
  if (a.units() != b.units()) {
    throw InputError(std::string("cannot ") + name + " series with units " +
                     std::string(to_string(a.units())) + " and " +
                     std::string(to_string(b.units())));
  }
  const int first = std::max(a.start_year(), b.start_year());
  const int last = std::min(a.end_year(), b.end_year());
  if (first > last) throw InputError(std::string("cannot ") + name + " disjoint series");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(last - first + 1));
  for (int y = first; y <= last; ++y) out.push_back(op(a.at(y), b.at(y)));
  return AnnualSeries(first, std::move(out), a.units(), a.label());
}

}  // namespace

AnnualSeries operator-(const AnnualSeries& a, const AnnualSeries& b) {
  return combine(a, b, [](double x, double y) { return x - y; }, "subtract");
}

AnnualSeries operator+(const AnnualSeries& a, const AnnualSeries& b) {
  return combine(a, b, [](double x, double y) { return x + y; }, "add");
}

AnnualSeries log_growth(const AnnualSeries& level) {
  if (level.units() != Units::Persons) {
    throw InputError("log_growth expects a level series in persons, got " +
                     std::string(to_string(level.units())));
  }
  if (level.size() < 2) throw InputError("log_growth needs at least two points");
  const auto v = level.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] > 0.0)) {
      throw DomainError("log_growth: non-positive level " + std::to_string(v[i]) + " in year " +
                        std::to_string(level.start_year() + static_cast<int>(i)));
    }
  }
  std::vector<double> out(v.size() - 1);
  for (std::size_t i = 1; i < v.size(); ++i) out[i - 1] = std::log(v[i]) - std::log(v[i - 1]);
  return AnnualSeries(level.start_year() + 1, std::move(out), Units::FractionPerYear,
                      "dlog(" + level.label() + ")");
}

AnnualSeries shift(const AnnualSeries& series, int lag) {
  const auto v = series.values();
  return AnnualSeries(series.start_year() + lag, std::vector<double>(v.begin(), v.end()),
                      series.units(), series.label());
}

AnnualSeries cumulate(const AnnualSeries& series) {
  const auto v = series.values();
  std::vector<double> out(v.size());
  double running = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    running += v[i];
    out[i] = running;
  }
  return AnnualSeries(series.start_year(), std::move(out), series.units(), series.label());
}

AnnualSeries moving_average_3(const AnnualSeries& series) {
  const auto v = series.values();
  const std::size_t n = v.size();
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = v[0];
  } else {
    out[0] = (v[0] + v[1]) / 2.0;
    out[n - 1] = (v[n - 2] + v[n - 1]) / 2.0;
    for (std::size_t i = 1; i + 1 < n; ++i) out[i] = (v[i - 1] + v[i] + v[i + 1]) / 3.0;
  }
  return AnnualSeries(series.start_year(), std::move(out), series.units(), series.label());
}

AlignedPair align(const AnnualSeries& a, const AnnualSeries& b, int lag_b) {
  const int b_first = b.start_year() + lag_b;
  const int b_last = b.end_year() + lag_b;
  const int first = std::max(a.start_year(), b_first);
  const int last = std::min(a.end_year(), b_last);
  if (first > last) {
    throw InputError("align: '" + a.label() + "' and '" + b.label() + "' (lag " +
                     std::to_string(lag_b) + ") do not overlap");
  }
  AlignedPair out{{first, last}, {}, {}};
  out.a.reserve(static_cast<std::size_t>(last - first + 1));
  out.b.reserve(out.a.capacity());
  for (int y = first; y <= last; ++y) {
    out.a.push_back(a.at(y));
    out.b.push_back(b.at(y - lag_b));
  }
  return out;
}

}  // namespace lfpc
