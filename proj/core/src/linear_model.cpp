#include "lfpc/linear_model.hpp"

#include "lfpc/error.hpp"

namespace lfpc {

const SegmentCoefficients& LinearModel::segment_for(int year) const {
  if (segments.empty()) throw InputError("model '" + id + "' has no coefficients");
  if (break_year && segments.size() > 1 && year >= *break_year) return segments[1];
  return segments[0];
}

double LinearModel::evaluate(int year, std::span<const double> predictor_values) const {
  const auto& seg = segment_for(year);
  if (predictor_values.size() != seg.slopes.size()) {
    throw InputError("model '" + id + "' expects " + std::to_string(seg.slopes.size()) +
                     " predictor values, got " + std::to_string(predictor_values.size()));
  }
  double value = seg.intercept;
  for (std::size_t j = 0; j < predictor_values.size(); ++j) value += seg.slopes[j] * predictor_values[j];
  return value;
}

AnnualSeries predict(const LinearModel& model, const Dataset& data, YearRange years) {
  if (years.first > years.last) throw InputError("predict: empty year range");
  std::vector<AnnualSeries> inputs;
  inputs.reserve(model.predictors.size());
  for (const auto& term : model.predictors) {
    AnnualSeries s = resolve_series(data, term.series);
    if (!s.covers({years.first - term.lag, years.last - term.lag})) {
      throw InputError("predict: predictor '" + term.series + "' at lag " +
                       std::to_string(term.lag) + " does not cover " +
                       std::to_string(years.first) + "-" + std::to_string(years.last));
    }
    inputs.push_back(std::move(s));
  }
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(years.size()));
  std::vector<double> x(inputs.size());
  for (int y = years.first; y <= years.last; ++y) {
    for (std::size_t j = 0; j < inputs.size(); ++j) x[j] = inputs[j].at(y - model.predictors[j].lag);
    out.push_back(model.evaluate(y, x));
  }
  return AnnualSeries(years.first, std::move(out), model.response_units,
                      model.id.empty() ? "predicted " + model.response : model.id);
}

}  // namespace lfpc
