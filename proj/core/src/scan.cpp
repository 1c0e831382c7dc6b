#include <algorithm>
#include <cstdlib>
#include <optional>
#include <string>

#include "lfpc/error.hpp"
#include "lfpc/estimate.hpp"
#include "parallel.hpp"

namespace lfpc {

namespace {

double score(const FitResult& fit, Criterion criterion) {
  switch (criterion) {
    case Criterion::AnnualR2: return fit.r2_annual;
    case Criterion::CumulativeR2: return fit.r2_cumulative;
    case Criterion::Auto: break;
  }
  return fit.spec.estimator == Estimator::Ols ? fit.r2_annual : fit.r2_cumulative;
}

bool lag_preferred(const LagPoint& a, const LagPoint& b) {
  if (a.score != b.score) return a.score > b.score;
  if (std::abs(a.lag) != std::abs(b.lag)) return std::abs(a.lag) < std::abs(b.lag);
  return a.lag < b.lag;
}

// Illegal grid points (short overlap, degenerate design) drop out of the scan.
std::optional<FitResult> try_fit(const LinkSpec& spec, const Dataset& data) {
  try {
    return fit(spec, data);
  } catch (const InputError&) {
  } catch (const EstimationError&) {
  }
  return std::nullopt;
}

}  // namespace

LagScanResult scan_lag(const LinkSpec& spec, const Dataset& data, const LagScanOptions& options) {
  if (options.predictor >= spec.predictors.size()) {
    throw InputError("scan_lag: predictor index " + std::to_string(options.predictor) +
                     " out of range");
  }
  if (options.first_lag > options.last_lag) throw InputError("scan_lag: empty lag range");

  const auto count = static_cast<std::size_t>(options.last_lag - options.first_lag + 1);
  std::vector<std::optional<FitResult>> fits(count);
  detail::parallel_for(count, options.threads, [&](std::size_t i) {
    LinkSpec s = spec;
    const int lag = options.first_lag + static_cast<int>(i);
    s.predictors[options.predictor].lag = lag;
    s.max_abs_lag = std::max({s.max_abs_lag, std::abs(options.first_lag), std::abs(options.last_lag)});
    fits[i] = try_fit(s, data);
  });

  LagScanResult out;
  for (std::size_t i = 0; i < count; ++i) {
    if (!fits[i]) continue;
    const double sc = score(*fits[i], options.criterion);
    out.points.push_back({options.first_lag + static_cast<int>(i), sc, std::move(*fits[i])});
  }
  if (out.points.empty()) throw InputError("scan_lag: no lag in the range yields a legal sample");
  for (std::size_t i = 1; i < out.points.size(); ++i) {
    if (lag_preferred(out.points[i], out.points[out.best])) out.best = i;
  }
  return out;
}

BreakScanResult scan_break(const LinkSpec& spec, const Dataset& data, std::vector<int> candidates,
                           const BreakScanOptions& options) {
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  std::vector<std::optional<FitResult>> fits(candidates.size());
  detail::parallel_for(candidates.size(), options.threads, [&](std::size_t i) {
    LinkSpec s = spec;
    s.break_year = candidates[i];
    fits[i] = try_fit(s, data);
  });

  BreakScanResult out;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (!fits[i]) continue;
    const double sse = fits[i]->objective();
    out.points.push_back({candidates[i], sse, std::move(*fits[i])});
  }
  if (out.points.empty()) throw InputError("scan_break: no legal candidate break year");
  for (std::size_t i = 1; i < out.points.size(); ++i) {
    if (out.points[i].sse < out.points[out.best].sse) out.best = i;
  }
  return out;
}

}  // namespace lfpc
