#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lfpc/diagnose.hpp"
#include "lfpc/error.hpp"
#include "lfpc/estimate.hpp"
#include "lfpc/forecast.hpp"
#include "lfpc/ingest.hpp"
#include "lfpc/oracle.hpp"
#include "lfpc/series.hpp"
#include "spec_io.hpp"
#include "svg_chart.hpp"

namespace lfpc::cli {

namespace fs = std::filesystem;

namespace {

// Thrown for problems that should print usage and exit 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string manifest;
  std::string out_dir = "out";
  std::vector<std::string> formats;
  std::string window;
  std::uint64_t seed = 1;
  std::string cache_dir;
  int verbosity = 0;
};

struct SpecFlags {
  std::string spec_file;
  std::string response;
  std::vector<std::string> predictors;
  std::string estimator;
  std::optional<int> break_year;
  bool share_intercept = false;
  std::optional<int> max_abs_lag;
};

std::string shortest(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

class Context {
 public:
  Context(const RunConfig& cfg, std::ostream& out, std::ostream& err)
      : cfg_(cfg), out_(out), err_(err) {}

  std::ostream& out() { return out_; }

  void log(const std::string& msg) {
    if (cfg_.verbosity > 0) err_ << "lfpc: " << msg << '\n';
  }

  std::vector<std::string> formats(std::vector<std::string> fallback) const {
    auto f = cfg_.formats.empty() ? std::move(fallback) : cfg_.formats;
    for (const auto& x : f) {
      if (x != "csv" && x != "json" && x != "svg") throw UsageError("unknown format '" + x + "'");
    }
    return f;
  }

  bool wants(const std::vector<std::string>& formats, const char* f) const {
    return std::find(formats.begin(), formats.end(), f) != formats.end();
  }

  std::optional<YearRange> window() const {
    if (cfg_.window.empty()) return std::nullopt;
    try {
      return parse_year_range(cfg_.window);
    } catch (const InputError& e) {
      throw UsageError(std::string("--window: ") + e.what());
    }
  }

  FetchOptions fetch_options() const {
    FetchOptions o;
    if (!cfg_.cache_dir.empty()) o.cache_dir = cfg_.cache_dir;
    return o;
  }

  const DatasetManifest& manifest() {
    if (cfg_.manifest.empty()) throw UsageError("--manifest is required for this command");
    if (!manifest_) manifest_ = load_manifest(cfg_.manifest);
    return *manifest_;
  }

  const Dataset& data() {
    if (!data_) {
      data_ = load_dataset(manifest(), fetch_options());
      log("loaded " + std::to_string(data_->size()) + " series from " + cfg_.manifest);
    }
    return *data_;
  }

  void write(const std::string& name, const std::string& content) {
    const fs::path dir(cfg_.out_dir);
    fs::create_directories(dir);
    const fs::path file = dir / name;
    std::ofstream f(file, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot write " + file.string());
    f << content;
    log("wrote " + file.string());
  }

  std::uint64_t seed() const { return cfg_.seed; }
  const RunConfig& config() const { return cfg_; }

 private:
  const RunConfig& cfg_;
  std::ostream& out_;
  std::ostream& err_;
  std::optional<DatasetManifest> manifest_;
  std::optional<Dataset> data_;
};

void add_spec_flags(CLI::App* cmd, SpecFlags& f) {
  cmd->add_option("--spec", f.spec_file, "JSON link spec (canonical form)");
  cmd->add_option("--response", f.response, "response series name");
  cmd->add_option("--predictor", f.predictors, "NAME[:LAG][:shared], repeatable");
  cmd->add_option("--estimator", f.estimator, "ols | cumulative");
  cmd->add_option("--break", f.break_year, "first year of the second segment");
  cmd->add_flag("--share-intercept", f.share_intercept, "same intercept in both segments");
  cmd->add_option("--max-abs-lag", f.max_abs_lag, "bound on |lag|");
}

PredictorSpec parse_predictor(const std::string& text) {
  PredictorSpec p;
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.empty() || parts[0].empty()) throw UsageError("empty --predictor");
  p.series = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (parts[i] == "shared") {
      p.shared = true;
      continue;
    }
    int lag = 0;
    auto [ptr, ec] = std::from_chars(parts[i].data(), parts[i].data() + parts[i].size(), lag);
    if (ec != std::errc() || ptr != parts[i].data() + parts[i].size()) {
      throw UsageError("bad --predictor '" + text + "' (expected NAME[:LAG][:shared])");
    }
    p.lag = lag;
  }
  return p;
}

LinkSpec resolve_spec(const SpecFlags& f, Context& ctx) {
  LinkSpec spec;
  if (!f.spec_file.empty()) {
    spec = load_link_spec(f.spec_file);
  } else {
    if (f.response.empty() || f.predictors.empty()) {
      throw UsageError("give --spec FILE or --response with at least one --predictor");
    }
    spec.response = f.response;
  }
  if (!f.response.empty()) spec.response = f.response;
  if (!f.predictors.empty()) {
    spec.predictors.clear();
    for (const auto& p : f.predictors) spec.predictors.push_back(parse_predictor(p));
  }
  if (!f.estimator.empty()) {
    try {
      spec.estimator = estimator_from_string(f.estimator);
    } catch (const InputError& e) {
      throw UsageError(e.what());
    }
  }
  if (f.break_year) spec.break_year = f.break_year;
  if (f.share_intercept) spec.intercept_shared = true;
  if (f.max_abs_lag) spec.max_abs_lag = *f.max_abs_lag;
  if (auto w = ctx.window()) spec.window = w;
  return spec;
}

std::string residuals_csv(const FitResult& fit) {
  std::ostringstream o;
  o << "year,observed,fitted,residual,cumulative_observed,cumulative_fitted\n";
  double co = 0.0;
  double cf = 0.0;
  for (int y = fit.window.first; y <= fit.window.last; ++y) {
    const double ob = fit.observed.at(y);
    const double fi = fit.fitted.at(y);
    co += ob;
    cf += fi;
    o << y << ',' << shortest(ob) << ',' << shortest(fi) << ',' << shortest(fit.residuals.at(y))
      << ',' << shortest(co) << ',' << shortest(cf) << '\n';
  }
  return o.str();
}

std::vector<double> years_of(const AnnualSeries& s) {
  std::vector<double> x;
  for (int y = s.start_year(); y <= s.end_year(); ++y) x.push_back(y);
  return x;
}

std::vector<double> values_of(const AnnualSeries& s) {
  return {s.values().begin(), s.values().end()};
}

ChartSeries line(const std::string& label, const AnnualSeries& s) {
  return {label, years_of(s), values_of(s), Mark::Line};
}

std::string fit_svg(const FitResult& fit, bool cumulative_panel) {
  ChartSpec chart;
  chart.x_label = "year";
  if (cumulative_panel) {
    chart.title = "Cumulative " + fit.spec.response + ": measured vs predicted";
    chart.series = {line("measured", cumulate(fit.observed)), line("predicted", cumulate(fit.fitted))};
  } else {
    chart.title = fit.spec.response + ": measured vs predicted";
    chart.series = {line("measured", fit.observed), line("predicted", fit.fitted)};
  }
  return emit_svg_chart(chart);
}

// ---------------------------------------------------------------------------

int cmd_fit(Context& ctx, const SpecFlags& flags) {
  const LinkSpec spec = resolve_spec(flags, ctx);
  const auto formats = ctx.formats({"csv", "json"});
  const Dataset& data = ctx.data();
  const FitResult result = fit(spec, data);
  ctx.write("fit.json", to_json(result).dump(2) + "\n");
  if (ctx.wants(formats, "csv")) ctx.write("residuals.csv", residuals_csv(result));
  if (ctx.wants(formats, "svg")) {
    ctx.write("fit.svg", fit_svg(result, false));
    ctx.write("fit_cumulative.svg", fit_svg(result, true));
  }
  const auto& seg = result.segments.back();
  ctx.out() << "fit " << spec.response << " (" << to_string(spec.estimator) << ", "
            << result.window.first << "-" << result.window.last << "): intercept "
            << shortest(seg.intercept.value);
  for (std::size_t k = 0; k < seg.slopes.size(); ++k) {
    ctx.out() << ", " << spec.predictors[k].series << " " << shortest(seg.slopes[k].value);
  }
  ctx.out() << ", R2 " << shortest(result.r2_annual) << ", cumulative R2 "
            << shortest(result.r2_cumulative) << '\n';
  return kExitOk;
}

struct LagFlags {
  std::string lags = "-5:5";
  std::size_t predictor = 0;
  std::string criterion = "auto";
  unsigned threads = 0;
};

int cmd_scan_lag(Context& ctx, const SpecFlags& flags, const LagFlags& lf) {
  const LinkSpec spec = resolve_spec(flags, ctx);
  const auto formats = ctx.formats({"csv"});
  LagScanOptions opt;
  const YearRange lags = parse_year_range(lf.lags);
  opt.first_lag = lags.first;
  opt.last_lag = lags.last;
  opt.predictor = lf.predictor;
  opt.threads = lf.threads;
  if (lf.criterion == "annual") {
    opt.criterion = Criterion::AnnualR2;
  } else if (lf.criterion == "cumulative") {
    opt.criterion = Criterion::CumulativeR2;
  } else if (lf.criterion != "auto") {
    throw UsageError("--criterion must be auto, annual or cumulative");
  }
  const auto result = scan_lag(spec, ctx.data(), opt);

  std::ostringstream csv;
  csv << "lag,observations,r2_annual,r2_cumulative,sse_annual,sse_cumulative,score,best\n";
  for (std::size_t i = 0; i < result.points.size(); ++i) {
    const auto& p = result.points[i];
    csv << p.lag << ',' << p.fit.observations << ',' << shortest(p.fit.r2_annual) << ','
        << shortest(p.fit.r2_cumulative) << ',' << shortest(p.fit.sse_annual) << ','
        << shortest(p.fit.sse_cumulative) << ',' << shortest(p.score) << ','
        << (i == result.best ? "best" : "") << '\n';
  }
  if (ctx.wants(formats, "csv")) ctx.write("scan_lag.csv", csv.str());
  if (ctx.wants(formats, "json")) {
    Json j;
    j["spec"] = to_json(spec);
    j["best_lag"] = result.best_lag();
    j["points"] = Json::array();
    for (const auto& p : result.points) {
      j["points"].push_back(Json{{"lag", p.lag}, {"score", p.score}, {"fit", to_json(p.fit)}});
    }
    ctx.write("scan_lag.json", j.dump(2) + "\n");
  }
  if (ctx.wants(formats, "svg")) {
    ChartSpec chart;
    chart.title = "Lag scan: " + spec.response;
    chart.x_label = "lag (years)";
    chart.y_percent = false;
    ChartSeries s{"selection criterion", {}, {}, Mark::Line};
    for (const auto& p : result.points) {
      s.x.push_back(p.lag);
      s.y.push_back(p.score);
    }
    chart.series.push_back(std::move(s));
    ctx.write("scan_lag.svg", emit_svg_chart(chart));
  }
  ctx.out() << "best lag " << result.best_lag() << " (score "
            << shortest(result.points[result.best].score) << ")\n";
  return kExitOk;
}

struct BreakFlags {
  std::string candidates;
  unsigned threads = 0;
};

int cmd_scan_break(Context& ctx, const SpecFlags& flags, const BreakFlags& bf) {
  const LinkSpec spec = resolve_spec(flags, ctx);
  const auto formats = ctx.formats({"csv"});
  if (bf.candidates.empty()) throw UsageError("--candidates Y1:Y2 is required");
  const YearRange range = parse_year_range(bf.candidates);
  std::vector<int> years;
  for (int y = range.first; y <= range.last; ++y) years.push_back(y);
  const auto result = scan_break(spec, ctx.data(), years, {bf.threads});

  std::ostringstream csv;
  csv << "year,observations,sse,r2_annual,r2_cumulative,best\n";
  for (std::size_t i = 0; i < result.points.size(); ++i) {
    const auto& p = result.points[i];
    csv << p.year << ',' << p.fit.observations << ',' << shortest(p.sse) << ','
        << shortest(p.fit.r2_annual) << ',' << shortest(p.fit.r2_cumulative) << ','
        << (i == result.best ? "best" : "") << '\n';
  }
  if (ctx.wants(formats, "csv")) ctx.write("scan_break.csv", csv.str());
  if (ctx.wants(formats, "json")) {
    Json j;
    j["spec"] = to_json(spec);
    j["best_year"] = result.best_year();
    j["points"] = Json::array();
    for (const auto& p : result.points) {
      j["points"].push_back(Json{{"year", p.year}, {"sse", p.sse}, {"fit", to_json(p.fit)}});
    }
    ctx.write("scan_break.json", j.dump(2) + "\n");
  }
  if (ctx.wants(formats, "svg")) {
    ChartSpec chart;
    chart.title = "Break scan: " + spec.response;
    chart.x_label = "break year";
    chart.y_percent = false;
    ChartSeries s{"SSE", {}, {}, Mark::Line};
    for (const auto& p : result.points) {
      s.x.push_back(p.year);
      s.y.push_back(p.sse);
    }
    chart.series.push_back(std::move(s));
    ctx.write("scan_break.svg", emit_svg_chart(chart));
  }
  ctx.out() << "best break year " << result.best_year() << " (SSE "
            << shortest(result.points[result.best].sse) << ")\n";
  return kExitOk;
}

struct DiagnoseFlags {
  std::string series;
  int adf_lags = 0;
};

std::string adf_row(const std::string& name, const AdfResult& a) {
  std::ostringstream o;
  o << name << ',' << shortest(a.statistic) << ',' << a.lag_order << ',' << a.observations << ','
    << shortest(a.critical[0]) << ',' << shortest(a.critical[1]) << ','
    << shortest(a.critical[2]) << ',' << (a.reject[1] ? "true" : "false") << '\n';
  return o.str();
}

int cmd_diagnose(Context& ctx, const SpecFlags& flags, const DiagnoseFlags& df) {
  const auto formats = ctx.formats({"csv", "json"});
  Json j;
  std::string csv = "test,statistic,lag_order,observations,cv_1pct,cv_5pct,cv_10pct,reject_5pct\n";
  if (!df.series.empty()) {
    AnnualSeries s = resolve_series(ctx.data(), df.series);
    if (auto w = ctx.window()) s = s.slice({std::max(w->first, s.start_year()), std::min(w->last, s.end_year())});
    const auto adf = adf_test(s, df.adf_lags);
    j["series"] = df.series;
    j["years"] = Json::array({s.start_year(), s.end_year()});
    j["adf"] = to_json(adf);
    csv += adf_row("adf:" + df.series, adf);
    ctx.out() << "ADF " << df.series << ": " << shortest(adf.statistic)
              << (adf.reject[1] ? " (unit root rejected at 5%)" : " (unit root not rejected at 5%)")
              << '\n';
  } else {
    const LinkSpec spec = resolve_spec(flags, ctx);
    const FitResult result = fit(spec, ctx.data());
    const AnnualSeries cum_error = cumulate(result.observed) - cumulate(result.fitted);
    const auto adf_annual = adf_test(result.residuals, df.adf_lags);
    const auto adf_cum = adf_test(cum_error, df.adf_lags);
    j["spec"] = to_json(spec);
    j["window"] = Json::array({result.window.first, result.window.last});
    j["r2_annual"] = result.r2_annual;
    j["r2_cumulative"] = result.r2_cumulative;
    j["sigma"] = result.sigma;
    j["cumulative_endpoint_gap"] = result.cumulative_endpoint_gap();
    j["adf_residuals"] = to_json(adf_annual);
    j["adf_cumulative_error"] = to_json(adf_cum);
    csv += adf_row("adf:residuals", adf_annual);
    csv += adf_row("adf:cumulative_error", adf_cum);
    if (ctx.wants(formats, "svg")) {
      ChartSpec chart;
      chart.title = "Model error: " + spec.response;
      chart.x_label = "year";
      chart.series = {line("residual", result.residuals), line("cumulative error", cum_error)};
      ctx.write("diagnose.svg", emit_svg_chart(chart));
    }
    ctx.out() << "R2 " << shortest(result.r2_annual) << ", sigma " << shortest(result.sigma)
              << ", ADF residuals " << shortest(adf_annual.statistic) << '\n';
  }
  if (ctx.wants(formats, "json")) ctx.write("diagnose.json", j.dump(2) + "\n");
  if (ctx.wants(formats, "csv")) ctx.write("diagnose.csv", csv);
  return kExitOk;
}

struct ForecastFlags {
  std::vector<std::string> models;
  std::vector<std::string> model_files;
  std::string labor_force;
  std::string population;
  std::optional<double> participation;
  std::string lf_linear;
  std::string horizon;
};

AnnualSeries parse_linear_path(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() != 4) throw UsageError("--lf-linear expects Y0:V0:Y1:V1");
  try {
    return linear_path(std::stoi(parts[0]), std::stod(parts[1]), std::stoi(parts[2]),
                       std::stod(parts[3]), Units::Persons, "labor force");
  } catch (const std::logic_error&) {
    throw UsageError("--lf-linear expects Y0:V0:Y1:V1 with numeric fields");
  }
}

int cmd_forecast(Context& ctx, const ForecastFlags& ff) {
  const auto formats = ctx.formats({"csv", "json"});
  if (ff.models.empty() && ff.model_files.empty()) {
    throw UsageError("give at least one --model ID or --model-file FILE");
  }
  const int sources = !ff.labor_force.empty() + !ff.population.empty() + !ff.lf_linear.empty();
  if (sources != 1) {
    throw UsageError("give exactly one of --labor-force, --population (with --participation) or --lf-linear");
  }
  AnnualSeries path = [&] {
    if (!ff.lf_linear.empty()) return parse_linear_path(ff.lf_linear);
    if (!ff.labor_force.empty()) return resolve_series(ctx.data(), ff.labor_force);
    if (!ff.participation) throw UsageError("--population needs --participation");
    return participation_labor_force(resolve_series(ctx.data(), ff.population), *ff.participation);
  }();
  YearRange horizon{path.start_year() + 1, path.end_year()};
  if (!ff.horizon.empty()) horizon = parse_year_range(ff.horizon);
  const Scenario scenario = build_scenario(path, horizon);

  std::vector<ForecastModel> models;
  for (const auto& id : ff.models) models.push_back(forecast_model(registry_model(id)));
  for (const auto& file : ff.model_files) {
    std::ifstream in(file);
    if (!in) throw InputError("cannot open model file " + file);
    Json j;
    try {
      j = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw InputError("model file " + file + " is not valid JSON: " + e.what());
    }
    LinearModel m = linear_model_from_json(j.contains("model") ? j["model"] : j);
    if (m.id.empty() || m.id == "fit") m.id = fs::path(file).stem().string();
    const ResponseKind kind = response_kind_for(m.response_units);
    models.push_back({std::move(m), kind, "fitted (" + file + ")"});
  }
  const ForecastResult report = forecast_report(models, scenario);
  if (ctx.wants(formats, "csv")) ctx.write("forecast.csv", forecast_csv(report));
  if (ctx.wants(formats, "json")) ctx.write("forecast.json", forecast_json(report));
  if (ctx.wants(formats, "svg")) {
    ChartSpec chart;
    chart.title = "Forecast " + std::to_string(horizon.first) + "-" + std::to_string(horizon.last);
    chart.x_label = "year";
    for (const auto& p : report.paths) {
      chart.series.push_back(line(p.model_id + " " + std::string(to_string(p.kind)), p.values));
    }
    ctx.write("forecast.svg", emit_svg_chart(chart));
  }
  for (const auto& p : report.paths) {
    ctx.out() << p.model_id << ' ' << to_string(p.kind) << ' ' << horizon.last << ": "
              << shortest(p.values.at(horizon.last)) << '\n';
  }
  return kExitOk;
}

struct PlotFlags {
  std::vector<std::string> series;
  std::string scatter;
  bool cumulative = false;
  bool ma3 = false;
  std::string title;
};

int cmd_plot(Context& ctx, const PlotFlags& pf) {
  if (pf.series.empty() == pf.scatter.empty()) throw UsageError("give --series NAME... or --scatter X,Y");
  const auto window = ctx.window();
  auto windowed = [&](AnnualSeries s) {
    if (!window) return s;
    return s.slice({std::max(window->first, s.start_year()), std::min(window->last, s.end_year())});
  };
  if (!pf.scatter.empty()) {
    const auto comma = pf.scatter.find(',');
    if (comma == std::string::npos) throw UsageError("--scatter expects X,Y");
    const std::string xn = pf.scatter.substr(0, comma);
    const std::string yn = pf.scatter.substr(comma + 1);
    LinkSpec spec;
    spec.response = yn;
    spec.predictors = {{xn, 0, false}};
    spec.window = window;
    const FitResult f = ols_fit(spec, ctx.data());
    const auto pair = align(windowed(resolve_series(ctx.data(), yn)),
                            windowed(resolve_series(ctx.data(), xn)), 0);
    ChartSpec chart = scatter_with_line(
        pf.title.empty() ? yn + " vs " + xn : pf.title, xn, yn, pair.b, pair.a,
        f.segments[0].intercept.value, f.segments[0].slopes[0].value);
    ctx.write("scatter.svg", emit_svg_chart(chart));
    ctx.out() << "scatter " << yn << " on " << xn << ": slope "
              << shortest(f.segments[0].slopes[0].value) << ", R2 " << shortest(f.r2_annual) << '\n';
    return kExitOk;
  }
  ChartSpec chart;
  chart.title = pf.title;
  chart.x_label = "year";
  bool levels = false;
  bool rates = false;
  for (const auto& name : pf.series) {
    AnnualSeries s = windowed(resolve_series(ctx.data(), name));
    (s.units() == Units::Persons ? levels : rates) = true;
    if (pf.cumulative) s = cumulate(s);
    if (pf.ma3) s = moving_average_3(s);
    chart.series.push_back(line(name, s));
  }
  if (levels && rates) throw InputError("cannot plot level and rate series on one axis");
  chart.y_percent = rates;
  ctx.write("chart.svg", emit_svg_chart(chart));
  return kExitOk;
}

struct FetchFlags {
  std::vector<std::string> series;
  int timeout = 30;
  bool refresh = false;
};

int cmd_fetch(Context& ctx, const FetchFlags& ff) {
  const auto& manifest = ctx.manifest();
  FetchOptions opt = ctx.fetch_options();
  opt.timeout = std::chrono::seconds(ff.timeout);
  opt.refresh = ff.refresh;
  std::vector<std::string> names = ff.series;
  if (names.empty()) {
    for (const auto& [name, entry] : manifest.series) {
      if (entry.remote) names.push_back(name);
    }
  }
  for (const auto& name : names) {
    auto it = manifest.series.find(name);
    if (it == manifest.series.end()) throw InputError("manifest has no series '" + name + "'");
    if (!it->second.remote) throw InputError("series '" + name + "' is not a remote entry");
    const AnnualSeries s = fetch_remote(*it->second.remote, it->second.kind, it->second.units, opt, name);
    ctx.write(name + ".csv", to_csv(s));
    ctx.out() << "fetched " << name << " " << s.start_year() << "-" << s.end_year() << " ("
              << cache_file(*it->second.remote, opt).string() << ")\n";
  }
  return kExitOk;
}

struct SynthFlags {
  int start_year = 1971;
  int length = 40;
  double intercept = 0.0;
  double slope = 1.0;
  int lag = 0;
  double noise = 0.0;
  std::optional<int> break_year;
  double post_intercept = 0.0;
  double post_slope = 0.0;
};

int cmd_synth(Context& ctx, const SynthFlags& sf) {
  oracle::SynthSpec spec;
  spec.start_year = sf.start_year;
  spec.length = sf.length;
  spec.intercept = sf.intercept;
  spec.slopes = {sf.slope};
  spec.lag = sf.lag;
  spec.noise_sigma = sf.noise;
  spec.seed = ctx.seed();
  if (sf.break_year) {
    spec.break_year = sf.break_year;
    spec.post_intercept = sf.post_intercept;
    spec.post_slopes = {sf.post_slope};
  }
  const auto data = oracle::generate(spec);
  ctx.write("x0.csv", to_csv(data.predictors[0]));
  ctx.write("y.csv", to_csv(data.response));
  Json m;
  m["series"]["x0"] = Json{{"path", "x0.csv"}, {"kind", "labor-force-growth"}, {"units", "fraction"}};
  m["series"]["y"] = Json{{"path", "y.csv"}, {"kind", "dgdp-inflation"}, {"units", "fraction"}};
  ctx.write("manifest.json", m.dump(2) + "\n");
  ctx.out() << "synthetic dataset (seed " << spec.seed << ") written to " << ctx.config().out_dir << '\n';
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"lfpc: Phillips curves driven by labor-force growth", "lfpc"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--manifest", cfg.manifest, "dataset manifest (JSON)");
  app.add_option("--out", cfg.out_dir, "output directory (created if absent)");
  app.add_option("--format", cfg.formats, "csv,json,svg")->delimiter(',');
  app.add_option("--window", cfg.window, "fit window Y1:Y2");
  app.add_option("--seed", cfg.seed, "seed for synthetic generation");
  app.add_option("--cache-dir", cfg.cache_dir, "remote-fetch cache (default $LFPC_CACHE_DIR)");
  app.add_flag("-v,--verbose", cfg.verbosity, "progress on stderr");

  SpecFlags spec_flags;
  auto* fit_cmd = app.add_subcommand("fit", "fit one lagged linear link");
  add_spec_flags(fit_cmd, spec_flags);

  LagFlags lag_flags;
  auto* lag_cmd = app.add_subcommand("scan-lag", "exhaustive lag search");
  add_spec_flags(lag_cmd, spec_flags);
  lag_cmd->add_option("--lags", lag_flags.lags, "lag range A:B")->capture_default_str();
  lag_cmd->add_option("--scan-predictor", lag_flags.predictor, "index of the predictor to shift");
  lag_cmd->add_option("--criterion", lag_flags.criterion, "auto | annual | cumulative");
  lag_cmd->add_option("--threads", lag_flags.threads, "worker threads (0 = all cores)");

  BreakFlags break_flags;
  auto* break_cmd = app.add_subcommand("scan-break", "exhaustive structural-break search");
  add_spec_flags(break_cmd, spec_flags);
  break_cmd->add_option("--candidates", break_flags.candidates, "candidate years Y1:Y2");
  break_cmd->add_option("--threads", break_flags.threads, "worker threads (0 = all cores)");

  DiagnoseFlags diag_flags;
  auto* diag_cmd = app.add_subcommand("diagnose", "fit quality and ADF unit-root tests");
  add_spec_flags(diag_cmd, spec_flags);
  diag_cmd->add_option("--series", diag_flags.series, "test one series instead of fit residuals");
  diag_cmd->add_option("--adf-lags", diag_flags.adf_lags, "augmentation lags")->capture_default_str();

  ForecastFlags fc_flags;
  auto* fc_cmd = app.add_subcommand("forecast", "inflation/unemployment paths from a labor-force scenario");
  fc_cmd->add_option("--model", fc_flags.models, "registry model id (eq6..eq10), repeatable");
  fc_cmd->add_option("--model-file", fc_flags.model_files, "fit.json from `lfpc fit`, repeatable");
  fc_cmd->add_option("--labor-force", fc_flags.labor_force, "labor-force series from the manifest");
  fc_cmd->add_option("--population", fc_flags.population, "population series from the manifest");
  fc_cmd->add_option("--participation", fc_flags.participation, "participation rate in [0,1]");
  fc_cmd->add_option("--lf-linear", fc_flags.lf_linear, "linear labor-force path Y0:V0:Y1:V1");
  fc_cmd->add_option("--horizon", fc_flags.horizon, "forecast years Y1:Y2");

  PlotFlags plot_flags;
  auto* plot_cmd = app.add_subcommand("plot", "SVG charts of manifest series");
  plot_cmd->add_option("--series", plot_flags.series, "series to draw, repeatable");
  plot_cmd->add_option("--scatter", plot_flags.scatter, "X,Y scatter with OLS line");
  plot_cmd->add_flag("--cumulative", plot_flags.cumulative, "plot running sums");
  plot_cmd->add_flag("--ma3", plot_flags.ma3, "centered 3-year moving average");
  plot_cmd->add_option("--title", plot_flags.title, "chart title");

  FetchFlags fetch_flags;
  auto* fetch_cmd = app.add_subcommand("fetch", "download remote manifest entries into the cache");
  fetch_cmd->add_option("--series", fetch_flags.series, "entries to fetch (default: all remote)");
  fetch_cmd->add_option("--timeout", fetch_flags.timeout, "HTTP timeout in seconds")->capture_default_str();
  fetch_cmd->add_flag("--refresh", fetch_flags.refresh, "ignore cached payloads");

  SynthFlags synth_flags;
  auto* synth_cmd = app.add_subcommand("synth", "write a seeded synthetic dataset as CSV + manifest");
  synth_cmd->add_option("--start-year", synth_flags.start_year)->capture_default_str();
  synth_cmd->add_option("--length", synth_flags.length)->capture_default_str();
  synth_cmd->add_option("--intercept", synth_flags.intercept)->capture_default_str();
  synth_cmd->add_option("--slope", synth_flags.slope)->capture_default_str();
  synth_cmd->add_option("--lag", synth_flags.lag)->capture_default_str();
  synth_cmd->add_option("--noise", synth_flags.noise, "noise standard deviation")->capture_default_str();
  synth_cmd->add_option("--break", synth_flags.break_year);
  synth_cmd->add_option("--post-intercept", synth_flags.post_intercept);
  synth_cmd->add_option("--post-slope", synth_flags.post_slope);

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Context ctx(cfg, out, err);
  try {
    if (*fit_cmd) return cmd_fit(ctx, spec_flags);
    if (*lag_cmd) return cmd_scan_lag(ctx, spec_flags, lag_flags);
    if (*break_cmd) return cmd_scan_break(ctx, spec_flags, break_flags);
    if (*diag_cmd) return cmd_diagnose(ctx, spec_flags, diag_flags);
    if (*fc_cmd) return cmd_forecast(ctx, fc_flags);
    if (*plot_cmd) return cmd_plot(ctx, plot_flags);
    if (*fetch_cmd) return cmd_fetch(ctx, fetch_flags);
    if (*synth_cmd) return cmd_synth(ctx, synth_flags);
  } catch (const UsageError& e) {
    err << "lfpc: " << e.what() << "\n\n" << app.get_subcommands().front()->help();
    return kExitUsage;
  } catch (const Error& e) {
    err << "lfpc: error: " << e.what() << '\n';
    return kExitDataError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "lfpc: error: " << e.what() << '\n';
    return kExitDataError;
  }
  return kExitUsage;
}

}  // namespace lfpc::cli
