#include "lfpc/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lfpc/error.hpp"

namespace lfpc {

namespace fs = std::filesystem;

std::string_view to_string(SeriesKind kind) {
  switch (kind) {
    case SeriesKind::CpiInflation: return "cpi-inflation";
    case SeriesKind::DgdpInflation: return "dgdp-inflation";
    case SeriesKind::Unemployment: return "unemployment";
    case SeriesKind::LaborForce: return "labor-force";
    case SeriesKind::Population: return "population";
    case SeriesKind::LaborForceGrowth: return "labor-force-growth";
  }
  return "unknown";
}

std::string_view to_string(SourceUnits units) {
  switch (units) {
    case SourceUnits::Fraction: return "fraction";
    case SourceUnits::Percent: return "percent";
    case SourceUnits::Persons: return "persons";
    case SourceUnits::Thousands: return "thousands";
  }
  return "unknown";
}

SeriesKind series_kind_from_string(std::string_view text) {
  for (auto k : {SeriesKind::CpiInflation, SeriesKind::DgdpInflation, SeriesKind::Unemployment,
                 SeriesKind::LaborForce, SeriesKind::Population, SeriesKind::LaborForceGrowth}) {
    if (to_string(k) == text) return k;
  }
  throw InputError("unknown series kind '" + std::string(text) + "'");
}

SourceUnits source_units_from_string(std::string_view text) {
  for (auto u : {SourceUnits::Fraction, SourceUnits::Percent, SourceUnits::Persons,
                 SourceUnits::Thousands}) {
    if (to_string(u) == text) return u;
  }
  throw InputError("unknown units '" + std::string(text) + "'");
}

Units internal_units(SeriesKind kind) {
  switch (kind) {
    case SeriesKind::CpiInflation:
    case SeriesKind::DgdpInflation:
    case SeriesKind::LaborForceGrowth: return Units::FractionPerYear;
    case SeriesKind::Unemployment: return Units::Fraction;
    case SeriesKind::LaborForce:
    case SeriesKind::Population: return Units::Persons;
  }
  return Units::Fraction;
}

namespace {

bool is_level(SeriesKind kind) {
  return kind == SeriesKind::LaborForce || kind == SeriesKind::Population;
}

double conversion_factor(SeriesKind kind, SourceUnits units) {
  const bool level_units = units == SourceUnits::Persons || units == SourceUnits::Thousands;
  if (is_level(kind) != level_units) {
    throw InputError("units '" + std::string(to_string(units)) + "' are not valid for kind '" +
                     std::string(to_string(kind)) + "'");
  }
  switch (units) {
    case SourceUnits::Percent: return 0.01;
    case SourceUnits::Thousands: return 1000.0;
    default: return 1.0;
  }
}

// Percent is converted by division so that 2.0 -> 0.02 exactly as a literal would.
double convert(double raw, SourceUnits units, double factor) {
  return units == SourceUnits::Percent ? raw / 100.0 : raw * factor;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  return lines;
}

// Splits one CSV record; double-quoted fields may contain commas.
std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

std::string row_error(std::size_t line_no, const std::string& what) {
  return "line " + std::to_string(line_no) + ": " + what;
}

int parse_year(std::string_view field, std::size_t line_no) {
  field = trim(field);
  int year = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), year);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw InputError(row_error(line_no, "unparsable year '" + std::string(field) + "'"));
  }
  return year;
}

double parse_value(std::string_view field, std::size_t line_no) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
    throw InputError(row_error(line_no, "unparsable value '" + std::string(field) + "'"));
  }
  return value;
}

struct Row {
  int year;
  double value;
  std::size_t line_no;
};

AnnualSeries build_series(const std::vector<Row>& rows, SeriesKind kind, SourceUnits units,
                          std::string label) {
  if (rows.empty()) throw InputError("series '" + label + "' has no data rows");
  const double factor = conversion_factor(kind, units);
  std::vector<double> values;
  values.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0) {
      const int prev = rows[i - 1].year;
      if (rows[i].year == prev) {
        throw InputError(row_error(rows[i].line_no, "duplicate year " + std::to_string(prev)));
      }
      if (rows[i].year < prev) {
        throw InputError(row_error(rows[i].line_no, "year " + std::to_string(rows[i].year) +
                                                        " is not ascending"));
      }
      if (rows[i].year > prev + 1) {
        throw InputError(row_error(rows[i].line_no,
                                   "gap in years: missing " + std::to_string(prev + 1)));
      }
    }
    values.push_back(convert(rows[i].value, units, factor));
  }
  return AnnualSeries(rows.front().year, std::move(values), internal_units(kind),
                      std::move(label));
}

}  // namespace

AnnualSeries read_csv_series(std::string_view text, SeriesKind kind, SourceUnits units,
                             std::string label) {
  conversion_factor(kind, units);
  const auto lines = split_lines(text);
  if (lines.empty()) throw InputError("empty CSV");
  {
    const auto header = split_fields(lines.front());
    if (header.size() != 2 || trim(header[0]) != "year" || trim(header[1]) != "value") {
      throw InputError(row_error(1, "expected header 'year,value'"));
    }
  }
  std::vector<Row> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split_fields(lines[i]);
    if (fields.size() != 2) {
      throw InputError(row_error(i + 1, "expected 2 fields, got " + std::to_string(fields.size())));
    }
    rows.push_back({parse_year(fields[0], i + 1), parse_value(fields[1], i + 1), i + 1});
  }
  return build_series(rows, kind, units, std::move(label));
}

AnnualSeries read_csv_file(const fs::path& path, SeriesKind kind, SourceUnits units,
                           std::string label) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (label.empty()) label = path.stem().string();
  try {
    return read_csv_series(buf.str(), kind, units, std::move(label));
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

namespace {

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

void write_csv_series(std::ostream& out, const AnnualSeries& series) {
  out << "year,value\n";
  const auto v = series.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    out << series.start_year() + static_cast<int>(i) << ',' << format_double(v[i]) << '\n';
  }
}

std::string to_csv(const AnnualSeries& series) {
  std::ostringstream out;
  write_csv_series(out, series);
  return out.str();
}

// ---------------------------------------------------------------------------
// Remote sources

std::string remote_url(const RemoteDescriptor& desc) {
  std::string base = desc.base_url;
  while (!base.empty() && base.back() == '/') base.pop_back();
  return base + "/" + desc.dataset + "/" + desc.series_key + "?format=csv";
}

fs::path resolve_cache_dir(const FetchOptions& options) {
  if (!options.cache_dir.empty()) return options.cache_dir;
  if (const char* env = std::getenv("LFPC_CACHE_DIR"); env && *env) return env;
  return ".lfpc-cache";
}

fs::path cache_file(const RemoteDescriptor& desc, const FetchOptions& options) {
  if (!desc.cache_path.empty()) {
    fs::path p(desc.cache_path);
    return p.is_absolute() ? p : resolve_cache_dir(options) / p;
  }
  std::string name = desc.dataset + "__" + desc.series_key;
  for (char& c : name) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '.' || c == '-' || c == '_';
    if (!ok) c = '_';
  }
  return resolve_cache_dir(options) / (name + ".csv");
}

namespace {

std::mutex& key_mutex(const std::string& key) {
  static std::mutex registry_guard;
  static std::map<std::string, std::mutex> per_key;
  std::lock_guard lock(registry_guard);
  return per_key[key];
}

std::optional<std::string> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file_atomic(const fs::path& path, const std::string& body) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ostringstream suffix;
  suffix << ".tmp." << std::this_thread::get_id();
  fs::path tmp = path;
  tmp += suffix.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw RetrievalError("cannot write cache file " + tmp.string());
    out << body;
  }
  fs::rename(tmp, path);
}

}  // namespace

std::string fetch_remote_payload(const RemoteDescriptor& desc, const FetchOptions& options) {
  const fs::path file = cache_file(desc, options);
  std::lock_guard lock(key_mutex(fs::absolute(file).lexically_normal().string()));
  if (!options.refresh) {
    if (auto cached = read_file(file)) return *cached;
  }
  const std::string url = remote_url(desc);
  const HttpGet get = options.http ? options.http : default_http_get();
  const HttpResponse resp = get(url, options.timeout);
  if (!resp.error.empty()) throw RetrievalError("GET " + url + " failed: " + resp.error);
  if (resp.status != 200) {
    throw RetrievalError("GET " + url + " returned HTTP " + std::to_string(resp.status));
  }
  write_file_atomic(file, resp.body);
  return resp.body;
}

AnnualSeries parse_remote_payload(std::string_view payload, SeriesKind kind, SourceUnits units,
                                  std::string label) {
  const auto lines = split_lines(payload);
  if (lines.empty()) throw ParseError("empty payload");
  const auto header = split_fields(lines.front());
  if (header.size() == 2 && trim(header[0]) == "year" && trim(header[1]) == "value") {
    try {
      return read_csv_series(payload, kind, units, std::move(label));
    } catch (const InputError& e) {
      throw ParseError(std::string("malformed payload: ") + e.what());
    }
  }
  std::size_t time_col = header.size();
  std::size_t value_col = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (trim(header[i]) == "TIME_PERIOD") time_col = i;
    if (trim(header[i]) == "OBS_VALUE") value_col = i;
  }
  if (time_col == header.size() || value_col == header.size()) {
    throw ParseError("payload has neither a 'year,value' nor a TIME_PERIOD/OBS_VALUE header");
  }
  std::vector<Row> rows;
  try {
    for (std::size_t i = 1; i < lines.size(); ++i) {
      const auto fields = split_fields(lines[i]);
      if (fields.size() != header.size()) {
        throw InputError(row_error(i + 1, "field count does not match header"));
      }
      rows.push_back({parse_year(fields[time_col], i + 1), parse_value(fields[value_col], i + 1),
                      i + 1});
    }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const Row& a, const Row& b) { return a.year < b.year; });
    return build_series(rows, kind, units, std::move(label));
  } catch (const InputError& e) {
    throw ParseError(std::string("malformed payload: ") + e.what());
  }
}

AnnualSeries fetch_remote(const RemoteDescriptor& desc, SeriesKind kind, SourceUnits units,
                          const FetchOptions& options, std::string label) {
  return parse_remote_payload(fetch_remote_payload(desc, options), kind, units, std::move(label));
}

AnnualSeries participation_labor_force(const AnnualSeries& population, double rate) {
  if (!(rate >= 0.0 && rate <= 1.0)) {
    throw InputError("participation rate must lie in [0, 1], got " + format_double(rate));
  }
  if (population.units() != Units::Persons) throw InputError("population must be in persons");
  return population.scaled(rate).relabeled("labor force (" + population.label() + " x " +
                                           format_double(rate) + ")");
}

// ---------------------------------------------------------------------------
// Manifests

DatasetManifest parse_manifest(std::string_view json_text, fs::path base_dir) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("manifest is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("series") || !doc["series"].is_object()) {
    throw InputError("manifest must be an object with a 'series' object");
  }
  DatasetManifest manifest;
  manifest.base_dir = std::move(base_dir);
  for (const auto& [name, node] : doc["series"].items()) {
    auto fail = [&](const std::string& what) {
      throw InputError("manifest entry '" + name + "': " + what);
    };
    if (!node.is_object()) fail("must be an object");
    ManifestEntry entry;
    if (!node.contains("kind") || !node["kind"].is_string()) fail("missing 'kind'");
    if (!node.contains("units") || !node["units"].is_string()) fail("missing 'units'");
    entry.kind = series_kind_from_string(node["kind"].get<std::string>());
    entry.units = source_units_from_string(node["units"].get<std::string>());
    try {
      conversion_factor(entry.kind, entry.units);
    } catch (const InputError& e) {
      fail(e.what());
    }
    const bool has_path = node.contains("path");
    const bool has_remote = node.contains("remote");
    if (has_path == has_remote) fail("exactly one of 'path' or 'remote' is required");
    if (has_path) {
      if (!node["path"].is_string()) fail("'path' must be a string");
      entry.path = fs::path(node["path"].get<std::string>());
    } else {
      const auto& r = node["remote"];
      if (!r.is_object()) fail("'remote' must be an object");
      RemoteDescriptor desc;
      auto str = [&](const char* key, bool required) -> std::string {
        if (!r.contains(key)) {
          if (required) fail(std::string("remote is missing '") + key + "'");
          return {};
        }
        if (!r[key].is_string()) fail(std::string("remote '") + key + "' must be a string");
        return r[key].get<std::string>();
      };
      desc.base_url = str("base_url", true);
      desc.dataset = str("dataset", true);
      desc.series_key = str("key", true);
      desc.cache_path = str("cache", false);
      entry.remote = std::move(desc);
    }
    manifest.series.emplace(name, std::move(entry));
  }
  return manifest;
}

DatasetManifest load_manifest(const fs::path& path) {
  auto text = read_file(path);
  if (!text) throw InputError("cannot open manifest " + path.string());
  return parse_manifest(*text, path.parent_path());
}

Dataset load_dataset(const DatasetManifest& manifest, const FetchOptions& options) {
  Dataset data;
  for (const auto& [name, entry] : manifest.series) {
    if (entry.path) {
      fs::path p = *entry.path;
      if (p.is_relative()) p = manifest.base_dir / p;
      data.emplace(name, read_csv_file(p, entry.kind, entry.units, name));
    } else {
      data.emplace(name, fetch_remote(*entry.remote, entry.kind, entry.units, options, name));
    }
  }
  return data;
}

AnnualSeries resolve_series(const Dataset& data, std::string_view ref) {
  if (auto it = data.find(std::string(ref)); it != data.end()) return it->second;
  if (ref.starts_with("dlog(") && ref.ends_with(")")) {
    const auto inner = ref.substr(5, ref.size() - 6);
    return log_growth(resolve_series(data, inner)).relabeled(std::string(ref));
  }
  throw InputError("unknown series '" + std::string(ref) + "'");
}

}  // namespace lfpc
