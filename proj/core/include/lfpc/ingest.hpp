#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "lfpc/series.hpp"

namespace lfpc {

enum class SeriesKind {
  CpiInflation,
  DgdpInflation,
  Unemployment,
  LaborForce,
  Population,
  LaborForceGrowth,  // already differenced; used for synthetic exports
};

// Units as declared by the source. Never sniffed from the data.
enum class SourceUnits { Fraction, Percent, Persons, Thousands };

std::string_view to_string(SeriesKind kind);
std::string_view to_string(SourceUnits units);
SeriesKind series_kind_from_string(std::string_view text);
SourceUnits source_units_from_string(std::string_view text);

// Internal units a series of this kind is stored in.
Units internal_units(SeriesKind kind);

// Parses `year,value` CSV text into internal units. Years must be strictly
// ascending and consecutive. Errors name the offending line.
AnnualSeries read_csv_series(std::string_view text, SeriesKind kind, SourceUnits units,
                             std::string label = {});
AnnualSeries read_csv_file(const std::filesystem::path& path, SeriesKind kind,
                           SourceUnits units, std::string label = {});

// Writes `year,value` with shortest round-trip formatting (no unit conversion).
void write_csv_series(std::ostream& out, const AnnualSeries& series);
std::string to_csv(const AnnualSeries& series);

struct RemoteDescriptor {
  std::string base_url;   // e.g. https://sdmx.oecd.org/public/rest/data
  std::string dataset;    // dataflow code
  std::string series_key; // dimension key
  std::string cache_path; // optional explicit cache file
};

struct HttpResponse {
  int status = 0;
  std::string body;
  std::string error;  // transport-level failure (empty on success)
};

// Pluggable transport; the default uses cpp-httplib.
using HttpGet = std::function<HttpResponse(const std::string& url, std::chrono::seconds timeout)>;
HttpGet default_http_get();

struct FetchOptions {
  std::filesystem::path cache_dir;  // empty: $LFPC_CACHE_DIR, else ".lfpc-cache"
  std::chrono::seconds timeout{30};
  bool refresh = false;             // ignore an existing cache entry
  HttpGet http;                     // empty: default_http_get()
};

std::string remote_url(const RemoteDescriptor& desc);
std::filesystem::path resolve_cache_dir(const FetchOptions& options);
std::filesystem::path cache_file(const RemoteDescriptor& desc, const FetchOptions& options);

// Raw payload, cache-first. The payload is written to the cache verbatim on
// the first successful fetch.
std::string fetch_remote_payload(const RemoteDescriptor& desc, const FetchOptions& options);

// Accepts plain `year,value` CSV or SDMX-CSV with TIME_PERIOD/OBS_VALUE columns.
AnnualSeries parse_remote_payload(std::string_view payload, SeriesKind kind, SourceUnits units,
                                  std::string label = {});

AnnualSeries fetch_remote(const RemoteDescriptor& desc, SeriesKind kind, SourceUnits units,
                          const FetchOptions& options, std::string label = {});

// rate * population(t); rate must lie in [0, 1].
AnnualSeries participation_labor_force(const AnnualSeries& population, double rate);

struct ManifestEntry {
  std::optional<std::filesystem::path> path;  // relative paths resolve against the manifest
  std::optional<RemoteDescriptor> remote;
  SeriesKind kind = SeriesKind::CpiInflation;
  SourceUnits units = SourceUnits::Fraction;
};

struct DatasetManifest {
  std::filesystem::path base_dir;
  std::map<std::string, ManifestEntry> series;
};

DatasetManifest parse_manifest(std::string_view json_text, std::filesystem::path base_dir = {});
DatasetManifest load_manifest(const std::filesystem::path& path);

// Named series in internal units.
using Dataset = std::map<std::string, AnnualSeries>;

Dataset load_dataset(const DatasetManifest& manifest, const FetchOptions& options = {});

// Looks up a series by name; failing that, `dlog(NAME)` yields log_growth of NAME.
AnnualSeries resolve_series(const Dataset& data, std::string_view ref);

}  // namespace lfpc
