#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "commands.hpp"

namespace lfpc::test {

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

inline CliRun run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"lfpc"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  CliRun r;
  r.code = lfpc::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

inline std::string read_bytes(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Every regular file under `dir`, keyed by relative path.
inline std::map<std::string, std::string> snapshot(const std::filesystem::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : std::filesystem::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) files[std::filesystem::relative(e.path(), dir).string()] = read_bytes(e.path());
  }
  return files;
}

struct ScratchDir {
  std::filesystem::path path;
  explicit ScratchDir(const std::string& tag) {
    static int counter = 0;
    path = std::filesystem::temp_directory_path() /
           ("lfpc_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~ScratchDir() { std::filesystem::remove_all(path); }
  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;
};

// A manifest with one remote entry whose payload is already in `cache`.
inline std::filesystem::path write_remote_fixture(const std::filesystem::path& dir) {
  const auto cache = dir / "cache";
  std::filesystem::create_directories(cache);
  std::ofstream(cache / "LFS__JPN.UNE.csv", std::ios::binary)
      << read_bytes(std::filesystem::path(LFPC_FIXTURE_DIR) / "sdmx_unemployment.csv");
  const auto manifest = dir / "remote.json";
  std::ofstream(manifest) << R"({"series": {"u": {"remote": {"base_url": "http://127.0.0.1:1/data",
      "dataset": "LFS", "key": "JPN.UNE"}, "kind": "unemployment", "units": "percent"}}})";
  return manifest;
}

// One invocation per subcommand; each writes into the directory given as `out`.
inline std::vector<std::vector<std::string>> determinism_commands(const std::string& japan,
                                                                  const std::string& remote,
                                                                  const std::string& cache) {
  const std::vector<std::string> all{"--format", "csv,json,svg"};
  auto with = [&](std::vector<std::string> head, std::vector<std::string> tail = {}) {
    head.insert(head.end(), all.begin(), all.end());
    head.insert(head.end(), tail.begin(), tail.end());
    return head;
  };
  return {
      with({"--manifest", japan, "--window", "1982:2012"},
           {"fit", "--response", "u", "--predictor", "cpi", "--estimator", "cumulative"}),
      with({"--manifest", japan, "--window", "1982:2012"},
           {"scan-lag", "--response", "cpi", "--predictor", "dlog(lf)", "--estimator", "cumulative"}),
      with({"--manifest", japan, "--window", "1975:2012"},
           {"scan-break", "--response", "cpi", "--predictor", "u", "--candidates", "1977:2005"}),
      with({"--manifest", japan, "--window", "1982:2012"},
           {"diagnose", "--response", "dgdp", "--predictor", "dlog(lf)", "--estimator", "cumulative"}),
      with({}, {"forecast", "--model", "eq8", "--model", "eq9", "--model", "eq10", "--lf-linear",
                "2010:67000000:2050:57000000"}),
      {"--manifest", japan, "--window", "1982:2012", "plot", "--series", "cpi", "--series", "dgdp",
       "--ma3"},
      {"--manifest", japan, "--window", "1982:2012", "plot", "--scatter", "u,cpi"},
      {"--manifest", remote, "--cache-dir", cache, "fetch"},
      {"--seed", "42", "synth", "--noise", "0.001", "--break", "1990", "--post-slope", "-2"},
  };
}

}  // namespace lfpc::test
