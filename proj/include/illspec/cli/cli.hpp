// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "illspec/discretize/gram.hpp"
#include "illspec/spectra/spectrum.hpp"

namespace illspec::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitContract = 3;
inline constexpr int kExitTolerance = 4;

/// Environment variable naming the cache directory when --cache is absent.
inline constexpr const char* kCacheEnv = "ILLSPEC_CACHE";

struct RunConfig {
  std::string command;
  std::string op = "DHa";
  std::string scheme = "left";
  int n = 20;
  long precision = 512;
  /// Series tolerance for the right scheme; empty means 2^-(p-g).
  std::string tol;
  /// "a:b" or empty for the default window.
  std::string window;
  std::string out = "out";
  std::string cache;
  /// exact|float|double|auto
  std::string arithmetic = "auto";
  std::string model = "both";
  int kmax = 50;
  long jmax = 50;
  int n_lo = 1;
  int n_hi = 12;
  int depth = 30;
  std::string which = "fig1";
  double rel_tol = 0.05;
  int galerkin_n = 2048;

  nlohmann::json to_json() const;
};

/// Content-addressed store for Gram matrices and spectra.
class Cache {
 public:
  explicit Cache(std::string dir) : dir_(std::move(dir)) {}
  bool enabled() const { return !dir_.empty(); }
  std::optional<nlohmann::json> get(const nlohmann::json& key) const;
  void put(const nlohmann::json& key, const nlohmann::json& value) const;
  std::string path_for(const nlohmann::json& key) const;

 private:
  std::string dir_;
};

/// Arithmetic actually used for (scheme, N, requested).
Arithmetic resolve_arithmetic(Scheme scheme, int n, const std::string& requested);

/// Gram matrix for the configuration, through the cache.
GramMatrix assemble(const RunConfig& cfg, const Cache& cache);

/// Spectrum for the configuration, through the cache.
Spectrum spectrum(const RunConfig& cfg, const Cache& cache);

/// Parses argv and runs one command. Messages go to `out`/`err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace illspec::cli
