// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include <json.hpp>

#include "illspec/discretize/gram.hpp"
#include "illspec/spectra/spectrum.hpp"

namespace illspec::io {

inline constexpr int kSchemaVersion = 1;

/// {scheme, operator, N, precision, series_tol, arithmetic, entries}. Exact
/// entries are "p/q", BigFloat entries hex floats ("%Ra"), double entries
/// C99 hex floats, so a round trip is bit-exact.
nlohmann::json gram_to_json(const GramMatrix& g);
GramMatrix gram_from_json(const nlohmann::json& j);

/// Spectrum CSV: header index,sigma,log10_sigma,trusted. sigma is written
/// with 40 significant digits, log10_sigma with 17.
std::string spectrum_csv(const Spectrum& s);

/// Sidecar: provenance, precision, trust cutoff, exact hex values.
nlohmann::json spectrum_to_json(const Spectrum& s);
Spectrum spectrum_from_json(const nlohmann::json& j);

/// Writes text to a file, creating parent directories. Throws std::runtime_error.
void write_file(const std::string& path, const std::string& text);
std::string read_file(const std::string& path);

/// Lowercase hex SHA-256 of the given bytes.
std::string sha256_hex(const std::string& bytes);

/// Number with 16 significant digits in shortest form ("%.16g").
std::string fmt_g16(double x);

}  // namespace illspec::io
