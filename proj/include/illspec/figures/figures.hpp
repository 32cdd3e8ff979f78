// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "illspec/spectra/spectrum.hpp"

namespace illspec {

/// Supplies the spectrum of (operator short name, scheme, N) at precision p.
using SpectrumProvider = std::function<Spectrum(const std::string& op, Scheme scheme, int n, mpfr_prec_t p)>;

/// Computes the spectrum directly (no caching).
Spectrum compute_spectrum(const std::string& op, Scheme scheme, int n, mpfr_prec_t p);

struct FigureSpec {
  int which = 1;  // 1 or 2
  std::vector<int> ns{5, 10, 15, 20};
  mpfr_prec_t precision = 512;
};

struct Curve {
  std::string label;
  std::vector<int> index;
  std::vector<double> log10_sigma;
  /// Points at or below this index are drawn filled, the rest hollow.
  int trusted_upto = 0;
  bool dashed = false;
  std::string color;
};

struct Panel {
  std::string name;
  std::string title;
  std::vector<Curve> curves;
};

/// Standalone SVG for one panel (semilog-y, axes, legend).
std::string render_svg(const Panel& panel);

/// "index,log10_sigma" with 16 significant digits.
std::string curve_csv(const Curve& c);

/// Curve values as they appear after a CSV round trip.
Curve curve_from_csv(const std::string& csv);

/// Least-squares line through the last k trusted points of log10 sigma;
/// returns the max absolute deviation (log10 units).
double tail_linearity_residual(const Spectrum& s, int k = 3);

struct FigureOutput {
  std::vector<std::string> files;  // relative to the output directory
  nlohmann::json manifest;
};

/// Writes figN/*.csv, figN/panel_*.svg and figN/manifest.json under out_dir.
FigureOutput render_figure(const FigureSpec& spec, const std::string& out_dir,
                           const SpectrumProvider& provider = compute_spectrum);

}  // namespace illspec
