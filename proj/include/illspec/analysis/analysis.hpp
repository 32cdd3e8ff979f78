// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "illspec/numerics/big_float.hpp"
#include "illspec/spectra/spectrum.hpp"

namespace illspec {

enum class DecayModel { Power, Exponential };
std::string to_string(DecayModel m);

/// Closed index range [lo, hi], 1-based.
struct Window {
  int lo = 0;
  int hi = 0;
  int length() const { return hi - lo + 1; }
};

/// Parses "a:b".
Window parse_window(const std::string& text);

/// [max(3, trust/4), trust].
Window default_window(const Spectrum& s);

struct DecayFit {
  DecayModel model = DecayModel::Power;
  /// sigma_i ~ c i^-rate (power) or c e^(-rate i) (exponential).
  double c = 0.0;
  double rate = 0.0;
  Window window;
  /// max |log sigma_i - log model_i| over the window (natural log).
  double residual = 0.0;
  /// min/max over the window of -log sigma_i / log i (i >= 2).
  double proxy_min = 0.0;
  double proxy_max = 0.0;
};

/// Least squares in log space. The window must lie inside [1, trust] and
/// hold at least 4 indices; `trust` defaults to the spectrum's cutoff.
DecayFit fit_decay(const Spectrum& s, DecayModel model, std::optional<Window> window = std::nullopt,
                   std::optional<int> trust = std::nullopt);

enum class BoundForm {
  PowerThreeHalves,  // c i^-3/2
  Exponential,       // c e^(-alpha i)
  ExpTwoOverI,       // (c / i) e^(-2i)
  PowerTwo,          // c i^-2
  PowerOne,          // c i^-1
  ToddExp,           // c e^(4N)
};
enum class BoundDirection { Upper, Lower };

struct BoundSpec {
  BoundForm form = BoundForm::PowerThreeHalves;
  BoundDirection direction = BoundDirection::Upper;
  double c = 1.0;
  double alpha = 1.6;

  /// Natural log of the bound at index (or section size) i.
  double log_value(int i) const;
  std::string describe() const;
};

/// Bound with c chosen so that it passes through sigma_1 at i = 1.
BoundSpec fitted_at_first(const Spectrum& s, BoundSpec b);

struct BoundReport {
  std::string name;
  std::vector<int> index;
  /// log(value_i) - log(bound_i); positive is consistent for lower bounds.
  std::vector<double> margin;
  std::vector<bool> ok;
  bool consistent = true;
  std::string summary;

  int violations() const;
  nlohmann::json to_json() const;
};

/// Per-index log margins over `window` (default: trusted indices 1..trust).
BoundReport check_bound(const Spectrum& s, const BoundSpec& b, std::optional<Window> window = std::nullopt);

struct ToddReport {
  std::vector<int> n;
  std::vector<BigFloat> inverse_norm;
  std::vector<bool> integral;
  /// log(e^(4N)) - log ||H_N^-1|| with c = 1.
  BoundReport margins;
  /// max_N ||H_N^-1|| e^(-4N).
  double smallest_c = 0.0;
  /// Slope of log ||H_N^-1|| against N over the fit range.
  double growth_exponent = 0.0;
  int fit_lo = 0;
  int fit_hi = 0;
};

/// Exact inverses for N in [n_lo, n_hi] (within [1, 13]); slope fitted over
/// [fit_lo, fit_hi] intersected with the range.
ToddReport todd_check(int n_lo, int n_hi, int fit_lo = 4, int fit_hi = 12,
                      mpfr_prec_t precision = kDefaultPrecision);

struct LowerChainRow {
  int n = 0;
  BigFloat lambda_min;  // smallest eigenvalue of D_N H_N D_N
  BigFloat bound;       // 1 / (N^2 ||H_N^-1||)
  bool holds = false;
};

/// lambda_min(D_N H_N D_N) >= 1/(N^2 ||H_N^-1||_2) for N in [n_lo, n_hi].
std::vector<LowerChainRow> lower_bound_chain(int n_lo, int n_hi, mpfr_prec_t precision);

/// Right-hand side sum_{j>=n+2} 1/(j^2(2j-1)) = (4 ln 2 - zeta(2)) - sum_{j<=n+1}.
BigFloat dha_tail_rhs(long n, mpfr_prec_t precision);

/// sum_{i>n} sigma_i^2 <= sum_{j>=n+2} 1/(j^2(2j-1)) for n = 1..N-1.
/// Margins are log(rhs) - log(lhs); a zero left side counts as holding.
BoundReport tail_bound_check(const Spectrum& s);

struct PointwiseBound {
  double gamma = 1.0;
  /// Smallest c1 with tail(n) <= c1 n^-2gamma for 1 <= n < N (or the given one).
  double c1 = 0.0;
  /// c1 2^(2gamma+1): valid at even i; odd i needs c1 2 * 3^(2gamma).
  double c2 = 0.0;
  double c2_odd = 0.0;
  /// c2 i^-(2gamma+1) for i = 1..N.
  std::vector<double> curve;
  /// sigma_i^2 <= (2/i) tail(floor(i/2)) checked directly.
  BoundReport direct;
  /// sigma_i^2 <= c2 i^-(2gamma+1) for i >= 2 (c2_odd at odd i).
  BoundReport implied;
};

/// Tail-to-pointwise step. `tail` is tail_sums(s); throws ValidationError
/// when the supplied c1 does not bound the tail.
PointwiseBound tail_to_pointwise(const Spectrum& s, const std::vector<BigFloat>& tail, double gamma,
                                 std::optional<double> c1 = std::nullopt);

/// One cell of the summary table.
struct Table1Cell {
  std::string outer;  // left factor (Ha, C, M)
  std::string inner;  // right factor (J, C*)
  std::string op;     // short operator name
  std::string theory;
  std::string status;  // "rate known" or "bounds only, open"
  std::optional<DecayFit> power;
  std::optional<DecayFit> exponential;
  std::string scheme;
  int n = 0;
};

struct Table1Report {
  std::vector<Table1Cell> cells;
  std::vector<std::string> missing;

  nlohmann::json to_json() const;
  std::string to_csv() const;
  std::string to_text() const;
};

/// Builds the table from spectra keyed by operator short name (HaJ, CJ, MJ,
/// DHa). Absent inputs are listed in `missing`.
Table1Report table1_summary(const std::vector<Spectrum>& spectra);

nlohmann::json fit_to_json(const DecayFit& f);

}  // namespace illspec
