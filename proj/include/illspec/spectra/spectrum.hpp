// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "illspec/discretize/gram.hpp"
#include "illspec/numerics/big_float.hpp"

namespace illspec {

/// Singular values sigma_1 >= ... >= sigma_N >= 0 of a discretized operator.
struct Spectrum {
  std::vector<BigFloat> values;
  /// Provenance of the Gram matrix; empty op name for synthetic spectra.
  std::optional<CompositionSpec> op;
  std::optional<Scheme> scheme;
  int n = 0;
  mpfr_prec_t precision = kDefaultPrecision;
  /// Largest 1-based index i with eigenvalue_i > eigenvalue_1 * 2^-(p-g),
  /// i.e. sigma_i > sigma_1 * 2^-(p-g)/2.
  int trust_cutoff = 0;
  /// Eigenvalues that came out slightly negative and were set to zero.
  int clamped = 0;

  std::size_t size() const { return values.size(); }
  const BigFloat& sigma(int i) const { return values.at(static_cast<std::size_t>(i - 1)); }
  bool trusted(int i) const { return i >= 1 && i <= trust_cutoff; }
  std::vector<double> to_doubles() const;
};

/// Largest i with eigenvalue_i > eigenvalue_1 * 2^-(p-g).
int precision_trust_cutoff(const std::vector<BigFloat>& sigma, mpfr_prec_t precision);

/// Spectrum built from given singular values (sorted descending here).
Spectrum spectrum_from_values(std::vector<BigFloat> sigma, mpfr_prec_t precision);

/// Eigenvalues clamped and square-rooted into a Spectrum. Negative
/// eigenvalues above -2^-(p-g) * trace become 0; anything more negative
/// throws NumericalContractError.
Spectrum spectrum_from_eigenvalues(std::vector<BigFloat> eigenvalues, const BigFloat& trace,
                                   mpfr_prec_t precision);

/// Singular spectrum of the operator behind G at precision p. BigFloat
/// and exact Gram matrices use cyclic Jacobi at p; double Gram matrices use
/// the double path (p is then 53).
Spectrum eigen_sym(const GramMatrix& g, mpfr_prec_t precision = kDefaultPrecision);

/// T(n) = sum_{i>n} sigma_i^2 for n = 0..N-1, accumulated smallest first.
std::vector<BigFloat> tail_sums(const Spectrum& s);

/// Largest i such that |sigma_i - sigma'_i| <= rel_tol * sigma_i for every
/// index up to i; 0 when sigma_1 already disagrees.
int trust_cutoff(const Spectrum& s, const Spectrum& cross, double rel_tol = 0.05);

/// ||H_N^-1||_2 = 1 / lambda_min(H_N) from the exact inverse's largest
/// eigenvalue (Jacobi on the integer matrix at precision p).
BigFloat hilbert_inverse_norm(int n, mpfr_prec_t precision = kDefaultPrecision);

}  // namespace illspec
