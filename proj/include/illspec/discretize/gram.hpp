// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "illspec/discretize/matrix.hpp"
#include "illspec/numerics/big_float.hpp"
#include "illspec/numerics/big_rational.hpp"
#include "illspec/operators/operator_id.hpp"

namespace illspec {

enum class Scheme { LeftSection, RightMidpoint, Galerkin };

std::string to_string(Scheme s);
/// Accepts left|right|galerkin (and the enum spellings).
Scheme parse_scheme(std::string_view s);

enum class Arithmetic { Exact, Float, Double };

using GramEntries = std::variant<DenseMatrix<BigRational>, DenseMatrix<BigFloat>, DenseMatrix<double>>;

/// Symmetric positive semidefinite matrix representing a discretized T T*
/// (left sections) or (T Q_N)^*(T Q_N) (right/Galerkin), with provenance.
struct GramMatrix {
  GramEntries entries;
  CompositionSpec op;
  Scheme scheme;
  int n = 0;
  /// nullopt for exact rational entries; 53 for double entries.
  std::optional<mpfr_prec_t> precision;
  /// Truncation bound per entry (RightMidpoint only).
  std::optional<BigFloat> series_tol;

  bool is_exact() const { return std::holds_alternative<DenseMatrix<BigRational>>(entries); }
  /// Entries rounded to BigFloat at precision p (correctly rounded for exact entries).
  DenseMatrix<BigFloat> to_big_float(mpfr_prec_t p) const;
  DenseMatrix<double> to_double() const;
  /// Trace at precision p (exact entries are summed exactly first).
  BigFloat trace(mpfr_prec_t p) const;
  bool is_symmetric() const;
};

/// Exact trace of an exact Gram matrix.
BigRational exact_trace(const GramMatrix& g);

/// True for D*Ha and the identical operator Ha*Cstar.
bool is_d_ha(const CompositionSpec& op);
bool is_ha_j(const CompositionSpec& op);

/// First N x N section of the Hilbert matrix, H_ij = 1/(i+j-1).
struct HilbertSection {
  DenseMatrix<BigRational> entries;
  int n = 0;

  /// H_ij depends only on i + j.
  bool is_hankel() const;
};

HilbertSection hilbert_section(int n);

/// P_N T T^* P_N, exact:
///   D*Ha:  1/(i j (i+j-1))  (= D_N H_N D_N)
///   Ha*J:  1/(j(i+1)) - 1/(j(j+1)(i+j+1))
///   HN:    the Hilbert section itself (Ha Ha^*)
GramMatrix left_gram(const CompositionSpec& op, int n);

/// (T Q_N)^*(T Q_N) under midpoint collocation at t_k = (k - 1/2)/N, in
/// orthonormal piecewise-constant coordinates:
///   D*Ha:  Li2(t_k t_l) / (t_k t_l) / N
///   Ha*J:  (zeta(2) - Li2(t_k) - Li2(t_l) + Li2(t_k t_l)) / N
/// Every entry carries a truncation error of at most `tol`; the precision
/// is that of `tol`.
GramMatrix right_gram(const CompositionSpec& op, int n, const BigFloat& tol);

/// Gram matrix <T phi_k, T phi_l> on the orthonormal piecewise-constant
/// basis phi_k = sqrt(N) 1_[(k-1)/N, k/N) for J, C*J, J^2, M_t*J.
/// Arithmetic::Exact is honored for J, J^2, M_t*J; C*J needs logarithms and
/// is produced as BigFloat at `precision` instead.
GramMatrix galerkin_gram(const CompositionSpec& op, int n, Arithmetic arithmetic = Arithmetic::Exact,
                         mpfr_prec_t precision = kDefaultPrecision);

/// Largest section size handled by hilbert_inverse_exact.
inline constexpr int kMaxExactHilbert = 13;

struct HilbertInverse {
  DenseMatrix<BigRational> inverse;
  int n = 0;
  /// Every entry of the inverse is an integer (a classical property; a false
  /// value means the elimination is broken).
  bool integral = false;
};

/// Exact inverse of H_N by rational Gauss-Jordan elimination.
/// Throws ValidationError for n outside [1, kMaxExactHilbert].
HilbertInverse hilbert_inverse_exact(int n);

}  // namespace illspec
