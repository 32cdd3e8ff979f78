// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "illspec/numerics/big_float.hpp"
#include "illspec/operators/polynomial.hpp"

namespace illspec {

/// Exact number r * sqrt(radicand) with radicand a positive integer.
struct SurdValue {
  BigRational rational;
  long radicand = 1;

  BigFloat to_big_float(mpfr_prec_t precision) const;
};

/// Shifted Legendre polynomials, orthonormal on L2(0,1), positive leading
/// coefficient. L_i = sqrt(2i-1) * P_i with P_i rational, i = 1..n.
class LegendreBasis {
 public:
  /// Built from the shifted three-term recurrence
  /// (m+1) P~_{m+1} = (2m+1)(2t-1) P~_m - m P~_{m-1}.
  explicit LegendreBasis(int n);

  int size() const { return static_cast<int>(rational_parts_.size()); }
  /// P_i (1-based).
  const RationalPoly& rational_part(int i) const { return rational_parts_.at(static_cast<std::size_t>(i - 1)); }
  long radicand(int i) const { return 2L * i - 1; }

  /// <L_i, L_j> as an exact surd.
  SurdValue inner(int i, int j) const;
  /// <L_i, t^m>.
  SurdValue moment(int i, int m) const;

  /// Coefficient of t^m in L_i, i.e. row i of the change-of-basis matrix.
  SurdValue coefficient(int i, int m) const;

 private:
  std::vector<RationalPoly> rational_parts_;
};

/// Orthogonal (not normalized) Gram-Schmidt of 1, t, ..., t^(n-1) in exact
/// arithmetic. Independent route used to cross-check LegendreBasis.
std::vector<RationalPoly> gram_schmidt_monomials(int n);

/// True when every Gram-Schmidt vector q_i is a positive rational multiple of
/// the recurrence polynomial P_i and <P_i, P_i> = 1/(2i-1).
bool bases_agree(const LegendreBasis& basis, const std::vector<RationalPoly>& gs);

/// Exact matrix of moments (Ha L_i)_j = int_0^1 L_i(t) t^(j-1) dt,
/// j = 1..j_max (rows), i = 1..n (columns). Entry is rational(j, i) times
/// sqrt(2i - 1); zero whenever j < i.
class SurdMatrix {
 public:
  SurdMatrix(long rows, int cols);
  long rows() const { return rows_; }
  int cols() const { return cols_; }
  const BigRational& rational(long j, int i) const;
  BigRational& rational(long j, int i);
  long radicand(int i) const { return 2L * i - 1; }
  SurdValue at(long j, int i) const { return {rational(j, i), radicand(i)}; }

 private:
  long rows_;
  int cols_;
  std::vector<BigRational> data_;
};

SurdMatrix ha_on_legendre(int n, long j_max);

}  // namespace illspec
