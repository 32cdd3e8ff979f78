// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "illspec/discretize/matrix.hpp"
#include "illspec/numerics/big_float.hpp"

namespace illspec {

template <class T>
struct EigenResult {
  /// Eigenvalues, descending. Not clamped.
  std::vector<T> values;
  /// Column j is the unit eigenvector of values[j] (when requested).
  std::optional<DenseMatrix<T>> vectors;
  int sweeps = 0;
  long rotations = 0;
};

/// Cyclic Jacobi at precision p with row-major sweep order. A pair (p, q) is
/// skipped when |a_pq| <= 2^-(p-g)/N * sqrt(|a_pp a_qq|); on exit the
/// off-diagonal Frobenius norm is checked against 2^-(p-g) ||A||_F.
/// Throws ValidationError for non-square or non-symmetric input and
/// NumericalContractError when the sweep limit is hit.
EigenResult<BigFloat> jacobi_eigen(const DenseMatrix<BigFloat>& a, mpfr_prec_t precision,
                                   bool want_vectors = false);

/// Double-precision cyclic Jacobi; rotations go through the kernel table.
EigenResult<double> jacobi_eigen(const DenseMatrix<double>& a, bool want_vectors = false);

/// Householder tridiagonalization followed by implicit QL. Eigenvalues only.
EigenResult<double> tridiagonal_ql_eigen(const DenseMatrix<double>& a);

/// Sections up to this size use double Jacobi; larger ones Householder + QL.
inline constexpr std::size_t kDoubleJacobiMaxN = 256;

/// Eigenvalues of a symmetric double matrix by the size-appropriate method.
EigenResult<double> symmetric_eigen(const DenseMatrix<double>& a);

}  // namespace illspec
