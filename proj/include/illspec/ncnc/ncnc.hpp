// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include <json.hpp>

#include "illspec/discretize/matrix.hpp"
#include "illspec/numerics/big_float.hpp"

namespace illspec {

/// Columns of Q span the subspace; Q is N x d with orthonormal columns.
using Basis = DenseMatrix<BigFloat>;

/// Identity basis of R^n at precision p.
Basis full_basis(int n, mpfr_prec_t precision);

/// T = D_N * Ha restricted to the first N orthonormal shifted Legendre
/// polynomials (N x N, rows j, columns i), so that T T^T = D_N H_N D_N.
DenseMatrix<BigFloat> dha_section_factor(int n, mpfr_prec_t precision);

enum class Selection {
  /// Eigenvector of the smallest eigenvalue of the restricted Gram.
  Minimizer,
  /// Eigenvector of the largest eigenvalue not exceeding eps^2.
  LargestAdmissible,
};

struct NearNull {
  /// Unit vector in range(Q), in ambient coordinates; first coordinate of
  /// magnitude above the resolution is positive.
  std::vector<BigFloat> y;
  BigFloat residual;  // ||T y||
  /// Orthonormal basis of the part of range(Q) orthogonal to y, from the
  /// remaining eigenvectors of the restricted Gram.
  Basis complement;
};

/// Direction y in range(Q) with ||T y|| <= eps. Throws ValidationError for
/// an empty subspace and ToleranceUnachievable (achieved = min ||T y||)
/// when no direction qualifies. Eigenvalues within a relative 2^-(p-g) of
/// eps^2 count as admissible.
NearNull near_null_direction(const DenseMatrix<BigFloat>& t, const Basis& q, const BigFloat& eps,
                             mpfr_prec_t precision, Selection selection = Selection::Minimizer);

struct NcncStep {
  int n = 0;
  BigFloat residual;  // r_n
  BigFloat epsilon;   // 2^-n
  bool achieved = false;
};

struct NcncTrace {
  DenseMatrix<BigFloat> t;
  /// x_1..x_depth as columns (N x depth).
  std::vector<std::vector<BigFloat>> x;
  std::vector<NcncStep> steps;
  /// delta(n, m) = ||K_n - K_m||_F for 1 <= m < n <= depth, row-major by n.
  std::vector<std::vector<BigFloat>> increments;
  int depth = 0;
  int n_max = 0;
  /// max |X^T X - I| entry.
  BigFloat orthonormality_defect;
  mpfr_prec_t precision = kDefaultPrecision;
  /// Set when the construction stopped before n_max.
  std::optional<BigFloat> unachievable_min;

  /// r_n <= 2^-n (with the admissibility slack) at every recorded step.
  bool schedule_met() const;
  /// delta(n, m) <= sum_{i=m+1}^n r_i <= 2^-m for all pairs.
  bool increments_bounded() const;
  nlohmann::json to_json(bool include_vectors = false) const;
};

/// Greedy construction with eps_n = 2^-n. Stops at n_max or at the first
/// step whose schedule cannot be met (recorded in unachievable_min).
NcncTrace build_compact_restriction(const DenseMatrix<BigFloat>& t, int n_max, mpfr_prec_t precision,
                                    Selection selection = Selection::LargestAdmissible);

struct CompactWitness {
  int rank = 0;
  BigFloat b_norm;        // ||B||_2
  BigFloat tb_norm;       // ||T B||_2
  BigFloat sqrt_n_bound;  // max_i r_i * sqrt(n)
  BigFloat sum_bound;     // sum_i r_i
  bool within_sum_bound = false;

  nlohmann::json to_json() const;
};

/// B = X X^T; throws ValidationError for depth 0.
CompactWitness compact_product_witness(const NcncTrace& trace);

}  // namespace illspec
