// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <string>
#include <variant>

#include "illspec/numerics/big_float.hpp"
#include "illspec/numerics/special.hpp"
#include "illspec/operators/operator_id.hpp"
#include "illspec/operators/polynomial.hpp"

namespace illspec {

/// Function in L2(0,1) that is a polynomial.
struct PolynomialImage {
  RationalPoly poly;
};

/// The function -ln t (image of the constant under C*).
struct NegLogImage {};

/// Sequence j -> term(j), j >= 1, given by an exact formula.
struct SequenceImage {
  std::function<BigRational(long)> term;
  std::string formula;
};

using MonomialImage = std::variant<PolynomialImage, NegLogImage, SequenceImage>;

/// Exact image of a basis element. For L2-domain operators the input is the
/// monomial t^k (k >= 0); for l2-domain operators (D, Hastar) it is the unit
/// vector e^(k) (k >= 1).
MonomialImage apply_to_monomial(const OperatorId& op, int k);

/// Applies an operator to an already-computed image. Throws ValidationError
/// when the image lies in the wrong space or the action is not available
/// in closed form (e.g. C* of -ln t).
MonomialImage apply(const OperatorId& op, const MonomialImage& image);

/// Applies every factor of the composition (rightmost first) to t^k / e^(k).
MonomialImage apply_composition(const CompositionSpec& spec, int k);

/// Exact L2(0,1) inner product of two function images (polynomial or -ln t).
BigRational l2_inner(const MonomialImage& a, const MonomialImage& b);

/// j-th coordinate of a sequence image.
BigRational coordinate(const MonomialImage& image, long j);

/// Human-readable rendering.
std::string describe(const MonomialImage& image);

/// Outcome of checking Ha C* t^k = D Ha t^k coordinate by coordinate.
struct IdentityReport {
  long checks = 0;
  bool passed = true;
  int first_k = -1;
  long first_j = -1;
  std::string detail;
};

/// Checks (Ha C* t^k)_j == (D Ha t^k)_j exactly for 0 <= k <= k_max,
/// 1 <= j <= j_max. Both sides must also equal 1/(j(j+k)) (k >= 1) or
/// 1/j^2 (k = 0).
IdentityReport verify_dha_identity(int k_max, long j_max);

/// sum_j 1/(j^2 (2j-1)) = trace(D H D), the squared Hilbert-Schmidt norm
/// of D*Ha, from the closed form 4 ln 2 - pi^2/6 at the given precision;
/// terms_used is 0 and tail_bound is the rounding allowance 2^-(p-g). See hs_norm_squared_dha_series for the direct summation.
SeriesResult hs_norm_squared_dha(mpfr_prec_t precision);

/// Direct summation of the same series through sum_with_tail with the
/// majorant 1/(2J^2). Practical only for moderate tolerances.
SeriesResult hs_norm_squared_dha_series(const BigFloat& tol);

/// Exact partial sum sum_{j=1}^{n} 1/(j^2 (2j-1)).
BigRational dha_trace_partial(long n);

}  // namespace illspec
