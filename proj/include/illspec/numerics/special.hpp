// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>

#include "illspec/numerics/big_float.hpp"

namespace illspec {

/// A summed series together with a certified bound on the discarded tail.
struct SeriesResult {
  BigFloat value;
  std::int64_t terms_used = 0;
  BigFloat tail_bound;
};

/// pi at the requested precision. Cached per precision; safe to call from
/// multiple threads.
BigFloat pi(mpfr_prec_t precision);

/// ln 2 at the requested precision (cached like pi).
BigFloat ln2(mpfr_prec_t precision);

/// zeta(k) for k in {2, 4} from the closed forms pi^2/6 and pi^4/90.
/// Throws ValidationError for any other k.
BigFloat zeta_even(int k, mpfr_prec_t precision);

/// Sums term(1) + term(2) + ... until tail_majorant(J) <= tol, where
/// tail_majorant(J) bounds |sum_{j>J} term(j)|. J = 0 is tried first, so a
/// majorant that is already below tol yields an empty sum.
/// The precision of the sum is that of `tol`.
/// Throws ToleranceUnachievable after `max_terms` terms.
SeriesResult sum_with_tail(const std::function<BigFloat(std::int64_t)>& term,
                           const std::function<BigFloat(std::int64_t)>& tail_majorant,
                           const BigFloat& tol, std::int64_t max_terms = 50'000'000);

/// Dilogarithm Li2(x) = sum_{j>=1} x^j / j^2 for 0 <= x <= 1.
/// The power series is only used for arguments <= 1/2; larger arguments go
/// through Li2(x) = pi^2/6 - ln(x) ln(1-x) - Li2(1-x). Li2(1) = zeta(2).
/// Result precision is max(x.precision(), tol.precision()).
/// Throws ValidationError for x outside [0, 1] or tol <= 0.
SeriesResult dilog(const BigFloat& x, const BigFloat& tol);

}  // namespace illspec
