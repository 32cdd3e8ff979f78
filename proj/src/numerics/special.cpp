// SPDX-License-Identifier: Apache-2.0
#include "illspec/numerics/special.hpp"

#include <map>
#include <mutex>

#include "illspec/util/errors.hpp"

namespace illspec {
namespace {

// Extra bits carried internally so rounding in long sums stays far below tol.
constexpr mpfr_prec_t kWorkGuard = 32;

class ConstantCache {
 public:
  using Filler = int (*)(mpfr_ptr, mpfr_rnd_t);
  explicit ConstantCache(Filler fill) : fill_(fill) {}

  BigFloat get(mpfr_prec_t precision) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(precision);
    if (it == cache_.end()) {
      BigFloat v(precision);
      fill_(v.raw(), MPFR_RNDN);
      it = cache_.emplace(precision, std::move(v)).first;
    }
    return it->second;
  }

 private:
  Filler fill_;
  std::mutex mu_;
  std::map<mpfr_prec_t, BigFloat> cache_;
};

ConstantCache& pi_cache() {
  static ConstantCache cache(&mpfr_const_pi);
  return cache;
}

ConstantCache& ln2_cache() {
  static ConstantCache cache(&mpfr_const_log2);
  return cache;
}

// Power series for 0 <= x <= 1/2 with tail bound x^(J+1) / ((1-x)(J+1)^2).
SeriesResult dilog_series(const BigFloat& x, const BigFloat& tol, mpfr_prec_t work) {
  BigFloat sum(work);
  BigFloat power(1L, work);
  BigFloat one_minus_x = BigFloat(1L, work) - x;
  std::int64_t j = 0;
  BigFloat tail(work);
  while (true) {
    // Tail after j terms.
    BigFloat next_power = power * x;
    tail = next_power / one_minus_x;
    tail /= (j + 1);
    tail /= (j + 1);
    if (x.is_zero() || tail <= tol) break;
    ++j;
    power = std::move(next_power);
    BigFloat term = power / j;
    term /= j;
    sum += term;
    if (j > 1'000'000) throw ToleranceUnachievable("dilog: series did not converge", tail.to_double());
  }
  if (x.is_zero()) tail = BigFloat(work);
  return {std::move(sum), j, std::move(tail)};
}

}  // namespace

BigFloat pi(mpfr_prec_t precision) { return pi_cache().get(precision); }

BigFloat ln2(mpfr_prec_t precision) { return ln2_cache().get(precision); }

BigFloat zeta_even(int k, mpfr_prec_t precision) {
  const BigFloat p = pi(precision);
  if (k == 2) return p * p / 6L;
  if (k == 4) return pow(p, 4) / 90L;
  throw ValidationError("zeta_even: unsupported argument " + std::to_string(k) +
                        " (only 2 and 4 have closed forms here)");
}

SeriesResult sum_with_tail(const std::function<BigFloat(std::int64_t)>& term,
                           const std::function<BigFloat(std::int64_t)>& tail_majorant,
                           const BigFloat& tol, std::int64_t max_terms) {
  if (!(tol > 0.0)) throw ValidationError("sum_with_tail: tolerance must be positive");
  const mpfr_prec_t prec = tol.precision();
  BigFloat sum(prec);
  for (std::int64_t j = 0;; ++j) {
    if (j > 0) sum += term(j);
    BigFloat bound = abs(tail_majorant(j));
    if (bound <= tol) return {std::move(sum), j, std::move(bound)};
    if (j >= max_terms) {
      throw ToleranceUnachievable("sum_with_tail: iteration cap reached; tail majorant " +
                                      bound.to_decimal(6) + " still above tolerance",
                                  bound.to_double());
    }
  }
}

SeriesResult dilog(const BigFloat& x, const BigFloat& tol) {
  if (!(x >= 0.0) || !(x <= 1.0)) {
    throw ValidationError("dilog: argument " + x.to_decimal(10) + " outside [0, 1]");
  }
  if (!(tol > 0.0)) throw ValidationError("dilog: tolerance must be positive");
  const mpfr_prec_t prec = std::max(x.precision(), tol.precision());
  const mpfr_prec_t work = prec + kWorkGuard;
  const BigFloat xw = x.rounded_to(work);

  if (x == 1.0) {
    return {zeta_even(2, prec), 0, BigFloat(prec)};
  }
  if (x <= 0.5) {
    SeriesResult r = dilog_series(xw, tol, work);
    return {r.value.rounded_to(prec), r.terms_used, r.tail_bound.rounded_to(prec)};
  }
  const BigFloat y = BigFloat(1L, work) - xw;
  SeriesResult inner = dilog_series(y, tol, work);
  BigFloat value = zeta_even(2, work) - log(xw) * log(y) - inner.value;
  return {value.rounded_to(prec), inner.terms_used, inner.tail_bound.rounded_to(prec)};
}

}  // namespace illspec
