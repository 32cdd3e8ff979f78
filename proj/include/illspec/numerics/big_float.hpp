// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <mpfr.h>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

#include "illspec/numerics/big_rational.hpp"

namespace illspec {

/// Default working precision in bits.
inline constexpr mpfr_prec_t kDefaultPrecision = 256;

/// Guard bits reserved when turning a precision p into a tolerance 2^-(p-g).
inline constexpr int kGuardBits = 16;

/// Floating-point number with an explicit binary precision, rounding to
/// nearest. Binary operations produce a result at the larger of the two
/// operand precisions, so precision propagates through a computation.
class BigFloat {
 public:
  BigFloat() : BigFloat(kDefaultPrecision) {}
  explicit BigFloat(mpfr_prec_t precision);
  BigFloat(double value, mpfr_prec_t precision);
  BigFloat(long value, mpfr_prec_t precision);
  BigFloat(int value, mpfr_prec_t precision) : BigFloat(static_cast<long>(value), precision) {}
  /// Correctly rounded conversion.
  BigFloat(const BigRational& value, mpfr_prec_t precision);

  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  /// Accepts decimal or hex-float ("0x1.8p+3") text.
  static BigFloat parse(std::string_view text, mpfr_prec_t precision);

  /// Value rounded to `precision` bits.
  BigFloat rounded_to(mpfr_prec_t precision) const;

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  /// Exact hex-float rendering; parse(to_hex()) round-trips bit for bit.
  std::string to_hex() const;
  /// Scientific decimal with `digits` significant digits.
  std::string to_decimal(int digits = 20) const;

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  BigFloat& operator+=(const BigFloat& o);
  BigFloat& operator-=(const BigFloat& o);
  BigFloat& operator*=(const BigFloat& o);
  BigFloat& operator/=(const BigFloat& o);
  BigFloat& operator*=(long k);
  BigFloat& operator/=(long k);

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator*(const BigFloat& a, long k) { BigFloat r(a); r *= k; return r; }
  friend BigFloat operator*(long k, const BigFloat& a) { BigFloat r(a); r *= k; return r; }
  friend BigFloat operator/(const BigFloat& a, long k) { BigFloat r(a); r /= k; return r; }
  friend BigFloat operator-(const BigFloat& a);

  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b);
  friend bool operator==(const BigFloat& a, double b) { return mpfr_cmp_d(a.v_, b) == 0; }
  friend std::partial_ordering operator<=>(const BigFloat& a, double b);

  friend std::ostream& operator<<(std::ostream& os, const BigFloat& x);

 private:
  mpfr_t v_;
};

BigFloat abs(const BigFloat& x);
BigFloat sqrt(const BigFloat& x);
BigFloat log(const BigFloat& x);
BigFloat log10(const BigFloat& x);
BigFloat exp(const BigFloat& x);
BigFloat pow(const BigFloat& x, long n);
BigFloat pow(const BigFloat& x, const BigFloat& y);
/// 2^e at the given precision.
BigFloat exp2i(long e, mpfr_prec_t precision);
/// 2^-(p - g): the relative resolution used for tolerances at precision p.
BigFloat resolution(mpfr_prec_t precision, int guard = kGuardBits);

const BigFloat& max(const BigFloat& a, const BigFloat& b);
const BigFloat& min(const BigFloat& a, const BigFloat& b);

}  // namespace illspec
