// SPDX-License-Identifier: Apache-2.0
#include "illspec/numerics/big_float.hpp"

#include <algorithm>
#include <cstdio>
#include <memory>
#include <ostream>

#include "illspec/util/errors.hpp"

namespace illspec {
namespace {

mpfr_prec_t wider(const BigFloat& a, const BigFloat& b) {
  return std::max(a.precision(), b.precision());
}

void check_precision(mpfr_prec_t p) {
  if (p < MPFR_PREC_MIN || p > (1L << 20)) {
    throw ValidationError("BigFloat: unsupported precision " + std::to_string(p));
  }
}

std::partial_ordering from_cmp(int c, bool unordered) {
  if (unordered) return std::partial_ordering::unordered;
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

}  // namespace

BigFloat::BigFloat(mpfr_prec_t precision) {
  check_precision(precision);
  mpfr_init2(v_, precision);
  mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(double value, mpfr_prec_t precision) : BigFloat(precision) {
  mpfr_set_d(v_, value, MPFR_RNDN);
}

BigFloat::BigFloat(long value, mpfr_prec_t precision) : BigFloat(precision) {
  mpfr_set_si(v_, value, MPFR_RNDN);
}

BigFloat::BigFloat(const BigRational& value, mpfr_prec_t precision) : BigFloat(precision) {
  mpfr_set_q(v_, value.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(v_, other.precision());
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  // Steal the limbs; the source is left in a state the destructor skips.
  v_[0] = other.v_[0];
  other.v_[0]._mpfr_d = nullptr;
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this == &other) return *this;
  if (v_[0]._mpfr_d == nullptr) {
    mpfr_init2(v_, other.precision());
  } else if (precision() != other.precision()) {
    mpfr_set_prec(v_, other.precision());
  }
  mpfr_set(v_, other.v_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  if (this == &other) return *this;
  if (v_[0]._mpfr_d != nullptr) mpfr_clear(v_);
  v_[0] = other.v_[0];
  other.v_[0]._mpfr_d = nullptr;
  return *this;
}

BigFloat::~BigFloat() {
  if (v_[0]._mpfr_d != nullptr) mpfr_clear(v_);
}

BigFloat BigFloat::parse(std::string_view text, mpfr_prec_t precision) {
  BigFloat r(precision);
  std::string s(text);
  char* end = nullptr;
  mpfr_strtofr(r.v_, s.c_str(), &end, 0, MPFR_RNDN);
  if (s.empty() || end == s.c_str() || *end != '\0') {
    throw ValidationError("BigFloat: cannot parse '" + s + "'");
  }
  return r;
}

BigFloat BigFloat::rounded_to(mpfr_prec_t precision) const {
  BigFloat r(precision);
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

std::string BigFloat::to_hex() const {
  char* buf = nullptr;
  if (mpfr_asprintf(&buf, "%Ra", v_) < 0) throw std::bad_alloc();
  std::unique_ptr<char, void (*)(char*)> guard(buf, [](char* p) { mpfr_free_str(p); });
  return std::string(buf);
}

std::string BigFloat::to_decimal(int digits) const {
  char* buf = nullptr;
  if (mpfr_asprintf(&buf, "%.*Re", std::max(0, digits - 1), v_) < 0) throw std::bad_alloc();
  std::unique_ptr<char, void (*)(char*)> guard(buf, [](char* p) { mpfr_free_str(p); });
  return std::string(buf);
}

BigFloat& BigFloat::operator+=(const BigFloat& o) {
  if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
BigFloat& BigFloat::operator-=(const BigFloat& o) {
  if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
BigFloat& BigFloat::operator*=(const BigFloat& o) {
  if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
BigFloat& BigFloat::operator/=(const BigFloat& o) {
  if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
BigFloat& BigFloat::operator*=(long k) {
  mpfr_mul_si(v_, v_, k, MPFR_RNDN);
  return *this;
}
BigFloat& BigFloat::operator/=(long k) {
  mpfr_div_si(v_, v_, k, MPFR_RNDN);
  return *this;
}

BigFloat operator+(const BigFloat& a, const BigFloat& b) {
  BigFloat r(wider(a, b));
  mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}
BigFloat operator-(const BigFloat& a, const BigFloat& b) {
  BigFloat r(wider(a, b));
  mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}
BigFloat operator*(const BigFloat& a, const BigFloat& b) {
  BigFloat r(wider(a, b));
  mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}
BigFloat operator/(const BigFloat& a, const BigFloat& b) {
  BigFloat r(wider(a, b));
  mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}
BigFloat operator-(const BigFloat& a) {
  BigFloat r(a.precision());
  mpfr_neg(r.v_, a.v_, MPFR_RNDN);
  return r;
}

std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b) {
  const bool unordered = mpfr_unordered_p(a.v_, b.v_) != 0;
  return from_cmp(unordered ? 0 : mpfr_cmp(a.v_, b.v_), unordered);
}

std::partial_ordering operator<=>(const BigFloat& a, double b) {
  const bool unordered = mpfr_nan_p(a.v_) != 0 || b != b;
  return from_cmp(unordered ? 0 : mpfr_cmp_d(a.v_, b), unordered);
}

std::ostream& operator<<(std::ostream& os, const BigFloat& x) { return os << x.to_decimal(20); }

BigFloat abs(const BigFloat& x) {
  BigFloat r(x.precision());
  mpfr_abs(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}
BigFloat sqrt(const BigFloat& x) {
  BigFloat r(x.precision());
  mpfr_sqrt(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}
BigFloat log(const BigFloat& x) {
  BigFloat r(x.precision());
  mpfr_log(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}
BigFloat log10(const BigFloat& x) {
  BigFloat r(x.precision());
  mpfr_log10(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}
BigFloat exp(const BigFloat& x) {
  BigFloat r(x.precision());
  mpfr_exp(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}
BigFloat pow(const BigFloat& x, long n) {
  BigFloat r(x.precision());
  mpfr_pow_si(r.raw(), x.raw(), n, MPFR_RNDN);
  return r;
}
BigFloat pow(const BigFloat& x, const BigFloat& y) {
  BigFloat r(wider(x, y));
  mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}
BigFloat exp2i(long e, mpfr_prec_t precision) {
  BigFloat r(precision);
  mpfr_set_ui_2exp(r.raw(), 1, e, MPFR_RNDN);
  return r;
}
BigFloat resolution(mpfr_prec_t precision, int guard) {
  return exp2i(-(static_cast<long>(precision) - guard), precision);
}

const BigFloat& max(const BigFloat& a, const BigFloat& b) { return (a < b) ? b : a; }
const BigFloat& min(const BigFloat& a, const BigFloat& b) { return (b < a) ? b : a; }

}  // namespace illspec
