// SPDX-License-Identifier: Apache-2.0
#include "illspec/numerics/big_rational.hpp"

#include <ostream>

#include "illspec/util/errors.hpp"

namespace illspec {

BigRational::BigRational(long num, long den) : q_(num, den) {
  if (den == 0) throw ValidationError("BigRational: zero denominator");
  q_.canonicalize();
}

BigRational::BigRational(const mpz_class& num, const mpz_class& den) : q_(num, den) {
  if (den == 0) throw ValidationError("BigRational: zero denominator");
  q_.canonicalize();
}

BigRational BigRational::parse(std::string_view text) {
  std::string s(text);
  mpq_class q;
  if (s.empty() || q.set_str(s, 10) != 0) {
    throw ValidationError("BigRational: cannot parse '" + s + "'");
  }
  if (q.get_den() == 0) throw ValidationError("BigRational: zero denominator in '" + s + "'");
  q.canonicalize();
  return BigRational(q);
}

std::string BigRational::to_string() const {
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

BigRational& BigRational::operator/=(const BigRational& o) {
  if (o.is_zero()) throw ValidationError("BigRational: division by zero");
  q_ /= o.q_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const BigRational& q) { return os << q.to_string(); }

BigRational abs(const BigRational& q) { return q.sign() < 0 ? -q : q; }

BigRational pow(const BigRational& base, unsigned long exponent) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.raw().get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.raw().get_den_mpz_t(), exponent);
  return BigRational(num, den);
}

}  // namespace illspec
