// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "illspec/numerics/big_rational.hpp"

namespace illspec {

/// Polynomial in t with exact rational coefficients, lowest degree first.
/// Trailing zero coefficients are trimmed, so the zero polynomial has no
/// coefficients.
class RationalPoly {
 public:
  RationalPoly() = default;
  explicit RationalPoly(std::vector<BigRational> coeffs);
  static RationalPoly monomial(int degree, BigRational coeff = 1);
  static RationalPoly constant(BigRational c) { return monomial(0, std::move(c)); }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  /// Coefficient of t^k (zero beyond the degree).
  BigRational coeff(int k) const;
  const std::vector<BigRational>& coeffs() const { return coeffs_; }

  BigRational operator()(const BigRational& t) const;

  /// int_a^b p(t) dt
  BigRational integrate(const BigRational& a, const BigRational& b) const;
  /// Antiderivative vanishing at 0.
  RationalPoly antiderivative() const;
  /// int_0^1 p(t) t^m dt
  BigRational moment(int m) const;
  /// L2(0,1) inner product.
  friend BigRational inner(const RationalPoly& p, const RationalPoly& q);

  RationalPoly& operator+=(const RationalPoly& o);
  RationalPoly& operator-=(const RationalPoly& o);
  friend RationalPoly operator+(RationalPoly a, const RationalPoly& b) { return a += b; }
  friend RationalPoly operator-(RationalPoly a, const RationalPoly& b) { return a -= b; }
  friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b);
  friend RationalPoly operator*(const BigRational& c, const RationalPoly& p);
  friend bool operator==(const RationalPoly&, const RationalPoly&) = default;

  std::string to_string() const;

 private:
  void trim();
  std::vector<BigRational> coeffs_;
};

BigRational inner(const RationalPoly& p, const RationalPoly& q);
RationalPoly operator*(const RationalPoly& a, const RationalPoly& b);
RationalPoly operator*(const BigRational& c, const RationalPoly& p);

}  // namespace illspec
