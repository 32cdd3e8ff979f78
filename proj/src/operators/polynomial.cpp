// SPDX-License-Identifier: Apache-2.0
#include "illspec/operators/polynomial.hpp"

#include <algorithm>

#include "illspec/util/errors.hpp"

namespace illspec {

RationalPoly::RationalPoly(std::vector<BigRational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

RationalPoly RationalPoly::monomial(int degree, BigRational coeff) {
  if (degree < 0) throw ValidationError("RationalPoly::monomial: negative degree");
  std::vector<BigRational> c(static_cast<std::size_t>(degree) + 1);
  c.back() = std::move(coeff);
  return RationalPoly(std::move(c));
}

void RationalPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

BigRational RationalPoly::coeff(int k) const {
  if (k < 0 || k > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(k)];
}

BigRational RationalPoly::operator()(const BigRational& t) const {
  BigRational acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

RationalPoly RationalPoly::antiderivative() const {
  std::vector<BigRational> c(coeffs_.size() + 1);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    c[k + 1] = coeffs_[k] / BigRational(static_cast<long>(k + 1));
  }
  return RationalPoly(std::move(c));
}

BigRational RationalPoly::integrate(const BigRational& a, const BigRational& b) const {
  const RationalPoly F = antiderivative();
  return F(b) - F(a);
}

BigRational RationalPoly::moment(int m) const {
  BigRational s;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k].is_zero()) continue;
    s += coeffs_[k] / BigRational(static_cast<long>(k) + m + 1);
  }
  return s;
}

BigRational inner(const RationalPoly& p, const RationalPoly& q) {
  BigRational s;
  for (std::size_t k = 0; k < q.coeffs_.size(); ++k) {
    if (q.coeffs_[k].is_zero()) continue;
    s += q.coeffs_[k] * p.moment(static_cast<int>(k));
  }
  return s;
}

RationalPoly& RationalPoly::operator+=(const RationalPoly& o) {
  if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  trim();
  return *this;
}

RationalPoly& RationalPoly::operator-=(const RationalPoly& o) {
  if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  trim();
  return *this;
}

RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigRational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return RationalPoly(std::move(c));
}

RationalPoly operator*(const BigRational& c, const RationalPoly& p) {
  std::vector<BigRational> out(p.coeffs_);
  for (auto& x : out) x *= c;
  return RationalPoly(std::move(out));
}

std::string RationalPoly::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string s;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + coeffs_[k].to_string() + ")";
    if (k == 1) s += "*t";
    if (k > 1) s += "*t^" + std::to_string(k);
  }
  return s;
}

}  // namespace illspec
