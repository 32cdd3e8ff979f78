// SPDX-License-Identifier: Apache-2.0
#include "illspec/operators/legendre.hpp"

#include "illspec/util/errors.hpp"

namespace illspec {

BigFloat SurdValue::to_big_float(mpfr_prec_t precision) const {
  const mpfr_prec_t work = precision + 16;
  BigFloat r = BigFloat(rational, work) * sqrt(BigFloat(radicand, work));
  return r.rounded_to(precision);
}

LegendreBasis::LegendreBasis(int n) {
  if (n < 1) throw ValidationError("legendre_basis: n must be >= 1");
  const RationalPoly two_t_minus_one(std::vector<BigRational>{-1, 2});
  rational_parts_.push_back(RationalPoly::constant(1));
  if (n >= 2) rational_parts_.push_back(two_t_minus_one);
  for (int m = 1; m + 1 < n; ++m) {
    const RationalPoly& pm = rational_parts_[static_cast<std::size_t>(m)];
    const RationalPoly& pm1 = rational_parts_[static_cast<std::size_t>(m - 1)];
    RationalPoly next = BigRational(2L * m + 1, m + 1) * (two_t_minus_one * pm) -
                        BigRational(m, m + 1) * pm1;
    rational_parts_.push_back(std::move(next));
  }
}

SurdValue LegendreBasis::inner(int i, int j) const {
  const BigRational r = illspec::inner(rational_part(i), rational_part(j));
  if (i == j) return {r * BigRational(radicand(i)), 1};
  return {r, radicand(i) * radicand(j)};
}

SurdValue LegendreBasis::moment(int i, int m) const {
  return {rational_part(i).moment(m), radicand(i)};
}

SurdValue LegendreBasis::coefficient(int i, int m) const {
  return {rational_part(i).coeff(m), radicand(i)};
}

std::vector<RationalPoly> gram_schmidt_monomials(int n) {
  if (n < 1) throw ValidationError("gram_schmidt_monomials: n must be >= 1");
  std::vector<RationalPoly> q;
  std::vector<BigRational> norms;
  for (int k = 0; k < n; ++k) {
    const RationalPoly tk = RationalPoly::monomial(k);
    RationalPoly v = tk;
    for (std::size_t m = 0; m < q.size(); ++m) {
      v -= (illspec::inner(tk, q[m]) / norms[m]) * q[m];
    }
    norms.push_back(illspec::inner(v, v));
    q.push_back(std::move(v));
  }
  return q;
}

bool bases_agree(const LegendreBasis& basis, const std::vector<RationalPoly>& gs) {
  if (static_cast<int>(gs.size()) != basis.size()) return false;
  for (int i = 1; i <= basis.size(); ++i) {
    const RationalPoly& p = basis.rational_part(i);
    const RationalPoly& q = gs[static_cast<std::size_t>(i - 1)];
    if (p.degree() != q.degree()) return false;
    const BigRational lambda = q.coeff(q.degree()) / p.coeff(p.degree());
    if (lambda.sign() <= 0 || !(lambda * p == q)) return false;
    if (!(illspec::inner(p, p) == BigRational(1, 2L * i - 1))) return false;
  }
  return true;
}

SurdMatrix::SurdMatrix(long rows, int cols)
    : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {}

const BigRational& SurdMatrix::rational(long j, int i) const {
  return data_.at(static_cast<std::size_t>(j - 1) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(i - 1));
}
BigRational& SurdMatrix::rational(long j, int i) {
  return data_.at(static_cast<std::size_t>(j - 1) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(i - 1));
}

SurdMatrix ha_on_legendre(int n, long j_max) {
  if (n < 1 || j_max < 1) throw ValidationError("ha_on_legendre: n and j_max must be >= 1");
  const LegendreBasis basis(n);
  SurdMatrix m(j_max, n);
  for (long j = 1; j <= j_max; ++j) {
    for (int i = 1; i <= n; ++i) m.rational(j, i) = basis.rational_part(i).moment(static_cast<int>(j - 1));
  }
  return m;
}

}  // namespace illspec
