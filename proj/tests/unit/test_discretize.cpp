// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <array>
#include <cmath>
#include <functional>

#include "illspec/discretize/gram.hpp"
#include "illspec/util/errors.hpp"

using namespace illspec;

namespace {

// 8-point Gauss-Legendre on [a, b].
double gauss(const std::function<double(double)>& f, double a, double b) {
  static constexpr std::array<double, 4> x = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267,
                                              0.9602898564975363};
  static constexpr std::array<double, 4> w = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745,
                                              0.1012285362903763};
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double s = 0.0;
  for (int k = 0; k < 4; ++k) s += w[k] * (f(c - h * x[k]) + f(c + h * x[k]));
  return s * h;
}

// int_0^s f over the cell grid of width 1/n (f smooth on each cell).
double integrate_to(const std::function<double(double)>& f, double s, int n) {
  double acc = 0.0;
  for (int c = 0; c < n; ++c) {
    const double a = static_cast<double>(c) / n, b = std::min(s, static_cast<double>(c + 1) / n);
    if (b <= a) break;
    acc += gauss(f, a, b);
  }
  return acc;
}

// Gram of T over sqrt(n) * indicator basis, T applied by nested quadrature.
std::vector<std::vector<double>> quadrature_gram(const std::string& op, int n) {
  std::vector<std::function<double(double)>> img;
  for (int k = 0; k < n; ++k) {
    const double a = static_cast<double>(k) / n, b = static_cast<double>(k + 1) / n;
    const std::function<double(double)> phi = [=](double t) { return (t >= a && t < b) ? std::sqrt(n) : 0.0; };
    const std::function<double(double)> jphi = [=](double s) { return integrate_to(phi, s, n); };
    if (op == "J") {
      img.push_back(jphi);
    } else if (op == "J2") {
      img.push_back([=](double s) { return integrate_to(jphi, s, n); });
    } else if (op == "CJ") {
      img.push_back([=](double s) { return integrate_to(jphi, s, n) / s; });
    } else {
      img.push_back([=](double s) { return s * jphi(s); });
    }
  }
  std::vector<std::vector<double>> g(n, std::vector<double>(n));
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      g[k][l] = integrate_to([&](double s) { return img[k](s) * img[l](s); }, 1.0, n);
  return g;
}

}  // namespace

TEST_SUITE("discretize") {

TEST_CASE("left sections match independent closed forms") {
  const int n = 9;
  const GramMatrix dha = left_gram(compositions::d_ha(), n);
  const GramMatrix haj = left_gram(compositions::ha_j(), n);
  const auto& a = std::get<DenseMatrix<BigRational>>(dha.entries);
  const auto& b = std::get<DenseMatrix<BigRational>>(haj.entries);
  for (long i = 1; i <= n; ++i) {
    for (long j = 1; j <= n; ++j) {
      CHECK(a(i - 1, j - 1) == BigRational(1, i * j * (i + j - 1)));
      // (1/(ij)) int (1 - s^i)(1 - s^j) ds
      const BigRational want = BigRational(1, i * j) * (BigRational(1) - BigRational(1, i + 1) - BigRational(1, j + 1) +
                                                        BigRational(1, i + j + 1));
      CHECK(b(i - 1, j - 1) == want);
    }
  }
  CHECK(dha.is_symmetric());
  CHECK(left_gram(compositions::ha_cstar(), 4).entries == left_gram(compositions::d_ha(), 4).entries);
}

TEST_CASE("Hilbert section") {
  const HilbertSection h = hilbert_section(5);
  CHECK(h.is_hankel());
  const HilbertInverse inv = hilbert_inverse_exact(4);
  CHECK(inv.integral);
  CHECK(inv.inverse(0, 0) == BigRational(16));
  CHECK(inv.inverse(3, 3) == BigRational(2800));
  CHECK_THROWS_AS(hilbert_inverse_exact(kMaxExactHilbert + 1), ValidationError);
}

TEST_CASE("right scheme matches direct sums over j") {
  const int n = 5;
  const mpfr_prec_t p = 128;
  const BigFloat tol = exp2i(-100, p);
  const DenseMatrix<double> dha = right_gram(compositions::d_ha(), n, tol).to_double();
  const DenseMatrix<double> haj = right_gram(compositions::ha_j(), n, tol).to_double();
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      const double tk = (2.0 * k + 1) / (2.0 * n), tl = (2.0 * l + 1) / (2.0 * n);
      // sum_j (t_k t_l)^(j-1) / j^2 / N
      double s = 0.0, x = 1.0;
      for (int j = 1; j < 4000; ++j) {
        s += x / (static_cast<double>(j) * j);
        x *= tk * tl;
      }
      CHECK(dha(k, l) == doctest::Approx(s / n).epsilon(1e-13));
      // sum_j (1 - t_k^j)(1 - t_l^j) / j^2 / N, tail of 1/j^2 added as 1/(J + 1/2)
      const int jmax = 200000;
      double h = 0.0, pk = 1.0, pl = 1.0;
      for (int j = 1; j <= jmax; ++j) {
        pk *= tk;
        pl *= tl;
        h += (1.0 - pk) * (1.0 - pl) / (static_cast<double>(j) * j);
      }
      h += 1.0 / (jmax + 0.5);
      CHECK(haj(k, l) == doctest::Approx(h / n).epsilon(1e-11));
    }
  }
}

TEST_CASE("right scheme rejects tolerances below the precision") {
  CHECK_THROWS_AS(right_gram(compositions::d_ha(), 3, exp2i(-300, 256)), ToleranceUnachievable);
}

TEST_CASE("galerkin matches nested quadrature") {
  for (const char* name : {"J", "J2", "CJ", "MJ"}) {
    const int n = 3;
    const auto ref = quadrature_gram(name, n);
    const auto op = CompositionSpec::from_short_name(name);
    const Arithmetic a = std::string(name) == "CJ" ? Arithmetic::Float : Arithmetic::Exact;
    const DenseMatrix<double> g = galerkin_gram(op, n, a, 128).to_double();
    const DenseMatrix<double> d = galerkin_gram(op, n, Arithmetic::Double).to_double();
    for (int k = 0; k < n; ++k) {
      for (int l = 0; l < n; ++l) {
        CAPTURE(name);
        CHECK(g(k, l) == doctest::Approx(ref[k][l]).epsilon(1e-12));
        CHECK(d(k, l) == doctest::Approx(g(k, l)).epsilon(1e-15));
      }
    }
  }
}

TEST_CASE("galerkin J has the closed-form Gram") {
  const int n = 16;
  const GramMatrix g = galerkin_gram(compositions::j(), n, Arithmetic::Exact);
  // ||J||_HS^2 = 1/2; the section loses h/6.
  CHECK(exact_trace(g) == BigRational(1, 2) - BigRational(1, 6L * n));
  const auto& e = std::get<DenseMatrix<BigRational>>(g.entries);
  // Off-diagonal k < l: N h (h/2 + (1 - b_l) h) for the ramp of l and the tail of k.
  const BigRational h(1, n);
  CHECK(e(0, 1) == BigRational(n) * h * (h * h / BigRational(2) + (BigRational(1) - BigRational(2) * h) * h));
}

}
