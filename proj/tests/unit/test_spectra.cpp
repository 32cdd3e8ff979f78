// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <random>

#include "illspec/discretize/gram.hpp"
#include "illspec/kernels/kernels.hpp"
#include "illspec/operators/monomial_image.hpp"
#include "illspec/spectra/eigen.hpp"
#include "illspec/spectra/spectrum.hpp"
#include "illspec/util/errors.hpp"

using namespace illspec;
using namespace illspec::kernels;

namespace {

DenseMatrix<double> random_symmetric(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  DenseMatrix<double> a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) a(i, j) = a(j, i) = u(rng);
  return a;
}

std::vector<const KernelTable*> simd_tables() {
  std::vector<const KernelTable*> t;
  if (const KernelTable* k = avx2_table()) t.push_back(k);
  if (const KernelTable* k = neon_table()) t.push_back(k);
  return t;
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("SIMD kernels agree with the scalar reference") {
  const KernelTable& ref = scalar_table();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const KernelTable* simd : simd_tables()) {
    for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 8u, 33u, 1000u}) {
      std::vector<double> x(n), y(n), z(n);
      for (std::size_t i = 0; i < n; ++i) x[i] = u(rng), y[i] = u(rng), z[i] = u(rng);
      double mag = 0.0;
      for (std::size_t i = 0; i < n; ++i) mag += std::abs(x[i] * y[i]);
      CHECK(std::abs(simd->dot(x.data(), y.data(), n) - ref.dot(x.data(), y.data(), n)) <= 1e-15 * (mag + 1.0));

      auto y1 = y, y2 = y;
      ref.axpy2(y1.data(), 0.3, x.data(), -1.7, z.data(), n);
      simd->axpy2(y2.data(), 0.3, x.data(), -1.7, z.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(y2[i] == doctest::Approx(y1[i]).epsilon(1e-15));

      auto a1 = x, b1 = y, a2 = x, b2 = y;
      ref.rotate(a1.data(), b1.data(), 0.8, 0.6, n);
      simd->rotate(a2.data(), b2.data(), 0.8, 0.6, n);
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(std::abs(a2[i] - a1[i]) <= 4e-16);
        CHECK(std::abs(b2[i] - b1[i]) <= 4e-16);
      }
    }
  }
}

TEST_CASE("runtime selection can be overridden") {
  const KernelTable& before = active();
  set_active(scalar_table());
  CHECK(active().isa == Isa::Scalar);
  set_active(before);
}

}

TEST_SUITE("spectra") {

TEST_CASE("2x2 Hilbert eigenvalues") {
  const mpfr_prec_t p = 256;
  const DenseMatrix<BigFloat> h = convert<BigFloat>(hilbert_section(2).entries, [p](const BigRational& q) {
    return BigFloat(q, p);
  });
  const EigenResult<BigFloat> r = jacobi_eigen(h, p);
  const BigFloat s13 = sqrt(BigFloat(13L, p));
  CHECK(abs(r.values[0] - (BigFloat(4L, p) + s13) / BigFloat(6L, p)) <= resolution(p));
  CHECK(abs(r.values[1] - (BigFloat(4L, p) - s13) / BigFloat(6L, p)) <= resolution(p));
}

TEST_CASE("BigFloat Jacobi eigenvectors diagonalize") {
  const mpfr_prec_t p = 192;
  const DenseMatrix<double> d = random_symmetric(6, 3);
  const DenseMatrix<BigFloat> a = convert<BigFloat>(d, [p](double x) { return BigFloat(x, p); });
  const EigenResult<BigFloat> r = jacobi_eigen(a, p, true);
  const DenseMatrix<BigFloat>& v = *r.vectors;
  for (std::size_t k = 0; k < 6; ++k) {
    for (std::size_t i = 0; i < 6; ++i) {
      BigFloat av(p);
      for (std::size_t j = 0; j < 6; ++j) av += a(i, j) * v(j, k);
      CHECK(abs(av - r.values[k] * v(i, k)) <= exp2i(-150, p));
    }
  }
  for (std::size_t k = 1; k < 6; ++k) CHECK(r.values[k - 1] >= r.values[k]);
}

TEST_CASE("double Jacobi, QL and BigFloat Jacobi agree") {
  for (std::size_t n : {1u, 2u, 5u, 40u}) {
    const DenseMatrix<double> a = random_symmetric(n, 11 + n);
    const auto j = jacobi_eigen(a).values;
    const auto q = tridiagonal_ql_eigen(a).values;
    const auto b = jacobi_eigen(convert<BigFloat>(a, [](double x) { return BigFloat(x, 128); }), 128).values;
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(j[i] == doctest::Approx(b[i].to_double()).epsilon(1e-12).scale(1.0));
      CHECK(q[i] == doctest::Approx(b[i].to_double()).epsilon(1e-12).scale(1.0));
    }
  }
}

TEST_CASE("double Jacobi is the same under every kernel table") {
  const DenseMatrix<double> a = random_symmetric(30, 5);
  const KernelTable& before = active();
  set_active(scalar_table());
  const auto ref = jacobi_eigen(a).values;
  for (const KernelTable* simd : simd_tables()) {
    set_active(*simd);
    const auto got = jacobi_eigen(a).values;
    for (std::size_t i = 0; i < ref.size(); ++i) CHECK(got[i] == doctest::Approx(ref[i]).epsilon(1e-13).scale(1.0));
  }
  set_active(before);
}

TEST_CASE("Jacobi rejects non-symmetric input") {
  DenseMatrix<double> a(2, 2);
  a(0, 1) = 1.0;
  CHECK_THROWS_AS(jacobi_eigen(a), ValidationError);
}

TEST_CASE("D Ha section spectrum") {
  const Spectrum s = eigen_sym(left_gram(compositions::d_ha(), 20), 512);
  CHECK(s.size() == 20);
  CHECK(s.sigma(1).to_double() == doctest::Approx(1.041759207).epsilon(1e-9));
  CHECK(s.sigma(2).to_double() == doctest::Approx(0.1966591464).epsilon(1e-9));
  CHECK(s.trust_cutoff == 20);
  // sum sigma_i^2 = trace
  BigFloat t(512);
  for (const auto& v : s.values) t += v * v;
  CHECK(abs(t - BigFloat(dha_trace_partial(20), 512)) <= exp2i(-480, 512));
}

TEST_CASE("tail sums") {
  const Spectrum s = spectrum_from_values({BigFloat(3L, 64), BigFloat(2L, 64), BigFloat(1L, 64)}, 64);
  const auto t = tail_sums(s);
  REQUIRE(t.size() == 3);
  CHECK(t[0] == 14.0);
  CHECK(t[1] == 5.0);
  CHECK(t[2] == 1.0);
}

TEST_CASE("cross-scheme trust cutoff") {
  const auto mk = [](std::vector<double> v) {
    std::vector<BigFloat> b;
    for (double x : v) b.emplace_back(x, 64);
    return spectrum_from_values(b, 64);
  };
  const Spectrum a = mk({1.0, 0.5, 0.25, 0.1});
  CHECK(trust_cutoff(a, mk({1.01, 0.51, 0.3, 0.1})) == 2);
  CHECK(trust_cutoff(a, mk({2.0, 0.5, 0.25, 0.1})) == 0);
  CHECK(trust_cutoff(a, a) == 4);
}

TEST_CASE("negative eigenvalues beyond rounding are a contract violation") {
  const mpfr_prec_t p = 128;
  CHECK_THROWS_AS(spectrum_from_eigenvalues({BigFloat(1L, p), BigFloat(-0.1, p)}, BigFloat(1L, p), p),
                  NumericalContractError);
  const Spectrum s = spectrum_from_eigenvalues({BigFloat(1L, p), -resolution(p) / BigFloat(4L, p)}, BigFloat(1L, p), p);
  CHECK(s.clamped == 1);
  CHECK(s.values[1].is_zero());
}

TEST_CASE("Hilbert inverse norm") {
  CHECK(hilbert_inverse_norm(2, 256).to_double() == doctest::Approx(15.21110255).epsilon(1e-9));
}

}
