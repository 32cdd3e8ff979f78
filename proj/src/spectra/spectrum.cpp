// SPDX-License-Identifier: Apache-2.0
#include "illspec/spectra/spectrum.hpp"

#include <algorithm>

#include "illspec/spectra/eigen.hpp"
#include "illspec/util/errors.hpp"

namespace illspec {

std::vector<double> Spectrum::to_doubles() const {
  std::vector<double> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(v.to_double());
  return out;
}

int precision_trust_cutoff(const std::vector<BigFloat>& sigma, mpfr_prec_t precision) {
  if (sigma.empty() || !(sigma.front() > 0.0)) return 0;
  const BigFloat floor = sigma.front() * sigma.front() * resolution(precision);
  int cutoff = 0;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (!(sigma[i] * sigma[i] > floor)) break;
    cutoff = static_cast<int>(i + 1);
  }
  return cutoff;
}

Spectrum spectrum_from_values(std::vector<BigFloat> sigma, mpfr_prec_t precision) {
  for (const auto& s : sigma) {
    if (s.sign() < 0 || !s.is_finite()) throw ValidationError("spectrum: singular values must be finite and >= 0");
  }
  std::stable_sort(sigma.begin(), sigma.end(), [](const BigFloat& a, const BigFloat& b) { return a > b; });
  Spectrum s;
  s.n = static_cast<int>(sigma.size());
  s.precision = precision;
  s.trust_cutoff = precision_trust_cutoff(sigma, precision);
  s.values = std::move(sigma);
  return s;
}

Spectrum spectrum_from_eigenvalues(std::vector<BigFloat> eigenvalues, const BigFloat& trace,
                                   mpfr_prec_t precision) {
  const BigFloat allowance = -(abs(trace) * resolution(precision));
  int clamped = 0;
  std::vector<BigFloat> sigma;
  sigma.reserve(eigenvalues.size());
  for (auto& e : eigenvalues) {
    if (e.sign() < 0) {
      if (e < allowance) {
        throw NumericalContractError("eigen_sym: eigenvalue " + e.to_decimal(6) +
                                     " below the clamping threshold " + allowance.to_decimal(6));
      }
      ++clamped;
      sigma.emplace_back(precision);
    } else {
      sigma.push_back(sqrt(e).rounded_to(precision));
    }
  }
  Spectrum s = spectrum_from_values(std::move(sigma), precision);
  s.clamped = clamped;
  return s;
}

Spectrum eigen_sym(const GramMatrix& g, mpfr_prec_t precision) {
  if (!g.is_symmetric()) throw ValidationError("eigen_sym: Gram matrix is not symmetric");
  Spectrum s;
  if (const auto* d = std::get_if<DenseMatrix<double>>(&g.entries)) {
    EigenResult<double> r = symmetric_eigen(*d);
    double tr = 0.0;
    for (std::size_t i = 0; i < d->rows(); ++i) tr += (*d)(i, i);
    std::vector<BigFloat> ev;
    for (double x : r.values) ev.emplace_back(x, 53);
    s = spectrum_from_eigenvalues(std::move(ev), BigFloat(tr, 53), 53);
  } else {
    EigenResult<BigFloat> r = jacobi_eigen(g.to_big_float(precision), precision, false);
    s = spectrum_from_eigenvalues(std::move(r.values), g.trace(precision), precision);
  }
  s.op = g.op;
  s.scheme = g.scheme;
  s.n = g.n;
  return s;
}

std::vector<BigFloat> tail_sums(const Spectrum& s) {
  const std::size_t n = s.values.size();
  std::vector<BigFloat> t(n, BigFloat(s.precision + 32));
  BigFloat acc(s.precision + 32);
  // t[k] = sum_{i>k} sigma_i^2 (1-based i), built from the bottom.
  for (std::size_t k = n; k-- > 0;) {
    acc += s.values[k] * s.values[k];
    t[k] = acc;
  }
  for (auto& x : t) x = x.rounded_to(s.precision);
  return t;
}

int trust_cutoff(const Spectrum& s, const Spectrum& cross, double rel_tol) {
  if (!(rel_tol >= 0.0)) throw ValidationError("trust_cutoff: rel_tol must be >= 0");
  const std::size_t m = std::min(s.values.size(), cross.values.size());
  int cutoff = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const BigFloat diff = abs(s.values[i] - cross.values[i]);
    if (diff > s.values[i] * BigFloat(rel_tol, s.precision)) break;
    cutoff = static_cast<int>(i + 1);
  }
  return cutoff;
}

BigFloat hilbert_inverse_norm(int n, mpfr_prec_t precision) {
  const HilbertInverse inv = hilbert_inverse_exact(n);
  const auto m = convert<BigFloat>(inv.inverse, [precision](const BigRational& q) { return BigFloat(q, precision); });
  return jacobi_eigen(m, precision).values.front();
}

}  // namespace illspec
