// SPDX-License-Identifier: Apache-2.0
#include "illspec/spectra/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "illspec/kernels/kernels.hpp"
#include "illspec/util/errors.hpp"

namespace illspec {
namespace {

constexpr int kMaxSweeps = 100;

template <class T>
void check_symmetric(const DenseMatrix<T>& a, const char* who) {
  if (!a.is_square()) throw ValidationError(std::string(who) + ": matrix is not square");
  if (!a.is_symmetric()) throw ValidationError(std::string(who) + ": matrix is not symmetric");
}

// Sort eigenpairs descending; ties keep the original order.
template <class T>
void sort_descending(EigenResult<T>& r) {
  const std::size_t n = r.values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return r.values[i] > r.values[j]; });
  std::vector<T> v;
  v.reserve(n);
  for (std::size_t i : order) v.push_back(r.values[i]);
  r.values = std::move(v);
  if (r.vectors) {
    DenseMatrix<T> out = *r.vectors;
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t i = 0; i < n; ++i) out(i, c) = (*r.vectors)(i, order[c]);
    r.vectors = std::move(out);
  }
}

}  // namespace

EigenResult<BigFloat> jacobi_eigen(const DenseMatrix<BigFloat>& input, mpfr_prec_t prec, bool want_vectors) {
  check_symmetric(input, "jacobi_eigen");
  const std::size_t n = input.rows();
  EigenResult<BigFloat> r;
  if (n == 0) return r;

  DenseMatrix<BigFloat> a = convert<BigFloat>(input, [prec](const BigFloat& x) { return x.rounded_to(prec); });
  DenseMatrix<BigFloat> v;
  if (want_vectors) {
    v = DenseMatrix<BigFloat>(n, n, BigFloat(prec));
    for (std::size_t i = 0; i < n; ++i) v(i, i) = BigFloat(1L, prec);
  }
  const BigFloat res = resolution(prec);
  const BigFloat skip = res / static_cast<long>(n);
  BigFloat norm2(prec);
  for (const auto& x : a.data()) norm2 += x * x;

  BigFloat theta(prec), t(prec), c(prec), s(prec), tau(prec), g(prec), h(prec);
  const BigFloat one(1L, prec);
  bool converged = false;
  while (!converged) {
    if (r.sweeps == kMaxSweeps) {
      throw NumericalContractError("jacobi_eigen: no convergence after " + std::to_string(kMaxSweeps) + " sweeps");
    }
    ++r.sweeps;
    converged = true;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const BigFloat& apq = a(p, q);
        if (apq.is_zero()) continue;
        if (abs(apq) <= skip * sqrt(abs(a(p, p) * a(q, q)))) continue;
        converged = false;
        ++r.rotations;
        theta = (a(q, q) - a(p, p)) / (apq * 2L);
        t = one / (abs(theta) + sqrt(theta * theta + one));
        if (theta.sign() < 0) t = -t;
        c = one / sqrt(t * t + one);
        s = t * c;
        tau = s / (one + c);
        const BigFloat shift = t * apq;
        a(p, p) -= shift;
        a(q, q) += shift;
        a(p, q) = BigFloat(prec);
        a(q, p) = BigFloat(prec);
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          g = a(k, p);
          h = a(k, q);
          a(k, p) = g - s * (h + g * tau);
          a(k, q) = h + s * (g - h * tau);
          a(p, k) = a(k, p);
          a(q, k) = a(k, q);
        }
        if (want_vectors) {
          for (std::size_t k = 0; k < n; ++k) {
            g = v(k, p);
            h = v(k, q);
            v(k, p) = g - s * (h + g * tau);
            v(k, q) = h + s * (g - h * tau);
          }
        }
      }
    }
  }
  BigFloat off2(prec);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) off2 += a(i, j) * a(i, j);
  if (off2 > res * res * norm2) {
    throw NumericalContractError("jacobi_eigen: off-diagonal norm above 2^-(p-g) ||A||_F after convergence");
  }
  for (std::size_t i = 0; i < n; ++i) r.values.push_back(a(i, i));
  if (want_vectors) r.vectors = std::move(v);
  sort_descending(r);
  return r;
}

EigenResult<double> jacobi_eigen(const DenseMatrix<double>& input, bool want_vectors) {
  check_symmetric(input, "jacobi_eigen");
  const std::size_t n = input.rows();
  EigenResult<double> r;
  if (n == 0) return r;
  DenseMatrix<double> a = input;
  // Eigenvectors are kept as rows of V^T so the rotation kernel sees contiguous data.
  DenseMatrix<double> vt;
  if (want_vectors) {
    vt = DenseMatrix<double>(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) vt(i, i) = 1.0;
  }
  const double eps = std::ldexp(1.0, -52);
  const double skip = eps / static_cast<double>(n);
  const auto& kt = kernels::active();
  bool converged = false;
  while (!converged) {
    if (r.sweeps == kMaxSweeps) throw NumericalContractError("jacobi_eigen(double): no convergence");
    ++r.sweeps;
    converged = true;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0 || std::abs(apq) <= skip * std::sqrt(std::abs(a(p, p) * a(q, q)))) continue;
        converged = false;
        ++r.rotations;
        const double app = a(p, p), aqq = a(q, q);
        const double theta = (aqq - app) / (2.0 * apq);
        double t = 1.0 / (std::abs(theta) + std::hypot(theta, 1.0));
        if (theta < 0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // Rows p and q hold a_pk and a_qk = a_kp and a_kq; rotate them, then
        // restore the 2x2 block and mirror into the columns.
        kt.rotate(&a(p, 0), &a(q, 0), c, s, n);
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          a(k, p) = a(p, k);
          a(k, q) = a(q, k);
        }
        if (want_vectors) kt.rotate(&vt(p, 0), &vt(q, 0), c, s, n);
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) r.values.push_back(a(i, i));
  if (want_vectors) {
    DenseMatrix<double> v(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) v(i, j) = vt(j, i);
    r.vectors = std::move(v);
  }
  sort_descending(r);
  return r;
}

EigenResult<double> tridiagonal_ql_eigen(const DenseMatrix<double>& input) {
  check_symmetric(input, "tridiagonal_ql_eigen");
  const std::size_t n = input.rows();
  EigenResult<double> r;
  if (n == 0) return r;
  DenseMatrix<double> a = input;
  std::vector<double> d(n), e(n, 0.0);
  std::vector<double> v(n), p(n), w(n);
  const auto& kt = kernels::active();

  // Householder on row k eliminates a(k, k+2..); the trailing block is
  // updated as B -= v w^T + w v^T with w = p - (beta/2)(v^T p) v, p = beta B v.
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t m = n - k - 1;
    const double* x = &a(k, k + 1);
    double scale = 0.0;
    for (std::size_t i = 0; i < m; ++i) scale = std::max(scale, std::abs(x[i]));
    d[k] = a(k, k);
    if (scale == 0.0) {
      e[k] = 0.0;
      continue;
    }
    double sigma = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      v[i] = x[i] / scale;
      sigma += v[i] * v[i];
    }
    const double alpha = -std::copysign(std::sqrt(sigma), v[0]);
    const double v0 = v[0];
    v[0] -= alpha;
    const double vtv = sigma - v0 * v0 + v[0] * v[0];
    e[k] = alpha * scale;
    if (vtv == 0.0) continue;
    const double beta = 2.0 / vtv;
    for (std::size_t i = 0; i < m; ++i) p[i] = beta * kt.dot(&a(k + 1 + i, k + 1), v.data(), m);
    const double kappa = 0.5 * beta * kt.dot(v.data(), p.data(), m);
    for (std::size_t i = 0; i < m; ++i) w[i] = p[i] - kappa * v[i];
    for (std::size_t i = 0; i < m; ++i) kt.axpy2(&a(k + 1 + i, k + 1), -v[i], w.data(), -w[i], v.data(), m);
  }
  if (n >= 2) {
    d[n - 2] = a(n - 2, n - 2);
    e[n - 2] = a(n - 2, n - 1);
  }
  d[n - 1] = a(n - 1, n - 1);
  e[n - 1] = 0.0;

  // Implicit QL with Wilkinson-type shifts on (d, e); e[i] couples i and i+1.
  const double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (++iter > 60) throw NumericalContractError("tridiagonal_ql_eigen: no convergence");
        ++r.rotations;
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double rr = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(rr, g));
        double s = 1.0, c = 1.0, pp = 0.0;
        bool underflow = false;
        for (std::size_t i = m; i-- > l;) {
          const double f = s * e[i];
          const double b = c * e[i];
          rr = std::hypot(f, g);
          e[i + 1] = rr;
          if (rr == 0.0) {
            d[i + 1] -= pp;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / rr;
          c = g / rr;
          g = d[i + 1] - pp;
          rr = (d[i] - g) * s + 2.0 * c * b;
          pp = s * rr;
          d[i + 1] = g + pp;
          g = c * rr - b;
        }
        if (underflow) continue;
        d[l] -= pp;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  r.values = std::move(d);
  r.sweeps = 1;
  sort_descending(r);
  return r;
}

EigenResult<double> symmetric_eigen(const DenseMatrix<double>& a) {
  return a.rows() <= kDoubleJacobiMaxN ? jacobi_eigen(a, false) : tridiagonal_ql_eigen(a);
}

}  // namespace illspec
