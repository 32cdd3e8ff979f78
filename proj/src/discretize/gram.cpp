// SPDX-License-Identifier: Apache-2.0
#include "illspec/discretize/gram.hpp"

#include <type_traits>

#include "illspec/numerics/special.hpp"
#include "illspec/util/errors.hpp"

namespace illspec {
namespace {

BigFloat to_bf(const BigRational& q, mpfr_prec_t p) { return BigFloat(q, p); }
BigFloat to_bf(const BigFloat& x, mpfr_prec_t p) { return x.rounded_to(p); }
BigFloat to_bf(double x, mpfr_prec_t p) { return BigFloat(x, p); }

void require_positive_n(int n, const char* who) {
  if (n < 1) throw ValidationError(std::string(who) + ": N must be >= 1");
}

}  // namespace

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::LeftSection: return "left";
    case Scheme::RightMidpoint: return "right";
    case Scheme::Galerkin: return "galerkin";
  }
  return "?";
}

Scheme parse_scheme(std::string_view s) {
  if (s == "left" || s == "LeftSection") return Scheme::LeftSection;
  if (s == "right" || s == "RightMidpoint") return Scheme::RightMidpoint;
  if (s == "galerkin" || s == "Galerkin") return Scheme::Galerkin;
  throw ValidationError("unknown scheme '" + std::string(s) + "' (expected left|right|galerkin)");
}

DenseMatrix<BigFloat> GramMatrix::to_big_float(mpfr_prec_t p) const {
  return std::visit(
      [p](const auto& m) {
        using T = std::decay_t<decltype(m(0, 0))>;
        return convert<BigFloat>(m, [p](const T& x) { return to_bf(x, p); });
      },
      entries);
}

DenseMatrix<double> GramMatrix::to_double() const {
  return std::visit(
      [](const auto& m) {
        using T = std::decay_t<decltype(m(0, 0))>;
        return convert<double>(m, [](const T& x) {
          if constexpr (std::is_same_v<T, double>) {
            return x;
          } else {
            return x.to_double();
          }
        });
      },
      entries);
}

BigFloat GramMatrix::trace(mpfr_prec_t p) const {
  if (is_exact()) return BigFloat(exact_trace(*this), p);
  const DenseMatrix<BigFloat> m = to_big_float(p + 32);
  BigFloat s(p + 32);
  for (std::size_t i = 0; i < m.rows(); ++i) s += m(i, i);
  return s.rounded_to(p);
}

bool GramMatrix::is_symmetric() const {
  return std::visit([](const auto& m) { return m.is_symmetric(); }, entries);
}

BigRational exact_trace(const GramMatrix& g) {
  const auto* m = std::get_if<DenseMatrix<BigRational>>(&g.entries);
  if (!m) throw ValidationError("exact_trace: Gram matrix is not exact");
  BigRational s;
  for (std::size_t i = 0; i < m->rows(); ++i) s += (*m)(i, i);
  return s;
}

bool is_d_ha(const CompositionSpec& op) {
  return op.same_operator(compositions::d_ha()) || op.same_operator(compositions::ha_cstar());
}

bool is_ha_j(const CompositionSpec& op) { return op.same_operator(compositions::ha_j()); }

bool HilbertSection::is_hankel() const {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i + 1 < n && j > 0 && !(entries(i, j) == entries(i + 1, j - 1))) return false;
  return true;
}

HilbertSection hilbert_section(int n) {
  require_positive_n(n, "hilbert_section");
  HilbertSection h{DenseMatrix<BigRational>(n, n), n};
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) h.entries(i - 1, j - 1) = BigRational(1, i + j - 1);
  return h;
}

GramMatrix left_gram(const CompositionSpec& op, int n) {
  require_positive_n(n, "left_gram");
  DenseMatrix<BigRational> g(n, n);
  if (is_d_ha(op)) {
    for (long i = 1; i <= n; ++i)
      for (long j = 1; j <= n; ++j) g(i - 1, j - 1) = BigRational(1, i * j * (i + j - 1));
  } else if (is_ha_j(op)) {
    for (long i = 1; i <= n; ++i)
      for (long j = 1; j <= n; ++j)
        g(i - 1, j - 1) = BigRational(1, j * (i + 1)) - BigRational(1, j * (j + 1) * (i + j + 1));
    if (!g.is_symmetric()) throw NumericalContractError("left_gram(Ha*J): closed form is not symmetric");
  } else if (op.same_operator(compositions::hilbert())) {
    g = hilbert_section(n).entries;
  } else {
    throw ValidationError("left_gram: unsupported composition " + op.product_string() +
                          " (expected D*Ha, Ha*J or HN)");
  }
  return GramMatrix{std::move(g), op, Scheme::LeftSection, n, std::nullopt, std::nullopt};
}

GramMatrix right_gram(const CompositionSpec& op, int n, const BigFloat& tol) {
  require_positive_n(n, "right_gram");
  if (!(tol > 0.0)) throw ValidationError("right_gram: tolerance must be positive");
  const bool dha = is_d_ha(op);
  if (!dha && !is_ha_j(op)) {
    throw ValidationError("right_gram: unsupported composition " + op.product_string() +
                          " (expected D*Ha or Ha*J)");
  }
  const mpfr_prec_t p = tol.precision();
  const mpfr_prec_t work = p + 32;
  if (tol < resolution(p, 0) * 4L) {
    throw ToleranceUnachievable("right_gram: tolerance below the resolution of " +
                                    std::to_string(p) + "-bit arithmetic",
                                tol.to_double());
  }
  std::vector<BigFloat> t;
  for (long k = 1; k <= n; ++k) t.emplace_back(BigRational(2 * k - 1, 2L * n), work);

  DenseMatrix<BigFloat> g(n, n, BigFloat(p));
  if (dha) {
    // Entry = Li2(x)/(x N); truncation tol * x * N on Li2 keeps the entry within tol.
    for (int k = 0; k < n; ++k) {
      for (int l = k; l < n; ++l) {
        const BigFloat x = t[k] * t[l];
        const SeriesResult li = dilog(x, (tol * x * static_cast<long>(n)).rounded_to(work));
        BigFloat v = li.value / x;
        v /= n;
        g(k, l) = v.rounded_to(p);
        g(l, k) = g(k, l);
      }
    }
  } else {
    const BigFloat zeta2 = zeta_even(2, work);
    const BigFloat dilog_tol = (tol * static_cast<long>(n) / 3L).rounded_to(work);
    std::vector<BigFloat> li;
    for (int k = 0; k < n; ++k) li.push_back(dilog(t[k], dilog_tol).value);
    for (int k = 0; k < n; ++k) {
      for (int l = k; l < n; ++l) {
        const BigFloat lkl = dilog(t[k] * t[l], dilog_tol).value;
        BigFloat v = zeta2 - li[k] - li[l] + lkl;
        v /= n;
        g(k, l) = v.rounded_to(p);
        g(l, k) = g(k, l);
      }
    }
  }
  return GramMatrix{std::move(g), op, Scheme::RightMidpoint, n, p, tol};
}

HilbertInverse hilbert_inverse_exact(int n) {
  if (n < 1 || n > kMaxExactHilbert) {
    throw ValidationError("hilbert_inverse_exact: N=" + std::to_string(n) + " outside [1, " +
                          std::to_string(kMaxExactHilbert) + "]");
  }
  DenseMatrix<BigRational> a = hilbert_section(n).entries;
  DenseMatrix<BigRational> inv(n, n);
  for (int i = 0; i < n; ++i) inv(i, i) = 1;
  // Gauss-Jordan; H_N is positive definite so the diagonal pivots never vanish,
  // but pick the first nonzero pivot anyway.
  for (int c = 0; c < n; ++c) {
    int piv = c;
    while (piv < n && a(piv, c).is_zero()) ++piv;
    if (piv == n) throw NumericalContractError("hilbert_inverse_exact: singular section");
    if (piv != c) {
      for (int j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(c, j));
        std::swap(inv(piv, j), inv(c, j));
      }
    }
    const BigRational d = a(c, c);
    for (int j = 0; j < n; ++j) {
      a(c, j) /= d;
      inv(c, j) /= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || a(r, c).is_zero()) continue;
      const BigRational f = a(r, c);
      for (int j = 0; j < n; ++j) {
        a(r, j) -= f * a(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  bool integral = true;
  for (const auto& x : inv.data()) integral = integral && x.is_integer();
  return HilbertInverse{std::move(inv), n, integral};
}

}  // namespace illspec
