// SPDX-License-Identifier: Apache-2.0
// Galerkin Gram matrices on piecewise constants.
//
// With h = 1/N and cell l = [a_l, b_l], (T phi_l)(s) = sqrt(N) r_l(s) on the
// cell and sqrt(N) q_l(s) on [b_l, 1] (zero before a_l). The tail of column k
// is affine in the cell midpoint m_k, q_k = A + m_k B, so for k < l
//   G_kl = U_l + m_k V_l,
//   U_l = N [int_cell w A r_l + int_{b_l}^1 w A q_l],  V_l likewise with B,
// and G_ll = N [int_cell w r_l^2 + int_{b_l}^1 w q_l^2].
#include <bit>

#include "illspec/discretize/gram.hpp"
#include "illspec/operators/polynomial.hpp"
#include "illspec/util/errors.hpp"

namespace illspec {
namespace {

enum class Kind { J, J2, CJ, MJ };

Kind classify(const CompositionSpec& op) {
  if (op.same_operator(compositions::j())) return Kind::J;
  if (op.same_operator(compositions::j2())) return Kind::J2;
  if (op.same_operator(compositions::cj())) return Kind::CJ;
  if (op.same_operator(compositions::mj())) return Kind::MJ;
  throw ValidationError("galerkin_gram: unsupported composition " + op.product_string() +
                        " (expected J, C*J, J^2 or M_t*J)");
}

RationalPoly lin(const BigRational& c0, const BigRational& c1) { return RationalPoly({c0, c1}); }

struct CellPolys {
  RationalPoly ramp, tail, a, b;
};

// s - x as a polynomial in s.
RationalPoly shift(const BigRational& x) { return lin(-x, BigRational(1)); }

CellPolys polys(Kind kind, long l, long n) {
  const BigRational h(1, n);
  const BigRational a(l - 1, n);
  const BigRational m(2 * l - 1, 2 * n);
  const RationalPoly s = RationalPoly::monomial(1);
  switch (kind) {
    case Kind::J:
      return {shift(a), RationalPoly::constant(h), RationalPoly::constant(h), RationalPoly()};
    case Kind::J2:
    case Kind::CJ:
      return {BigRational(1, 2) * (shift(a) * shift(a)), h * shift(m), h * s,
              RationalPoly::constant(-h)};
    case Kind::MJ:
      return {s * shift(a), h * s, h * s, RationalPoly()};
  }
  throw ValidationError("galerkin_gram: unknown kind");
}

// int_alpha^beta p(s)/s^2 ds at precision `work`.
BigFloat integrate_inv_sq(const RationalPoly& p, const BigRational& alpha, const BigRational& beta,
                          mpfr_prec_t work) {
  BigFloat acc(work);
  if (p.is_zero()) return acc;
  if (alpha.is_zero() && !(p.coeff(0).is_zero() && p.coeff(1).is_zero())) {
    throw NumericalContractError("galerkin_gram: divergent weighted integral at s = 0");
  }
  const BigFloat fa(alpha, work);
  const BigFloat fb(beta, work);
  if (!p.coeff(0).is_zero()) {
    acc += BigFloat(p.coeff(0) * (BigRational(1) / alpha - BigRational(1) / beta), work);
  }
  if (!p.coeff(1).is_zero()) acc += BigFloat(p.coeff(1), work) * log(fb / fa);
  for (int k = 2; k <= p.degree(); ++k) {
    if (p.coeff(k).is_zero()) continue;
    const BigRational d = pow(beta, static_cast<unsigned long>(k - 1)) -
                          pow(alpha, static_cast<unsigned long>(k - 1));
    acc += BigFloat(p.coeff(k) * d / BigRational(k - 1), work);
  }
  return acc;
}

template <class T>
struct Columns {
  std::vector<T> u, v, d;
  std::vector<T> mid;
};

Columns<BigRational> exact_columns(Kind kind, long n) {
  Columns<BigRational> c;
  const BigRational one(1);
  const BigRational nn(n);
  for (long l = 1; l <= n; ++l) {
    const BigRational a(l - 1, n), b(l, n);
    const CellPolys p = polys(kind, l, n);
    c.u.push_back(nn * ((p.a * p.ramp).integrate(a, b) + (p.a * p.tail).integrate(b, one)));
    c.v.push_back(nn * ((p.b * p.ramp).integrate(a, b) + (p.b * p.tail).integrate(b, one)));
    c.d.push_back(nn * ((p.ramp * p.ramp).integrate(a, b) + (p.tail * p.tail).integrate(b, one)));
    c.mid.push_back(BigRational(2 * l - 1, 2 * n));
  }
  return c;
}

Columns<BigFloat> weighted_columns(Kind kind, long n, mpfr_prec_t work) {
  Columns<BigFloat> c;
  const BigRational one(1);
  for (long l = 1; l <= n; ++l) {
    const BigRational a(l - 1, n), b(l, n);
    const CellPolys p = polys(kind, l, n);
    auto both = [&](const RationalPoly& on_cell, const RationalPoly& on_tail) {
      BigFloat s = integrate_inv_sq(on_cell, a, b, work) + integrate_inv_sq(on_tail, b, one, work);
      s *= n;
      return s;
    };
    c.u.push_back(both(p.a * p.ramp, p.a * p.tail));
    c.v.push_back(both(p.b * p.ramp, p.b * p.tail));
    c.d.push_back(both(p.ramp * p.ramp, p.tail * p.tail));
    c.mid.emplace_back(BigRational(2 * l - 1, 2 * n), work);
  }
  return c;
}

Columns<BigFloat> to_float(const Columns<BigRational>& c, mpfr_prec_t work) {
  Columns<BigFloat> out;
  for (std::size_t i = 0; i < c.u.size(); ++i) {
    out.u.emplace_back(c.u[i], work);
    out.v.emplace_back(c.v[i], work);
    out.d.emplace_back(c.d[i], work);
    out.mid.emplace_back(c.mid[i], work);
  }
  return out;
}

template <class T, class Fn>
auto fill(const Columns<T>& c, long n, Fn&& finish) {
  using R = decltype(finish(c.u[0]));
  DenseMatrix<R> g(n, n, finish(c.d[0]));
  for (long l = 0; l < n; ++l) {
    g(l, l) = finish(c.d[l]);
    for (long k = 0; k < l; ++k) {
      g(k, l) = finish(c.u[l] + c.mid[k] * c.v[l]);
      g(l, k) = g(k, l);
    }
  }
  return g;
}

}  // namespace

GramMatrix galerkin_gram(const CompositionSpec& op, int n, Arithmetic arithmetic, mpfr_prec_t precision) {
  if (n < 1) throw ValidationError("galerkin_gram: N must be >= 1");
  const Kind kind = classify(op);
  if (arithmetic == Arithmetic::Double) precision = 53;
  if (precision < 2) throw ValidationError("galerkin_gram: precision must be >= 2 bits");
  if (kind == Kind::CJ && arithmetic == Arithmetic::Exact) arithmetic = Arithmetic::Float;

  if (arithmetic == Arithmetic::Exact) {
    Columns<BigRational> c = exact_columns(kind, n);
    auto g = fill(c, n, [](const BigRational& x) { return x; });
    return GramMatrix{std::move(g), op, Scheme::Galerkin, n, std::nullopt, std::nullopt};
  }

  // Expanding (s - a)^k about s = 0 cancels about 6 log2(N) bits per entry.
  const int bits_n = std::bit_width(static_cast<unsigned>(n));
  const mpfr_prec_t work = precision + 32 + 6 * bits_n;
  const Columns<BigFloat> c =
      kind == Kind::CJ ? weighted_columns(kind, n, work) : to_float(exact_columns(kind, n), work);
  if (arithmetic == Arithmetic::Double) {
    auto g = fill(c, n, [](const BigFloat& x) { return x.to_double(); });
    return GramMatrix{std::move(g), op, Scheme::Galerkin, n, 53, std::nullopt};
  }
  auto g = fill(c, n, [precision](const BigFloat& x) { return x.rounded_to(precision); });
  return GramMatrix{std::move(g), op, Scheme::Galerkin, n, precision, std::nullopt};
}

}  // namespace illspec
