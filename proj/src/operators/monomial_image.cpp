// SPDX-License-Identifier: Apache-2.0
#include "illspec/operators/monomial_image.hpp"

#include "illspec/util/errors.hpp"

namespace illspec {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

const RationalPoly& as_poly(const MonomialImage& image, const OperatorId& op) {
  if (const auto* p = std::get_if<PolynomialImage>(&image)) return p->poly;
  throw ValidationError(op.name() + ": no closed-form action on " + describe(image));
}

const SequenceImage& as_sequence(const MonomialImage& image, const OperatorId& op) {
  if (const auto* s = std::get_if<SequenceImage>(&image)) return *s;
  throw ValidationError(op.name() + " expects a sequence, got " + describe(image));
}

// p(t) / t, valid when p(0) = 0.
RationalPoly divide_by_t(const RationalPoly& p) {
  if (!p.coeff(0).is_zero()) throw ValidationError("divide_by_t: nonzero constant term");
  std::vector<BigRational> c;
  for (int k = 1; k <= p.degree(); ++k) c.push_back(p.coeff(k));
  return RationalPoly(std::move(c));
}

RationalPoly multiply_by_t(const RationalPoly& p) {
  std::vector<BigRational> c(1);
  for (int k = 0; k <= p.degree(); ++k) c.push_back(p.coeff(k));
  return RationalPoly(std::move(c));
}

}  // namespace

MonomialImage apply_to_monomial(const OperatorId& op, int k) {
  if (op.domain() == Space::Seq) {
    if (k < 1) throw ValidationError(op.name() + ": unit vector index must be >= 1");
  } else if (k < 0) {
    throw ValidationError(op.name() + ": monomial degree must be >= 0");
  }
  const long kk = k;
  switch (op.tag) {
    case OpTag::J:
      return PolynomialImage{RationalPoly::monomial(k + 1, BigRational(1, kk + 1))};
    case OpTag::Jstar:
      return PolynomialImage{RationalPoly::constant(BigRational(1, kk + 1)) -
                             RationalPoly::monomial(k + 1, BigRational(1, kk + 1))};
    case OpTag::C:
      return PolynomialImage{RationalPoly::monomial(k, BigRational(1, kk + 1))};
    case OpTag::Cstar:
      if (k == 0) return NegLogImage{};
      return PolynomialImage{RationalPoly::constant(BigRational(1, kk)) -
                             RationalPoly::monomial(k, BigRational(1, kk))};
    case OpTag::Ha:
      return SequenceImage{[kk](long j) { return BigRational(1, j + kk); },
                           "1/(j+" + std::to_string(k) + ")"};
    case OpTag::D:
      return SequenceImage{[kk](long j) { return j == kk ? BigRational(1, kk) : BigRational(0); },
                           "e^(" + std::to_string(k) + ")/" + std::to_string(k)};
    case OpTag::Hastar:
      return PolynomialImage{RationalPoly::monomial(k - 1)};
    case OpTag::Mult:
      return PolynomialImage{RationalPoly::monomial(k + 1)};
  }
  throw ValidationError("apply_to_monomial: unknown operator");
}

MonomialImage apply(const OperatorId& op, const MonomialImage& image) {
  switch (op.tag) {
    case OpTag::J:
      return PolynomialImage{as_poly(image, op).antiderivative()};
    case OpTag::Jstar: {
      const RationalPoly F = as_poly(image, op).antiderivative();
      return PolynomialImage{RationalPoly::constant(F(BigRational(1))) - F};
    }
    case OpTag::C:
      return PolynomialImage{divide_by_t(as_poly(image, op).antiderivative())};
    case OpTag::Cstar: {
      const RationalPoly& p = as_poly(image, op);
      const BigRational c0 = p.coeff(0);
      const RationalPoly rest = divide_by_t(p - RationalPoly::constant(c0));
      const RationalPoly F = rest.antiderivative();
      RationalPoly poly = RationalPoly::constant(F(BigRational(1))) - F;
      if (c0.is_zero()) return PolynomialImage{std::move(poly)};
      if (poly.is_zero()) {
        if (c0 == BigRational(1)) return NegLogImage{};
      }
      throw ValidationError("Cstar: image mixes -ln t with a polynomial; not representable");
    }
    case OpTag::Mult:
      return PolynomialImage{multiply_by_t(as_poly(image, op))};
    case OpTag::Ha: {
      if (std::holds_alternative<NegLogImage>(image)) {
        // int_0^1 t^(j-1) (-ln t) dt = 1/j^2
        return SequenceImage{[](long j) { return BigRational(1, j * j); }, "1/j^2"};
      }
      RationalPoly p = as_poly(image, op);
      return SequenceImage{[p](long j) { return p.moment(static_cast<int>(j - 1)); },
                           "Ha[" + p.to_string() + "]"};
    }
    case OpTag::D: {
      const SequenceImage& s = as_sequence(image, op);
      auto term = s.term;
      return SequenceImage{[term](long j) { return term(j) / BigRational(j); },
                           "(" + s.formula + ")/j"};
    }
    case OpTag::Hastar:
      throw ValidationError("Hastar: only unit vectors are supported as input");
  }
  throw ValidationError("apply: unknown operator");
}

MonomialImage apply_composition(const CompositionSpec& spec, int k) {
  const auto& f = spec.factors();
  MonomialImage image = apply_to_monomial(f.back(), k);
  for (auto it = f.rbegin() + 1; it != f.rend(); ++it) image = illspec::apply(*it, image);
  return image;
}

BigRational l2_inner(const MonomialImage& a, const MonomialImage& b) {
  return std::visit(
      Overloaded{
          [](const PolynomialImage& p, const PolynomialImage& q) { return inner(p.poly, q.poly); },
          [](const PolynomialImage& p, const NegLogImage&) {
            BigRational s;
            for (int m = 0; m <= p.poly.degree(); ++m) {
              s += p.poly.coeff(m) / BigRational(static_cast<long>(m + 1) * (m + 1));
            }
            return s;
          },
          [](const NegLogImage&, const PolynomialImage& p) {
            BigRational s;
            for (int m = 0; m <= p.poly.degree(); ++m) {
              s += p.poly.coeff(m) / BigRational(static_cast<long>(m + 1) * (m + 1));
            }
            return s;
          },
          [](const NegLogImage&, const NegLogImage&) { return BigRational(2); },
          [](const auto&, const auto&) -> BigRational {
            throw ValidationError("l2_inner: sequence images are not L2(0,1) functions");
          }},
      a, b);
}

BigRational coordinate(const MonomialImage& image, long j) {
  if (j < 1) throw ValidationError("coordinate: index must be >= 1");
  if (const auto* s = std::get_if<SequenceImage>(&image)) return s->term(j);
  throw ValidationError("coordinate: image is not a sequence");
}

std::string describe(const MonomialImage& image) {
  return std::visit(Overloaded{[](const PolynomialImage& p) { return p.poly.to_string(); },
                               [](const NegLogImage&) { return std::string("-ln t"); },
                               [](const SequenceImage& s) { return "j -> " + s.formula; }},
                    image);
}

IdentityReport verify_dha_identity(int k_max, long j_max) {
  if (k_max < 0 || j_max < 1) throw ValidationError("verify_dha_identity: need k_max >= 0, j_max >= 1");
  IdentityReport report;
  for (int k = 0; k <= k_max; ++k) {
    const MonomialImage left = illspec::apply(kHa, apply_to_monomial(kCstar, k));
    const MonomialImage right = illspec::apply(kD, apply_to_monomial(kHa, k));
    for (long j = 1; j <= j_max; ++j) {
      const BigRational l = coordinate(left, j);
      const BigRational r = coordinate(right, j);
      const BigRational expected = k == 0 ? BigRational(1, j * j) : BigRational(1, j * (j + k));
      ++report.checks;
      if (!(l == r && l == expected) && report.passed) {
        report.passed = false;
        report.first_k = k;
        report.first_j = j;
        report.detail = "k=" + std::to_string(k) + " j=" + std::to_string(j) + ": Ha C* gives " +
                        l.to_string() + ", D Ha gives " + r.to_string() + ", expected " +
                        expected.to_string();
      }
    }
  }
  return report;
}

BigRational dha_trace_partial(long n) {
  BigRational s;
  for (long j = 1; j <= n; ++j) s += BigRational(1, j * j * (2 * j - 1));
  return s;
}

SeriesResult hs_norm_squared_dha(mpfr_prec_t precision) {
  const mpfr_prec_t work = precision + 32;
  BigFloat v = 4L * ln2(work) - zeta_even(2, work);
  return {v.rounded_to(precision), 0, resolution(precision)};
}

SeriesResult hs_norm_squared_dha_series(const BigFloat& tol) {
  const mpfr_prec_t p = tol.precision();
  return sum_with_tail(
      [p](std::int64_t j) {
        BigFloat t(1L, p);
        t /= j;
        t /= j;
        t /= (2 * j - 1);
        return t;
      },
      [p](std::int64_t J) {
        if (J == 0) return BigFloat(1L, p) * 2L;  // total is below 2
        BigFloat m(1L, p);
        m /= 2 * J;
        m /= J;
        return m;
      },
      tol);
}

}  // namespace illspec
