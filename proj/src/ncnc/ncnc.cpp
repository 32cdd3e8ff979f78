// SPDX-License-Identifier: Apache-2.0
#include "illspec/ncnc/ncnc.hpp"

#include "illspec/operators/legendre.hpp"
#include "illspec/spectra/eigen.hpp"
#include "illspec/util/errors.hpp"

namespace illspec {
namespace {

DenseMatrix<BigFloat> multiply(const DenseMatrix<BigFloat>& a, const DenseMatrix<BigFloat>& b, mpfr_prec_t p) {
  if (a.cols() != b.rows()) throw ValidationError("ncnc: dimension mismatch");
  DenseMatrix<BigFloat> c(a.rows(), b.cols(), BigFloat(p));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  }
  return c;
}

// A^T A.
DenseMatrix<BigFloat> gram_of_columns(const DenseMatrix<BigFloat>& a, mpfr_prec_t p) {
  DenseMatrix<BigFloat> g(a.cols(), a.cols(), BigFloat(p));
  for (std::size_t i = 0; i < a.cols(); ++i) {
    for (std::size_t j = i; j < a.cols(); ++j) {
      BigFloat s(p);
      for (std::size_t k = 0; k < a.rows(); ++k) s += a(k, i) * a(k, j);
      g(i, j) = s;
      g(j, i) = s;
    }
  }
  return g;
}

std::vector<BigFloat> apply(const DenseMatrix<BigFloat>& t, const std::vector<BigFloat>& x, mpfr_prec_t p) {
  std::vector<BigFloat> y(t.rows(), BigFloat(p));
  for (std::size_t i = 0; i < t.rows(); ++i)
    for (std::size_t k = 0; k < t.cols(); ++k) y[i] += t(i, k) * x[k];
  return y;
}

BigFloat norm2(const std::vector<BigFloat>& v, mpfr_prec_t p) {
  BigFloat s(p);
  for (const auto& x : v) s += x * x;
  return sqrt(s);
}

BigFloat with_slack(const BigFloat& x, mpfr_prec_t p) { return x * (BigFloat(1L, p) + resolution(p)); }

}  // namespace

Basis full_basis(int n, mpfr_prec_t precision) {
  if (n < 0) throw ValidationError("full_basis: negative dimension");
  Basis q(n, n, BigFloat(precision));
  for (int i = 0; i < n; ++i) q(i, i) = BigFloat(1L, precision);
  return q;
}

DenseMatrix<BigFloat> dha_section_factor(int n, mpfr_prec_t precision) {
  if (n < 1) throw ValidationError("dha_section_factor: N must be >= 1");
  const SurdMatrix ha = ha_on_legendre(n, n);
  DenseMatrix<BigFloat> t(n, n, BigFloat(precision));
  for (long j = 1; j <= n; ++j) {
    for (int i = 1; i <= n; ++i) {
      SurdValue v = ha.at(j, i);
      v.rational /= BigRational(j);
      t(j - 1, i - 1) = v.to_big_float(precision);
    }
  }
  return t;
}

NearNull near_null_direction(const DenseMatrix<BigFloat>& t, const Basis& q, const BigFloat& eps,
                             mpfr_prec_t p, Selection selection) {
  if (q.cols() == 0) throw ValidationError("near_null_direction: empty subspace");
  if (q.rows() != t.cols()) throw ValidationError("near_null_direction: basis and operator dimensions differ");
  if (!(eps > 0.0)) throw ValidationError("near_null_direction: eps must be positive");
  const DenseMatrix<BigFloat> tq = multiply(t, q, p);
  const EigenResult<BigFloat> eig = jacobi_eigen(gram_of_columns(tq, p), p, true);
  const std::size_t d = eig.values.size();
  const BigFloat limit = with_slack(eps * eps, p);

  std::size_t pick = d;
  if (selection == Selection::Minimizer) {
    if (eig.values.back() <= limit) pick = d - 1;
  } else {
    for (std::size_t k = 0; k < d; ++k) {
      if (eig.values[k] <= limit) {
        pick = k;
        break;
      }
    }
  }
  if (pick == d) {
    const BigFloat lo = eig.values.back();
    const BigFloat achieved = lo.sign() > 0 ? sqrt(lo) : BigFloat(p);
    throw ToleranceUnachievable("near_null_direction: smallest ||T y|| over the subspace is " +
                                    achieved.to_decimal(8) + " > eps = " + eps.to_decimal(8),
                                achieved.to_double());
  }
  const DenseMatrix<BigFloat>& z = *eig.vectors;
  NearNull out;
  out.y.assign(q.rows(), BigFloat(p));
  for (std::size_t i = 0; i < q.rows(); ++i)
    for (std::size_t k = 0; k < d; ++k) out.y[i] += q(i, k) * z(k, pick);
  const BigFloat tiny = sqrt(resolution(p));
  for (const auto& c : out.y) {
    if (abs(c) > tiny) {
      if (c.sign() < 0)
        for (auto& x : out.y) x = -x;
      break;
    }
  }
  out.residual = norm2(apply(t, out.y, p), p);
  out.complement = Basis(q.rows(), d - 1, BigFloat(p));
  std::size_t col = 0;
  for (std::size_t k = 0; k < d; ++k) {
    if (k == pick) continue;
    for (std::size_t i = 0; i < q.rows(); ++i) {
      BigFloat s(p);
      for (std::size_t m = 0; m < d; ++m) s += q(i, m) * z(m, k);
      out.complement(i, col) = s;
    }
    ++col;
  }
  return out;
}

NcncTrace build_compact_restriction(const DenseMatrix<BigFloat>& t, int n_max, mpfr_prec_t p, Selection selection) {
  if (n_max < 0) throw ValidationError("build_compact_restriction: n_max must be >= 0");
  NcncTrace tr;
  tr.t = t;
  tr.n_max = n_max;
  tr.precision = p;
  Basis q = full_basis(static_cast<int>(t.cols()), p);
  for (int n = 1; n <= n_max && q.cols() > 0; ++n) {
    const BigFloat eps = exp2i(-n, p);
    try {
      NearNull nn = near_null_direction(t, q, eps, p, selection);
      tr.steps.push_back({n, nn.residual, eps, true});
      tr.x.push_back(std::move(nn.y));
      q = std::move(nn.complement);
    } catch (const ToleranceUnachievable& e) {
      tr.unachievable_min = BigFloat(e.achieved(), p);
      break;
    }
  }
  tr.depth = static_cast<int>(tr.x.size());

  tr.orthonormality_defect = BigFloat(p);
  for (int i = 0; i < tr.depth; ++i) {
    for (int j = 0; j < tr.depth; ++j) {
      BigFloat s(p);
      for (std::size_t k = 0; k < t.cols(); ++k) s += tr.x[i][k] * tr.x[j][k];
      if (i == j) s -= BigFloat(1L, p);
      tr.orthonormality_defect = max(tr.orthonormality_defect, abs(s));
    }
  }

  std::vector<std::vector<BigFloat>> tx;
  for (const auto& x : tr.x) tx.push_back(apply(t, x, p));
  tr.increments.assign(tr.depth, {});
  for (int n = 1; n <= tr.depth; ++n) tr.increments[n - 1].assign(n - 1, BigFloat(p));
  for (int m = 1; m < tr.depth; ++m) {
    DenseMatrix<BigFloat> acc(t.rows(), t.cols(), BigFloat(p));
    for (int n = m + 1; n <= tr.depth; ++n) {
      BigFloat f(p);
      for (std::size_t i = 0; i < t.rows(); ++i) {
        for (std::size_t k = 0; k < t.cols(); ++k) {
          acc(i, k) += tx[n - 1][i] * tr.x[n - 1][k];
          f += acc(i, k) * acc(i, k);
        }
      }
      tr.increments[n - 1][m - 1] = sqrt(f);
    }
  }
  return tr;
}

bool NcncTrace::schedule_met() const {
  for (const auto& s : steps)
    if (!s.achieved || s.residual > with_slack(s.epsilon, precision)) return false;
  return true;
}

bool NcncTrace::increments_bounded() const {
  for (int n = 2; n <= depth; ++n) {
    for (int m = 1; m < n; ++m) {
      BigFloat sum(precision);
      for (int i = m + 1; i <= n; ++i) sum += steps[i - 1].residual;
      if (increments[n - 1][m - 1] > with_slack(sum, precision)) return false;
      if (sum > with_slack(exp2i(-m, precision), precision)) return false;
    }
  }
  return true;
}

nlohmann::json NcncTrace::to_json(bool include_vectors) const {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["precision"] = precision;
  j["n_max"] = n_max;
  j["depth"] = depth;
  j["orthonormality_defect"] = orthonormality_defect.to_decimal(6);
  j["schedule_met"] = schedule_met();
  j["increments_bounded"] = increments_bounded();
  j["unachievable_min"] = unachievable_min ? nlohmann::json(unachievable_min->to_decimal(10)) : nlohmann::json(nullptr);
  nlohmann::json st = nlohmann::json::array();
  for (const auto& s : steps) {
    st.push_back({{"n", s.n},
                  {"r_n", s.residual.to_decimal(12)},
                  {"epsilon_n", s.epsilon.to_decimal(12)},
                  {"achieved", s.achieved}});
  }
  j["steps"] = std::move(st);
  if (include_vectors) {
    nlohmann::json xs = nlohmann::json::array();
    for (const auto& x : this->x) {
      nlohmann::json col = nlohmann::json::array();
      for (const auto& c : x) col.push_back(c.to_hex());
      xs.push_back(std::move(col));
    }
    j["vectors"] = std::move(xs);
  }
  return j;
}

CompactWitness compact_product_witness(const NcncTrace& trace) {
  if (trace.depth < 1) throw ValidationError("compact_product_witness: trace depth must be >= 1");
  const mpfr_prec_t p = trace.precision;
  const std::size_t n = trace.t.cols();
  DenseMatrix<BigFloat> b(n, n, BigFloat(p));
  for (const auto& x : trace.x)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) b(i, k) += x[i] * x[k];
  CompactWitness w;
  const EigenResult<BigFloat> eb = jacobi_eigen(b, p);
  w.b_norm = eb.values.front();
  const BigFloat half(0.5, p);
  for (const auto& v : eb.values)
    if (v > half) ++w.rank;
  const DenseMatrix<BigFloat> tb = multiply(trace.t, b, p);
  const EigenResult<BigFloat> et = jacobi_eigen(gram_of_columns(tb, p), p);
  w.tb_norm = et.values.front().sign() > 0 ? sqrt(et.values.front()) : BigFloat(p);
  BigFloat rmax(p);
  w.sum_bound = BigFloat(p);
  for (const auto& s : trace.steps) {
    rmax = max(rmax, s.residual);
    w.sum_bound += s.residual;
  }
  w.sqrt_n_bound = rmax * sqrt(BigFloat(static_cast<long>(trace.depth), p));
  w.within_sum_bound = w.tb_norm <= with_slack(w.sum_bound, p);
  return w;
}

nlohmann::json CompactWitness::to_json() const {
  return {{"rank", rank},
          {"b_norm", b_norm.to_decimal(12)},
          {"tb_norm", tb_norm.to_decimal(12)},
          {"sqrt_n_bound", sqrt_n_bound.to_decimal(12)},
          {"sum_bound", sum_bound.to_decimal(12)},
          {"within_sum_bound", within_sum_bound}};
}

}  // namespace illspec
