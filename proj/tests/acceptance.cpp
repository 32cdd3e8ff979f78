// SPDX-License-Identifier: Apache-2.0
// Acceptance suite: one PASS/FAIL line per criterion.
// Usage: illspec_acceptance [criterion ...]   (default: all of 1..8)
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "illspec/analysis/analysis.hpp"
#include "illspec/discretize/gram.hpp"
#include "illspec/figures/figures.hpp"
#include "illspec/ncnc/ncnc.hpp"
#include "illspec/operators/monomial_image.hpp"
#include "illspec/spectra/eigen.hpp"
#include "illspec/spectra/spectrum.hpp"

using namespace illspec;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (!pass) detail << "; ";
      detail << what;
      pass = false;
    }
  }
};

constexpr mpfr_prec_t kP = 512;

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

Outcome identity() {
  Outcome o;
  const IdentityReport r = verify_dha_identity(50, 50);
  o.require(r.passed, "identity fails: " + r.detail);
  o.require(r.checks == 51 * 50, "expected 2550 checks, ran " + std::to_string(r.checks));
  if (o.pass) o.detail << r.checks << " exact checks";
  return o;
}

Outcome trace_chain() {
  Outcome o;
  for (int n = 1; n <= 20; ++n) {
    const BigRational tr = exact_trace(left_gram(compositions::d_ha(), n));
    o.require(tr == dha_trace_partial(n), "trace mismatch at N=" + std::to_string(n));
  }
  const SeriesResult hs = hs_norm_squared_dha(kP);
  o.require(hs.tail_bound <= BigFloat(1e-30, kP), "closed-form tail allowance above 1e-30");
  // Direct summation agrees with the closed form to its own tail bound.
  const SeriesResult direct = hs_norm_squared_dha_series(BigFloat(1e-8, kP));
  o.require(abs(direct.value - hs.value) <= direct.tail_bound + hs.tail_bound, "series disagrees with closed form");
  const Spectrum s = eigen_sym(left_gram(compositions::d_ha(), 20), kP);
  const BoundReport t = tail_bound_check(s);
  o.require(t.consistent, t.summary);
  if (o.pass) o.detail << "traces exact for N=1..20; " << t.summary;
  return o;
}

Outcome lower_chain() {
  Outcome o;
  for (const auto& row : lower_bound_chain(1, 12, kP))
    o.require(row.holds, "lambda_min below 1/(N^2 ||H^-1||) at N=" + std::to_string(row.n));
  for (int n = 1; n <= kMaxExactHilbert; ++n)
    o.require(hilbert_inverse_exact(n).integral, "non-integral inverse at N=" + std::to_string(n));
  const ToddReport t = todd_check(1, 12, 4, 12, kP);
  o.require(t.margins.consistent, t.margins.summary);
  o.require(t.growth_exponent >= 3.3 && t.growth_exponent <= 4.0,
            "growth exponent " + fmt("%.4f", t.growth_exponent) + " outside [3.3, 4.0]");
  if (o.pass) o.detail << "chain holds N=1..12; growth exponent " << fmt("%.4f", t.growth_exponent);
  return o;
}

Outcome galerkin_rates() {
  Outcome o;
  const std::vector<std::tuple<CompositionSpec, double, double>> cases = {
      {compositions::j(), 0.9, 1.1},
      {compositions::cj(), 1.9, 2.1},
      {compositions::j2(), 1.9, 2.1},
      {compositions::mj(), 0.9, 1.1}};
  for (const auto& [op, lo, hi] : cases) {
    const Spectrum s = eigen_sym(galerkin_gram(op, 2048, Arithmetic::Double), 53);
    const DecayFit f = fit_decay(s, DecayModel::Power, Window{8, 64});
    o.detail << (o.detail.tellp() > 0 ? ", " : "") << "kappa(" << op.name() << ")=" << fmt("%.4f", f.rate);
    if (f.rate < lo || f.rate > hi) {
      o.pass = false;
      o.detail << " outside [" << lo << ", " << hi << "]";
    }
  }
  return o;
}

Outcome figures() {
  Outcome o;
  const BigFloat tol = resolution(kP);
  std::map<std::pair<std::string, int>, std::pair<Spectrum, Spectrum>> spectra;
  for (const auto& op : {compositions::ha_j(), compositions::d_ha()}) {
    for (int n : {5, 10, 15, 20}) {
      Spectrum left = eigen_sym(left_gram(op, n), kP);
      Spectrum right = eigen_sym(right_gram(op, n, tol), kP);
      for (const Spectrum* s : {&left, &right}) {
        const std::string tag = op.name() + " " + to_string(*s->scheme) + " N=" + std::to_string(n);
        for (std::size_t i = 1; i < s->size(); ++i)
          o.require(s->values[i] <= s->values[i - 1] && s->values[i].sign() > 0, tag + " not monotone");
        const double res = tail_linearity_residual(*s);
        o.require(res < 0.5, tag + " tail residual " + fmt("%.3f", res));
      }
      spectra.emplace(std::make_pair(op.name(), n), std::make_pair(std::move(left), std::move(right)));
    }
  }

  const auto& [dl, dr] = spectra.at({compositions::d_ha().name(), 20});
  double worst = 0.0;
  int worst_i = 0;
  for (int i = 1; i <= 4; ++i) {
    const double rel = std::abs(((dl.sigma(i) - dr.sigma(i)) / dl.sigma(i)).to_double());
    if (rel > worst) worst = rel, worst_i = i;
  }
  o.require(worst <= 0.05, "D*Ha left/right differ by " + fmt("%.1f%%", 100.0 * worst) + " at i=" +
                               std::to_string(worst_i) + " (cross trust " + std::to_string(trust_cutoff(dl, dr)) +
                               ")");

  int checked = 0;
  for (const auto& op : {compositions::ha_j(), compositions::d_ha()}) {
    const auto& [l, r] = spectra.at({op.name(), 20});
    const int trust = trust_cutoff(l, r);
    const BoundSpec lower = is_d_ha(op) ? BoundSpec{BoundForm::ExpTwoOverI, BoundDirection::Lower}
                                        : BoundSpec{BoundForm::Exponential, BoundDirection::Lower, 1.0, 1.6};
    for (const Spectrum* s : {&l, &r}) {
      if (trust < 1) continue;
      for (const BoundSpec& b : {BoundSpec{BoundForm::PowerThreeHalves, BoundDirection::Upper}, lower}) {
        const BoundReport rep = check_bound(*s, fitted_at_first(*s, b), Window{1, trust});
        checked += static_cast<int>(rep.index.size());
        o.require(rep.consistent, op.name() + " " + to_string(*s->scheme) + ": " + rep.summary);
      }
    }
  }
  if (o.pass) o.detail << "monotone, near-linear tails; " << checked << " bound checks at trusted points";
  return o;
}

Outcome interlacing() {
  Outcome o;
  const BigFloat slack = exp2i(-(kP - 32), kP);
  int pairs = 0;
  for (const auto& op : {compositions::ha_j(), compositions::d_ha()}) {
    std::vector<BigFloat> prev;
    for (int n = 1; n <= 20; ++n) {
      const GramMatrix g = left_gram(op, n);
      std::vector<BigFloat> ev = jacobi_eigen(g.to_big_float(kP), kP).values;
      for (std::size_t i = 0; i < prev.size(); ++i) {
        ++pairs;
        o.require(prev[i] <= ev[i] + slack,
                  op.name() + ": eigenvalue " + std::to_string(i + 1) + " decreases from N=" + std::to_string(n - 1));
      }
      prev = std::move(ev);
    }
  }
  if (o.pass) o.detail << pairs << " eigenvalue pairs monotone in N";
  return o;
}

Outcome ncnc() {
  Outcome o;
  const NcncTrace tr = build_compact_restriction(dha_section_factor(30, kP), 30, kP);
  o.require(tr.depth >= 10, "depth " + std::to_string(tr.depth) + " < 10");
  for (const auto& s : tr.steps)
    o.require(s.residual <= exp2i(-s.n, kP) * (BigFloat(1L, kP) + resolution(kP)),
              "r_" + std::to_string(s.n) + " above 2^-n");
  o.require(tr.orthonormality_defect <= exp2i(-480, kP),
            "orthonormality defect " + tr.orthonormality_defect.to_decimal(4));
  const CompactWitness w = compact_product_witness(tr);
  o.require(w.within_sum_bound, "||T B|| = " + w.tb_norm.to_decimal(6) + " above sum r_n");

  const int m = 12;
  DenseMatrix<BigFloat> diag(m, m, BigFloat(kP));
  for (int i = 0; i < m; ++i) diag(i, i) = exp2i(-(i + 1), kP);
  const NcncTrace dt = build_compact_restriction(diag, m, kP);
  o.require(dt.depth == m, "diagonal case stopped at depth " + std::to_string(dt.depth));
  const BigFloat tiny = exp2i(-(kP - 64), kP);
  for (int n = 0; n < dt.depth; ++n) {
    for (int k = 0; k < m; ++k) {
      const BigFloat want(k == n ? 1L : 0L, kP);
      o.require(abs(abs(dt.x[n][k]) - want) <= tiny, "diagonal case: x_" + std::to_string(n + 1) + " is not e_" +
                                                         std::to_string(n + 1));
    }
  }
  if (o.pass) {
    o.detail << "depth " << tr.depth << ", defect " << tr.orthonormality_defect.to_decimal(3) << ", ||T B|| "
             << w.tb_norm.to_decimal(4) << " <= " << w.sum_bound.to_decimal(4) << "; diagonal case exact";
  }
  return o;
}

Outcome open_question() {
  Outcome o;
  std::vector<Spectrum> spectra;
  for (const auto& op : {compositions::ha_j(), compositions::d_ha()}) spectra.push_back(eigen_sym(left_gram(op, 20), kP));
  for (const auto& op : {compositions::cj(), compositions::mj()})
    spectra.push_back(eigen_sym(galerkin_gram(op, 2048, Arithmetic::Double), 53));
  const Table1Report t = table1_summary(spectra);
  int open = 0;
  for (const auto& c : t.cells) {
    if (c.op == "HaJ" || c.op == "DHa") {
      o.require(c.status == "bounds only, open", c.op + " labelled '" + c.status + "'");
      ++open;
    }
  }
  o.require(open == 2, "expected 2 open cells, found " + std::to_string(open));
  if (o.pass) o.detail << "Ha*J and D*Ha labelled 'bounds only, open'";
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "exact identity", 10, identity},
      {2, "trace chain", 60, trace_chain},
      {3, "lower-bound chain", 120, lower_chain},
      {4, "galerkin decay rates", 300, galerkin_rates},
      {5, "figure reproduction", 600, figures},
      {6, "interlacing", 600, interlacing},
      {7, "compact restriction", 120, ncnc},
      {8, "open question labelled", 600, open_question},
  };
  std::vector<int> pick;
  for (int a = 1; a < argc; ++a) pick.push_back(std::atoi(argv[a]));
  if (pick.empty())
    for (const auto& c : all) pick.push_back(c.id);

  int failed = 0;
  for (int id : pick) {
    if (id < 1 || id > static_cast<int>(all.size())) {
      std::cerr << "unknown criterion " << id << "\n";
      return 2;
    }
    const Criterion& c = all[id - 1];
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(secs <= c.limit_s, "runtime over " + fmt("%.0f s", c.limit_s));
    std::cout << "[" << c.id << "] " << (o.pass ? "PASS" : "FAIL") << "  " << c.name << ": " << o.detail.str()
              << " (" << fmt("%.2f", secs) << " s)" << std::endl;
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
