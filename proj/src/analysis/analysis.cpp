// SPDX-License-Identifier: Apache-2.0
#include "illspec/analysis/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "illspec/operators/monomial_image.hpp"
#include "illspec/numerics/special.hpp"
#include "illspec/spectra/eigen.hpp"
#include "illspec/util/errors.hpp"

namespace illspec {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMarginSlack = 1e-12;

double ln(const BigFloat& x) { return x.is_zero() ? -kInf : log(x).to_double(); }

nlohmann::json finite_or_null(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); }

struct Line {
  double a = 0.0, b = 0.0;
};

Line least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  Line l;
  l.b = sxy / sxx;
  l.a = my - l.b * mx;
  return l;
}

void finish(BoundReport& r) {
  r.consistent = std::all_of(r.ok.begin(), r.ok.end(), [](bool b) { return b; });
  std::ostringstream os;
  os << r.name << ": " << (r.consistent ? "consistent" : "violated") << " on " << r.index.size() << " indices";
  if (!r.consistent) os << " (" << r.violations() << " violations)";
  r.summary = os.str();
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

}  // namespace

std::string to_string(DecayModel m) { return m == DecayModel::Power ? "power" : "exponential"; }

Window parse_window(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ValidationError("window '" + text + "' must look like a:b");
  try {
    std::size_t used = 0;
    Window w;
    w.lo = std::stoi(text.substr(0, colon), &used);
    if (used != colon) throw ValidationError("window '" + text + "': bad lower index");
    const std::string hi = text.substr(colon + 1);
    w.hi = std::stoi(hi, &used);
    if (used != hi.size()) throw ValidationError("window '" + text + "': bad upper index");
    if (w.lo < 1 || w.hi < w.lo) throw ValidationError("window '" + text + "' must satisfy 1 <= a <= b");
    return w;
  } catch (const std::logic_error&) {
    throw ValidationError("window '" + text + "' must look like a:b");
  }
}

Window default_window(const Spectrum& s) { return {std::max(3, s.trust_cutoff / 4), s.trust_cutoff}; }

DecayFit fit_decay(const Spectrum& s, DecayModel model, std::optional<Window> window, std::optional<int> trust) {
  const int cut = trust.value_or(s.trust_cutoff);
  const Window w = window.value_or(Window{std::max(3, cut / 4), cut});
  if (w.length() < 4) {
    throw ValidationError("fit_decay: window [" + std::to_string(w.lo) + ", " + std::to_string(w.hi) +
                          "] holds fewer than 4 indices");
  }
  if (w.lo < 1 || w.hi > cut || w.hi > static_cast<int>(s.size())) {
    throw ValidationError("fit_decay: window [" + std::to_string(w.lo) + ", " + std::to_string(w.hi) +
                          "] leaves the trusted range [1, " + std::to_string(cut) + "]");
  }
  std::vector<double> x, y;
  DecayFit f;
  f.model = model;
  f.window = w;
  f.proxy_min = kInf;
  f.proxy_max = -kInf;
  for (int i = w.lo; i <= w.hi; ++i) {
    const BigFloat& v = s.sigma(i);
    if (!(v > 0.0)) throw ValidationError("fit_decay: sigma_" + std::to_string(i) + " is zero");
    const double li = std::log(static_cast<double>(i));
    x.push_back(model == DecayModel::Power ? li : static_cast<double>(i));
    y.push_back(ln(v));
    if (i >= 2) {
      const double p = -y.back() / li;
      f.proxy_min = std::min(f.proxy_min, p);
      f.proxy_max = std::max(f.proxy_max, p);
    }
  }
  const Line l = least_squares(x, y);
  f.c = std::exp(l.a);
  f.rate = -l.b;
  for (std::size_t k = 0; k < x.size(); ++k) f.residual = std::max(f.residual, std::abs(y[k] - (l.a + l.b * x[k])));
  return f;
}

double BoundSpec::log_value(int i) const {
  const double x = static_cast<double>(i);
  const double lc = std::log(c);
  switch (form) {
    case BoundForm::PowerThreeHalves: return lc - 1.5 * std::log(x);
    case BoundForm::Exponential: return lc - alpha * x;
    case BoundForm::ExpTwoOverI: return lc - std::log(x) - 2.0 * x;
    case BoundForm::PowerTwo: return lc - 2.0 * std::log(x);
    case BoundForm::PowerOne: return lc - std::log(x);
    case BoundForm::ToddExp: return lc + 4.0 * x;
  }
  return 0.0;
}

std::string BoundSpec::describe() const {
  const std::string cs = fmt("%.6g", c);
  std::string f;
  switch (form) {
    case BoundForm::PowerThreeHalves: f = cs + "*i^(-3/2)"; break;
    case BoundForm::Exponential: f = cs + "*exp(-" + fmt("%.6g", alpha) + "*i)"; break;
    case BoundForm::ExpTwoOverI: f = cs + "*exp(-2i)/i"; break;
    case BoundForm::PowerTwo: f = cs + "*i^(-2)"; break;
    case BoundForm::PowerOne: f = cs + "*i^(-1)"; break;
    case BoundForm::ToddExp: f = cs + "*exp(4N)"; break;
  }
  return (direction == BoundDirection::Upper ? "upper " : "lower ") + f;
}

BoundSpec fitted_at_first(const Spectrum& s, BoundSpec b) {
  if (s.size() == 0 || !(s.sigma(1) > 0.0)) throw ValidationError("fitted_at_first: sigma_1 must be positive");
  b.c = 1.0;
  b.c = std::exp(ln(s.sigma(1)) - b.log_value(1));
  return b;
}

int BoundReport::violations() const {
  return static_cast<int>(std::count(ok.begin(), ok.end(), false));
}

nlohmann::json BoundReport::to_json() const {
  nlohmann::json j;
  j["name"] = name;
  j["consistent"] = consistent;
  j["summary"] = summary;
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t k = 0; k < index.size(); ++k) {
    rows.push_back({{"index", index[k]}, {"log_margin", finite_or_null(margin[k])}, {"ok", static_cast<bool>(ok[k])}});
  }
  j["rows"] = std::move(rows);
  return j;
}

BoundReport check_bound(const Spectrum& s, const BoundSpec& b, std::optional<Window> window) {
  const Window w = window.value_or(Window{1, s.trust_cutoff});
  if (w.lo < 1 || w.hi > static_cast<int>(s.size())) throw ValidationError("check_bound: window outside spectrum");
  BoundReport r;
  r.name = b.describe();
  for (int i = w.lo; i <= w.hi; ++i) {
    const double m = ln(s.sigma(i)) - b.log_value(i);
    r.index.push_back(i);
    r.margin.push_back(m);
    // Constants fitted at a point leave a zero margin there, up to rounding.
    r.ok.push_back(b.direction == BoundDirection::Upper ? m <= kMarginSlack : m >= -kMarginSlack);
  }
  finish(r);
  return r;
}

ToddReport todd_check(int n_lo, int n_hi, int fit_lo, int fit_hi, mpfr_prec_t precision) {
  if (n_lo < 1 || n_hi > kMaxExactHilbert || n_hi < n_lo) {
    throw ValidationError("todd_check: range must lie in [1, " + std::to_string(kMaxExactHilbert) + "]");
  }
  ToddReport t;
  t.margins.name = "||H_N^-1|| <= exp(4N)";
  std::vector<double> fx, fy;
  for (int n = n_lo; n <= n_hi; ++n) {
    const HilbertInverse inv = hilbert_inverse_exact(n);
    const auto m = convert<BigFloat>(inv.inverse, [precision](const BigRational& q) { return BigFloat(q, precision); });
    const BigFloat norm = jacobi_eigen(m, precision).values.front();
    const double lnorm = ln(norm);
    t.n.push_back(n);
    t.inverse_norm.push_back(norm);
    t.integral.push_back(inv.integral);
    const double margin = 4.0 * n - lnorm;
    t.margins.index.push_back(n);
    t.margins.margin.push_back(margin);
    t.margins.ok.push_back(margin > 0.0);
    t.smallest_c = std::max(t.smallest_c, std::exp(lnorm - 4.0 * n));
    if (n >= fit_lo && n <= fit_hi) {
      fx.push_back(n);
      fy.push_back(lnorm);
    }
  }
  finish(t.margins);
  t.fit_lo = std::max(fit_lo, n_lo);
  t.fit_hi = std::min(fit_hi, n_hi);
  if (fx.size() >= 2) t.growth_exponent = least_squares(fx, fy).b;
  return t;
}

std::vector<LowerChainRow> lower_bound_chain(int n_lo, int n_hi, mpfr_prec_t precision) {
  if (n_lo < 1 || n_hi > kMaxExactHilbert || n_hi < n_lo) {
    throw ValidationError("lower_bound_chain: range must lie in [1, " + std::to_string(kMaxExactHilbert) + "]");
  }
  std::vector<LowerChainRow> rows;
  for (int n = n_lo; n <= n_hi; ++n) {
    const GramMatrix g = left_gram(compositions::d_ha(), n);
    LowerChainRow r;
    r.n = n;
    r.lambda_min = jacobi_eigen(g.to_big_float(precision), precision).values.back();
    r.bound = BigFloat(1L, precision) / (hilbert_inverse_norm(n, precision) * static_cast<long>(n * n));
    r.holds = r.lambda_min >= r.bound;
    rows.push_back(std::move(r));
  }
  return rows;
}

BigFloat dha_tail_rhs(long n, mpfr_prec_t precision) {
  if (n < 0) throw ValidationError("dha_tail_rhs: n must be >= 0");
  const SeriesResult total = hs_norm_squared_dha(precision + 32);
  BigFloat r = total.value - BigFloat(dha_trace_partial(n + 1), precision + 32);
  return r.rounded_to(precision);
}

BoundReport tail_bound_check(const Spectrum& s) {
  const std::vector<BigFloat> tail = tail_sums(s);
  BoundReport r;
  r.name = "sum_{i>n} sigma_i^2 <= sum_{j>=n+2} 1/(j^2(2j-1))";
  for (std::size_t n = 1; n < tail.size(); ++n) {
    const BigFloat rhs = dha_tail_rhs(static_cast<long>(n), s.precision);
    r.index.push_back(static_cast<int>(n));
    r.margin.push_back(ln(rhs) - ln(tail[n]));
    r.ok.push_back(tail[n] <= rhs);
  }
  finish(r);
  return r;
}

PointwiseBound tail_to_pointwise(const Spectrum& s, const std::vector<BigFloat>& tail, double gamma,
                                 std::optional<double> c1) {
  if (tail.size() != s.size()) throw ValidationError("tail_to_pointwise: tail and spectrum sizes differ");
  if (!(gamma > 0.0)) throw ValidationError("tail_to_pointwise: gamma must be positive");
  const std::size_t n = s.size();
  PointwiseBound pb;
  pb.gamma = gamma;
  double fitted = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    if (tail[k].is_zero()) continue;
    fitted = std::max(fitted, std::exp(ln(tail[k]) + 2.0 * gamma * std::log(static_cast<double>(k))));
  }
  if (c1) {
    for (std::size_t k = 1; k < n; ++k) {
      if (tail[k].is_zero()) continue;
      if (ln(tail[k]) > std::log(*c1) - 2.0 * gamma * std::log(static_cast<double>(k)) + 1e-12) {
        throw ValidationError("tail_to_pointwise: tail bound with c1 = " + fmt("%.6g", *c1) + " fails at n = " +
                              std::to_string(k));
      }
    }
    pb.c1 = *c1;
  } else {
    pb.c1 = fitted;
  }
  pb.c2 = pb.c1 * std::pow(2.0, 2.0 * gamma + 1.0);
  pb.c2_odd = pb.c1 * 2.0 * std::pow(3.0, 2.0 * gamma);
  pb.direct.name = "sigma_i^2 <= (2/i) tail(floor(i/2))";
  pb.implied.name = "sigma_i^2 <= c2 i^-(2gamma+1)";
  const BigFloat slack = BigFloat(1L, s.precision) + resolution(s.precision);
  for (std::size_t k = 0; k < n; ++k) {
    const int i = static_cast<int>(k + 1);
    const double di = static_cast<double>(i);
    pb.curve.push_back(pb.c2 * std::pow(di, -(2.0 * gamma + 1.0)));
    const BigFloat sq = s.values[k] * s.values[k];
    BigFloat rhs = tail[static_cast<std::size_t>(i / 2)] * 2L / static_cast<long>(i);
    pb.direct.index.push_back(i);
    pb.direct.margin.push_back(ln(rhs) - ln(sq));
    pb.direct.ok.push_back(sq <= rhs * slack);
    // The tail gives nothing at i = 1 (floor(i/2) = 0).
    if (i == 1) continue;
    const double c = (i % 2 == 0) ? pb.c2 : pb.c2_odd;
    const double lbound = c > 0.0 ? std::log(c) - (2.0 * gamma + 1.0) * std::log(di) : -kInf;
    const double m = lbound - ln(sq);
    pb.implied.index.push_back(i);
    pb.implied.margin.push_back(m);
    pb.implied.ok.push_back(sq.is_zero() || m >= -kMarginSlack);
  }
  finish(pb.direct);
  finish(pb.implied);
  return pb;
}

nlohmann::json fit_to_json(const DecayFit& f) {
  return {{"model", to_string(f.model)},
          {"c", f.c},
          {"rate", f.rate},
          {"window", {f.window.lo, f.window.hi}},
          {"residual", f.residual},
          {"proxy_min", finite_or_null(f.proxy_min)},
          {"proxy_max", finite_or_null(f.proxy_max)}};
}

Table1Report table1_summary(const std::vector<Spectrum>& spectra) {
  struct Slot {
    const char* outer;
    const char* inner;
    const char* op;
    const char* alt;
    const char* theory;
    const char* status;
  };
  static const Slot slots[] = {
      {"Ha", "J", "HaJ", "", "exp(-c i) <~ sigma_i <~ i^(-3/2)", "bounds only, open"},
      {"C", "J", "CJ", "", "sigma_i ~ i^(-2)", "rate known"},
      {"M", "J", "MJ", "", "sigma_i ~ i^(-1)", "rate known"},
      {"Ha", "C*", "DHa", "HaCstar", "i^(-1) exp(-2i) <~ sigma_i <~ i^(-3/2)", "bounds only, open"},
  };
  Table1Report rep;
  for (const Slot& slot : slots) {
    const Spectrum* found = nullptr;
    for (const auto& s : spectra) {
      if (s.op && (s.op->name() == slot.op || s.op->name() == slot.alt)) {
        found = &s;
        break;
      }
    }
    Table1Cell cell{slot.outer, slot.inner, slot.op, slot.theory, slot.status, std::nullopt, std::nullopt, "", 0};
    if (!found) {
      rep.missing.push_back(slot.op);
      rep.cells.push_back(std::move(cell));
      continue;
    }
    cell.scheme = found->scheme ? to_string(*found->scheme) : "";
    cell.n = found->n;
    Window w = default_window(*found);
    if (found->scheme == Scheme::Galerkin) w = Window{8, std::min(64, found->trust_cutoff)};
    if (w.length() >= 4) {
      cell.power = fit_decay(*found, DecayModel::Power, w);
      cell.exponential = fit_decay(*found, DecayModel::Exponential, w);
    }
    rep.cells.push_back(std::move(cell));
  }
  return rep;
}

nlohmann::json Table1Report::to_json() const {
  nlohmann::json j;
  j["schema_version"] = 1;
  nlohmann::json cs = nlohmann::json::array();
  for (const auto& c : cells) {
    nlohmann::json x = {{"outer", c.outer}, {"inner", c.inner},   {"operator", c.op},
                        {"theory", c.theory}, {"status", c.status}, {"scheme", c.scheme},
                        {"N", c.n}};
    x["power_fit"] = c.power ? fit_to_json(*c.power) : nlohmann::json(nullptr);
    x["exponential_fit"] = c.exponential ? fit_to_json(*c.exponential) : nlohmann::json(nullptr);
    cs.push_back(std::move(x));
  }
  j["cells"] = std::move(cs);
  j["missing"] = missing;
  return j;
}

std::string Table1Report::to_csv() const {
  std::ostringstream os;
  os << "outer,inner,operator,theory,status,scheme,N,kappa,power_residual,alpha,exp_residual,window\n";
  for (const auto& c : cells) {
    os << c.outer << ',' << c.inner << ',' << c.op << ",\"" << c.theory << "\",\"" << c.status << "\","
       << c.scheme << ',' << c.n << ',';
    if (c.power) {
      os << fmt("%.6g", c.power->rate) << ',' << fmt("%.3g", c.power->residual) << ','
         << fmt("%.6g", c.exponential->rate) << ',' << fmt("%.3g", c.exponential->residual) << ','
         << c.power->window.lo << ':' << c.power->window.hi;
    } else {
      os << ",,,,";
    }
    os << '\n';
  }
  return os.str();
}

std::string Table1Report::to_text() const {
  std::vector<std::vector<std::string>> rows = {
      {"B \\ A", "operator", "theory", "status", "fitted (window)"}};
  for (const auto& c : cells) {
    std::string fit = "missing";
    if (c.power) {
      fit = "kappa=" + fmt("%.3f", c.power->rate) + " alpha=" + fmt("%.3f", c.exponential->rate) + " (" +
            c.scheme + ", N=" + std::to_string(c.n) + ", i=" + std::to_string(c.power->window.lo) + ".." +
            std::to_string(c.power->window.hi) + ")";
    } else if (c.n > 0) {
      fit = "too few trusted indices";
    }
    rows.push_back({c.inner + " \\ " + c.outer, c.op, c.theory, c.status, fit});
  }
  std::vector<std::size_t> width(rows.front().size(), 0);
  for (const auto& r : rows)
    for (std::size_t k = 0; k < r.size(); ++k) width[k] = std::max(width[k], r[k].size());
  std::ostringstream os;
  for (std::size_t ri = 0; ri < rows.size(); ++ri) {
    for (std::size_t k = 0; k < rows[ri].size(); ++k) {
      os << rows[ri][k];
      if (k + 1 < rows[ri].size()) os << std::string(width[k] - rows[ri][k].size() + 2, ' ');
    }
    os << '\n';
    if (ri == 0) {
      std::size_t total = 0;
      for (auto w : width) total += w + 2;
      os << std::string(total - 2, '-') << '\n';
    }
  }
  if (!missing.empty()) {
    os << "missing:";
    for (const auto& m : missing) os << ' ' << m;
    os << '\n';
  }
  return os.str();
}

}  // namespace illspec
