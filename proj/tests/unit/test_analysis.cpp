// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <functional>

#include "illspec/analysis/analysis.hpp"
#include "illspec/operators/monomial_image.hpp"
#include "illspec/util/errors.hpp"

using namespace illspec;

namespace {

Spectrum synthetic(int n, const std::function<double(int)>& f) {
  std::vector<BigFloat> v;
  for (int i = 1; i <= n; ++i) v.emplace_back(f(i), 128);
  return spectrum_from_values(v, 128);
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("windows") {
  const Window w = parse_window("4:12");
  CHECK(w.lo == 4);
  CHECK(w.hi == 12);
  CHECK(w.length() == 9);
  CHECK_THROWS_AS(parse_window("12"), ValidationError);
  CHECK_THROWS_AS(parse_window("5:2"), ValidationError);
  CHECK_THROWS_AS(parse_window("0:3"), ValidationError);
  CHECK_THROWS_AS(parse_window("1:3x"), ValidationError);
}

TEST_CASE("power and exponential fits recover synthetic rates") {
  const Spectrum p = synthetic(40, [](int i) { return 3.0 * std::pow(i, -2.0); });
  const DecayFit fp = fit_decay(p, DecayModel::Power, Window{5, 40});
  CHECK(fp.rate == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fp.c == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(fp.residual < 1e-10);

  const Spectrum e = synthetic(20, [](int i) { return 0.5 * std::exp(-1.6 * i); });
  const DecayFit fe = fit_decay(e, DecayModel::Exponential, Window{2, 20});
  CHECK(fe.rate == doctest::Approx(1.6).epsilon(1e-12));
  CHECK(fe.c == doctest::Approx(0.5).epsilon(1e-10));
  CHECK_THROWS_AS(fit_decay(e, DecayModel::Power, Window{2, 4}), ValidationError);
}

TEST_CASE("bound curves") {
  const BoundSpec lower{BoundForm::ExpTwoOverI, BoundDirection::Lower};
  CHECK(std::exp(lower.log_value(1)) == doctest::Approx(std::exp(-2.0)));
  const BoundSpec h{BoundForm::Exponential, BoundDirection::Lower, 1.0, 1.6};
  CHECK(std::exp(h.log_value(1)) == doctest::Approx(0.2019).epsilon(1e-3));
  const BoundSpec up{BoundForm::PowerThreeHalves, BoundDirection::Upper, 2.0};
  CHECK(std::exp(up.log_value(4)) == doctest::Approx(0.25));
}

TEST_CASE("check_bound flags violations") {
  const Spectrum s = synthetic(10, [](int i) { return std::pow(i, -1.0); });
  const BoundReport ok = check_bound(s, {BoundForm::PowerOne, BoundDirection::Upper, 1.0});
  CHECK(ok.consistent);
  const BoundReport bad = check_bound(s, {BoundForm::PowerThreeHalves, BoundDirection::Upper, 1.0});
  CHECK_FALSE(bad.consistent);
  CHECK(bad.violations() == 9);
  const BoundSpec fitted = fitted_at_first(s, {BoundForm::ExpTwoOverI, BoundDirection::Lower});
  CHECK(check_bound(s, fitted).consistent);
  CHECK(std::exp(fitted.log_value(1)) == doctest::Approx(1.0));
}

TEST_CASE("tail right-hand side") {
  // sum_{j>=n+2} 1/(j^2(2j-1)) by brute force
  double ref = 0.0;
  for (long j = 1000000; j >= 5; --j) ref += 1.0 / (static_cast<double>(j) * j * (2.0 * j - 1.0));
  CHECK(dha_tail_rhs(3, 256).to_double() == doctest::Approx(ref).epsilon(1e-10));
  const SeriesResult hs = hs_norm_squared_dha(512);
  CHECK(hs.tail_bound <= BigFloat(1e-30, 512));
  CHECK(hs.value.to_double() == doctest::Approx(4.0 * std::log(2.0) - M_PI * M_PI / 6.0));
}

TEST_CASE("D Ha tail and pointwise checks") {
  const Spectrum s = eigen_sym(left_gram(compositions::d_ha(), 12), 256);
  const BoundReport t = tail_bound_check(s);
  CHECK(t.consistent);
  CHECK(t.index.front() == 1);
  const PointwiseBound pb = tail_to_pointwise(s, tail_sums(s), 1.0);
  CHECK(pb.direct.consistent);
  CHECK(pb.implied.consistent);
  CHECK(pb.c2 == doctest::Approx(8.0 * pb.c1));
  CHECK(pb.c2_odd == doctest::Approx(18.0 * pb.c1));
  CHECK_THROWS_AS(tail_to_pointwise(s, tail_sums(s), 1.0, 1e-9), ValidationError);
}

TEST_CASE("Hilbert inverse growth") {
  const ToddReport t = todd_check(1, 8, 3, 8, 256);
  CHECK(t.margins.consistent);
  CHECK(t.n.size() == 8);
  for (bool b : t.integral) CHECK(b);
  CHECK(t.inverse_norm[1].to_double() == doctest::Approx(15.21110255).epsilon(1e-9));
  CHECK_THROWS_AS(todd_check(1, kMaxExactHilbert + 1, 3, 8, 256), ValidationError);
  for (const auto& row : lower_bound_chain(1, 6, 256)) CHECK(row.holds);
}

TEST_CASE("table summary labels") {
  std::vector<Spectrum> in;
  in.push_back(eigen_sym(left_gram(compositions::d_ha(), 12), 256));
  const Table1Report r = table1_summary(in);
  bool seen = false;
  for (const auto& c : r.cells) {
    if (c.op == "DHa") {
      seen = true;
      CHECK(c.status == "bounds only, open");
      CHECK(c.power.has_value());
    }
  }
  CHECK(seen);
  CHECK_FALSE(r.missing.empty());
  CHECK(r.to_csv().find("bounds only, open") != std::string::npos);
}

}
