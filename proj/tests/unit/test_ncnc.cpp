// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "illspec/ncnc/ncnc.hpp"
#include "illspec/util/errors.hpp"

using namespace illspec;

TEST_SUITE("ncnc") {

TEST_CASE("diagonal operator yields the coordinate basis") {
  const mpfr_prec_t p = 192;
  const int m = 8;
  DenseMatrix<BigFloat> t(m, m, BigFloat(p));
  for (int i = 0; i < m; ++i) t(i, i) = exp2i(-(i + 1), p);
  const NcncTrace tr = build_compact_restriction(t, m, p);
  REQUIRE(tr.depth == m);
  for (int n = 0; n < m; ++n) {
    CHECK(abs(tr.x[n][n]) == 1.0);
    CHECK(tr.steps[n].residual == exp2i(-(n + 1), p));
  }
  CHECK(tr.schedule_met());
  CHECK(tr.increments_bounded());
}

TEST_CASE("unit operator admits no near-null direction") {
  const mpfr_prec_t p = 128;
  const DenseMatrix<BigFloat> t = full_basis(4, p);
  CHECK_THROWS_AS(near_null_direction(t, full_basis(4, p), BigFloat(0.5, p), p), ToleranceUnachievable);
  const NcncTrace tr = build_compact_restriction(t, 3, p);
  CHECK(tr.depth == 0);
  CHECK(tr.unachievable_min.has_value());
  CHECK_THROWS_AS(compact_product_witness(tr), ValidationError);
}

TEST_CASE("D Ha section factor reproduces the left Gram") {
  const mpfr_prec_t p = 256;
  const int n = 6;
  const DenseMatrix<BigFloat> t = dha_section_factor(n, p);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      BigFloat s(p);
      for (int k = 0; k < n; ++k) s += t(i, k) * t(j, k);
      const BigFloat want(BigRational(1, static_cast<long>((i + 1) * (j + 1) * (i + j + 1))), p);
      CHECK(abs(s - want) <= exp2i(-240, p));
    }
  }
}

TEST_CASE("construction on D Ha") {
  const mpfr_prec_t p = 256;
  const NcncTrace tr = build_compact_restriction(dha_section_factor(12, p), 8, p);
  CHECK(tr.depth == 8);
  CHECK(tr.schedule_met());
  CHECK(tr.increments_bounded());
  CHECK(tr.orthonormality_defect <= exp2i(-200, p));
  const CompactWitness w = compact_product_witness(tr);
  CHECK(w.rank == 8);
  CHECK(w.within_sum_bound);
  CHECK(tr.to_json(true)["vectors"].size() == 8);
}

}
