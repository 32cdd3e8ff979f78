// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "illspec/operators/legendre.hpp"
#include "illspec/operators/monomial_image.hpp"
#include "illspec/operators/operator_id.hpp"
#include "illspec/util/errors.hpp"

using namespace illspec;

TEST_SUITE("operators") {

TEST_CASE("short names round-trip") {
  for (const char* n : {"J", "CJ", "J2", "MJ", "HaJ", "DHa", "HaCstar", "HN"})
    CHECK(CompositionSpec::from_short_name(n).name() == n);
  CHECK_THROWS_AS(CompositionSpec::from_short_name("XY"), ValidationError);
  CHECK(compositions::d_ha().domain() == Space::L2);
  CHECK(compositions::d_ha().codomain() == Space::Seq);
}

TEST_CASE("D Ha on monomials") {
  for (int k = 0; k <= 6; ++k) {
    const MonomialImage img = apply_composition(compositions::d_ha(), k);
    for (long j = 1; j <= 8; ++j) CHECK(coordinate(img, j) == BigRational(1, j * (j + k)));
  }
}

TEST_CASE("Ha C* on monomials equals D Ha") {
  for (int k = 0; k <= 6; ++k) {
    const MonomialImage a = apply_composition(compositions::ha_cstar(), k);
    const MonomialImage b = apply_composition(compositions::d_ha(), k);
    for (long j = 1; j <= 8; ++j) CHECK(coordinate(a, j) == coordinate(b, j));
  }
}

TEST_CASE("J t^k = (1 - t^(k+1)) / (k+1) has the expected norm") {
  // ||J 1||^2 = int (1-t)^2 = 1/3
  const MonomialImage img = apply_composition(compositions::j(), 0);
  CHECK(l2_inner(img, img) == BigRational(1, 3));
}

TEST_CASE("identity check counts") {
  const IdentityReport r = verify_dha_identity(5, 7);
  CHECK(r.passed);
  CHECK(r.checks == 6 * 7);
}

TEST_CASE("Legendre recurrence agrees with Gram-Schmidt") {
  const LegendreBasis b(12);
  CHECK(bases_agree(b, gram_schmidt_monomials(12)));
  for (int i = 1; i <= 6; ++i) {
    for (int j = 1; j <= 6; ++j) {
      const SurdValue v = b.inner(i, j);
      CHECK(v.rational * BigRational(v.radicand) * v.rational == BigRational(i == j ? 1 : 0));
    }
  }
  // Positive leading coefficient; L_2 = sqrt(3) (2t - 1).
  CHECK(b.coefficient(2, 1).rational == BigRational(2));
  CHECK(b.coefficient(2, 1).radicand == 3);
}

TEST_CASE("Ha on Legendre vanishes below the diagonal") {
  const SurdMatrix m = ha_on_legendre(6, 10);
  for (long j = 1; j <= 10; ++j)
    for (int i = 1; i <= 6; ++i)
      if (j < i) CHECK(m.rational(j, i).is_zero());
  // <L_1, 1> = 1
  CHECK(m.rational(1, 1) == BigRational(1));
}

}
