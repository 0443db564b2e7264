#include <doctest.h>

#include "binrow/moments.hpp"

using namespace binrow;

TEST_CASE("direct moments at tiny lambda") {
  MomentTable t0 = moments_direct(0, true);
  for (int k = 0; k <= t0.kmax; ++k)
    CHECK(t0.m[static_cast<size_t>(k)] == (k == 1 ? Rational(2) : Rational(0)));

  MomentTable t1 = moments_direct(1, true);
  CHECK(t1.m[1] == Rational(1));
  CHECK(t1.m[2] == Rational(5, 2));
  CHECK(t1.m[3] == Rational(0));
  // interval {2,3}: counts at key 2 are 1 and 4
  CHECK(t1.a[2][2] == 17);
  // n-weighted: 2*2 at key 1 plus nothing else
  CHECK(t1.m_prime[1] == Rational(2));
  CHECK(t1.m_prime[2] == Rational(2 * 1 + 3 * 4, 2));
}

TEST_CASE("closed forms at x-degree 0") {
  Exponents b2{2, 6, 0};
  TruncatedSeries m = expand_gf(gf_mean(), b2);
  for (int k = 0; k <= 6; ++k) CHECK(m.at(0, k) == (k == 1 ? Rational(2) : Rational(0)));
  CHECK(m.at(1, 1) == Rational(1));
  CHECK(m.at(1, 2) == Rational(5, 2));

  Exponents b3{2, 4, 4};
  TruncatedSeries a = expand_gf(gf_cross(), b3);
  CHECK(a.at(0, 1, 1) == Rational(4));
  CHECK(a.at(0, 2, 2) == Rational(0));
  TruncatedSeries bseries = series_cross_shift(a, b3);
  CHECK(bseries.at(0, 1, 0) == Rational(2));
  TruncatedSeries cseries = series_cross_shift_t(a, b3);
  CHECK(cseries.at(0, 0, 1) == Rational(2));
}

TEST_CASE("verification pass is clean at moderate scale") {
  auto ds = verify_gf_identities(6, 4);
  for (const auto& d : ds) {
    CAPTURE(d.family);
    CAPTURE(d.lambda);
    CAPTURE(d.k);
    CAPTURE(d.l);
  }
  CHECK(ds.empty());
}

TEST_CASE("guards") {
  CHECK_THROWS_AS(moments_direct(15, false), guard_error);
  CHECK_THROWS_AS(moments_direct(10, true), guard_error);
  CHECK_THROWS_AS(verify_gf_identities(4, 6), std::invalid_argument);
}
