#include <doctest.h>

#include <cmath>

#include "binrow/normal.hpp"

using namespace binrow;

namespace {

// independent oracle: adaptive Simpson quadrature of the defining integral
double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double density(double t) { return std::exp(-t * t / 2.0) / std::sqrt(2.0 * M_PI); }

double adaptive(double a, double b, double fa, double fm, double fb, double whole,
                double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = density(lm), frm = density(rm);
  double left = simpson(a, m, fa, flm, fm);
  double right = simpson(m, b, fm, frm, fb);
  if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive(a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         adaptive(m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

double phi_quadrature(double x) {
  // integrate the density from 0 to x and add 1/2; tails beyond |x| = 9
  // are below 1e-18
  if (x > 9.0) return 1.0;
  if (x < -9.0) return 0.0;
  double a = 0.0, b = x;
  double sign = 1.0;
  if (b < a) {
    std::swap(a, b);
    sign = -1.0;
  }
  double fa = density(a), fb = density(b), fm = density(0.5 * (a + b));
  double whole = simpson(a, b, fa, fm, fb);
  return 0.5 + sign * adaptive(a, b, fa, fm, fb, whole, 1e-15, 40);
}

}  // namespace

TEST_CASE("phi anchor values") {
  CHECK(phi(0.0) == 0.5);
  CHECK(phi(1.0) == doctest::Approx(0.841344746068543).epsilon(1e-12));
  CHECK(phi(40.0) == 1.0);
  CHECK(phi(-40.0) == 0.0);
}

TEST_CASE("phi against the quadrature oracle") {
  for (double x = -8.0; x <= 8.0; x += 0.173)
    CHECK(std::fabs(phi(x) - phi_quadrature(x)) <= 1e-12);
  CHECK(std::fabs(phi(1.0) - phi_quadrature(1.0)) <= 1e-13);
}

TEST_CASE("phi symmetry and monotonicity") {
  double prev = -1.0;
  for (double x = -12.0; x <= 12.0; x += 0.0625) {
    double v = phi(x);
    CHECK(std::fabs(v + phi(-x) - 1.0) <= 1e-12);
    CHECK(v >= prev);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    prev = v;
  }
}
