#ifndef BINROW_SERIES_HPP
#define BINROW_SERIES_HPP

#include <array>
#include <map>
#include <vector>

#include "binrow/bigint.hpp"

namespace binrow {

/// Exponent tuple; coordinates beyond the arity are always 0.
using Exponents = std::array<int, 3>;

/// Sparse exact multivariate polynomial over Rational, arity 1..3.
/// Small building block for numerators/denominators of the closed-form
/// generating functions; arithmetic never truncates.
class Poly {
 public:
  explicit Poly(int arity = 2) : arity_(arity) {}

  int arity() const { return arity_; }
  const std::map<Exponents, Rational>& terms() const { return terms_; }

  Rational at(const Exponents& e) const;
  bool is_zero() const { return terms_.empty(); }

  Poly& add_term(const Rational& c, int ex, int ey = 0, int ez = 0);

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly operator*(const Rational& c) const;

 private:
  int arity_;
  std::map<Exponents, Rational> terms_;  // nonzero coefficients only
};

/// Multivariate power series truncated to per-variable degree bounds,
/// dense storage, exact Rational coefficients. Arithmetic closes over a
/// fixed (arity, bounds) shape; mixing shapes is an error.
class TruncatedSeries {
 public:
  TruncatedSeries() = default;
  TruncatedSeries(int arity, Exponents bounds);

  static TruncatedSeries from_poly(const Poly& p, Exponents bounds);

  int arity() const { return arity_; }
  const Exponents& bounds() const { return bounds_; }

  const Rational& at(int ex, int ey = 0, int ez = 0) const;
  void set(const Exponents& e, Rational v);

  bool operator==(const TruncatedSeries& other) const;

 private:
  size_t index(const Exponents& e) const;
  friend TruncatedSeries series_add(const TruncatedSeries&, const TruncatedSeries&);
  friend TruncatedSeries series_mul(const TruncatedSeries&, const TruncatedSeries&);
  friend TruncatedSeries series_inverse(const Poly&, Exponents);

  int arity_ = 0;
  Exponents bounds_{0, 0, 0};
  std::vector<Rational> coef_;
};

TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b);

/// Truncated convolution; exact within the shared bounds.
TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b);

/// Reciprocal of a polynomial with nonzero constant term, by the
/// convolution recurrence, truncated to bounds.
TruncatedSeries series_inverse(const Poly& denominator, Exponents bounds);

/// Rational generating function num/den with den(0) != 0.
struct RationalGF {
  Poly num;
  Poly den;
};

TruncatedSeries expand_gf(const RationalGF& gf, Exponents bounds);

}  // namespace binrow

#endif
