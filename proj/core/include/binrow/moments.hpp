#ifndef BINROW_MOMENTS_HPP
#define BINROW_MOMENTS_HPP

#include <string>
#include <vector>

#include "binrow/bigint.hpp"
#include "binrow/series.hpp"

namespace binrow {

/// Exact interval moments of the rarefied row counts over
/// I_lambda = [2^lambda, 2^{lambda+1}): averages of counts, their partial
/// sums, n-weighted versions and squares, all divided by 2^lambda, plus
/// (optionally) the unnormalized trivariate cross sums a, b, c.
/// k (and l) run over 0 .. 2*lambda+4; everything beyond is zero.
struct MomentTable {
  int lambda = 0;
  int kmax = 0;
  std::vector<Rational> m;             ///< mean of counts
  std::vector<Rational> frak_m;        ///< mean of partial sums
  std::vector<Rational> m_prime;       ///< mean of n * count
  std::vector<Rational> frak_m_prime;  ///< mean of n * partial sum
  std::vector<Rational> m2;            ///< mean of count^2
  std::vector<Rational> frak_m2;       ///< mean of partial sum^2
  bool has_trivariate = false;
  std::vector<std::vector<BigInt>> a;  ///< sum count(k,n) count(l,n)
  std::vector<std::vector<BigInt>> b;  ///< sum count(k,n) count(l,n-1)
  std::vector<std::vector<BigInt>> c;  ///< sum count(k,n-1) count(l,n)
};

/// Direct summation over I_lambda. Guards: lambda <= 14, and lambda <= 9
/// when the trivariate tables are requested.
MomentTable moments_direct(int lambda, bool with_trivariate);

/// Closed forms as rational functions (bivariate in x, y; A trivariate in
/// x, y, z with the auxiliary-eliminated denominator).
RationalGF gf_mean();              ///< M
RationalGF gf_mean_partial();      ///< M / (1 - y)
RationalGF gf_weighted();          ///< M'
RationalGF gf_weighted_partial();  ///< M' / (1 - y)
RationalGF gf_cross();             ///< A

/// B and C are rational in A; expanded at the series level.
TruncatedSeries series_cross_shift(const TruncatedSeries& a_series,
                                   Exponents bounds);  ///< B
TruncatedSeries series_cross_shift_t(const TruncatedSeries& a_series,
                                     Exponents bounds);  ///< C

struct Discrepancy {
  std::string family;
  int lambda = 0;
  int k = 0;
  int l = -1;  ///< -1 for bivariate families
  Rational expected;
  Rational got;
};

/// Verifies, coefficient by coefficient, that the expanded closed forms
/// reproduce the direct tables, that the one-step recurrences (with their
/// boundary delta corrections) advance each direct table to the next, and
/// that the partial-sum / diagonal identities tie the families together.
/// Returns the (expected-empty) list of mismatches.
std::vector<Discrepancy> verify_gf_identities(int lambda_max_bivariate,
                                              int lambda_max_trivariate);

}  // namespace binrow

#endif
