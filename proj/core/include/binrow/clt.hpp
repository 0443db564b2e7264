#ifndef BINROW_CLT_HPP
#define BINROW_CLT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "binrow/bigint.hpp"

namespace binrow {

/// Exact supremum over real u of
///   | Theta-tilde(lambda+u, n)/(n+1) - Phi(u/sqrt(lambda)) |.
/// The step function is constant on integer intervals and Phi is
/// monotone, so the supremum is attained against an interval endpoint;
/// all jump points are enumerated. Requires n in I_lambda, 1 <= lambda <= 62.
double sup_distance(uint64_t n, int lambda);

struct CltReport {
  int lambda = 0;
  double epsilon = 0.0;
  bool sampled = false;
  uint64_t population = 0;    ///< 2^lambda, or the sample count
  uint64_t seed = 0;          ///< 0 in full mode
  uint64_t bad_count = 0;
  Rational fraction;          ///< bad_count / population
  double normalized = 0.0;    ///< fraction * sqrt(lambda)
  /// min, lower quartile, median, upper quartile, max of the observed
  /// sup distances (nearest-rank on the sorted values)
  std::vector<double> sup_distance_quantiles;
};

/// Counts n in I_lambda with sup_distance >= epsilon by full enumeration.
/// Guard: lambda <= 22. Deterministic for any thread count.
CltReport clt_scan(int lambda, double epsilon, unsigned threads = 1);

/// Same count over `count` draws of n uniform on I_lambda: a fixed
/// leading 1 bit plus lambda low bits taken from successive outputs of
/// std::mt19937_64 seeded with `seed` (one draw per output word).
/// Guard: lambda <= 62.
CltReport clt_scan_sampled(int lambda, double epsilon, uint64_t count, uint64_t seed);

/// Per-interval bad fractions concatenated over lambda in [1, Lambda),
/// i.e. the [0, 2^Lambda) extension; n in {0, 1} are not counted bad.
struct AggregateBadReport {
  int lambda_limit = 0;
  std::vector<uint64_t> per_interval_bad;  ///< index lambda-1, lambda in [1, Lambda)
  Rational fraction;                       ///< total bad / 2^Lambda
  double normalized = 0.0;                 ///< fraction * sqrt(Lambda)
};
AggregateBadReport aggregate_bad_fraction(int lambda_limit, double epsilon,
                                          unsigned threads = 1);

/// Centering of the second-moment statistic
///   Theta-tilde(lambda+u, n) - v*n - w.
/// By default v = Phi(u/sqrt(lambda)) + v_shift; v_override fixes v.
struct CenteringRule {
  double v_shift = 0.0;
  std::optional<double> v_override;
  double w = 0.0;
};

struct SecondMomentReport {
  int lambda = 0;
  int64_t u = 0;
  double v = 0.0;
  double w = 0.0;
  Rational second_moment;   ///< exact mean of the squared statistic
  double normalized = 0.0;  ///< second_moment * sqrt(lambda) / 4^lambda
};

/// Exact second moments over I_lambda for each u in the grid. v and w are
/// rounded to multiples of 2^-64 and the accumulation is pure integer
/// arithmetic; only the report converts to double. Guard: lambda <= 20.
std::vector<SecondMomentReport> second_moment_scan(int lambda,
                                                   const std::vector<int64_t>& u_grid,
                                                   const CenteringRule& rule = {},
                                                   unsigned threads = 1);

struct UniformMoments {
  Rational mean_closed;
  Rational mean_direct;
  Rational square_closed;
  Rational square_direct;
};

/// E(n) and E(n^2) for n uniform on I_lambda: closed forms alongside the
/// direct sums. Guard: lambda <= 26.
UniformMoments uniform_moments(int lambda);

/// u as a function of lambda: u = constant + sqrt_multiple * floor(sqrt(lambda)).
struct OffsetRule {
  int64_t constant = 0;
  int64_t sqrt_multiple = 0;
};

struct LemmaRatioRow {
  std::string family;  ///< first_moment | mixed_moment | second_moment
  int lambda = 0;
  int64_t u = 0;
  double ratio = 0.0;
  double deviation = 0.0;  ///< |ratio - 1|
};

/// Ratios of the interval moments at k = lambda + u against their
/// predicted main terms:
///   first_moment:  mean of Theta-tilde over (3/2) 2^lambda Phi(u/sqrt(lambda))
///   mixed_moment:  mean of n Theta-tilde over (7/3) 4^lambda Phi(u/sqrt(lambda))
///   second_moment: mean of Theta-tilde^2 over (7/3) 4^lambda Phi(u/sqrt(lambda))^2
/// Guards: lambda <= 22; second_moment rows are emitted for lambda <= 18 only.
std::vector<LemmaRatioRow> lemma_ratio_checks(const std::vector<int>& lambda_grid,
                                              const std::vector<OffsetRule>& u_rules,
                                              unsigned threads = 1);

/// Least-squares slope of log(deviation) against log(lambda) for one
/// family of an emitted ratio table, restricted to one offset rule.
double lemma_deviation_slope(const std::vector<LemmaRatioRow>& rows,
                             const std::string& family, const OffsetRule& rule);

/// (1/N) sum_{0 <= n < N} Theta_p(j, n)/(n+1), exact. Guard: N <= 2^20.
Rational singmaster_average(uint64_t n_limit, int64_t j, uint64_t p);

/// Spearman rank correlation (average ranks on ties).
double spearman(const std::vector<double>& x, const std::vector<double>& y);

/// Least-squares slope of y against x.
double linear_fit_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace binrow

#endif
