#include "binrow/clt.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>

#include "binrow/normal.hpp"
#include "binrow/rows.hpp"
#include "binrow/valuation.hpp"

namespace binrow {

namespace {

// Phi((j - lambda)/sqrt(lambda)) for j = 0 .. width-1
std::vector<double> phi_grid(int lambda, int width) {
  std::vector<double> g(static_cast<size_t>(width));
  double sq = std::sqrt(static_cast<double>(lambda));
  for (int j = 0; j < width; ++j)
    g[static_cast<size_t>(j)] = phi((j - lambda) / sq);
  return g;
}

// sup over the jump points of one row; grid must cover [0, max_key+2)
double sup_of_row(const SparseRow& row, const std::vector<double>& grid) {
  double pop = static_cast<double>(row.n()) + 1.0;
  int64_t lo = row.min_key();
  int64_t hi = row.max_key();
  double best = 0.0;
  BigInt running = 0;
  for (int64_t j = lo - 1; j <= hi; ++j) {
    running += row.at(j);
    double c = running.convert_to<double>() / pop;
    double dl = std::fabs(c - grid[static_cast<size_t>(j)]);
    double dr = std::fabs(c - grid[static_cast<size_t>(j + 1)]);
    best = std::max(best, std::max(dl, dr));
  }
  return best;
}

// deterministic partition of I_lambda into subtrees; fold runs on workers,
// per-subtree accumulators are merged in subtree order by the caller
template <class Acc>
std::vector<Acc> scan_subtrees(int lambda, unsigned threads,
                               const std::function<void(Acc&, const RowPair&)>& fold) {
  threads = std::max(1u, threads);
  if (threads == 1 || lambda < 3) {
    std::vector<Acc> accs(1);
    enumerate_interval_pairs(lambda, [&](const RowPair& pr) { fold(accs[0], pr); });
    return accs;
  }
  int depth = 0;
  while ((1u << depth) < threads * 4 && depth < lambda - 1) ++depth;
  size_t subtrees = size_t(1) << depth;
  std::vector<Acc> accs(subtrees);
  std::atomic<size_t> next{0};
  auto work = [&]() {
    for (size_t i = next.fetch_add(1); i < subtrees; i = next.fetch_add(1)) {
      uint64_t root = (uint64_t(1) << depth) + i;
      enumerate_subtree_pairs(root, depth, lambda,
                              [&](const RowPair& pr) { fold(accs[i], pr); });
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  return accs;
}

std::vector<double> nearest_rank_quantiles(std::vector<double> v) {
  if (v.empty()) return {};
  std::sort(v.begin(), v.end());
  auto pick = [&](double p) {
    size_t idx = static_cast<size_t>(p * static_cast<double>(v.size() - 1));
    return v[idx];
  };
  return {pick(0.0), pick(0.25), pick(0.5), pick(0.75), pick(1.0)};
}

}  // namespace

double sup_distance(uint64_t n, int lambda) {
  if (lambda < 1 || lambda > 62) throw std::invalid_argument("sup_distance: lambda must be in 1..62");
  if (n < (uint64_t(1) << lambda) || n >= (uint64_t(1) << (lambda + 1)))
    throw std::invalid_argument("sup_distance: n not in I_lambda");
  SparseRow row = tilde_row(n);
  auto grid = phi_grid(lambda, static_cast<int>(row.max_key()) + 2);
  return sup_of_row(row, grid);
}

CltReport clt_scan(int lambda, double epsilon, unsigned threads) {
  if (lambda < 1) throw std::invalid_argument("clt_scan: lambda must be >= 1");
  if (lambda > 22) throw guard_error("clt_scan: lambda > 22");
  auto grid = phi_grid(lambda, 2 * lambda + 6);
  struct Acc {
    uint64_t bad = 0;
    std::vector<double> sups;
  };
  std::function<void(Acc&, const RowPair&)> fold = [&](Acc& a, const RowPair& pr) {
    double d = sup_of_row(pr.current, grid);
    a.sups.push_back(d);
    if (d >= epsilon) ++a.bad;
  };
  auto accs = scan_subtrees<Acc>(lambda, threads, fold);
  CltReport rep;
  rep.lambda = lambda;
  rep.epsilon = epsilon;
  rep.population = uint64_t(1) << lambda;
  std::vector<double> all;
  all.reserve(rep.population);
  for (auto& a : accs) {
    rep.bad_count += a.bad;
    all.insert(all.end(), a.sups.begin(), a.sups.end());
  }
  rep.fraction = Rational(rep.bad_count, rep.population);
  rep.normalized = to_double(rep.fraction) * std::sqrt(static_cast<double>(lambda));
  rep.sup_distance_quantiles = nearest_rank_quantiles(std::move(all));
  return rep;
}

CltReport clt_scan_sampled(int lambda, double epsilon, uint64_t count, uint64_t seed) {
  if (lambda < 1 || lambda > 62)
    throw std::invalid_argument("clt_scan_sampled: lambda must be in 1..62");
  if (count == 0) throw std::invalid_argument("clt_scan_sampled: empty sample");
  std::mt19937_64 rng(seed);
  uint64_t mask = (uint64_t(1) << lambda) - 1;
  uint64_t lead = uint64_t(1) << lambda;
  CltReport rep;
  rep.lambda = lambda;
  rep.epsilon = epsilon;
  rep.sampled = true;
  rep.population = count;
  rep.seed = seed;
  std::vector<double> sups;
  sups.reserve(count);
  auto grid = phi_grid(lambda, 2 * lambda + 6);
  for (uint64_t i = 0; i < count; ++i) {
    uint64_t n = lead | (rng() & mask);
    SparseRow row = tilde_row(n);
    double d = sup_of_row(row, grid);
    sups.push_back(d);
    if (d >= epsilon) ++rep.bad_count;
  }
  rep.fraction = Rational(rep.bad_count, count);
  rep.normalized = to_double(rep.fraction) * std::sqrt(static_cast<double>(lambda));
  rep.sup_distance_quantiles = nearest_rank_quantiles(std::move(sups));
  return rep;
}

AggregateBadReport aggregate_bad_fraction(int lambda_limit, double epsilon,
                                          unsigned threads) {
  if (lambda_limit < 2) throw std::invalid_argument("aggregate needs Lambda >= 2");
  if (lambda_limit > 22) throw guard_error("aggregate_bad_fraction: Lambda > 22");
  AggregateBadReport rep;
  rep.lambda_limit = lambda_limit;
  BigInt total = 0;
  for (int lam = 1; lam < lambda_limit; ++lam) {
    CltReport r = clt_scan(lam, epsilon, threads);
    rep.per_interval_bad.push_back(r.bad_count);
    total += r.bad_count;
  }
  rep.fraction = Rational(total, BigInt(1) << lambda_limit);
  rep.normalized =
      to_double(rep.fraction) * std::sqrt(static_cast<double>(lambda_limit));
  return rep;
}

namespace {

// round to the nearest multiple of 2^-64, exactly, ties away from zero
BigInt scale_q64(double x) {
  Rational r(x);
  BigInt num = numerator(r) << 64;
  BigInt den = denominator(r);
  BigInt half = den / 2;
  BigInt shifted = num >= 0 ? BigInt(num + half) : BigInt(num - half);
  return shifted / den;
}

}  // namespace

std::vector<SecondMomentReport> second_moment_scan(int lambda,
                                                   const std::vector<int64_t>& u_grid,
                                                   const CenteringRule& rule,
                                                   unsigned threads) {
  if (lambda < 1) throw std::invalid_argument("second_moment_scan: lambda must be >= 1");
  if (lambda > 20) throw guard_error("second_moment_scan: lambda > 20");
  double sq = std::sqrt(static_cast<double>(lambda));
  size_t m = u_grid.size();
  std::vector<double> vs(m), ws(m);
  std::vector<BigInt> V(m), W(m);
  std::vector<int64_t> targets(m);
  for (size_t i = 0; i < m; ++i) {
    double v = rule.v_override ? *rule.v_override
                               : phi(static_cast<double>(u_grid[i]) / sq) + rule.v_shift;
    vs[i] = v;
    ws[i] = rule.w;
    V[i] = scale_q64(v);
    W[i] = scale_q64(rule.w);
    targets[i] = lambda + u_grid[i];
  }
  struct Acc {
    std::vector<BigInt> s;
  };
  std::function<void(Acc&, const RowPair&)> fold = [&](Acc& a, const RowPair& pr) {
    if (a.s.empty()) a.s.assign(m, BigInt(0));
    const SparseRow& row = pr.current;
    uint64_t n = row.n();
    for (size_t i = 0; i < m; ++i) {
      BigInt theta = row.partial_sum(targets[i]);
      BigInt x = (theta << 64) - V[i] * n - W[i];
      a.s[i] += x * x;
    }
  };
  auto accs = scan_subtrees<Acc>(lambda, threads, fold);
  std::vector<BigInt> sums(m, BigInt(0));
  for (auto& a : accs)
    for (size_t i = 0; i < a.s.size(); ++i) sums[i] += a.s[i];
  std::vector<SecondMomentReport> out;
  BigInt denom = BigInt(1) << (lambda + 128);
  double pow4 = std::ldexp(1.0, 2 * lambda);
  for (size_t i = 0; i < m; ++i) {
    SecondMomentReport r;
    r.lambda = lambda;
    r.u = u_grid[i];
    r.v = vs[i];
    r.w = ws[i];
    r.second_moment = Rational(sums[i], denom);
    r.normalized = to_double(r.second_moment) * sq / pow4;
    out.push_back(std::move(r));
  }
  return out;
}

UniformMoments uniform_moments(int lambda) {
  if (lambda < 0) throw std::invalid_argument("lambda must be >= 0");
  if (lambda > 26) throw guard_error("uniform_moments: lambda > 26");
  UniformMoments out;
  BigInt two = BigInt(1) << lambda;
  BigInt four = BigInt(1) << (2 * lambda);
  out.mean_closed = Rational(3 * two - 1, 2);
  out.square_closed = Rational(14 * four - 9 * two + 1, 6);
  BigInt s1 = 0, s2 = 0;
  for (uint64_t n = uint64_t(1) << lambda; n < (uint64_t(1) << (lambda + 1)); ++n) {
    s1 += n;
    s2 += BigInt(n) * n;
  }
  out.mean_direct = Rational(s1, two);
  out.square_direct = Rational(s2, two);
  return out;
}

std::vector<LemmaRatioRow> lemma_ratio_checks(const std::vector<int>& lambda_grid,
                                              const std::vector<OffsetRule>& u_rules,
                                              unsigned threads) {
  std::vector<LemmaRatioRow> out;
  for (int lambda : lambda_grid) {
    if (lambda < 1) throw std::invalid_argument("lemma_ratio_checks: lambda must be >= 1");
    if (lambda > 22) throw guard_error("lemma_ratio_checks: lambda > 22");
    double sq = std::sqrt(static_cast<double>(lambda));
    int64_t isq = static_cast<int64_t>(std::floor(sq));
    std::vector<int64_t> us;
    for (const auto& rule : u_rules) us.push_back(rule.constant + rule.sqrt_multiple * isq);
    size_t m = us.size();
    bool with_second = lambda <= 18;
    struct Acc {
      std::vector<BigInt> first, mixed, second;
    };
    std::function<void(Acc&, const RowPair&)> fold = [&](Acc& a, const RowPair& pr) {
      if (a.first.empty()) {
        a.first.assign(m, BigInt(0));
        a.mixed.assign(m, BigInt(0));
        a.second.assign(m, BigInt(0));
      }
      const SparseRow& row = pr.current;
      uint64_t n = row.n();
      for (size_t i = 0; i < m; ++i) {
        BigInt theta = row.partial_sum(lambda + us[i]);
        a.first[i] += theta;
        a.mixed[i] += theta * n;
        if (with_second) a.second[i] += theta * theta;
      }
    };
    auto accs = scan_subtrees<Acc>(lambda, threads, fold);
    std::vector<BigInt> first(m, BigInt(0)), mixed(m, BigInt(0)), second(m, BigInt(0));
    for (auto& a : accs)
      for (size_t i = 0; i < a.first.size(); ++i) {
        first[i] += a.first[i];
        mixed[i] += a.mixed[i];
        second[i] += a.second[i];
      }
    BigInt pop = BigInt(1) << lambda;
    double pow2 = std::ldexp(1.0, lambda);
    double pow4 = std::ldexp(1.0, 2 * lambda);
    for (size_t i = 0; i < m; ++i) {
      double ph = phi(static_cast<double>(us[i]) / sq);
      double r1 = to_double(Rational(first[i], pop)) / (1.5 * pow2 * ph);
      out.push_back({"first_moment", lambda, us[i], r1, std::fabs(r1 - 1.0)});
      double r2 = to_double(Rational(mixed[i], pop)) / (7.0 / 3.0 * pow4 * ph);
      out.push_back({"mixed_moment", lambda, us[i], r2, std::fabs(r2 - 1.0)});
      if (with_second) {
        double r3 = to_double(Rational(second[i], pop)) / (7.0 / 3.0 * pow4 * ph * ph);
        out.push_back({"second_moment", lambda, us[i], r3, std::fabs(r3 - 1.0)});
      }
    }
  }
  return out;
}

double lemma_deviation_slope(const std::vector<LemmaRatioRow>& rows,
                             const std::string& family, const OffsetRule& rule) {
  std::vector<double> xs, ys;
  for (const auto& r : rows) {
    if (r.family != family) continue;
    int64_t isq = static_cast<int64_t>(std::floor(std::sqrt(double(r.lambda))));
    if (r.u != rule.constant + rule.sqrt_multiple * isq) continue;
    xs.push_back(std::log(double(r.lambda)));
    ys.push_back(std::log(r.deviation));
  }
  return linear_fit_slope(xs, ys);
}

namespace {

Rational sum_pairwise(std::vector<Rational>& terms, size_t lo, size_t hi) {
  if (hi - lo == 1) return terms[lo];
  size_t mid = lo + (hi - lo) / 2;
  return sum_pairwise(terms, lo, mid) + sum_pairwise(terms, mid, hi);
}

}  // namespace

Rational singmaster_average(uint64_t n_limit, int64_t j, uint64_t p) {
  if (n_limit == 0) throw std::invalid_argument("singmaster_average: N must be >= 1");
  if (n_limit > (uint64_t(1) << 20)) throw guard_error("singmaster_average: N > 2^20");
  if (!is_prime(p)) throw std::invalid_argument("singmaster_average requires prime p");
  if (j < 0) return Rational(0);
  std::vector<Rational> terms;
  terms.reserve(n_limit);
  auto push_row = [&](const SparseRow& row) {
    uint64_t n = row.n();
    int64_t sp = static_cast<int64_t>(digit_sum(n, p));
    BigInt theta;
    if (j > row.max_key() - sp)
      theta = BigInt(n) + 1;
    else
      theta = row.partial_sum(sp + j * static_cast<int64_t>(p - 1));
    terms.emplace_back(theta, BigInt(n) + 1);
  };
  terms.emplace_back(1);  // row 0
  uint64_t n = 1;
  if (p == 2) {
    int lam = 0;
    while ((uint64_t(1) << (lam + 1)) <= n_limit) {
      enumerate_interval(lam, [&](uint64_t, const SparseRow& row) { push_row(row); });
      n = uint64_t(1) << (lam + 1);
      ++lam;
    }
  }
  for (; n < n_limit; ++n) push_row(tilde_row_general(n, p));
  Rational total = sum_pairwise(terms, 0, terms.size());
  return total / n_limit;
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("spearman needs two equal-length samples");
  auto ranks = [](const std::vector<double>& v) {
    size_t n = v.size();
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), size_t(0));
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return v[a] < v[b]; });
    std::vector<double> r(n);
    size_t i = 0;
    while (i < n) {
      size_t jj = i;
      while (jj + 1 < n && v[order[jj + 1]] == v[order[i]]) ++jj;
      double avg = (static_cast<double>(i) + static_cast<double>(jj)) / 2.0;
      for (size_t t = i; t <= jj; ++t) r[order[t]] = avg;
      i = jj + 1;
    }
    return r;
  };
  std::vector<double> rx = ranks(x), ry = ranks(y);
  double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / static_cast<double>(rx.size());
  double my = std::accumulate(ry.begin(), ry.end(), 0.0) / static_cast<double>(ry.size());
  double cov = 0, vx = 0, vy = 0;
  for (size_t i = 0; i < rx.size(); ++i) {
    cov += (rx[i] - mx) * (ry[i] - my);
    vx += (rx[i] - mx) * (rx[i] - mx);
    vy += (ry[i] - my) * (ry[i] - my);
  }
  if (vx == 0 || vy == 0) return 0.0;
  return cov / std::sqrt(vx * vy);
}

double linear_fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("linear_fit_slope needs two equal-length samples");
  double n = static_cast<double>(x.size());
  double sx = std::accumulate(x.begin(), x.end(), 0.0);
  double sy = std::accumulate(y.begin(), y.end(), 0.0);
  double sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace binrow
