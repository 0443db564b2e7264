#include "binrow/moments.hpp"

#include <algorithm>
#include <stdexcept>

#include "binrow/rows.hpp"

namespace binrow {

namespace {

Poly poly2(std::initializer_list<std::array<int, 2>> exps,
           std::initializer_list<Rational> coefs) {
  Poly p(2);
  auto e = exps.begin();
  auto c = coefs.begin();
  for (; e != exps.end(); ++e, ++c) p.add_term(*c, (*e)[0], (*e)[1]);
  return p;
}

// 1 - x y
Poly one_minus_xy() { return poly2({{0, 0}, {1, 1}}, {1, -1}); }

// 1 - (x/2)(1+y)^2
Poly half_kernel() {
  return poly2({{0, 0}, {1, 0}, {1, 1}, {1, 2}},
               {1, Rational(-1, 2), -1, Rational(-1, 2)});
}

// 1 - x(1+y)^2
Poly full_kernel() {
  return poly2({{0, 0}, {1, 0}, {1, 1}, {1, 2}}, {1, -1, -2, -1});
}

Poly one_minus_y() { return poly2({{0, 0}, {0, 1}}, {1, -1}); }

Poly one_minus_2xy() { return poly2({{0, 0}, {1, 1}}, {1, -2}); }

Poly mean_num() {
  // (y/2)(4 - 3xy - 2xy^2) = 2y - (3/2)xy^2 - xy^3
  return poly2({{0, 1}, {1, 2}, {1, 3}}, {2, Rational(-3, 2), -1});
}

Poly p3(std::initializer_list<std::array<int, 3>> exps,
        std::initializer_list<Rational> coefs) {
  Poly p(3);
  auto e = exps.begin();
  auto c = coefs.begin();
  for (; e != exps.end(); ++e, ++c) p.add_term(*c, (*e)[0], (*e)[1], (*e)[2]);
  return p;
}

Poly q_diag() { return p3({{0, 0, 0}, {1, 1, 1}}, {1, -4}); }          // 1-4xyz
Poly q_z() { return p3({{0, 0, 0}, {1, 0, 1}, {1, 1, 2}}, {1, -2, -2}); }  // 1-2xz(1+yz)
Poly q_y() { return p3({{0, 0, 0}, {1, 1, 0}, {1, 2, 1}}, {1, -2, -2}); }  // 1-2xy(1+yz)
Poly one_minus_4yz() { return p3({{0, 0, 0}, {0, 1, 1}}, {1, -4}); }

}  // namespace

RationalGF gf_mean() { return {mean_num(), one_minus_xy() * half_kernel()}; }

RationalGF gf_mean_partial() {
  return {mean_num(), one_minus_xy() * half_kernel() * one_minus_y()};
}

RationalGF gf_weighted() {
  Poly dm = one_minus_xy() * half_kernel();
  Poly two_y = poly2({{0, 1}}, {2});
  Poly xy_1py = poly2({{1, 1}, {1, 2}}, {1, 1});
  Poly xy2_1m4y = poly2({{1, 2}, {1, 3}}, {1, -4});
  Poly num = two_y * dm * one_minus_2xy() + xy_1py * mean_num() * one_minus_2xy() +
             xy2_1m4y * dm;
  Poly den = dm * one_minus_2xy() * full_kernel();
  return {num, den};
}

RationalGF gf_weighted_partial() {
  RationalGF g = gf_weighted();
  return {g.num, g.den * one_minus_y()};
}

RationalGF gf_cross() {
  Poly q1 = q_diag(), q2 = q_z(), q3 = q_y(), r = one_minus_4yz();
  Poly P = q1 * q2 * q3;
  Poly num = p3({{0, 1, 1}}, {4}) * P +
             p3({{1, 0, 2}}, {1}) * (p3({{0, 1, 0}}, {2}) * q1 + p3({{1, 2, 1}}, {2}) * r) * q3 +
             p3({{1, 2, 0}}, {1}) * (p3({{0, 0, 1}}, {2}) * q1 + p3({{1, 1, 2}}, {2}) * r) * q2 +
             p3({{1, 2, 2}}, {1}) * r * q2 * q3;
  // 1 - x(1+yz)^2
  Poly head = p3({{0, 0, 0}, {1, 0, 0}, {1, 1, 1}, {1, 2, 2}}, {1, -1, -2, -1});
  Poly den = head * P - p3({{1, 1, 1}}, {1}) * q1 * q3 - p3({{1, 1, 1}}, {1}) * q1 * q2;
  return {num, den};
}

TruncatedSeries series_cross_shift(const TruncatedSeries& a_series, Exponents bounds) {
  Poly q1 = q_diag(), q2 = q_z(), r = one_minus_4yz();
  Poly b0_num = p3({{0, 1, 0}}, {2}) * q1 + p3({{1, 2, 1}}, {2}) * r;
  TruncatedSeries b0 = expand_gf({b0_num, q1 * q2}, bounds);
  TruncatedSeries fac = expand_gf({p3({{1, 1, 0}, {1, 2, 1}}, {2, 2}), q2}, bounds);
  return series_add(b0, series_mul(fac, a_series));
}

TruncatedSeries series_cross_shift_t(const TruncatedSeries& a_series, Exponents bounds) {
  Poly q1 = q_diag(), q3 = q_y(), r = one_minus_4yz();
  Poly c0_num = p3({{0, 0, 1}}, {2}) * q1 + p3({{1, 1, 2}}, {2}) * r;
  TruncatedSeries c0 = expand_gf({c0_num, q1 * q3}, bounds);
  TruncatedSeries fac = expand_gf({p3({{1, 0, 1}, {1, 1, 2}}, {2, 2}), q3}, bounds);
  return series_add(c0, series_mul(fac, a_series));
}

MomentTable moments_direct(int lambda, bool with_trivariate) {
  if (lambda < 0) throw std::invalid_argument("lambda must be >= 0");
  if (lambda > 14) throw guard_error("moments_direct: lambda > 14");
  if (with_trivariate && lambda > 9)
    throw guard_error("moments_direct: trivariate tables need lambda <= 9");
  MomentTable t;
  t.lambda = lambda;
  t.kmax = 2 * lambda + 4;
  size_t width = static_cast<size_t>(t.kmax) + 1;
  std::vector<BigInt> m(width), fm(width), mp(width), fmp(width), m2(width), fm2(width);
  t.has_trivariate = with_trivariate;
  if (with_trivariate) {
    t.a.assign(width, std::vector<BigInt>(width, BigInt(0)));
    t.b.assign(width, std::vector<BigInt>(width, BigInt(0)));
    t.c.assign(width, std::vector<BigInt>(width, BigInt(0)));
  }
  enumerate_interval_pairs(lambda, [&](const RowPair& pair) {
    const SparseRow& row = pair.current;
    uint64_t n = row.n();
    BigInt running = 0;
    for (int k = 0; k <= t.kmax; ++k) {
      const BigInt& v = row.at(k);
      if (v != 0) {
        m[static_cast<size_t>(k)] += v;
        mp[static_cast<size_t>(k)] += v * n;
        m2[static_cast<size_t>(k)] += v * v;
        running += v;
      }
      fm[static_cast<size_t>(k)] += running;
      fmp[static_cast<size_t>(k)] += running * n;
      fm2[static_cast<size_t>(k)] += running * running;
    }
    if (t.has_trivariate) {
      auto cur = row.entries();
      auto pred = pair.predecessor.entries();
      for (const auto& [k, vk] : cur) {
        if (k > t.kmax) continue;
        auto ki = static_cast<size_t>(k);
        for (const auto& [l, vl] : cur)
          if (l <= t.kmax) t.a[ki][static_cast<size_t>(l)] += vk * vl;
        for (const auto& [l, vl] : pred)
          if (l <= t.kmax) t.b[ki][static_cast<size_t>(l)] += vk * vl;
      }
      for (const auto& [k, vk] : pred) {
        if (k > t.kmax) continue;
        auto ki = static_cast<size_t>(k);
        for (const auto& [l, vl] : cur)
          if (l <= t.kmax) t.c[ki][static_cast<size_t>(l)] += vk * vl;
      }
    }
  });
  BigInt scale = BigInt(1) << lambda;
  auto norm = [&](std::vector<BigInt>& src, std::vector<Rational>& dst) {
    dst.reserve(width);
    for (auto& v : src) dst.emplace_back(v, scale);
  };
  norm(m, t.m);
  norm(fm, t.frak_m);
  norm(mp, t.m_prime);
  norm(fmp, t.frak_m_prime);
  norm(m2, t.m2);
  norm(fm2, t.frak_m2);
  return t;
}

namespace {

struct Verifier {
  std::vector<Discrepancy>& out;

  void check(const std::string& family, int lambda, int k, int l,
             const Rational& expected, const Rational& got) {
    if (expected != got) out.push_back({family, lambda, k, l, expected, got});
  }
};

Rational table_at(const std::vector<Rational>& v, int k) {
  if (k < 0 || k >= static_cast<int>(v.size())) return Rational(0);
  return v[static_cast<size_t>(k)];
}

BigInt grid_at(const std::vector<std::vector<BigInt>>& g, int k, int l) {
  if (k < 0 || l < 0 || k >= static_cast<int>(g.size()) ||
      l >= static_cast<int>(g.size()))
    return BigInt(0);
  return g[static_cast<size_t>(k)][static_cast<size_t>(l)];
}

}  // namespace

std::vector<Discrepancy> verify_gf_identities(int lambda_max_bivariate,
                                              int lambda_max_trivariate) {
  std::vector<Discrepancy> out;
  Verifier v{out};
  int lb = lambda_max_bivariate;
  int lt = lambda_max_trivariate;
  if (lt > lb) throw std::invalid_argument("trivariate bound exceeds bivariate bound");

  std::vector<MomentTable> tables;
  for (int lam = 0; lam <= lb; ++lam)
    tables.push_back(moments_direct(lam, lam <= lt));

  int kb = 2 * lb + 4;
  Exponents bounds2{lb, kb, 0};
  TruncatedSeries sM = expand_gf(gf_mean(), bounds2);
  TruncatedSeries sfM = expand_gf(gf_mean_partial(), bounds2);
  TruncatedSeries sMp = expand_gf(gf_weighted(), bounds2);
  TruncatedSeries sfMp = expand_gf(gf_weighted_partial(), bounds2);
  for (int lam = 0; lam <= lb; ++lam) {
    const MomentTable& t = tables[static_cast<size_t>(lam)];
    for (int k = 0; k <= kb; ++k) {
      // count families vanish beyond the support; partial-sum families
      // saturate at their value on the last supported key
      int ksat = std::min(k, t.kmax);
      v.check("M", lam, k, -1, table_at(t.m, k), sM.at(lam, k));
      v.check("frakM", lam, k, -1, table_at(t.frak_m, ksat), sfM.at(lam, k));
      v.check("Mprime", lam, k, -1, table_at(t.m_prime, k), sMp.at(lam, k));
      v.check("frakMprime", lam, k, -1, table_at(t.frak_m_prime, ksat), sfMp.at(lam, k));
    }
  }

  // one-step recurrences with boundary delta corrections
  for (int lam = 1; lam <= lb; ++lam) {
    const MomentTable& t = tables[static_cast<size_t>(lam)];
    const MomentTable& s = tables[static_cast<size_t>(lam - 1)];
    for (int k = 0; k <= t.kmax; ++k) {
      Rational pred = (table_at(s.m, k - 2) + 2 * table_at(s.m, k - 1) +
                       table_at(s.m, k)) /
                      2;
      if (k - 1 == lam) pred += Rational(1, 2);
      if (k - 2 == lam) pred -= 1;
      v.check("m-rec", lam, k, -1, table_at(t.m, k), pred);

      Rational predp = table_at(s.m_prime, k) + 2 * table_at(s.m_prime, k - 1) +
                       table_at(s.m_prime, k - 2) + table_at(s.m, k - 1) +
                       table_at(s.m, k - 2);
      if (k - 1 == lam) predp += Rational(BigInt(1) << (lam - 1));
      if (k - 2 == lam) predp -= Rational(BigInt(1) << (lam + 1));
      v.check("mprime-rec", lam, k, -1, table_at(t.m_prime, k), predp);
    }
  }

  // partial-sum families are cumulative in k
  for (int lam = 0; lam <= lb; ++lam) {
    const MomentTable& t = tables[static_cast<size_t>(lam)];
    Rational acc = 0, accp = 0;
    for (int k = 0; k <= t.kmax; ++k) {
      acc += table_at(t.m, k);
      accp += table_at(t.m_prime, k);
      v.check("frakM-partial", lam, k, -1, table_at(t.frak_m, k), acc);
      v.check("frakMprime-partial", lam, k, -1, table_at(t.frak_m_prime, k), accp);
    }
    v.check("normalization", lam, t.kmax, -1, acc,
            Rational(3 * (BigInt(1) << lam) + 1, 2));
    for (int k = 0; k <= t.kmax; ++k) {
      BigInt den = denominator(table_at(t.m, k));
      bool dyadic = (BigInt(1) << lam) % den == 0;
      if (!dyadic)
        out.push_back({"dyadic", lam, k, -1, Rational(0), table_at(t.m, k)});
    }
  }

  if (lt < 0) return out;

  int kt = 2 * lt + 4;
  Exponents bounds3{lt, kt, kt};
  TruncatedSeries sA = expand_gf(gf_cross(), bounds3);
  TruncatedSeries sB = series_cross_shift(sA, bounds3);
  TruncatedSeries sC = series_cross_shift_t(sA, bounds3);
  for (int lam = 0; lam <= lt; ++lam) {
    const MomentTable& t = tables[static_cast<size_t>(lam)];
    for (int k = 0; k <= kt; ++k)
      for (int l = 0; l <= kt; ++l) {
        bool in = k <= t.kmax && l <= t.kmax;
        Rational a_exp = in ? Rational(grid_at(t.a, k, l)) : Rational(0);
        v.check("A", lam, k, l, a_exp, sA.at(lam, k, l));
        Rational b_exp = in ? Rational(grid_at(t.b, k, l)) : Rational(0);
        v.check("B", lam, k, l, b_exp, sB.at(lam, k, l));
        Rational c_exp = in ? Rational(grid_at(t.c, k, l)) : Rational(0);
        v.check("C", lam, k, l, c_exp, sC.at(lam, k, l));
      }
  }

  // the linear system itself: A = 4yz + x(1+4yz+y^2z^2)A + xz^2 B + xy^2 C
  //                               + xy^2z^2 (1-4yz)/(1-4xyz)
  {
    Poly q1 = q_diag();
    Poly free_num = p3({{0, 1, 1}}, {4}) * q1 + p3({{1, 2, 2}}, {1}) * one_minus_4yz();
    TruncatedSeries rhs = expand_gf({free_num, q1}, bounds3);
    TruncatedSeries kernel = TruncatedSeries::from_poly(
        p3({{1, 0, 0}, {1, 1, 1}, {1, 2, 2}}, {1, 4, 1}), bounds3);
    rhs = series_add(rhs, series_mul(kernel, sA));
    rhs = series_add(rhs, series_mul(TruncatedSeries::from_poly(p3({{1, 0, 2}}, {1}), bounds3), sB));
    rhs = series_add(rhs, series_mul(TruncatedSeries::from_poly(p3({{1, 2, 0}}, {1}), bounds3), sC));
    for (int lam = 0; lam <= lt; ++lam)
      for (int k = 0; k <= kt; ++k)
        for (int l = 0; l <= kt; ++l)
          v.check("A-system", lam, k, l, sA.at(lam, k, l), rhs.at(lam, k, l));
  }

  for (int lam = 0; lam <= lt; ++lam) {
    const MomentTable& t = tables[static_cast<size_t>(lam)];
    BigInt scale = BigInt(1) << lam;
    BigInt pow4 = lam >= 1 ? BigInt(1) << (2 * (lam - 1)) : BigInt(0);
    for (int k = 0; k <= t.kmax; ++k) {
      // diagonal of a recovers the squared-count moments
      v.check("m2-diag", lam, k, k, table_at(t.m2, k),
              Rational(grid_at(t.a, k, k), scale));
      for (int l = 0; l <= t.kmax; ++l) {
        if (grid_at(t.a, k, l) != grid_at(t.a, l, k))
          out.push_back({"a-sym", lam, k, l, Rational(grid_at(t.a, k, l)),
                         Rational(grid_at(t.a, l, k))});
        if (grid_at(t.c, k, l) != grid_at(t.b, l, k))
          out.push_back({"bc-transpose", lam, k, l, Rational(grid_at(t.c, k, l)),
                         Rational(grid_at(t.b, l, k))});
      }
    }
    // double partial sums of a recover the squared-partial-sum moments
    BigInt box = 0;
    for (int k = 0; k <= t.kmax; ++k) {
      BigInt rowacc = 0;
      for (int l = 0; l <= k; ++l) rowacc += grid_at(t.a, k, l);
      // box(k) = box(k-1) + row k up to l=k + column k up to l=k-1
      BigInt col = 0;
      for (int l = 0; l < k; ++l) col += grid_at(t.a, l, k);
      box += rowacc + col;
      v.check("frakm2-dps", lam, k, -1, table_at(t.frak_m2, k), Rational(box, scale));
    }
    // a-, b-, c-recurrences with boundary delta corrections
    if (lam >= 1) {
      const MomentTable& s = tables[static_cast<size_t>(lam - 1)];
      for (int k = 0; k <= t.kmax; ++k)
        for (int l = 0; l <= t.kmax; ++l) {
          BigInt pa = grid_at(s.a, k, l) + grid_at(s.b, k, l - 2) +
                      grid_at(s.c, k - 2, l) + grid_at(s.a, k - 2, l - 2) +
                      4 * grid_at(s.a, k - 1, l - 1);
          if (k - 1 == lam && l - 1 == lam) pa += pow4;
          if (k - 2 == lam && l - 2 == lam) pa -= pow4 * 4;
          if (grid_at(t.a, k, l) != pa)
            out.push_back({"a-rec", lam, k, l, Rational(grid_at(t.a, k, l)), Rational(pa)});

          BigInt pb = 2 * grid_at(s.b, k, l - 1) + 2 * grid_at(s.a, k - 2, l - 1) +
                      2 * grid_at(s.a, k - 1, l) + 2 * grid_at(s.b, k - 1, l - 2);
          if (k - 1 == lam && l == lam) pb += 2 * pow4;
          if (k - 2 == lam && l - 1 == lam) pb -= 8 * pow4;
          if (grid_at(t.b, k, l) != pb)
            out.push_back({"b-rec", lam, k, l, Rational(grid_at(t.b, k, l)), Rational(pb)});

          BigInt pc = 2 * grid_at(s.c, k - 1, l) + 2 * grid_at(s.a, k - 1, l - 2) +
                      2 * grid_at(s.a, k, l - 1) + 2 * grid_at(s.c, k - 2, l - 1);
          if (k == lam && l - 1 == lam) pc += 2 * pow4;
          if (k - 1 == lam && l - 2 == lam) pc -= 8 * pow4;
          if (grid_at(t.c, k, l) != pc)
            out.push_back({"c-rec", lam, k, l, Rational(grid_at(t.c, k, l)), Rational(pc)});
        }
    }
  }

  return out;
}

}  // namespace binrow
