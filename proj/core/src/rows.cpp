#include "binrow/rows.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "binrow/valuation.hpp"

namespace binrow {

void SparseRow::trim() {
  size_t front = 0;
  while (front < counts_.size() && counts_[front] == 0) ++front;
  if (front == counts_.size()) {
    counts_.clear();
    lo_ = 0;
    return;
  }
  size_t back = counts_.size();
  while (back > front && counts_[back - 1] == 0) --back;
  if (front > 0 || back < counts_.size()) {
    counts_.erase(counts_.begin() + static_cast<ptrdiff_t>(back), counts_.end());
    counts_.erase(counts_.begin(), counts_.begin() + static_cast<ptrdiff_t>(front));
    lo_ += static_cast<int64_t>(front);
  }
}

std::vector<std::pair<int64_t, BigInt>> SparseRow::entries() const {
  std::vector<std::pair<int64_t, BigInt>> out;
  for (size_t i = 0; i < counts_.size(); ++i)
    if (counts_[i] != 0) out.emplace_back(lo_ + static_cast<int64_t>(i), counts_[i]);
  return out;
}

BigInt SparseRow::total() const {
  BigInt s = 0;
  for (const auto& c : counts_) s += c;
  return s;
}

BigInt SparseRow::partial_sum(int64_t k) const {
  BigInt s = 0;
  int64_t hi = std::min<int64_t>(k, max_key());
  for (int64_t i = lo_; i <= hi; ++i) s += counts_[static_cast<size_t>(i - lo_)];
  return s;
}

bool SparseRow::operator==(const SparseRow& other) const {
  return entries() == other.entries();
}

namespace {

// mutable dense row used by the DP; count(k) = c[k - lo]
struct Row {
  int64_t lo = 0;
  std::vector<BigInt> c;
};

Row singleton(int64_t k, BigInt v) {
  Row r;
  r.lo = k;
  r.c.push_back(std::move(v));
  return r;
}

// scale * shift_a(r)
Row shift_scale(const Row& r, int64_t a, uint64_t scale) {
  Row out;
  out.lo = r.lo + a;
  out.c.reserve(r.c.size());
  for (const auto& v : r.c) out.c.push_back(v * scale);
  return out;
}

// s1 * shift_{a1}(r1) + s2 * shift_{a2}(r2); either scale may be zero
Row combine(const Row& r1, int64_t a1, uint64_t s1, const Row& r2, int64_t a2,
            uint64_t s2) {
  if (s1 == 0 || r1.c.empty()) return s2 ? shift_scale(r2, a2, s2) : Row{};
  if (s2 == 0 || r2.c.empty()) return shift_scale(r1, a1, s1);
  int64_t lo = std::min(r1.lo + a1, r2.lo + a2);
  int64_t hi = std::max(r1.lo + a1 + static_cast<int64_t>(r1.c.size()),
                        r2.lo + a2 + static_cast<int64_t>(r2.c.size()));
  Row out;
  out.lo = lo;
  out.c.assign(static_cast<size_t>(hi - lo), BigInt(0));
  for (size_t i = 0; i < r1.c.size(); ++i)
    out.c[static_cast<size_t>(r1.lo + a1 + static_cast<int64_t>(i) - lo)] += r1.c[i] * s1;
  for (size_t i = 0; i < r2.c.size(); ++i)
    out.c[static_cast<size_t>(r2.lo + a2 + static_cast<int64_t>(i) - lo)] += r2.c[i] * s2;
  return out;
}

SparseRow wrap(uint64_t n, uint64_t p, Row r) {
  return SparseRow(n, p, r.lo, std::move(r.c));
}

// p = 2 transitions on (row m, row m-1) pairs
Row even_child(const Row& cur, const Row& pred) {  // row(2m) = cur + shift2(pred)
  return combine(cur, 0, 1, pred, 2, 1);
}
Row odd_of(const Row& r) {  // row(2m+1) = 2 shift1(row(m))
  return shift_scale(r, 1, 2);
}

// (row m, row m-1) reached by walking the binary digits of m
std::pair<Row, Row> pair_of(uint64_t m) {
  Row cur = singleton(1, 2);
  Row pred = singleton(0, 1);
  int top = 63;
  while (!((m >> top) & 1)) --top;
  for (int b = top - 1; b >= 0; --b) {
    if ((m >> b) & 1) {
      Row c = odd_of(cur);
      pred = even_child(cur, pred);
      cur = std::move(c);
    } else {
      Row c = even_child(cur, pred);
      pred = odd_of(pred);
      cur = std::move(c);
    }
  }
  return {std::move(cur), std::move(pred)};
}

// general p: row(p*m + a) from the pair for m
Row child_general(const Row& cur, const Row& pred, uint64_t p, uint64_t a) {
  return combine(cur, static_cast<int64_t>(a), a + 1, pred,
                 static_cast<int64_t>(p + a), p - 1 - a);
}
// row(p*m + a - 1) from the pair for m
Row child_pred_general(const Row& cur, const Row& pred, uint64_t p, uint64_t a) {
  if (a >= 1)
    return combine(cur, static_cast<int64_t>(a) - 1, a, pred,
                   static_cast<int64_t>(p + a) - 1, p - a);
  // p*m - 1 = p*(m-1) + (p-1)
  return shift_scale(pred, static_cast<int64_t>(p) - 1, p);
}

}  // namespace

SparseRow row_bruteforce(uint64_t n, uint64_t p) {
  if (n > (uint64_t(1) << 24)) throw guard_error("row_bruteforce: n > 2^24");
  if (!is_prime(p)) throw std::invalid_argument("row_bruteforce requires prime p");
  uint64_t sp = digit_sum(n, p);
  Row r;
  r.lo = static_cast<int64_t>(sp);
  for (uint64_t t = 0; t <= n; ++t) {
    uint64_t j = nu_binomial(n, t, p);
    size_t idx = static_cast<size_t>(j * (p - 1));
    if (idx >= r.c.size()) r.c.resize(idx + 1, BigInt(0));
    ++r.c[idx];
  }
  return wrap(n, p, std::move(r));
}

BigInt fine_count(uint64_t n, uint64_t p) {
  if (p < 2) throw std::invalid_argument("base must be >= 2");
  BigInt prod = 1;
  while (n) {
    prod *= (n % p) + 1;
    n /= p;
  }
  return prod;
}

SparseRow tilde_row(uint64_t n) {
  if (n == 0) return SparseRow(0, 2, 0, {BigInt(1)});
  auto [cur, pred] = pair_of(n);
  (void)pred;
  return wrap(n, 2, std::move(cur));
}

SparseRow tilde_row_general(uint64_t n, uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("tilde_row_general requires prime p");
  if (n == 0) return SparseRow(0, p, 0, {BigInt(1)});
  std::vector<uint64_t> ds;
  for (uint64_t m = n; m; m /= p) ds.push_back(m % p);
  std::reverse(ds.begin(), ds.end());
  uint64_t d0 = ds[0];
  Row cur = singleton(static_cast<int64_t>(d0), d0 + 1);
  Row pred = d0 == 1 ? singleton(0, 1) : singleton(static_cast<int64_t>(d0) - 1, d0);
  for (size_t i = 1; i < ds.size(); ++i) {
    uint64_t a = ds[i];
    Row c = child_general(cur, pred, p, a);
    Row cp = child_pred_general(cur, pred, p, a);
    cur = std::move(c);
    pred = std::move(cp);
  }
  return wrap(n, p, std::move(cur));
}

BigInt theta_partial(int64_t j, uint64_t n, uint64_t p) {
  if (j < 0) return 0;
  SparseRow row = tilde_row_general(n, p);
  int64_t sp = static_cast<int64_t>(digit_sum(n, p));
  // clamp before multiplying so huge j cannot overflow the key
  if (j > row.max_key() - sp) return row.total();
  return row.partial_sum(sp + j * static_cast<int64_t>(p - 1));
}

BigInt theta_tilde(int64_t k, uint64_t n) {
  return tilde_row(n).partial_sum(k);
}

HowardCheck howard_check(uint64_t n, int j) {
  if (n < 1) throw std::invalid_argument("howard_check requires n >= 1");
  if (j < 1 || j > 3) throw std::invalid_argument("howard_check requires j in {1,2,3}");
  auto bc = [&](const char* w) {
    return Rational(block_count(n, BlockWord::parse(w)));
  };
  Rational x10 = bc("10");
  Rational f;
  if (j == 1) {
    f = x10 / 2;
  } else if (j == 2) {
    f = -x10 / 8 + x10 * x10 / 8 + bc("100") + bc("110") / 4;
  } else {
    Rational x100 = bc("100"), x110 = bc("110");
    f = x10 / 24 - x10 * x10 / 16 - x100 / 2 - x110 / 8 + x10 * x10 * x10 / 48 +
        x10 * x100 / 2 + x10 * x110 / 8 + Rational(2) * bc("1000") + bc("1010") / 2 +
        bc("1100") / 2 + bc("1110") / 8;
  }
  SparseRow row = tilde_row(n);
  int64_t s = static_cast<int64_t>(digit_sum(n, 2));
  HowardCheck out;
  out.formula = f;
  out.ratio = Rational(row.at(s + j), row.at(s));
  return out;
}

MuReport mu_n(uint64_t n) {
  if (n >= (uint64_t(1) << 63))
    throw std::invalid_argument("mu_n: n + 1 must fit the digit-sum prefix domain");
  SparseRow row = tilde_row(n);
  int64_t s = static_cast<int64_t>(digit_sum(n, 2));
  BigInt weighted = 0;
  for (const auto& [k, c] : row.entries()) weighted += BigInt(k - s) * c;
  MuReport out;
  out.via_row = Rational(weighted, BigInt(n) + 1);
  out.via_digit_sums =
      Rational(2 * digit_sum_prefix(n + 1), BigInt(n) + 1) - Rational(s);
  out.fluctuation =
      to_double(out.via_row) - std::log2(static_cast<double>(n) + 1.0) +
      static_cast<double>(s);
  return out;
}

namespace {

template <class F>
void dfs(uint64_t m, int level, int lambda, const Row& cur, const Row& pred, F&& f) {
  if (level == lambda) {
    f(m, cur, pred);
    return;
  }
  {
    Row r_even = even_child(cur, pred);
    Row r_even_pred = odd_of(pred);
    dfs(2 * m, level + 1, lambda, r_even, r_even_pred, f);
    Row r_odd = odd_of(cur);
    dfs(2 * m + 1, level + 1, lambda, r_odd, r_even, f);
  }
}

template <class F>
void run_interval(int lambda, F&& f) {
  if (lambda < 0) throw std::invalid_argument("lambda must be >= 0");
  if (lambda > 26) throw guard_error("enumerate_interval: lambda > 26");
  Row cur = singleton(1, 2);
  Row pred = singleton(0, 1);
  dfs(1, 0, lambda, cur, pred, f);
}

}  // namespace

void enumerate_interval(int lambda,
                        const std::function<void(uint64_t, const SparseRow&)>& visit) {
  run_interval(lambda, [&](uint64_t n, const Row& cur, const Row&) {
    Row copy = cur;
    visit(n, wrap(n, 2, std::move(copy)));
  });
}

void enumerate_interval_pairs(int lambda,
                              const std::function<void(const RowPair&)>& visit) {
  run_interval(lambda, [&](uint64_t n, const Row& cur, const Row& pred) {
    Row c1 = cur, c2 = pred;
    RowPair pair{wrap(n, 2, std::move(c1)), wrap(n - 1, 2, std::move(c2))};
    visit(pair);
  });
}

void enumerate_subtree_pairs(uint64_t m, int level, int lambda,
                             const std::function<void(const RowPair&)>& visit) {
  if (level < 0 || lambda < level) throw std::invalid_argument("bad subtree level");
  if (lambda > 26) throw guard_error("enumerate_subtree_pairs: lambda > 26");
  if (m < (uint64_t(1) << level) || m >= (uint64_t(1) << (level + 1)))
    throw std::invalid_argument("subtree root not at the stated level");
  auto [cur, pred] = pair_of(m);
  dfs(m, level, lambda, cur, pred, [&](uint64_t n, const Row& c, const Row& p) {
    Row c1 = c, c2 = p;
    RowPair pair{wrap(n, 2, std::move(c1)), wrap(n - 1, 2, std::move(c2))};
    visit(pair);
  });
}

}  // namespace binrow
