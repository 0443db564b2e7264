#include <doctest.h>

#include <atomic>
#include <map>
#include <random>
#include <thread>
#include <vector>

#include "binrow/rows.hpp"
#include "binrow/valuation.hpp"

using namespace binrow;

namespace {

std::map<int64_t, uint64_t> as_map(const SparseRow& row) {
  std::map<int64_t, uint64_t> out;
  for (const auto& [k, c] : row.entries()) out[k] = c.convert_to<uint64_t>();
  return out;
}

// the published table of tilde-theta_2(k, n): rows k = 0..6, columns n = 0..17
const std::map<int, std::map<int, uint64_t>> kTable{
    {0, {{0, 1}}},
    {1, {{1, 2}, {2, 2}, {4, 2}, {8, 2}, {16, 2}}},
    {2, {{2, 1}, {3, 4}, {4, 1}, {5, 4}, {6, 4}, {8, 1}, {9, 4}, {10, 4}, {12, 4}, {16, 1}, {17, 4}}},
    {3, {{4, 2}, {5, 2}, {6, 2}, {7, 8}, {8, 2}, {9, 2}, {10, 4}, {11, 8}, {12, 2}, {13, 8}, {14, 8}, {16, 2}, {17, 2}}},
    {4, {{6, 1}, {8, 4}, {9, 4}, {10, 1}, {11, 4}, {12, 5}, {13, 4}, {14, 4}, {15, 16}, {16, 4}, {17, 4}}},
    {5, {{10, 2}, {12, 2}, {13, 2}, {14, 2}, {16, 8}, {17, 8}}},
    {6, {{14, 1}}},
};

std::map<int64_t, uint64_t> table_column(int n) {
  std::map<int64_t, uint64_t> out;
  for (const auto& [k, cols] : kTable) {
    auto it = cols.find(n);
    if (it != cols.end()) out[k] = it->second;
  }
  return out;
}

}  // namespace

TEST_CASE("published table columns n = 0..17") {
  for (int n = 0; n <= 17; ++n) {
    CAPTURE(n);
    CHECK(as_map(tilde_row(static_cast<uint64_t>(n))) == table_column(n));
    CHECK(as_map(row_bruteforce(static_cast<uint64_t>(n), 2)) == table_column(n));
  }
}

TEST_CASE("digit DP equals brute force, p = 2") {
  for (uint64_t n = 0; n <= 1024; ++n) {
    CAPTURE(n);
    CHECK(tilde_row(n) == row_bruteforce(n, 2));
  }
}

TEST_CASE("general recurrence equals brute force, p = 3, 5") {
  for (uint64_t p : {3ull, 5ull})
    for (uint64_t n = 0; n <= 512; ++n) {
      CAPTURE(n);
      CAPTURE(p);
      CHECK(tilde_row_general(n, p) == row_bruteforce(n, p));
    }
  for (uint64_t p : {7ull, 11ull, 13ull})
    for (uint64_t n = 0; n <= 200; ++n)
      CHECK(tilde_row_general(n, p) == row_bruteforce(n, p));
}

TEST_CASE("general recurrence at p = 2 matches the fast path") {
  for (uint64_t n = 0; n <= 2048; ++n) CHECK(tilde_row_general(n, 2) == tilde_row(n));
}

TEST_CASE("all-ones rows concentrate at a single key") {
  for (int lambda = 0; lambda <= 26; ++lambda) {
    uint64_t n = (uint64_t(1) << lambda) - 1;
    SparseRow row = tilde_row(n);
    auto m = as_map(row);
    REQUIRE(m.size() == 1);
    CHECK(row.at(lambda) == BigInt(1) << lambda);
  }
}

TEST_CASE("row mass and key support") {
  for (uint64_t p : {2ull, 3ull, 5ull})
    for (uint64_t n = 0; n <= 700; ++n) {
      SparseRow row = tilde_row_general(n, p);
      CHECK(row.total() == BigInt(n) + 1);
      int64_t sp = static_cast<int64_t>(digit_sum(n, p));
      for (const auto& [k, c] : row.entries()) {
        CHECK(k >= sp);
        CHECK((k - sp) % static_cast<int64_t>(p - 1) == 0);
        CHECK(c > 0);
      }
    }
}

TEST_CASE("fine counts") {
  CHECK(fine_count(3, 2) == 4);
  CHECK(fine_count(4, 2) == 2);
  CHECK(fine_count(5, 3) == 6);
  for (uint64_t n = 0; n < 800; ++n) {
    CHECK(fine_count(n, 2) == BigInt(1) << digit_sum(n, 2));
    for (uint64_t p : {2ull, 3ull, 5ull}) {
      SparseRow row = tilde_row_general(n, p);
      CHECK(fine_count(n, p) == row.at(static_cast<int64_t>(digit_sum(n, p))));
    }
  }
  // independent route: product over digit values d of (d+1)^(occurrences)
  for (uint64_t n = 0; n < 600; ++n)
    for (uint64_t p : {3ull, 5ull, 7ull}) {
      BigInt prod = 1;
      for (uint32_t d : digits_of(n, p).digits) prod *= d + 1;
      CHECK(fine_count(n, p) == prod);
    }
}

TEST_CASE("partial sums") {
  CHECK(theta_partial(-1, 100, 2) == 0);
  CHECK(theta_partial(0, 12, 2) == 4);
  CHECK(theta_partial(2, 12, 2) == 11);
  CHECK(theta_partial((int64_t(1) << 62), 12, 2) == 13);
  for (uint64_t n : {0ull, 7ull, 12ull, 100ull, 1000ull}) {
    BigInt prev = 0;
    for (int64_t j = -1; j <= 16; ++j) {
      BigInt cur = theta_partial(j, n, 2);
      CHECK(cur >= prev);
      prev = cur;
    }
    CHECK(prev == BigInt(n) + 1);
  }
  // shifted accessor
  for (uint64_t n : {12ull, 17ull, 100ull}) {
    int64_t s = static_cast<int64_t>(digit_sum(n, 2));
    for (int64_t k = 0; k <= 20; ++k)
      CHECK(theta_tilde(k, n) == theta_partial(k - s, n, 2));
  }
}

TEST_CASE("Howard's formulas") {
  auto h1 = howard_check(12, 1);
  CHECK(h1.formula == Rational(1, 2));
  CHECK(h1.ratio == Rational(1, 2));
  auto h2 = howard_check(12, 2);
  CHECK(h2.formula == Rational(5, 4));
  CHECK(h2.ratio == Rational(5, 4));
  for (int m = 1; m <= 20; ++m) {
    auto h = howard_check(uint64_t(1) << m, 1);
    CHECK(h.formula == Rational(1, 2));
    CHECK(h.ratio == Rational(1, 2));
  }
  for (uint64_t n = 1; n <= 1024; ++n)
    for (int j = 1; j <= 3; ++j) {
      CAPTURE(n);
      CAPTURE(j);
      auto h = howard_check(n, j);
      CHECK(h.formula == h.ratio);
    }
}

TEST_CASE("expected valuation mu_n") {
  auto m0 = mu_n(0);
  CHECK(m0.via_row == 0);
  auto m3 = mu_n(3);
  CHECK(m3.via_row == 0);
  auto m12 = mu_n(12);
  CHECK(m12.via_row == Rational(18, 13));
  CHECK(m12.via_digit_sums == Rational(18, 13));
  for (uint64_t n = 0; n <= 1024; ++n) {
    auto m = mu_n(n);
    CHECK(m.via_row == m.via_digit_sums);
  }
  // third, definitional route: average the valuations entry by entry
  for (uint64_t n = 0; n <= 512; ++n) {
    BigInt sum = 0;
    for (uint64_t t = 0; t <= n; ++t) sum += nu_binomial(n, t, 2);
    CHECK(mu_n(n).via_row == Rational(sum, BigInt(n) + 1));
  }
  // fluctuation stays in a fixed window across a wide sample
  for (uint64_t n = (1 << 14); n < (1 << 20); n += 997) {
    auto m = mu_n(n);
    CHECK(m.fluctuation <= 0.05);
    CHECK(m.fluctuation >= -0.5);
  }
}

TEST_CASE("interval enumeration") {
  std::vector<std::pair<uint64_t, std::map<int64_t, uint64_t>>> seen;
  enumerate_interval(1, [&](uint64_t n, const SparseRow& row) {
    seen.emplace_back(n, as_map(row));
  });
  REQUIRE(seen.size() == 2);
  CHECK(seen[0].first == 2);
  CHECK(seen[0].second == std::map<int64_t, uint64_t>{{1, 2}, {2, 1}});
  CHECK(seen[1].first == 3);
  CHECK(seen[1].second == std::map<int64_t, uint64_t>{{2, 4}});

  enumerate_interval(0, [&](uint64_t n, const SparseRow& row) {
    CHECK(n == 1);
    CHECK(as_map(row) == std::map<int64_t, uint64_t>{{1, 2}});
  });

  for (int lambda : {3, 7, 10}) {
    uint64_t expect = uint64_t(1) << lambda;
    BigInt mass = 0;
    uint64_t count = 0;
    enumerate_interval(lambda, [&](uint64_t n, const SparseRow& row) {
      CHECK(n == expect + count);
      CHECK(row.n() == n);
      CHECK(tilde_row(n) == row);
      mass += row.total();
      ++count;
    });
    CHECK(count == expect);
    // sum over the interval of (n+1) = 3*4^lambda/2 + 2^{lambda-1}
    CHECK(mass == (BigInt(3) << (2 * lambda - 1)) + (BigInt(1) << (lambda - 1)));
  }
}

TEST_CASE("mass conservation across a large interval") {
  int lambda = 16;
  BigInt mass = 0;
  enumerate_interval(lambda, [&](uint64_t, const SparseRow& row) { mass += row.total(); });
  CHECK(mass == (BigInt(3) << (2 * lambda - 1)) + (BigInt(1) << (lambda - 1)));
}

TEST_CASE("pair enumeration carries the predecessor") {
  enumerate_interval_pairs(5, [&](const RowPair& pr) {
    CHECK(pr.predecessor.n() == pr.current.n() - 1);
    CHECK(pr.predecessor == tilde_row(pr.current.n() - 1));
  });
}

TEST_CASE("subtree enumeration partitions the interval") {
  int lambda = 8, depth = 3;
  std::vector<uint64_t> all;
  for (uint64_t m = uint64_t(1) << depth; m < (uint64_t(1) << (depth + 1)); ++m)
    enumerate_subtree_pairs(m, depth, lambda, [&](const RowPair& pr) {
      all.push_back(pr.current.n());
      CHECK(pr.current == tilde_row(pr.current.n()));
    });
  REQUIRE(all.size() == size_t(1) << lambda);
  for (size_t i = 0; i < all.size(); ++i) CHECK(all[i] == (uint64_t(1) << lambda) + i);
}

TEST_CASE("randomized oracle spot checks near the brute-force ceiling") {
  std::mt19937_64 rng(2024);
  for (int rep = 0; rep < 3; ++rep) {
    uint64_t n = rng() % (uint64_t(1) << 24);
    CAPTURE(n);
    CHECK(tilde_row(n) == row_bruteforce(n, 2));
  }
  for (int rep = 0; rep < 6; ++rep) {
    uint64_t n = rng() % (uint64_t(1) << 18);
    CHECK(tilde_row_general(n, 3) == row_bruteforce(n, 3));
  }
  // far beyond oracle range the two valuation routes still agree
  for (int rep = 0; rep < 2000; ++rep) {
    uint64_t n = rng() >> 4;
    uint64_t t = rng() % (n + 1);
    for (uint64_t p : {2ull, 3ull, 5ull})
      CHECK(nu_binomial(n, t, p) ==
            nu_factorial(n, p) - nu_factorial(t, p) - nu_factorial(n - t, p));
  }
}

TEST_CASE("pure row functions are safe to call concurrently") {
  std::vector<std::thread> pool;
  std::atomic<bool> ok{true};
  for (int w = 0; w < 4; ++w)
    pool.emplace_back([&, w]() {
      std::mt19937_64 rng(static_cast<uint64_t>(w));
      for (int i = 0; i < 200; ++i) {
        uint64_t n = rng() % 4096;
        if (!(tilde_row(n) == row_bruteforce(n, 2))) ok = false;
      }
    });
  for (auto& t : pool) t.join();
  CHECK(ok);
}

TEST_CASE("size guards") {
  CHECK_THROWS_AS(row_bruteforce((uint64_t(1) << 24) + 1, 2), guard_error);
  CHECK_THROWS_AS(enumerate_interval(27, [](uint64_t, const SparseRow&) {}), guard_error);
  CHECK_THROWS_AS(howard_check(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(howard_check(12, 4), std::invalid_argument);
  CHECK_THROWS_AS(tilde_row_general(10, 4), std::invalid_argument);
}
