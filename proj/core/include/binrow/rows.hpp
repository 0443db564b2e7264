#ifndef BINROW_ROWS_HPP
#define BINROW_ROWS_HPP

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "binrow/bigint.hpp"

namespace binrow {

/// Rarefied row-count profile of one row of Pascal's triangle: the finite
/// map k -> count of t in {0..n} whose shifted valuation key
/// k = s_p(n) + (p-1)*nu_p(binomial(n,t)) equals k. Counts sum to n+1;
/// every key satisfies k >= s_p(n) and k == s_p(n) mod (p-1).
///
/// Stored densely over the key interval [min_key, min_key+size); at(k) is
/// total (0 outside). Immutable after construction.
class SparseRow {
 public:
  SparseRow() = default;
  SparseRow(uint64_t n, uint64_t p, int64_t min_key, std::vector<BigInt> counts)
      : n_(n), p_(p), lo_(min_key), counts_(std::move(counts)) {
    trim();
  }

  uint64_t n() const { return n_; }
  uint64_t prime() const { return p_; }

  const BigInt& at(int64_t k) const {
    static const BigInt zero = 0;
    if (k < lo_ || k >= lo_ + static_cast<int64_t>(counts_.size())) return zero;
    return counts_[static_cast<size_t>(k - lo_)];
  }

  int64_t min_key() const { return lo_; }
  int64_t max_key() const { return lo_ + static_cast<int64_t>(counts_.size()) - 1; }
  bool empty() const { return counts_.empty(); }

  /// nonzero (key, count) pairs in increasing key order
  std::vector<std::pair<int64_t, BigInt>> entries() const;

  BigInt total() const;

  /// Theta-tilde(k, n): partial sum of counts with key <= k.
  BigInt partial_sum(int64_t k) const;

  bool operator==(const SparseRow& other) const;

 private:
  void trim();

  uint64_t n_ = 0;
  uint64_t p_ = 2;
  int64_t lo_ = 0;
  std::vector<BigInt> counts_;
};

/// DP state coupling row n with row n-1, as required by the p=2 halving
/// recurrence (the even step references the predecessor row).
struct RowPair {
  SparseRow current;
  SparseRow predecessor;
};

/// Exact profile by scanning all t in {0..n}; the independent oracle.
/// Guard: n <= 2^24.
SparseRow row_bruteforce(uint64_t n, uint64_t p);

/// theta_p(0, n) = prod (n_i + 1) over base-p digits (Fine); equals
/// 2^{s_2(n)} for p = 2 (Glaisher).
BigInt fine_count(uint64_t n, uint64_t p);

/// Exact profile of row n for p = 2 via the digit DP over the binary
/// expansion of n, carrying a (row m, row m-1) pair; O(log^2 n) integer
/// additions.
SparseRow tilde_row(uint64_t n);

/// Same contract for any prime p, via the general base-p recurrence.
SparseRow tilde_row_general(uint64_t n, uint64_t p);

/// Theta_p(j, n) = sum_{0 <= i <= j} theta_p(i, n); 0 for j < 0 and n+1
/// once j covers the whole row.
BigInt theta_partial(int64_t j, uint64_t n, uint64_t p);

/// Shifted partial sum Theta-tilde(k, n) = Theta_2(k - s_2(n), n).
BigInt theta_tilde(int64_t k, uint64_t n);

/// Howard's polynomial for theta_2(j,n)/theta_2(0,n) in the block counts
/// |n|_w, j in {1,2,3}, paired with the true ratio from the row profile.
/// The two agree for every n checked; a mismatch would be surfaced by the
/// caller comparing the pair, not corrected here.
struct HowardCheck {
  Rational formula;
  Rational ratio;
};
HowardCheck howard_check(uint64_t n, int j);

/// Expected valuation of row n, computed over two independent routes
/// (which must agree), plus the Delange-type fluctuation sample
/// mu_n - log2(n+1) + s_2(n).
struct MuReport {
  Rational via_row;
  Rational via_digit_sums;
  double fluctuation;
};
MuReport mu_n(uint64_t n);

/// Visits every n in I_lambda = [2^lambda, 2^{lambda+1}) exactly once, in
/// increasing order, with its exact profile. Guard: lambda <= 26.
void enumerate_interval(int lambda,
                        const std::function<void(uint64_t, const SparseRow&)>& visit);

/// Same traversal exposing the (n, n-1) pair carried by the DP.
void enumerate_interval_pairs(int lambda,
                              const std::function<void(const RowPair&)>& visit);

/// Visits only the part of I_lambda below the DFS node m (m in I_level,
/// level <= lambda): the n whose top level+1 binary digits spell m.
/// Subtrees for distinct m are independent, which is how scans partition
/// the interval across workers.
void enumerate_subtree_pairs(uint64_t m, int level, int lambda,
                             const std::function<void(const RowPair&)>& visit);

}  // namespace binrow

#endif
