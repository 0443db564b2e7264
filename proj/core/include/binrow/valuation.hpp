#ifndef BINROW_VALUATION_HPP
#define BINROW_VALUATION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "binrow/bigint.hpp"

namespace binrow {

/// Base-p expansion of a nonnegative integer, least significant digit
/// first. Zero is the empty sequence; no most-significant zero digit.
struct DigitString {
  std::vector<uint32_t> digits;
  uint64_t base = 2;

  uint64_t value() const;
  bool operator==(const DigitString&) const = default;
};

/// A finite word over the symbols 0..p-1, most significant symbol first,
/// containing at least one nonzero symbol. Pattern argument of the
/// block-counting function |n|_w.
struct BlockWord {
  std::vector<uint32_t> symbols;
  uint64_t base = 2;

  // parses "110" style literals; digits above 9 are not supported here
  static BlockWord parse(const std::string& text, uint64_t base = 2);
};

bool is_prime(uint64_t p);

DigitString digits_of(uint64_t n, uint64_t base);

/// s_p(n), the base-p digit sum.
uint64_t digit_sum(uint64_t n, uint64_t base);

/// nu_p(n!) by Legendre's sum of floor(n/p^i).
uint64_t nu_factorial(uint64_t n, uint64_t p);

/// nu_p(binomial(n,t)) as the number of borrows in the base-p
/// subtraction n - t (Kummer).
uint64_t nu_binomial(uint64_t n, uint64_t t, uint64_t p);

/// binomial(n,t) mod p as the digitwise product of binomial(n_i,t_i)
/// (Lucas); p must be prime.
uint64_t lucas_residue(uint64_t n, uint64_t t, uint64_t p);

/// Number of (overlapping) occurrences of w in the base-w.base expansion
/// of n, written without leading zeros. n = 0 has the empty expansion.
uint64_t block_count(uint64_t n, const BlockWord& w);

/// sum_{t < n} s_2(t), evaluated digit by digit in O(log n).
BigInt digit_sum_prefix(uint64_t n);

}  // namespace binrow

#endif
