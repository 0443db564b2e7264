#include "binrow/valuation.hpp"

#include <algorithm>
#include <stdexcept>

namespace binrow {

uint64_t DigitString::value() const {
  uint64_t v = 0;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) v = v * base + *it;
  return v;
}

BlockWord BlockWord::parse(const std::string& text, uint64_t base) {
  if (text.empty()) throw std::invalid_argument("block word must be nonempty");
  BlockWord w;
  w.base = base;
  for (char ch : text) {
    if (ch < '0' || ch > '9')
      throw std::invalid_argument("block word symbol out of range");
    w.symbols.push_back(static_cast<uint32_t>(ch - '0'));
  }
  bool nonzero = false;
  for (uint32_t s : w.symbols) {
    if (s >= base) throw std::invalid_argument("block word symbol >= base");
    nonzero |= s != 0;
  }
  if (!nonzero) throw std::invalid_argument("block word must contain a nonzero symbol");
  return w;
}

bool is_prime(uint64_t p) {
  if (p < 2) return false;
  if (p % 2 == 0) return p == 2;
  for (uint64_t d = 3; d <= p / d; d += 2)
    if (p % d == 0) return false;
  return true;
}

DigitString digits_of(uint64_t n, uint64_t base) {
  if (base < 2) throw std::invalid_argument("base must be >= 2");
  DigitString out;
  out.base = base;
  while (n) {
    out.digits.push_back(static_cast<uint32_t>(n % base));
    n /= base;
  }
  return out;
}

uint64_t digit_sum(uint64_t n, uint64_t base) {
  if (base < 2) throw std::invalid_argument("base must be >= 2");
  uint64_t s = 0;
  while (n) {
    s += n % base;
    n /= base;
  }
  return s;
}

uint64_t nu_factorial(uint64_t n, uint64_t p) {
  if (p < 2) throw std::invalid_argument("base must be >= 2");
  uint64_t s = 0;
  while (n) {
    n /= p;
    s += n;
  }
  return s;
}

uint64_t nu_binomial(uint64_t n, uint64_t t, uint64_t p) {
  if (t > n) throw std::invalid_argument("nu_binomial requires 0 <= t <= n");
  if (p < 2) throw std::invalid_argument("base must be >= 2");
  uint64_t borrows = 0;
  uint64_t borrow = 0;
  uint64_t a = n, b = t;
  while (b || borrow) {
    uint64_t ad = a % p;
    uint64_t bd = b % p + borrow;
    borrow = ad < bd ? 1 : 0;
    borrows += borrow;
    a /= p;
    b /= p;
  }
  return borrows;
}

namespace {

// binomial(a,b) mod p for digits a,b < p
uint64_t small_binomial_mod(uint64_t a, uint64_t b, uint64_t p) {
  if (b > a) return 0;
  b = std::min(b, a - b);
  uint64_t num = 1, den = 1;
  for (uint64_t i = 0; i < b; ++i) {
    num = num * ((a - i) % p) % p;
    den = den * ((i + 1) % p) % p;
  }
  // Fermat inverse; p prime and den != 0 mod p since den | a!/(a-b)! parts
  uint64_t inv = 1, base = den, e = p - 2;
  while (e) {
    if (e & 1) inv = inv * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return num * inv % p;
}

}  // namespace

uint64_t lucas_residue(uint64_t n, uint64_t t, uint64_t p) {
  if (t > n) throw std::invalid_argument("lucas_residue requires 0 <= t <= n");
  if (!is_prime(p)) throw std::invalid_argument("lucas_residue requires prime p");
  uint64_t r = 1;
  while (t || n) {
    uint64_t nd = n % p, td = t % p;
    if (td > nd) return 0;
    r = r * small_binomial_mod(nd, td, p) % p;
    n /= p;
    t /= p;
  }
  return r;
}

uint64_t block_count(uint64_t n, const BlockWord& w) {
  bool nonzero = false;
  for (uint32_t s : w.symbols) {
    if (s >= w.base) throw std::invalid_argument("block word symbol >= base");
    nonzero |= s != 0;
  }
  if (w.symbols.empty() || !nonzero)
    throw std::invalid_argument("block word must contain a nonzero symbol");
  DigitString ds = digits_of(n, w.base);
  const size_t m = w.symbols.size();
  if (ds.digits.size() < m) return 0;
  // expansion is most-significant-first; ds.digits is lsb-first
  uint64_t count = 0;
  for (size_t start = 0; start + m <= ds.digits.size(); ++start) {
    bool match = true;
    for (size_t i = 0; i < m; ++i) {
      // symbol i of w aligns with digit index (len-1-start-i)
      if (ds.digits[ds.digits.size() - 1 - start - i] != w.symbols[i]) {
        match = false;
        break;
      }
    }
    count += match;
  }
  return count;
}

BigInt digit_sum_prefix(uint64_t n) {
  BigInt total = 0;
  for (int i = 0; i < 63; ++i) {
    uint64_t half = uint64_t(1) << i;
    if (half >= n) break;
    uint64_t block = half << 1;
    uint64_t rem = n % block;
    total += (n / block) * half;
    total += rem > half ? rem - half : 0;
  }
  // bit 63: t < n with that bit set are exactly those above 2^63
  if (n > (uint64_t(1) << 63)) total += n - (uint64_t(1) << 63);
  return total;
}

}  // namespace binrow
