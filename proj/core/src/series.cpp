#include "binrow/series.hpp"

#include <stdexcept>

namespace binrow {

Rational Poly::at(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

Poly& Poly::add_term(const Rational& c, int ex, int ey, int ez) {
  if (ex < 0 || ey < 0 || ez < 0) throw std::invalid_argument("negative exponent");
  if ((arity_ < 3 && ez != 0) || (arity_ < 2 && ey != 0))
    throw std::invalid_argument("exponent beyond arity");
  Exponents e{ex, ey, ez};
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  } else if (it->second == 0) {
    terms_.erase(it);
  }
  return *this;
}

Poly operator+(const Poly& a, const Poly& b) {
  if (a.arity_ != b.arity_) throw std::invalid_argument("poly arity mismatch");
  Poly out = a;
  for (const auto& [e, c] : b.terms_) out.add_term(c, e[0], e[1], e[2]);
  return out;
}

Poly operator-(const Poly& a, const Poly& b) {
  if (a.arity_ != b.arity_) throw std::invalid_argument("poly arity mismatch");
  Poly out = a;
  for (const auto& [e, c] : b.terms_) out.add_term(-c, e[0], e[1], e[2]);
  return out;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.arity_ != b.arity_) throw std::invalid_argument("poly arity mismatch");
  Poly out(a.arity_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_)
      out.add_term(ca * cb, ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]);
  return out;
}

Poly Poly::operator*(const Rational& c) const {
  Poly out(arity_);
  if (c == 0) return out;
  for (const auto& [e, v] : terms_) out.add_term(v * c, e[0], e[1], e[2]);
  return out;
}

TruncatedSeries::TruncatedSeries(int arity, Exponents bounds)
    : arity_(arity), bounds_(bounds) {
  if (arity < 1 || arity > 3) throw std::invalid_argument("arity must be 1..3");
  for (int i = arity; i < 3; ++i) bounds_[i] = 0;
  size_t size = 1;
  for (int i = 0; i < 3; ++i) size *= static_cast<size_t>(bounds_[i]) + 1;
  coef_.assign(size, Rational(0));
}

size_t TruncatedSeries::index(const Exponents& e) const {
  size_t idx = 0;
  for (int i = 0; i < 3; ++i) idx = idx * (static_cast<size_t>(bounds_[i]) + 1) + static_cast<size_t>(e[i]);
  return idx;
}

const Rational& TruncatedSeries::at(int ex, int ey, int ez) const {
  static const Rational zero = 0;
  Exponents e{ex, ey, ez};
  for (int i = 0; i < 3; ++i) {
    if (e[i] < 0) return zero;
    if (e[i] > bounds_[i]) return zero;
  }
  return coef_[index(e)];
}

void TruncatedSeries::set(const Exponents& e, Rational v) {
  for (int i = 0; i < 3; ++i)
    if (e[i] < 0 || e[i] > bounds_[i]) throw std::invalid_argument("exponent out of bounds");
  coef_[index(e)] = std::move(v);
}

bool TruncatedSeries::operator==(const TruncatedSeries& other) const {
  return arity_ == other.arity_ && bounds_ == other.bounds_ && coef_ == other.coef_;
}

TruncatedSeries TruncatedSeries::from_poly(const Poly& p, Exponents bounds) {
  TruncatedSeries s(p.arity(), bounds);
  for (const auto& [e, c] : p.terms()) {
    bool inside = true;
    for (int i = 0; i < 3; ++i) inside &= e[i] <= s.bounds()[i];
    if (inside) s.set(e, c);
  }
  return s;
}

TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.arity_ != b.arity_ || a.bounds_ != b.bounds_)
    throw std::invalid_argument("series shape mismatch");
  TruncatedSeries out = a;
  for (size_t i = 0; i < out.coef_.size(); ++i) out.coef_[i] += b.coef_[i];
  return out;
}

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.arity_ != b.arity_ || a.bounds_ != b.bounds_)
    throw std::invalid_argument("series shape mismatch");
  TruncatedSeries out(a.arity_, a.bounds_);
  // gather nonzeros of a once; b is walked densely per term
  std::vector<std::pair<Exponents, const Rational*>> nza;
  for (int x = 0; x <= a.bounds_[0]; ++x)
    for (int y = 0; y <= a.bounds_[1]; ++y)
      for (int z = 0; z <= a.bounds_[2]; ++z) {
        const Rational& c = a.coef_[a.index({x, y, z})];
        if (c != 0) nza.push_back({{x, y, z}, &c});
      }
  for (const auto& [ea, ca] : nza) {
    for (int x = 0; x + ea[0] <= a.bounds_[0]; ++x)
      for (int y = 0; y + ea[1] <= a.bounds_[1]; ++y)
        for (int z = 0; z + ea[2] <= a.bounds_[2]; ++z) {
          const Rational& cb = b.coef_[b.index({x, y, z})];
          if (cb != 0)
            out.coef_[out.index({x + ea[0], y + ea[1], z + ea[2]})] += *ca * cb;
        }
  }
  return out;
}

TruncatedSeries series_inverse(const Poly& denominator, Exponents bounds) {
  Exponents zero{0, 0, 0};
  Rational c0 = denominator.at(zero);
  if (c0 == 0) throw std::invalid_argument("series_inverse: zero constant term");
  TruncatedSeries inv(denominator.arity(), bounds);
  inv.set(zero, 1 / c0);
  // nonconstant denominator terms
  std::vector<std::pair<Exponents, Rational>> tail;
  for (const auto& [e, c] : denominator.terms())
    if (e != zero) tail.push_back({e, c});
  for (int x = 0; x <= inv.bounds()[0]; ++x)
    for (int y = 0; y <= inv.bounds()[1]; ++y)
      for (int z = 0; z <= inv.bounds()[2]; ++z) {
        if (x == 0 && y == 0 && z == 0) continue;
        Rational acc = 0;
        for (const auto& [e, c] : tail) {
          int px = x - e[0], py = y - e[1], pz = z - e[2];
          if (px < 0 || py < 0 || pz < 0) continue;
          acc += c * inv.at(px, py, pz);
        }
        inv.set({x, y, z}, -acc / c0);
      }
  return inv;
}

TruncatedSeries expand_gf(const RationalGF& gf, Exponents bounds) {
  TruncatedSeries num = TruncatedSeries::from_poly(gf.num, bounds);
  return series_mul(num, series_inverse(gf.den, bounds));
}

}  // namespace binrow
