#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_N).
//
// A value of level N is a dense vector of rationals over the power basis
// 1, z, ..., z^(phi(N)-1) of Q[x]/(Phi_N), Phi_N the N-th cyclotomic
// polynomial.  The representative is canonical, so equal vectors at equal
// level mean equal numbers; mixed-level operands are lifted to the lcm
// level through the field embedding zeta_N -> zeta_M^(M/N).

#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "mclain/rational.hpp"

namespace mclain {

namespace detail {

inline std::uint32_t totient(std::uint32_t n) {
  std::uint32_t result = n;
  for (std::uint32_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

// Integer polynomial helpers, little-endian coefficients.
using ZPoly = std::vector<std::int64_t>;

inline ZPoly zpoly_div_exact(const ZPoly& a, const ZPoly& b) {
  // Exact division; b monic is all we ever feed it.
  ZPoly rem = a;
  ZPoly quot(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  for (std::size_t i = quot.size(); i-- > 0;) {
    std::int64_t c = rem[i + b.size() - 1];
    quot[i] = c;
    if (c != 0)
      for (std::size_t j = 0; j < b.size(); ++j) rem[i + j] -= c * b[j];
  }
  for (std::int64_t r : rem)
    if (r != 0) throw std::logic_error("cyclotomic: inexact poly division");
  return quot;
}

inline ZPoly cyclotomic_poly(std::uint32_t n) {
  // Phi_n = (x^n - 1) / prod_{d|n, d<n} Phi_d.
  ZPoly num(n + 1, 0);
  num[0] = -1;
  num[n] = 1;
  for (std::uint32_t d = 1; d < n; ++d)
    if (n % d == 0) num = zpoly_div_exact(num, cyclotomic_poly(d));
  return num;
}

struct CycCtx {
  std::uint32_t level = 1;
  std::uint32_t deg = 1;                         // phi(level)
  std::vector<std::vector<std::int64_t>> pows;   // x^j mod Phi, for j in [0, level)
};

inline const CycCtx& cyc_ctx(std::uint32_t n) {
  static std::mutex mu;
  static std::map<std::uint32_t, CycCtx> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  if (n == 0) throw std::invalid_argument("cyclotomic: level must be positive");
  CycCtx ctx;
  ctx.level = n;
  ctx.deg = totient(n);
  ZPoly phi = cyclotomic_poly(n);
  // x^j mod Phi_n by the monic recurrence x^deg = -(low part).
  std::vector<std::vector<std::int64_t>> pows(n, std::vector<std::int64_t>(ctx.deg, 0));
  for (std::uint32_t j = 0; j < n; ++j) {
    if (j < ctx.deg) {
      pows[j][j] = 1;
      continue;
    }
    const auto& prev = pows[j - 1];
    std::vector<std::int64_t> cur(ctx.deg, 0);
    // multiply prev by x, fold the overflow of x^deg back in
    std::int64_t top = prev[ctx.deg - 1];
    for (std::uint32_t k = ctx.deg - 1; k > 0; --k) cur[k] = prev[k - 1];
    cur[0] = 0;
    if (top != 0)
      for (std::uint32_t k = 0; k < ctx.deg; ++k) cur[k] -= top * phi[k];
    pows[j] = std::move(cur);
  }
  ctx.pows = std::move(pows);
  return cache.emplace(n, std::move(ctx)).first->second;
}

}  // namespace detail

class Cyc {
 public:
  Cyc() : level_(1), coeffs_(1) {}
  Cyc(const Rat& r) : level_(1), coeffs_{r} {}
  Cyc(std::int64_t n) : Cyc(Rat(n)) {}

  // zeta_N^k
  static Cyc root(std::uint64_t k, std::uint32_t n) {
    const auto& ctx = detail::cyc_ctx(n);
    Cyc c;
    c.level_ = n;
    c.coeffs_.assign(ctx.deg, Rat(0));
    const auto& row = ctx.pows[k % n];
    for (std::uint32_t i = 0; i < ctx.deg; ++i) c.coeffs_[i] = Rat(row[i]);
    return c;
  }

  std::uint32_t level() const { return level_; }
  const std::vector<Rat>& coeffs() const { return coeffs_; }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (!c.is_zero()) return false;
    return true;
  }
  bool is_rational() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
      if (!coeffs_[i].is_zero()) return false;
    return true;
  }
  bool is_integer() const { return is_rational() && coeffs_[0].is_integer(); }
  Rat rational_part() const {
    if (!is_rational()) throw std::domain_error("Cyc: not rational");
    return coeffs_[0];
  }

  Cyc at_level(std::uint32_t m) const {
    if (m == level_) return *this;
    if (m % level_ != 0) throw std::invalid_argument("Cyc: level does not divide target");
    const std::uint32_t stride = m / level_;
    Cyc out = zero_at(m);
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
      if (!coeffs_[k].is_zero()) out.add_power(coeffs_[k], static_cast<std::uint64_t>(k) * stride);
    return out;
  }

  friend Cyc operator+(const Cyc& a, const Cyc& b) {
    auto [x, y] = aligned(a, b);
    for (std::size_t i = 0; i < x.coeffs_.size(); ++i) x.coeffs_[i] += y.coeffs_[i];
    return x;
  }
  friend Cyc operator-(const Cyc& a, const Cyc& b) { return a + (-b); }
  Cyc operator-() const {
    Cyc c = *this;
    for (auto& v : c.coeffs_) v = -v;
    return c;
  }
  friend Cyc operator*(const Cyc& a, const Cyc& b) {
    auto [x, y] = aligned(a, b);
    Cyc out = zero_at(x.level_);
    // schoolbook product, folding each power through the reduction rows
    std::vector<Rat> prod(2 * x.coeffs_.size(), Rat(0));
    for (std::size_t i = 0; i < x.coeffs_.size(); ++i) {
      if (x.coeffs_[i].is_zero()) continue;
      for (std::size_t j = 0; j < y.coeffs_.size(); ++j) {
        if (y.coeffs_[j].is_zero()) continue;
        prod[i + j] += x.coeffs_[i] * y.coeffs_[j];
      }
    }
    for (std::size_t p = 0; p < prod.size(); ++p)
      if (!prod[p].is_zero()) out.add_power(prod[p], p);
    return out;
  }
  friend Cyc operator*(const Rat& r, const Cyc& a) {
    Cyc c = a;
    for (auto& v : c.coeffs_) v *= r;
    return c;
  }
  Cyc& operator+=(const Cyc& o) { return *this = *this + o; }
  Cyc& operator-=(const Cyc& o) { return *this = *this - o; }
  Cyc& operator*=(const Cyc& o) { return *this = *this * o; }

  // complex conjugate: zeta -> zeta^(N-1)
  Cyc conjugate() const {
    Cyc out = zero_at(level_);
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
      if (!coeffs_[k].is_zero())
        out.add_power(coeffs_[k], k == 0 ? 0 : level_ - static_cast<std::uint32_t>(k));
    return out;
  }

  friend bool operator==(const Cyc& a, const Cyc& b) {
    if (a.level_ == b.level_) return a.coeffs_ == b.coeffs_;
    auto [x, y] = aligned(a, b);
    return x.coeffs_ == y.coeffs_;
  }
  friend bool operator!=(const Cyc& a, const Cyc& b) { return !(a == b); }

  // canonical three-way compare: lift to common level, lex on coefficients
  friend int cyc_cmp(const Cyc& a, const Cyc& b) {
    auto [x, y] = aligned(a, b);
    for (std::size_t i = 0; i < x.coeffs_.size(); ++i) {
      int c = rat_cmp(x.coeffs_[i], y.coeffs_[i]);
      if (c != 0) return c;
    }
    return 0;
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      if (coeffs_[k].is_zero()) continue;
      if (!s.empty()) s += " + ";
      s += coeffs_[k].str();
      if (k > 0) s += "*z" + std::to_string(level_) + "^" + std::to_string(k);
    }
    return s;
  }

 private:
  static Cyc zero_at(std::uint32_t n) {
    Cyc c;
    c.level_ = n;
    c.coeffs_.assign(detail::cyc_ctx(n).deg, Rat(0));
    return c;
  }

  void add_power(const Rat& coeff, std::uint64_t power) {
    const auto& ctx = detail::cyc_ctx(level_);
    const auto& row = ctx.pows[power % level_];
    for (std::uint32_t i = 0; i < ctx.deg; ++i)
      if (row[i] != 0) coeffs_[i] += coeff * Rat(row[i]);
  }

  static std::pair<Cyc, Cyc> aligned(const Cyc& a, const Cyc& b) {
    std::uint32_t m = std::lcm(a.level_, b.level_);
    return {a.at_level(m), b.at_level(m)};
  }

  std::uint32_t level_;
  std::vector<Rat> coeffs_;
};

}  // namespace mclain
