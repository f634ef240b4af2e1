#pragma once

// Exact rational arithmetic on int64 with __int128 intermediates.
// Overflow throws instead of wrapping; every value is kept reduced with
// positive denominator, so bitwise equality is value equality.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace mclain {

class Rat {
 public:
  constexpr Rat() = default;
  Rat(std::int64_t n) : num_(n) {}
  Rat(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  bool is_nonneg_integer() const { return den_ == 1 && num_ >= 0; }

  friend bool operator==(const Rat&, const Rat&) = default;

  Rat operator-() const { return Rat(-num_, den_, unchecked{}); }

  friend Rat operator+(const Rat& a, const Rat& b) {
    __int128 n = i128(a.num_) * b.den_ + i128(b.num_) * a.den_;
    __int128 d = i128(a.den_) * b.den_;
    return from128(n, d);
  }
  friend Rat operator-(const Rat& a, const Rat& b) { return a + (-b); }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return from128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.num_ == 0) throw std::domain_error("Rat: division by zero");
    return from128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }

  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }
  Rat& operator/=(const Rat& o) { return *this = *this / o; }

  std::string str() const {
    std::string s = std::to_string(num_);
    if (den_ != 1) s += "/" + std::to_string(den_);
    return s;
  }

  // three-way compare by value
  friend int rat_cmp(const Rat& a, const Rat& b) {
    __int128 lhs = i128(a.num_) * b.den_;
    __int128 rhs = i128(b.num_) * a.den_;
    return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
  }
  friend bool operator<(const Rat& a, const Rat& b) { return rat_cmp(a, b) < 0; }

 private:
  struct unchecked {};
  Rat(std::int64_t n, std::int64_t d, unchecked) : num_(n), den_(d) {}

  static __int128 i128(std::int64_t v) { return static_cast<__int128>(v); }

  static std::int64_t narrow(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("Rat: 64-bit overflow");
    return static_cast<std::int64_t>(v);
  }

  static Rat from128(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("Rat: zero denominator");
    if (d < 0) { n = -n; d = -d; }
    __int128 a = n < 0 ? -n : n;
    __int128 g = gcd128(a, d);
    if (g > 1) { n /= g; d /= g; }
    return Rat(narrow(n), narrow(d), unchecked{});
  }

  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) { __int128 t = a % b; a = b; b = t; }
    return a < 0 ? -a : a;
  }

  void normalize() {
    *this = from128(i128(num_), i128(den_));
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace mclain
