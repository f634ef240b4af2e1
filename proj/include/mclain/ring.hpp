#pragma once

// Finite unital rings, elements addressed by dense index 0..|R|-1 with
// index 0 the zero element.  Four kinds: Z/n, GF(p^d), truncated
// polynomials GF(p^d)[t]/(t^m), and 2x2 matrices over a prime field.
//
// The additive group is exposed as a mixed-radix coordinate system
// (slot orders), which is what the linear character enumeration and the
// exponent-map evaluation run on.  Characters never touch floating
// point: a character is its exponent table mod N = exp(R,+).

#include <cstdint>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace mclain {

namespace detail {

inline bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// polynomials over F_p, little-endian coefficient vectors
using PPoly = std::vector<std::uint32_t>;

inline PPoly ppoly_mod(PPoly a, const PPoly& m, std::uint32_t p) {
  // m monic
  while (a.size() >= m.size()) {
    std::uint32_t lead = a.back();
    if (lead != 0) {
      std::size_t shift = a.size() - m.size();
      for (std::size_t i = 0; i < m.size(); ++i) {
        std::uint64_t v = a[shift + i] + static_cast<std::uint64_t>(p - 1) * lead % p * m[i];
        a[shift + i] = static_cast<std::uint32_t>(v % p);
      }
    }
    a.pop_back();
  }
  return a;
}

inline PPoly ppoly_mul(const PPoly& a, const PPoly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  PPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i + j] = static_cast<std::uint32_t>((c[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
  return c;
}

inline bool ppoly_is_zero(const PPoly& a) {
  for (auto c : a)
    if (c) return false;
  return true;
}

inline bool is_irreducible(const PPoly& f, std::uint32_t p) {
  // trial division by all monic polynomials of degree up to deg(f)/2
  if (f.size() < 2 || f.back() == 0) return false;
  std::size_t deg = f.size() - 1;
  if (deg == 1) return true;
  for (std::size_t d = 1; 2 * d <= deg; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      PPoly g(d + 1, 0);
      std::uint64_t v = idx;
      for (std::size_t i = 0; i < d; ++i) { g[i] = v % p; v /= p; }
      g[d] = 1;
      if (ppoly_is_zero(ppoly_mod(f, g, p))) return false;
    }
  }
  return true;
}

inline PPoly default_modulus(std::uint32_t p, std::uint32_t deg) {
  // smallest monic irreducible in the lex order of low coefficients
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < deg; ++i) count *= p;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    PPoly f(deg + 1, 0);
    std::uint64_t v = idx;
    for (std::uint32_t i = 0; i < deg; ++i) { f[i] = v % p; v /= p; }
    f[deg] = 1;
    if (is_irreducible(f, p)) return f;
  }
  throw std::logic_error("default_modulus: none found");
}

}  // namespace detail

struct RingSpec {
  enum class Kind { zmod, gf, truncpoly, mat };
  Kind kind = Kind::zmod;
  std::uint32_t n = 0;     // zmod modulus
  std::uint32_t p = 0;     // characteristic of the base field
  std::uint32_t deg = 1;   // base field degree
  std::uint32_t m = 1;     // truncation exponent
  std::uint32_t size = 2;  // matrix dimension
  std::vector<std::uint32_t> modulus;  // optional gf modulus, little-endian, monic

  static RingSpec zmod(std::uint32_t n) {
    RingSpec s;
    s.kind = Kind::zmod;
    s.n = n;
    return s;
  }
  static RingSpec gf(std::uint32_t p, std::uint32_t deg,
                     std::vector<std::uint32_t> modulus = {}) {
    RingSpec s;
    s.kind = Kind::gf;
    s.p = p;
    s.deg = deg;
    s.modulus = std::move(modulus);
    return s;
  }
  static RingSpec truncpoly(std::uint32_t p, std::uint32_t deg, std::uint32_t m) {
    RingSpec s;
    s.kind = Kind::truncpoly;
    s.p = p;
    s.deg = deg;
    s.m = m;
    return s;
  }
  static RingSpec mat(std::uint32_t p, std::uint32_t size) {
    RingSpec s;
    s.kind = Kind::mat;
    s.p = p;
    s.size = size;
    return s;
  }

  std::string str() const {
    switch (kind) {
      case Kind::zmod: return "Z/" + std::to_string(n);
      case Kind::gf: {
        std::uint64_t q = 1;
        for (std::uint32_t i = 0; i < deg; ++i) q *= p;
        return "GF(" + std::to_string(q) + ")";
      }
      case Kind::truncpoly: {
        std::uint64_t q = 1;
        for (std::uint32_t i = 0; i < deg; ++i) q *= p;
        return "GF(" + std::to_string(q) + ")[t]/(t^" + std::to_string(m) + ")";
      }
      case Kind::mat:
        return "M" + std::to_string(size) + "(GF(" + std::to_string(p) + "))";
    }
    return "?";
  }
};

using RElem = std::uint32_t;

class Ring {
 public:
  static std::shared_ptr<const Ring> make(const RingSpec& spec) {
    return std::shared_ptr<const Ring>(new Ring(spec));
  }

  const RingSpec& spec() const { return spec_; }
  std::string name() const { return spec_.str(); }
  std::uint32_t size() const { return size_; }
  bool commutative() const { return spec_.kind != RingSpec::Kind::mat; }

  RElem zero() const { return 0; }
  RElem one() const { return one_; }

  RElem add(RElem a, RElem b) const {
    if (!add_table_.empty()) return add_table_[a * size_ + b];
    return add_slow(a, b);
  }
  RElem mul(RElem a, RElem b) const {
    if (!mul_table_.empty()) return mul_table_[a * size_ + b];
    return mul_slow(a, b);
  }
  RElem neg(RElem a) const { return neg_table_[a]; }

  RElem smul(std::uint32_t k, RElem a) const {
    // k-fold sum of a
    RElem acc = 0;
    for (std::uint32_t i = 0; i < k; ++i) acc = add(acc, a);
    return acc;
  }

  // additive coordinate system: slot i runs through Z/slot_orders[i]
  const std::vector<std::uint32_t>& slot_orders() const { return slot_orders_; }
  std::uint32_t additive_exponent() const { return additive_exponent_; }

  std::vector<std::uint32_t> coords(RElem a) const {
    std::vector<std::uint32_t> c(slot_orders_.size());
    for (std::size_t i = 0; i < slot_orders_.size(); ++i) {
      c[i] = a % slot_orders_[i];
      a /= slot_orders_[i];
    }
    return c;
  }

 private:
  explicit Ring(const RingSpec& spec) : spec_(spec) {
    using Kind = RingSpec::Kind;
    switch (spec.kind) {
      case Kind::zmod: {
        if (spec.n < 2) throw std::invalid_argument("make_ring: Z/n needs n >= 2");
        size_ = spec.n;
        slot_orders_ = {spec.n};
        one_ = 1;
        break;
      }
      case Kind::gf: {
        if (!detail::is_prime_u32(spec.p)) throw std::invalid_argument("make_ring: p not prime");
        if (spec.deg < 1) throw std::invalid_argument("make_ring: degree must be positive");
        std::uint64_t q = 1;
        for (std::uint32_t i = 0; i < spec.deg; ++i) {
          q *= spec.p;
          if (q > (1u << 16)) throw std::invalid_argument("make_ring: |R| exceeds 2^16");
        }
        size_ = static_cast<std::uint32_t>(q);
        slot_orders_.assign(spec.deg, spec.p);
        if (spec.modulus.empty()) {
          modulus_ = detail::default_modulus(spec.p, spec.deg);
        } else {
          modulus_ = spec.modulus;
          for (auto& c : modulus_) c %= spec.p;
          if (modulus_.size() != spec.deg + 1 || modulus_.back() != 1 ||
              !detail::is_irreducible(modulus_, spec.p))
            throw std::invalid_argument("make_ring: modulus not a monic irreducible of the right degree");
        }
        one_ = 1;
        break;
      }
      case Kind::truncpoly: {
        if (!detail::is_prime_u32(spec.p)) throw std::invalid_argument("make_ring: p not prime");
        if (spec.deg < 1 || spec.m < 1) throw std::invalid_argument("make_ring: bad truncpoly shape");
        base_ = Ring::make(RingSpec::gf(spec.p, spec.deg));
        std::uint64_t sz = 1;
        for (std::uint32_t i = 0; i < spec.m; ++i) {
          sz *= base_->size();
          if (sz > (1u << 16)) throw std::invalid_argument("make_ring: |R| exceeds 2^16");
        }
        size_ = static_cast<std::uint32_t>(sz);
        slot_orders_.assign(static_cast<std::size_t>(spec.deg) * spec.m, spec.p);
        one_ = 1;
        break;
      }
      case Kind::mat: {
        if (spec.size != 2 || (spec.p != 2 && spec.p != 3))
          throw std::invalid_argument("make_ring: matrix kind supports only 2x2 over GF(2)/GF(3)");
        size_ = spec.p * spec.p * spec.p * spec.p;
        slot_orders_.assign(4, spec.p);
        // identity matrix: entries (11,12,21,22) = (1,0,0,1), row-major digits
        one_ = 1 + spec.p * spec.p * spec.p;
        break;
      }
    }
    additive_exponent_ = 1;
    for (auto o : slot_orders_) additive_exponent_ = std::lcm(additive_exponent_, o);
    neg_table_.resize(size_);
    for (RElem a = 0; a < size_; ++a) neg_table_[a] = neg_slow(a);
    if (size_ <= 2048) {
      add_table_.resize(static_cast<std::size_t>(size_) * size_);
      mul_table_.resize(static_cast<std::size_t>(size_) * size_);
      for (RElem a = 0; a < size_; ++a)
        for (RElem b = 0; b < size_; ++b) {
          add_table_[a * size_ + b] = add_slow(a, b);
          mul_table_[a * size_ + b] = mul_slow(a, b);
        }
    }
  }

  RElem add_slow(RElem a, RElem b) const {
    using Kind = RingSpec::Kind;
    if (spec_.kind == Kind::zmod) return (a + b) % size_;
    // componentwise in base-p (base-q for truncpoly handled the same way:
    // its digits in base p are exactly the slot coordinates)
    RElem out = 0, mult = 1;
    std::uint32_t p = spec_.p;
    std::uint32_t slots = static_cast<std::uint32_t>(slot_orders_.size());
    for (std::uint32_t i = 0; i < slots; ++i) {
      out += ((a % p) + (b % p)) % p * mult;
      a /= p;
      b /= p;
      mult *= p;
    }
    return out;
  }

  RElem neg_slow(RElem a) const {
    using Kind = RingSpec::Kind;
    if (spec_.kind == Kind::zmod) return (size_ - a) % size_;
    RElem out = 0, mult = 1;
    std::uint32_t p = spec_.p;
    std::uint32_t slots = static_cast<std::uint32_t>(slot_orders_.size());
    for (std::uint32_t i = 0; i < slots; ++i) {
      out += (p - (a % p)) % p * mult;
      a /= p;
      mult *= p;
    }
    return out;
  }

  RElem mul_slow(RElem a, RElem b) const {
    using Kind = RingSpec::Kind;
    switch (spec_.kind) {
      case Kind::zmod:
        return static_cast<RElem>((static_cast<std::uint64_t>(a) * b) % size_);
      case Kind::gf: {
        detail::PPoly pa = digits(a, spec_.p, spec_.deg);
        detail::PPoly pb = digits(b, spec_.p, spec_.deg);
        detail::PPoly pc = detail::ppoly_mod(detail::ppoly_mul(pa, pb, spec_.p), modulus_, spec_.p);
        return undigits(pc, spec_.p);
      }
      case Kind::truncpoly: {
        // truncated convolution over the base field
        std::uint32_t q = base_->size();
        std::vector<RElem> fa = digits(a, q, spec_.m), fb = digits(b, q, spec_.m);
        std::vector<RElem> fc(spec_.m, 0);
        for (std::uint32_t i = 0; i < spec_.m; ++i)
          for (std::uint32_t j = 0; i + j < spec_.m; ++j)
            fc[i + j] = base_->add(fc[i + j], base_->mul(fa[i], fb[j]));
        return undigits(fc, q);
      }
      case Kind::mat: {
        std::uint32_t p = spec_.p;
        std::vector<RElem> x = digits(a, p, 4), y = digits(b, p, 4);
        // row-major (e11,e12,e21,e22)
        std::vector<RElem> z(4);
        z[0] = (x[0] * y[0] + x[1] * y[2]) % p;
        z[1] = (x[0] * y[1] + x[1] * y[3]) % p;
        z[2] = (x[2] * y[0] + x[3] * y[2]) % p;
        z[3] = (x[2] * y[1] + x[3] * y[3]) % p;
        return undigits(z, p);
      }
    }
    throw std::logic_error("mul_slow: unreachable");
  }

  static std::vector<std::uint32_t> digits(std::uint32_t v, std::uint32_t base, std::uint32_t count) {
    std::vector<std::uint32_t> d(count);
    for (std::uint32_t i = 0; i < count; ++i) { d[i] = v % base; v /= base; }
    return d;
  }
  static std::uint32_t undigits(const std::vector<std::uint32_t>& d, std::uint32_t base) {
    std::uint32_t v = 0;
    for (std::size_t i = d.size(); i-- > 0;) v = v * base + d[i];
    return v;
  }

  RingSpec spec_;
  std::uint32_t size_ = 0;
  RElem one_ = 1;
  std::vector<std::uint32_t> slot_orders_;
  std::uint32_t additive_exponent_ = 1;
  detail::PPoly modulus_;                 // gf kind
  std::shared_ptr<const Ring> base_;      // truncpoly kind
  std::vector<RElem> neg_table_;
  std::vector<RElem> add_table_, mul_table_;
};

using RingPtr = std::shared_ptr<const Ring>;

// A character of (R,+): exponent table mod N = exp(R,+), value zeta_N^exponent[a].
struct AddChar {
  std::uint32_t modulus = 1;
  std::uint32_t index = 0;  // position in the deterministic enumeration
  std::vector<std::uint32_t> exponent;

  bool is_trivial() const {
    for (auto e : exponent)
      if (e) return false;
    return true;
  }
  std::uint32_t operator()(RElem a) const { return exponent[a]; }
  friend bool operator==(const AddChar&, const AddChar&) = default;
};

// All |R| characters of (R,+), in mixed-radix order of their exponent
// tuples over the slot decomposition.  Index 0 is trivial.
inline std::vector<AddChar> linear_characters(const Ring& ring) {
  const auto& orders = ring.slot_orders();
  std::uint32_t n = ring.additive_exponent();
  std::vector<AddChar> out;
  out.reserve(ring.size());
  // per-element coordinates, computed once
  std::vector<std::vector<std::uint32_t>> coords(ring.size());
  for (RElem a = 0; a < ring.size(); ++a) coords[a] = ring.coords(a);
  for (std::uint32_t idx = 0; idx < ring.size(); ++idx) {
    std::uint32_t v = idx;
    std::vector<std::uint32_t> e(orders.size());
    for (std::size_t i = 0; i < orders.size(); ++i) { e[i] = v % orders[i]; v /= orders[i]; }
    AddChar chi;
    chi.modulus = n;
    chi.index = idx;
    chi.exponent.resize(ring.size());
    for (RElem a = 0; a < ring.size(); ++a) {
      std::uint64_t acc = 0;
      for (std::size_t i = 0; i < orders.size(); ++i)
        acc += static_cast<std::uint64_t>(e[i]) * (n / orders[i]) % n * coords[a][i];
      chi.exponent[a] = static_cast<std::uint32_t>(acc % n);
    }
    out.push_back(std::move(chi));
  }
  return out;
}

// Right primitive: the kernel contains no nonzero right ideal.  Since
// every nonzero right ideal contains some rR with r != 0, this reduces
// to: for each r != 0 there is s with chi(rs) != 1.
inline bool is_right_primitive(const Ring& ring, const AddChar& chi) {
  for (RElem r = 1; r < ring.size(); ++r) {
    bool killed = true;
    for (RElem s = 0; s < ring.size(); ++s)
      if (chi.exponent[ring.mul(r, s)] != 0) { killed = false; break; }
    if (killed) return false;
  }
  return true;
}

inline bool is_left_primitive(const Ring& ring, const AddChar& chi) {
  for (RElem r = 1; r < ring.size(); ++r) {
    bool killed = true;
    for (RElem s = 0; s < ring.size(); ++s)
      if (chi.exponent[ring.mul(s, r)] != 0) { killed = false; break; }
    if (killed) return false;
  }
  return true;
}

inline std::vector<AddChar> primitive_characters(const Ring& ring) {
  std::vector<AddChar> out;
  for (auto& chi : linear_characters(ring))
    if (is_right_primitive(ring, chi)) out.push_back(chi);
  return out;
}

// {r : p*r = 0}; two-sided ideal for any ring.
inline std::vector<RElem> p_torsion_ideal(const Ring& ring, std::uint32_t p) {
  std::vector<RElem> out;
  for (RElem r = 0; r < ring.size(); ++r)
    if (ring.smul(p, r) == ring.zero()) out.push_back(r);
  return out;
}

struct PrimitivityRow {
  std::uint32_t index;
  bool trivial;
  bool right;
  bool left;
};

struct PrimitivityReport {
  std::string ring;
  std::uint32_t ring_size = 0;
  std::uint32_t additive_exponent = 1;
  std::vector<PrimitivityRow> rows;
  std::uint32_t primitive_count = 0;
  bool symmetric = true;  // right <-> left agree on every character
};

inline PrimitivityReport primitivity_symmetry_report(const Ring& ring) {
  if (ring.size() > (1u << 12))
    throw std::invalid_argument("primitivity_symmetry_report: |R| exceeds 2^12");
  PrimitivityReport rep;
  rep.ring = ring.name();
  rep.ring_size = ring.size();
  rep.additive_exponent = ring.additive_exponent();
  for (const auto& chi : linear_characters(ring)) {
    PrimitivityRow row{chi.index, chi.is_trivial(), is_right_primitive(ring, chi),
                       is_left_primitive(ring, chi)};
    if (row.right != row.left) rep.symmetric = false;
    if (row.right) ++rep.primitive_count;
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace mclain
