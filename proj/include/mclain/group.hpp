#pragma once

// Unitriangular (McLain) groups over a finite ring.
//
// An element is 1 + x with x supported on finitely many positions
// (a,b) in Phi; e_ab e_bc = e_ac and all other products vanish, so
// (1+x)(1+y) = 1 + x + y + xy and x is nilpotent.  Elements are stored
// as their sorted sparse support; the identity has empty support.
//
// A pattern group M(Gamma) for closed Gamma is the set of elements
// supported inside Gamma; |M(Gamma)| = |R|^|Gamma|.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "mclain/cyclotomic.hpp"
#include "mclain/order.hpp"
#include "mclain/ring.hpp"

namespace mclain {

struct Elem {
  // (position key, nonzero coefficient), sorted by key
  std::vector<std::pair<std::uint16_t, RElem>> supp;

  bool is_identity() const { return supp.empty(); }
  friend bool operator==(const Elem&, const Elem&) = default;

  RElem coeff(PhiPair p) const {
    auto it = std::lower_bound(supp.begin(), supp.end(), p.key(),
                               [](const auto& e, std::uint16_t k) { return e.first < k; });
    return (it != supp.end() && it->first == p.key()) ? it->second : 0;
  }

  std::string str() const {
    if (supp.empty()) return "1";
    std::string s = "1";
    for (const auto& [k, r] : supp) {
      s += " + " + std::to_string(r) + "*e(" + std::to_string(k >> 8) + "," +
           std::to_string(k & 0xff) + ")";
    }
    return s;
  }
};

struct ElemHash {
  std::size_t operator()(const Elem& e) const {
    std::uint64_t h = 1469598103934665603ull;
    for (const auto& [k, r] : e.supp) {
      h = (h ^ k) * 1099511628211ull;
      h = (h ^ r) * 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

// Shared (Lambda, R) context carrying the element arithmetic.
class Ambient {
 public:
  Ambient(Lambda lam, RingPtr ring) : lam_(lam), ring_(std::move(ring)) {
    if (!ring_) throw std::invalid_argument("Ambient: null ring");
  }

  const Lambda& lam() const { return lam_; }
  const Ring& ring() const { return *ring_; }
  RingPtr ring_ptr() const { return ring_; }

  Elem identity() const { return {}; }

  Elem generator(PhiPair pos, RElem r) const {
    if (pos.b > lam_.n) throw std::invalid_argument("generator: position outside Lambda");
    if (r >= ring_->size()) throw std::invalid_argument("generator: coefficient outside ring");
    Elem e;
    if (r != 0) e.supp.emplace_back(pos.key(), r);
    return e;
  }

  Elem make(std::vector<std::pair<PhiPair, RElem>> entries) const {
    std::vector<std::pair<std::uint16_t, RElem>> s;
    for (auto& [p, r] : entries) {
      if (p.b > lam_.n) throw std::invalid_argument("make: position outside Lambda");
      if (r >= ring_->size()) throw std::invalid_argument("make: coefficient outside ring");
      if (r != 0) s.emplace_back(p.key(), r);
    }
    std::sort(s.begin(), s.end());
    for (std::size_t i = 1; i < s.size(); ++i)
      if (s[i].first == s[i - 1].first) throw std::invalid_argument("make: duplicate position");
    Elem e;
    e.supp = std::move(s);
    return e;
  }

  Elem mul(const Elem& g, const Elem& h) const {
    auto prod = sparse_mul(g.supp, h.supp);
    auto sum = sparse_add(g.supp, h.supp);
    return Elem{sparse_add(sum, prod)};
  }

  Elem inverse(const Elem& g) const {
    // y = -x - x*y, iterated; terminates by nilpotency
    auto minus_x = sparse_neg(g.supp);
    auto y = minus_x;
    for (std::uint32_t i = 0; i <= lam_.n; ++i) {
      auto next = sparse_add(minus_x, sparse_neg(sparse_mul(g.supp, y)));
      if (next == y) return Elem{std::move(y)};
      y = std::move(next);
    }
    throw std::logic_error("inverse: no fixpoint");
  }

  Elem conjugate(const Elem& g, const Elem& h) const {  // g h g^-1
    return mul(mul(g, h), inverse(g));
  }

  Elem commutator(const Elem& g, const Elem& h) const {  // g h g^-1 h^-1
    return mul(mul(g, h), mul(inverse(g), inverse(h)));
  }

  std::uint32_t element_order(const Elem& g) const {
    Elem acc = g;
    std::uint32_t k = 1;
    while (!acc.is_identity()) {
      acc = mul(acc, g);
      ++k;
      if (k > (1u << 20)) throw std::logic_error("element_order: runaway");
    }
    return k;
  }

  // Canonical factorization: the factors 1 + r e_pos, listed in
  // decreasing column-major order, whose left-to-right product is g.
  // The coefficients are exactly the sparse coefficients of g.
  std::vector<std::pair<PhiPair, RElem>> factorization(const Elem& g) const {
    std::vector<std::pair<PhiPair, RElem>> f;
    f.reserve(g.supp.size());
    for (const auto& [k, r] : g.supp)
      f.emplace_back(PhiPair(k >> 8, k & 0xff), r);
    std::sort(f.begin(), f.end(), [](const auto& x, const auto& y) {
      return precedes(y.first, x.first) && !(x.first == y.first);
    });
    return f;
  }

  Elem product_of_factors(const std::vector<std::pair<PhiPair, RElem>>& f) const {
    Elem acc = identity();
    for (const auto& [p, r] : f) acc = mul(acc, generator(p, r));
    return acc;
  }

  PhiSet support_set(const Elem& g) const {
    std::vector<PhiPair> p;
    for (const auto& [k, r] : g.supp) p.emplace_back(k >> 8, k & 0xff);
    return PhiSet(std::move(p));
  }

 private:
  using Supp = std::vector<std::pair<std::uint16_t, RElem>>;

  Supp sparse_add(const Supp& x, const Supp& y) const {
    Supp out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
      if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
        out.push_back(x[i++]);
      } else if (i == x.size() || y[j].first < x[i].first) {
        out.push_back(y[j++]);
      } else {
        RElem r = ring_->add(x[i].second, y[j].second);
        if (r != 0) out.emplace_back(x[i].first, r);
        ++i, ++j;
      }
    }
    return out;
  }

  Supp sparse_neg(const Supp& x) const {
    Supp out = x;
    for (auto& [k, r] : out) r = ring_->neg(r);
    return out;
  }

  Supp sparse_mul(const Supp& x, const Supp& y) const {
    Supp acc;
    for (const auto& [kx, rx] : x) {
      std::uint16_t mid = kx & 0xff;
      for (const auto& [ky, ry] : y) {
        if ((ky >> 8) != mid) continue;
        RElem r = ring_->mul(rx, ry);
        if (r == 0) continue;
        acc.emplace_back(static_cast<std::uint16_t>((kx & 0xff00) | (ky & 0xff)), r);
      }
    }
    if (acc.empty()) return acc;
    std::sort(acc.begin(), acc.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    Supp out;
    for (const auto& [k, r] : acc) {
      if (!out.empty() && out.back().first == k) {
        RElem s = ring_->add(out.back().second, r);
        if (s == 0)
          out.pop_back();
        else
          out.back().second = s;
      } else {
        out.emplace_back(k, r);
      }
    }
    return out;
  }

  Lambda lam_;
  RingPtr ring_;
};

using AmbientPtr = std::shared_ptr<const Ambient>;

struct Classes {
  std::vector<Elem> reps;  // reps[0] is the identity
  std::vector<std::uint32_t> sizes;
  std::vector<std::uint32_t> inverse_class;
  std::vector<std::uint32_t> rep_order;
  std::uint32_t exponent = 1;
  std::unordered_map<Elem, std::uint32_t, ElemHash> class_of;

  std::uint32_t count() const { return static_cast<std::uint32_t>(reps.size()); }
  std::uint32_t id(const Elem& e) const {
    auto it = class_of.find(e);
    if (it == class_of.end()) throw std::invalid_argument("Classes: element not in group");
    return it->second;
  }
};

class PatternGroup;
using PatternGroupPtr = std::shared_ptr<const PatternGroup>;

class PatternGroup : public std::enable_shared_from_this<PatternGroup> {
 public:
  static PatternGroupPtr make(AmbientPtr ambient, PhiSet gamma) {
    if (!is_closed(gamma)) throw std::invalid_argument("pattern_group: support set not closed");
    for (const auto& p : gamma)
      if (p.b > ambient->lam().n)
        throw std::invalid_argument("pattern_group: support outside Lambda");
    return PatternGroupPtr(new PatternGroup(std::move(ambient), std::move(gamma)));
  }

  const Ambient& ambient() const { return *ambient_; }
  AmbientPtr ambient_ptr() const { return ambient_; }
  const PhiSet& gamma() const { return gamma_; }
  const Ring& ring() const { return ambient_->ring(); }

  std::uint64_t order() const {
    std::uint64_t o = 1;
    for (std::size_t i = 0; i < gamma_.size(); ++i) {
      if (o > (1ull << 40)) throw std::overflow_error("PatternGroup: order overflow");
      o *= ring().size();
    }
    return o;
  }

  bool contains(const Elem& e) const {
    for (const auto& [k, r] : e.supp)
      if (!gamma_.contains(PhiPair(k >> 8, k & 0xff))) return false;
    return true;
  }

  bool is_subgroup_of(const PatternGroup& other) const {
    return ambient_ == other.ambient_ && gamma_.subset_of(other.gamma_);
  }

  // Generators 1 + u e_pos with u running over the additive slot units;
  // they generate the group (canonical factors split into them).
  std::vector<Elem> generators() const {
    std::vector<Elem> out;
    const auto& orders = ring().slot_orders();
    for (const auto& p : gamma_) {
      std::uint32_t unit = 1;
      for (std::size_t i = 0; i < orders.size(); ++i) {
        out.push_back(ambient_->generator(p, unit));
        unit *= orders[i];
      }
    }
    return out;
  }

  // All elements, coefficient-lexicographic over the sorted positions.
  const std::vector<Elem>& elements() const {
    std::call_once(elements_once_, [this] {
      if (order() > (1ull << 20)) throw std::invalid_argument("elements: |G| exceeds 2^20");
      const auto n = static_cast<std::uint32_t>(order());
      const auto& pos = gamma_.pairs();
      const std::uint32_t q = ring().size();
      std::vector<Elem> out;
      out.reserve(n);
      for (std::uint32_t idx = 0; idx < n; ++idx) {
        Elem e;
        std::uint32_t v = idx;
        for (const auto& p : pos) {
          RElem r = v % q;
          v /= q;
          if (r != 0) e.supp.emplace_back(p.key(), r);
        }
        out.push_back(std::move(e));
      }
      elements_ = std::move(out);
    });
    return elements_;
  }

  // Conjugacy classes by orbit closure under the generators; class order
  // is first-appearance order in the element enumeration, so reps and
  // numbering are deterministic.
  const Classes& classes() const {
    std::call_once(classes_once_, [this] {
      if (order() > (1ull << 16)) throw std::invalid_argument("classes: |G| exceeds 2^16");
      const auto& elems = elements();
      auto gens = generators();
      std::vector<std::pair<Elem, Elem>> gen_inv;
      gen_inv.reserve(gens.size());
      for (auto& g : gens) gen_inv.emplace_back(g, ambient_->inverse(g));
      Classes cl;
      cl.class_of.reserve(elems.size() * 2);
      for (const auto& seed : elems) {
        if (cl.class_of.count(seed)) continue;
        std::uint32_t id = cl.count();
        std::vector<Elem> work{seed};
        cl.class_of.emplace(seed, id);
        std::uint32_t size = 1;
        while (!work.empty()) {
          Elem cur = std::move(work.back());
          work.pop_back();
          for (const auto& [g, gi] : gen_inv) {
            Elem conj = ambient_->mul(ambient_->mul(g, cur), gi);
            if (cl.class_of.emplace(conj, id).second) {
              ++size;
              work.push_back(std::move(conj));
            }
          }
        }
        cl.reps.push_back(seed);
        cl.sizes.push_back(size);
      }
      cl.inverse_class.resize(cl.count());
      cl.rep_order.resize(cl.count());
      for (std::uint32_t i = 0; i < cl.count(); ++i) {
        cl.inverse_class[i] = cl.id(ambient_->inverse(cl.reps[i]));
        cl.rep_order[i] = ambient_->element_order(cl.reps[i]);
        cl.exponent = std::lcm(cl.exponent, cl.rep_order[i]);
      }
      classes_ = std::move(cl);
    });
    return classes_;
  }

 private:
  PatternGroup(AmbientPtr ambient, PhiSet gamma)
      : ambient_(std::move(ambient)), gamma_(std::move(gamma)) {}

  AmbientPtr ambient_;
  PhiSet gamma_;
  mutable std::once_flag elements_once_, classes_once_;
  mutable std::vector<Elem> elements_;
  mutable Classes classes_;
};

// Interned so that equal (ambient, gamma) pairs share one instance and
// its lazily built element/class/table data.
inline PatternGroupPtr pattern_group(AmbientPtr ambient, PhiSet gamma) {
  using Key = std::pair<const Ambient*, std::vector<PhiPair>>;
  struct Slot {
    std::weak_ptr<const Ambient> amb;
    std::weak_ptr<const PatternGroup> grp;
  };
  static std::mutex mu;
  static std::map<Key, Slot> cache;

  Key key{ambient.get(), gamma.pairs()};
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it != cache.end()) {
    if (it->second.amb.lock() == ambient)
      if (auto g = it->second.grp.lock()) return g;
    cache.erase(it);
  }
  auto g = PatternGroup::make(ambient, std::move(gamma));
  cache[std::move(key)] = Slot{ambient, g};
  return g;
}

inline PatternGroupPtr full_group(AmbientPtr ambient) {
  PhiSet phi = PhiSet::full(ambient->lam());
  return pattern_group(std::move(ambient), std::move(phi));
}

// Coset representatives of M(gamma) in M(gamma1): the elements supported
// on gamma1 minus gamma.  Requires gamma normal in gamma1.
inline std::vector<Elem> transversal(const PatternGroup& sub, const PatternGroup& super) {
  if (!sub.is_subgroup_of(super)) throw std::invalid_argument("transversal: not a subgroup");
  if (!is_normal_in(sub.gamma(), super.gamma()))
    throw std::invalid_argument("transversal: subgroup pattern not normal");
  PhiSet rest = super.gamma() - sub.gamma();
  const auto& pos = rest.pairs();
  const std::uint32_t q = super.ring().size();
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    count *= q;
    if (count > (1ull << 20)) throw std::invalid_argument("transversal: index exceeds 2^20");
  }
  std::vector<Elem> out;
  out.reserve(count);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    Elem e;
    std::uint64_t v = idx;
    for (const auto& p : pos) {
      RElem r = static_cast<RElem>(v % q);
      v /= q;
      if (r != 0) e.supp.emplace_back(p.key(), r);
    }
    out.push_back(std::move(e));
  }
  return out;
}

inline PatternGroupPtr derived_subgroup(const PatternGroup& pg) {
  return pattern_group(pg.ambient_ptr(), derived_set(pg.gamma()));
}

// Subgroup generated by a list of elements; worklist closure, small scale.
inline std::vector<Elem> subgroup_closure(const Ambient& ambient, const std::vector<Elem>& gens,
                                          std::uint64_t guard = (1ull << 20)) {
  std::unordered_map<Elem, bool, ElemHash> seen;
  std::vector<Elem> work{Elem{}};
  seen.emplace(Elem{}, true);
  while (!work.empty()) {
    Elem cur = std::move(work.back());
    work.pop_back();
    for (const auto& g : gens) {
      Elem next = ambient.mul(cur, g);
      if (seen.emplace(next, true).second) {
        if (seen.size() > guard) throw std::invalid_argument("subgroup_closure: guard exceeded");
        work.push_back(std::move(next));
      }
    }
  }
  std::vector<Elem> out;
  out.reserve(seen.size());
  for (auto& [e, _] : seen) out.push_back(e);
  return out;
}

// A linear (degree-1) character of a pattern group: one additive
// character per position, trivial on the derived pattern.  Evaluation
// reads the sparse coefficients directly; this is the positionwise
// splitting of the abelianization.
struct GroupLinearChar {
  std::uint32_t modulus = 1;
  std::vector<std::pair<std::uint16_t, AddChar>> entries;  // sorted by key, nontrivial only

  std::uint32_t eval_exponent(const Elem& g) const {
    std::uint64_t acc = 0;
    auto it = entries.begin();
    for (const auto& [k, r] : g.supp) {
      while (it != entries.end() && it->first < k) ++it;
      if (it == entries.end()) break;
      if (it->first == k) acc += it->second.exponent[r];
    }
    return static_cast<std::uint32_t>(acc % modulus);
  }

  Cyc eval(const Elem& g) const { return Cyc::root(eval_exponent(g), modulus); }

  bool is_trivial() const { return entries.empty(); }
  friend bool operator==(const GroupLinearChar&, const GroupLinearChar&) = default;
};

inline GroupLinearChar make_linear_char(const PatternGroup& pg,
                                        std::vector<std::pair<PhiPair, AddChar>> assignment) {
  GroupLinearChar chi;
  chi.modulus = pg.ring().additive_exponent();
  PhiSet derived = derived_set(pg.gamma());
  for (auto& [p, a] : assignment) {
    if (!pg.gamma().contains(p))
      throw std::invalid_argument("make_linear_char: position outside the pattern");
    if (a.is_trivial()) continue;
    if (derived.contains(p))
      throw std::invalid_argument("make_linear_char: nontrivial on a derived position");
    if (a.modulus != chi.modulus) throw std::invalid_argument("make_linear_char: modulus mismatch");
    chi.entries.emplace_back(p.key(), std::move(a));
  }
  std::sort(chi.entries.begin(), chi.entries.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  for (std::size_t i = 1; i < chi.entries.size(); ++i)
    if (chi.entries[i].first == chi.entries[i - 1].first)
      throw std::invalid_argument("make_linear_char: duplicate position");
  return chi;
}

// All |R|^|gamma \ derived| linear characters, mixed-radix over the free
// positions in lex order.
inline std::vector<GroupLinearChar> abelianization_characters(const PatternGroup& pg) {
  PhiSet free_pos = pg.gamma() - derived_set(pg.gamma());
  auto chars = linear_characters(pg.ring());
  const auto& pos = free_pos.pairs();
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    count *= chars.size();
    if (count > (1ull << 20))
      throw std::invalid_argument("abelianization_characters: count exceeds 2^20");
  }
  std::vector<GroupLinearChar> out;
  out.reserve(count);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::vector<std::pair<PhiPair, AddChar>> assign;
    std::uint64_t v = idx;
    for (const auto& p : pos) {
      std::uint32_t c = static_cast<std::uint32_t>(v % chars.size());
      v /= chars.size();
      if (c != 0) assign.emplace_back(p, chars[c]);
    }
    out.push_back(make_linear_char(pg, std::move(assign)));
  }
  return out;
}

}  // namespace mclain
