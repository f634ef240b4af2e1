#pragma once

// Basic (super)character scaffolding.
//
// A basic datum is a set D of positions with pairwise distinct rows and
// pairwise distinct columns, plus one primitive additive character per
// member.  It determines:
//   gamma  = Phi minus the union of half-open rows [a_i, ->, b_i),
//   lambda = the linear character of H = M(gamma) that is f_i at (a_i,b_i)
//            and trivial at every other position,
//   omega  = {(a_i,a_j) : a_i < a_j < b_i < b_j},
//   gamma1 = gamma union omega,  I = M(gamma1),
//   gamma0 = gamma minus the positions strictly inside some (a_i,b_i).
// The supercharacter is computed two independent ways (product of
// one-row induced characters, and induction of lambda straight from H)
// and both must agree exactly.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mclain/class_function.hpp"
#include "mclain/group.hpp"
#include "mclain/order.hpp"
#include "mclain/ring.hpp"

namespace mclain {

struct BasicDatum {
  std::vector<PhiPair> d;   // sorted by row
  std::vector<AddChar> f;   // parallel to d

  std::size_t size() const { return d.size(); }
};

inline BasicDatum make_basic_datum(const Lambda& lam, const Ring& ring,
                                   std::vector<PhiPair> members, std::vector<AddChar> chars) {
  if (members.size() != chars.size())
    throw std::invalid_argument("basic datum: member/character count mismatch");
  for (const auto& p : members)
    if (p.b > lam.n) throw std::invalid_argument("basic datum: position outside Lambda");
  std::vector<std::size_t> idx(members.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t x, std::size_t y) { return members[x].a < members[y].a; });
  BasicDatum out;
  for (auto i : idx) {
    out.d.push_back(members[i]);
    out.f.push_back(std::move(chars[i]));
  }
  for (std::size_t i = 1; i < out.d.size(); ++i)
    if (out.d[i].a == out.d[i - 1].a)
      throw std::invalid_argument("basic datum: rows not pairwise distinct");
  for (std::size_t i = 0; i < out.d.size(); ++i)
    for (std::size_t j = i + 1; j < out.d.size(); ++j)
      if (out.d[i].b == out.d[j].b)
        throw std::invalid_argument("basic datum: columns not pairwise distinct");
  for (const auto& chi : out.f) {
    if (chi.modulus != ring.additive_exponent() || chi.exponent.size() != ring.size())
      throw std::invalid_argument("basic datum: character does not match the ring");
    if (!is_right_primitive(ring, chi))
      throw std::invalid_argument("basic datum: character not primitive");
  }
  return out;
}

struct ScaffoldFlags {
  bool nested = true;
  bool overlapping = false;
  bool non_overlapping = true;
  bool type1 = false;
  bool has_special_triple = false;
  bool extendible = true;        // no special triple
  bool ih_abelian = true;        // derived(omega) inside gamma
  bool irreducible_pred = true;  // omega empty
  bool multiplicity_free_pred = true;
};

struct Scaffold {
  BasicDatum datum;
  AmbientPtr ambient;
  PatternGroupPtr M, H, I;
  PhiSet gamma, omega, gamma1, gamma0;
  GroupLinearChar lambda;
  ScaffoldFlags flags;
  std::vector<std::vector<PhiPair>> disconnection;  // finest valid split, row-sorted blocks
};

namespace scaffold_detail {

inline bool pair_nested(const PhiPair& x, const PhiPair& y) {
  return (x.a < y.a && y.b < x.b) || (y.a < x.a && x.b < y.b);
}
inline bool pair_overlapping(const PhiPair& x, const PhiPair& y) {
  return (x.a < y.a && y.a < x.b && x.b < y.b) || (y.a < x.a && x.a < y.b && y.b < x.b);
}

inline ScaffoldFlags classify(const std::vector<PhiPair>& d, const PhiSet& gamma,
                              const PhiSet& omega) {
  ScaffoldFlags fl;
  const std::size_t m = d.size();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      if (!pair_nested(d[i], d[j])) fl.nested = false;
      if (pair_overlapping(d[i], d[j])) {
        fl.overlapping = true;
        fl.non_overlapping = false;
      }
    }
  // chain shape: members sorted by row, intervals overlap exactly when
  // adjacent, and no column of one member is a row of another
  if (m >= 2) {
    bool t1 = true;
    for (std::size_t i = 0; i < m && t1; ++i)
      for (std::size_t j = i + 1; j < m && t1; ++j)
        if (pair_overlapping(d[i], d[j]) != (j == i + 1)) t1 = false;
    for (std::size_t i = 0; i < m && t1; ++i)
      for (std::size_t j = 0; j < m && t1; ++j)
        if (d[i].b == d[j].a) t1 = false;
    fl.type1 = t1;
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) {
        if (i == j || j == k || i == k) continue;
        if (d[i].a < d[j].a && d[j].a < d[k].a && d[k].a == d[i].b && d[i].b < d[j].b &&
            d[j].b < d[k].b)
          fl.has_special_triple = true;
      }
  fl.extendible = !fl.has_special_triple;
  fl.ih_abelian = derived_set(omega).subset_of(gamma);
  fl.irreducible_pred = omega.empty();
  fl.multiplicity_free_pred = fl.ih_abelian && !fl.has_special_triple;
  return fl;
}

inline std::vector<std::vector<PhiPair>> finest_disconnection(const std::vector<PhiPair>& d) {
  // members already row-sorted; cut wherever max column so far <= next row
  std::vector<std::vector<PhiPair>> blocks;
  std::uint32_t maxb = 0;
  for (const auto& p : d) {
    if (!blocks.empty() && maxb <= p.a) blocks.emplace_back();
    if (blocks.empty()) blocks.emplace_back();
    blocks.back().push_back(p);
    maxb = std::max<std::uint32_t>(maxb, p.b);
  }
  return blocks;
}

}  // namespace scaffold_detail

inline Scaffold build_scaffold(AmbientPtr ambient, BasicDatum datum) {
  const Lambda& lam = ambient->lam();
  const Ring& ring = ambient->ring();
  Scaffold sc;
  sc.ambient = ambient;

  PhiSet phi = PhiSet::full(lam);
  PhiSet removed;
  for (const auto& p : datum.d)
    removed = removed | intervals::row_span(lam, p.a, p.b, intervals::Bound::open);
  sc.gamma = phi - removed;
  for (const auto& p : datum.d)
    if (!sc.gamma.contains(p)) throw std::logic_error("scaffold: member fell out of gamma");

  std::vector<PhiPair> omega_pairs;
  for (const auto& x : datum.d)
    for (const auto& y : datum.d)
      if (x.a < y.a && y.a < x.b && x.b < y.b) omega_pairs.emplace_back(x.a, y.a);
  sc.omega = PhiSet(std::move(omega_pairs));
  if (!(sc.omega & sc.gamma).empty()) throw std::logic_error("scaffold: omega meets gamma");
  sc.gamma1 = sc.gamma | sc.omega;

  std::vector<PhiPair> inner;
  for (const auto& g : sc.gamma)
    for (const auto& p : datum.d)
      if (p.a < g.a && g.b < p.b) { inner.push_back(g); break; }
  sc.gamma0 = sc.gamma - PhiSet(std::move(inner));

  sc.M = full_group(ambient);
  sc.H = pattern_group(ambient, sc.gamma);
  sc.I = pattern_group(ambient, sc.gamma1);

  std::vector<std::pair<PhiPair, AddChar>> assign;
  for (std::size_t i = 0; i < datum.d.size(); ++i) assign.emplace_back(datum.d[i], datum.f[i]);
  sc.lambda = make_linear_char(*sc.H, std::move(assign));

  // multiplicativity across all generator pairs of H
  for (const auto& p : sc.gamma)
    for (RElem r = 1; r < ring.size(); ++r) {
      Elem g = ambient->generator(p, r);
      std::uint32_t eg = sc.lambda.eval_exponent(g);
      for (const auto& q : sc.gamma)
        for (RElem s = 1; s < ring.size(); ++s) {
          Elem h = ambient->generator(q, s);
          std::uint32_t lhs = sc.lambda.eval_exponent(ambient->mul(g, h));
          std::uint32_t rhs = (eg + sc.lambda.eval_exponent(h)) % sc.lambda.modulus;
          if (lhs != rhs) throw std::logic_error("scaffold: lambda not multiplicative");
        }
    }

  sc.flags = scaffold_detail::classify(datum.d, sc.gamma, sc.omega);
  sc.disconnection = scaffold_detail::finest_disconnection(datum.d);
  sc.datum = std::move(datum);
  return sc;
}

// [M : M(gamma)] = |R|^(total open interval length), the degree of the
// supercharacter.
inline std::uint64_t expected_degree(const Scaffold& sc) {
  std::uint64_t d = 1;
  for (const auto& p : sc.datum.d)
    for (std::uint32_t g = p.a + 1; g < p.b; ++g) d *= sc.ambient->ring().size();
  return d;
}

// One-row induced character: lambda-hat lives on M(Phi minus the open
// row [a, ->, b)), nontrivial only at (a,b).
inline ClassFunction elementary_character(const Scaffold& sc, std::size_t i) {
  const Lambda& lam = sc.ambient->lam();
  const PhiPair pos = sc.datum.d.at(i);
  PhiSet hpat = PhiSet::full(lam) - intervals::row_span(lam, pos.a, pos.b, intervals::Bound::open);
  PatternGroupPtr hi = pattern_group(sc.ambient, hpat);
  GroupLinearChar hat = make_linear_char(*hi, {{pos, sc.datum.f[i]}});
  return induce_linear(hat, *hi, sc.M);
}

inline ClassFunction supercharacter_tensor(const Scaffold& sc) {
  ClassFunction acc = trivial_character(sc.M);
  for (std::size_t i = 0; i < sc.datum.size(); ++i) acc = tensor(acc, elementary_character(sc, i));
  return acc;
}

inline ClassFunction supercharacter_induced(const Scaffold& sc) {
  return induce_linear(sc.lambda, *sc.H, sc.M);
}

// Both constructions, checked against each other and the degree formula.
inline ClassFunction supercharacter(const Scaffold& sc) {
  ClassFunction ind = supercharacter_induced(sc);
  ClassFunction ten = supercharacter_tensor(sc);
  if (ind != ten)
    throw std::logic_error("supercharacter: induced and tensor constructions disagree");
  if (ind.degree() != Cyc(Rat(static_cast<std::int64_t>(expected_degree(sc)))))
    throw std::logic_error("supercharacter: degree formula violated");
  return ind;
}

// All basic position sets, optionally with the empty one.
inline std::vector<std::vector<PhiPair>> basic_subsets(const Lambda& lam, bool include_empty) {
  std::vector<PhiPair> phi = PhiSet::full(lam).pairs();
  std::vector<std::vector<PhiPair>> out;
  if (include_empty) out.emplace_back();
  std::vector<PhiPair> cur;
  auto rows_cols_ok = [&](const PhiPair& cand) {
    for (const auto& p : cur)
      if (p.a == cand.a || p.b == cand.b) return false;
    return true;
  };
  auto rec = [&](auto&& self, std::size_t from) -> void {
    for (std::size_t i = from; i < phi.size(); ++i) {
      if (!rows_cols_ok(phi[i])) continue;
      cur.push_back(phi[i]);
      out.push_back(cur);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  });
  return out;
}

// Every (D, f) with f running over all tuples of primitive characters.
inline std::vector<BasicDatum> basic_data(const Lambda& lam, const Ring& ring,
                                          bool include_empty) {
  auto prim = primitive_characters(ring);
  if (prim.empty()) throw std::invalid_argument("basic_data: ring has no primitive character");
  std::vector<BasicDatum> out;
  for (const auto& d : basic_subsets(lam, include_empty)) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d.size(); ++i) count *= prim.size();
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::vector<AddChar> chars;
      std::uint64_t v = idx;
      for (std::size_t i = 0; i < d.size(); ++i) {
        chars.push_back(prim[v % prim.size()]);
        v /= prim.size();
      }
      out.push_back(make_basic_datum(lam, ring, d, std::move(chars)));
    }
  }
  return out;
}

inline std::string datum_str(const BasicDatum& datum) {
  std::string s = "{";
  for (std::size_t i = 0; i < datum.d.size(); ++i) {
    if (i) s += ",";
    s += datum.d[i].str() + ":" + std::to_string(datum.f[i].index);
  }
  return s + "}";
}

}  // namespace mclain
