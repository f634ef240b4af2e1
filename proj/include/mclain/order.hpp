#pragma once

// Index combinatorics under the natural order on {1..n}.
//
// Phi(n) is the set of strictly increasing pairs (a,b), 1 <= a < b <= n.
// Subsets of Phi are the support patterns of unitriangular groups; the
// predicates here (closed, normal_in, abelian, derived_set) are the set
// counterparts of subgroup, normal subgroup, abelian subgroup and derived
// subgroup on the group side.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mclain {

struct Lambda {
  std::uint32_t n = 0;
  explicit Lambda(std::uint32_t size) : n(size) {
    if (n == 0) throw std::invalid_argument("Lambda: empty index set");
  }
};

struct PhiPair {
  std::uint8_t a = 0;
  std::uint8_t b = 0;
  PhiPair() = default;
  PhiPair(std::uint32_t x, std::uint32_t y)
      : a(static_cast<std::uint8_t>(x)), b(static_cast<std::uint8_t>(y)) {
    if (x == 0 || y == 0 || x >= y || y > 255)
      throw std::invalid_argument("PhiPair: need 1 <= a < b");
  }
  std::uint16_t key() const { return static_cast<std::uint16_t>((a << 8) | b); }
  friend bool operator==(const PhiPair&, const PhiPair&) = default;
  friend bool operator<(const PhiPair& x, const PhiPair& y) { return x.key() < y.key(); }
  std::string str() const {
    return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
  }
};

// Total order used for canonical factorizations: (a,b) precedes (c,d)
// iff b < d, or b = d and a <= c.  Column-major, rows ascending.
inline bool precedes(const PhiPair& x, const PhiPair& y) {
  if (x.b != y.b) return x.b < y.b;
  return x.a <= y.a;
}

// Sorted pair sequence with set semantics.  Storage order is the lex
// order on (a,b); iteration is deterministic.
class PhiSet {
 public:
  PhiSet() = default;
  explicit PhiSet(std::vector<PhiPair> pairs) : pairs_(std::move(pairs)) {
    std::sort(pairs_.begin(), pairs_.end());
    pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
  }

  static PhiSet full(const Lambda& lam) {
    std::vector<PhiPair> p;
    for (std::uint32_t a = 1; a < lam.n; ++a)
      for (std::uint32_t b = a + 1; b <= lam.n; ++b) p.emplace_back(a, b);
    return PhiSet(std::move(p));
  }

  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }
  const std::vector<PhiPair>& pairs() const { return pairs_; }
  auto begin() const { return pairs_.begin(); }
  auto end() const { return pairs_.end(); }

  bool contains(const PhiPair& p) const {
    return std::binary_search(pairs_.begin(), pairs_.end(), p);
  }

  friend bool operator==(const PhiSet&, const PhiSet&) = default;

  friend PhiSet operator|(const PhiSet& x, const PhiSet& y) {
    std::vector<PhiPair> out;
    std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
    return PhiSet::presorted(std::move(out));
  }
  friend PhiSet operator&(const PhiSet& x, const PhiSet& y) {
    std::vector<PhiPair> out;
    std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
    return PhiSet::presorted(std::move(out));
  }
  friend PhiSet operator-(const PhiSet& x, const PhiSet& y) {
    std::vector<PhiPair> out;
    std::set_difference(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
    return PhiSet::presorted(std::move(out));
  }
  bool subset_of(const PhiSet& y) const {
    return std::includes(y.begin(), y.end(), begin(), end());
  }

  std::string str() const {
    std::string s = "{";
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
      if (i) s += ",";
      s += pairs_[i].str();
    }
    return s + "}";
  }

 private:
  static PhiSet presorted(std::vector<PhiPair> p) {
    PhiSet s;
    s.pairs_ = std::move(p);
    return s;
  }
  std::vector<PhiPair> pairs_;
};

namespace intervals {

enum class Bound { closed, open };

inline void check_index(const Lambda& lam, std::uint32_t v, const char* what) {
  if (v < 1 || v > lam.n) throw std::invalid_argument(std::string(what) + ": index out of range");
}

// {(c,d) in Phi : a R1 c < d R2 b}; closed bounds use <=, open use <.
inline PhiSet box(const Lambda& lam, std::uint32_t a, std::uint32_t b,
                  Bound lo = Bound::closed, Bound hi = Bound::closed) {
  check_index(lam, a, "box");
  check_index(lam, b, "box");
  if (a > b) throw std::invalid_argument("box: a > b");
  std::vector<PhiPair> out;
  for (std::uint32_t c = 1; c < b; ++c) {
    if (lo == Bound::closed ? c < a : c <= a) continue;
    for (std::uint32_t d = c + 1; d <= lam.n; ++d) {
      if (hi == Bound::closed ? d > b : d >= b) break;
      out.emplace_back(c, d);
    }
  }
  return PhiSet(std::move(out));
}

inline PhiSet rows_where(const Lambda& lam, auto pred) {
  std::vector<PhiPair> out;
  for (std::uint32_t c = 1; c < lam.n; ++c) {
    if (!pred(c)) continue;
    for (std::uint32_t d = c + 1; d <= lam.n; ++d) out.emplace_back(c, d);
  }
  return PhiSet(std::move(out));
}
inline PhiSet cols_where(const Lambda& lam, auto pred) {
  std::vector<PhiPair> out;
  for (std::uint32_t c = 1; c < lam.n; ++c)
    for (std::uint32_t d = c + 1; d <= lam.n; ++d)
      if (pred(d)) out.emplace_back(c, d);
  return PhiSet(std::move(out));
}

// row index strictly below / up to a
inline PhiSet rows_lt(const Lambda& lam, std::uint32_t a) {
  check_index(lam, a, "rows_lt");
  return rows_where(lam, [&](std::uint32_t c) { return c < a; });
}
inline PhiSet rows_le(const Lambda& lam, std::uint32_t a) {
  check_index(lam, a, "rows_le");
  return rows_where(lam, [&](std::uint32_t c) { return c <= a; });
}
inline PhiSet rows_gt(const Lambda& lam, std::uint32_t a) {
  check_index(lam, a, "rows_gt");
  return rows_where(lam, [&](std::uint32_t c) { return c > a; });
}
inline PhiSet rows_ge(const Lambda& lam, std::uint32_t a) {
  check_index(lam, a, "rows_ge");
  return rows_where(lam, [&](std::uint32_t c) { return c >= a; });
}
inline PhiSet row_at(const Lambda& lam, std::uint32_t a) {
  check_index(lam, a, "row_at");
  return rows_where(lam, [&](std::uint32_t c) { return c == a; });
}

// column index versions
inline PhiSet cols_lt(const Lambda& lam, std::uint32_t b) {
  check_index(lam, b, "cols_lt");
  return cols_where(lam, [&](std::uint32_t d) { return d < b; });
}
inline PhiSet cols_le(const Lambda& lam, std::uint32_t b) {
  check_index(lam, b, "cols_le");
  return cols_where(lam, [&](std::uint32_t d) { return d <= b; });
}
inline PhiSet cols_gt(const Lambda& lam, std::uint32_t b) {
  check_index(lam, b, "cols_gt");
  return cols_where(lam, [&](std::uint32_t d) { return d > b; });
}
inline PhiSet cols_ge(const Lambda& lam, std::uint32_t b) {
  check_index(lam, b, "cols_ge");
  return cols_where(lam, [&](std::uint32_t d) { return d >= b; });
}
inline PhiSet col_at(const Lambda& lam, std::uint32_t b) {
  check_index(lam, b, "col_at");
  return cols_where(lam, [&](std::uint32_t d) { return d == b; });
}

// {(c,b) : a R c < b}: the part of column b at or after row a.
inline PhiSet col_span(const Lambda& lam, std::uint32_t a, std::uint32_t b,
                       Bound lo = Bound::closed) {
  check_index(lam, a, "col_span");
  check_index(lam, b, "col_span");
  if (a >= b) throw std::invalid_argument("col_span: need a < b");
  std::vector<PhiPair> out;
  for (std::uint32_t c = (lo == Bound::closed ? a : a + 1); c < b; ++c) out.emplace_back(c, b);
  return PhiSet(std::move(out));
}

// {(a,d) : a < d R b}: the part of row a up to column b.
inline PhiSet row_span(const Lambda& lam, std::uint32_t a, std::uint32_t b,
                       Bound hi = Bound::closed) {
  check_index(lam, a, "row_span");
  check_index(lam, b, "row_span");
  if (a >= b) throw std::invalid_argument("row_span: need a < b");
  std::vector<PhiPair> out;
  for (std::uint32_t d = a + 1; d <= (hi == Bound::closed ? b : b - 1); ++d) out.emplace_back(a, d);
  return PhiSet(std::move(out));
}

}  // namespace intervals

// s is closed when chains compose: (a,b),(b,c) in s implies (a,c) in s.
inline bool is_closed(const PhiSet& s) {
  for (const auto& p : s)
    for (const auto& q : s)
      if (p.b == q.a && !s.contains(PhiPair(p.a, q.b))) return false;
  return true;
}

// s normal in s1 (both closed, s subset of s1): chains with one leg in s1
// land back in s.
inline bool is_normal_in(const PhiSet& s, const PhiSet& s1) {
  if (!s.subset_of(s1)) throw std::invalid_argument("is_normal_in: s not contained in s1");
  if (!is_closed(s) || !is_closed(s1)) throw std::invalid_argument("is_normal_in: operands must be closed");
  for (const auto& p : s)
    for (const auto& q : s1) {
      if (p.b == q.a && !s.contains(PhiPair(p.a, q.b))) return false;
      if (q.b == p.a && !s.contains(PhiPair(q.a, p.b))) return false;
    }
  return true;
}

// no chains at all inside s
inline bool is_abelian_set(const PhiSet& s) {
  for (const auto& p : s)
    for (const auto& q : s)
      if (p.b == q.a) return false;
  return true;
}

// Endpoints of chains of length >= 2 inside s: union of the relational
// powers s^2, s^3, ...  Equals the support pattern of the derived
// subgroup of the pattern group on s.
inline PhiSet derived_set(const PhiSet& s) {
  // transitive closure, then compose once more with s
  std::vector<PhiPair> closure(s.begin(), s.end());
  PhiSet clo(closure);
  for (;;) {
    std::vector<PhiPair> next(clo.begin(), clo.end());
    std::size_t before = next.size();
    for (const auto& p : clo)
      for (const auto& q : clo)
        if (p.b == q.a) next.emplace_back(p.a, q.b);
    PhiSet grown(std::move(next));
    if (grown.size() == before) break;
    clo = std::move(grown);
  }
  std::vector<PhiPair> out;
  for (const auto& p : s)
    for (const auto& q : clo)
      if (p.b == q.a) out.emplace_back(p.a, q.b);
  return PhiSet(std::move(out));
}

// All subsets of Phi(n) that are closed; exhaustive, for small n.
inline std::vector<PhiSet> all_closed_subsets(const Lambda& lam) {
  PhiSet phi = PhiSet::full(lam);
  const auto& pos = phi.pairs();
  if (pos.size() > 20) throw std::invalid_argument("all_closed_subsets: Phi too large");
  std::vector<PhiSet> out;
  for (std::uint64_t mask = 0; mask < (1ull << pos.size()); ++mask) {
    std::vector<PhiPair> sub;
    for (std::size_t i = 0; i < pos.size(); ++i)
      if (mask & (1ull << i)) sub.push_back(pos[i]);
    PhiSet cand(std::move(sub));
    if (is_closed(cand)) out.push_back(std::move(cand));
  }
  return out;
}

}  // namespace mclain
