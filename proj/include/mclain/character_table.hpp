#pragma once

// Exact irreducible character tables of pattern groups.
//
// Abelian groups get their table positionwise from the abelianization.
// Non-abelian groups go through Burnside-Dixon: class algebra
// homomorphisms are computed as joint eigenvectors of class-product
// matrices over F_l for the smallest prime l == 1 (mod exp G) with
// l > 2 sqrt|G|, degrees recovered by modular square root, and values
// lifted to exact level-exp(G) cyclotomics through the discrete Fourier
// sum over power-map classes.  The lifted table is re-verified exactly
// (orthonormality, sum of squared degrees, count) before it is cached.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <stdexcept>
#include <vector>

#include "mclain/class_function.hpp"
#include "mclain/cyclotomic.hpp"
#include "mclain/group.hpp"

namespace mclain {

namespace dixon_detail {

inline std::uint64_t mulm(std::uint64_t a, std::uint64_t b, std::uint64_t l) {
  return (a * b) % l;  // l < 2^31 here, no overflow
}
inline std::uint64_t addm(std::uint64_t a, std::uint64_t b, std::uint64_t l) {
  std::uint64_t s = a + b;
  return s >= l ? s - l : s;
}
inline std::uint64_t subm(std::uint64_t a, std::uint64_t b, std::uint64_t l) {
  return a >= b ? a - b : a + l - b;
}
inline std::uint64_t powm(std::uint64_t a, std::uint64_t e, std::uint64_t l) {
  std::uint64_t r = 1 % l;
  a %= l;
  while (e) {
    if (e & 1) r = mulm(r, a, l);
    a = mulm(a, a, l);
    e >>= 1;
  }
  return r;
}
inline std::uint64_t invm(std::uint64_t a, std::uint64_t l) { return powm(a, l - 2, l); }

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::uint64_t next_admissible_prime(std::uint64_t e, std::uint64_t lower) {
  for (std::uint64_t l = e + 1;; l += e) {
    if (l <= lower) continue;
    if (is_prime_u64(l)) return l;
    if (l > (1ull << 30)) throw std::logic_error("dixon: no admissible prime found");
  }
}

inline std::uint64_t primitive_root(std::uint64_t l) {
  // smallest generator of (Z/l)*; l is a small prime
  std::vector<std::uint64_t> primes;
  std::uint64_t m = l - 1;
  for (std::uint64_t d = 2; d * d <= m; ++d)
    if (m % d == 0) {
      primes.push_back(d);
      while (m % d == 0) m /= d;
    }
  if (m > 1) primes.push_back(m);
  for (std::uint64_t g = 2; g < l; ++g) {
    bool ok = true;
    for (auto p : primes)
      if (powm(g, (l - 1) / p, l) == 1) { ok = false; break; }
    if (ok) return g;
  }
  throw std::logic_error("dixon: no primitive root");
}

using Vec = std::vector<std::uint64_t>;
using Mat = std::vector<Vec>;  // row-major square

// reduce a copy of m to row echelon; returns rank, records pivot columns
inline std::uint32_t echelon(Mat& m, std::uint64_t l, std::vector<std::uint32_t>* pivots = nullptr) {
  std::uint32_t rows = static_cast<std::uint32_t>(m.size());
  std::uint32_t cols = rows ? static_cast<std::uint32_t>(m[0].size()) : 0;
  std::uint32_t rank = 0;
  for (std::uint32_t c = 0; c < cols && rank < rows; ++c) {
    std::uint32_t piv = rank;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[rank], m[piv]);
    std::uint64_t inv = invm(m[rank][c], l);
    for (std::uint32_t j = c; j < cols; ++j) m[rank][j] = mulm(m[rank][j], inv, l);
    for (std::uint32_t r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      std::uint64_t f = m[r][c];
      for (std::uint32_t j = c; j < cols; ++j)
        m[r][j] = subm(m[r][j], mulm(f, m[rank][j], l), l);
    }
    if (pivots) pivots->push_back(c);
    ++rank;
  }
  return rank;
}

// nullspace basis of a square matrix
inline std::vector<Vec> nullspace(Mat m, std::uint64_t l) {
  std::uint32_t n = static_cast<std::uint32_t>(m.size());
  std::vector<std::uint32_t> pivots;
  echelon(m, l, &pivots);
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::uint32_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vec v(n, 0);
    v[free] = 1;
    // back-substitute pivot rows
    for (std::uint32_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = subm(0, m[r][free], l);
    basis.push_back(std::move(v));
  }
  return basis;
}

// characteristic polynomial evaluation helper: reduce to upper
// Hessenberg once, then evaluate det(H - x I) per candidate x with the
// O(n^2) Hessenberg minor recurrence.
inline Mat to_hessenberg(Mat h, std::uint64_t l) {
  std::uint32_t n = static_cast<std::uint32_t>(h.size());
  for (std::uint32_t c = 0; c + 2 < n; ++c) {
    std::uint32_t piv = c + 1;
    while (piv < n && h[piv][c] == 0) ++piv;
    if (piv == n) continue;
    if (piv != c + 1) {
      std::swap(h[piv], h[c + 1]);
      for (std::uint32_t r = 0; r < n; ++r) std::swap(h[r][piv], h[r][c + 1]);
    }
    std::uint64_t inv = invm(h[c + 1][c], l);
    for (std::uint32_t r = c + 2; r < n; ++r) {
      if (h[r][c] == 0) continue;
      std::uint64_t f = mulm(h[r][c], inv, l);
      for (std::uint32_t j = 0; j < n; ++j) h[r][j] = subm(h[r][j], mulm(f, h[c + 1][j], l), l);
      for (std::uint32_t j = 0; j < n; ++j) h[j][c + 1] = addm(h[j][c + 1], mulm(f, h[j][r], l), l);
    }
  }
  return h;
}

inline std::uint64_t det_hessenberg_shifted(const Mat& h, std::uint64_t x, std::uint64_t l) {
  // det(h - x I) by leading principal minors of a Hessenberg matrix
  std::uint32_t n = static_cast<std::uint32_t>(h.size());
  std::vector<std::uint64_t> d(n + 1);
  d[0] = 1;
  for (std::uint32_t i = 1; i <= n; ++i) {
    std::uint64_t acc = 0;
    std::uint64_t prod = 1;
    for (std::uint32_t j = i; j >= 1; --j) {
      std::uint64_t entry = h[j - 1][i - 1];
      if (j == i) entry = subm(entry, x, l);
      std::uint64_t term = mulm(mulm(entry, prod, l), d[j - 1], l);
      if ((i - j) % 2 == 0)
        acc = addm(acc, term, l);
      else
        acc = subm(acc, term, l);
      if (j >= 2) {
        std::uint64_t sub = h[j - 1][j - 2];
        if (sub == 0) break;  // lower entries contribute nothing further
        prod = mulm(prod, sub, l);
      }
    }
    d[i] = acc;
  }
  return d[n];
}

}  // namespace dixon_detail

struct CharacterTable {
  PatternGroupPtr group;
  std::vector<ClassFunction> irr;  // sorted by degree, then value order

  std::size_t size() const { return irr.size(); }
};

namespace dixon_detail {

// Splitting state: invariant subspaces of F_l^k under the class algebra.
struct Subspace {
  std::vector<Vec> basis;  // vectors of length k
};

class DixonRun {
 public:
  DixonRun(const PatternGroup& pg, std::uint64_t seed) : pg_(pg), cl_(pg.classes()), seed_(seed) {
    k_ = cl_.count();
    order_ = pg.order();
    if (k_ > 512) throw std::invalid_argument("irr_table: class count exceeds 512");
    const auto& elems = pg.elements();
    uclass_.resize(elems.size());
    prodclass_.resize(elems.size());
    const Ambient& amb = pg.ambient();
    for (std::size_t x = 0; x < elems.size(); ++x) {
      uclass_[x] = cl_.id(elems[x]);
      Elem xi = amb.inverse(elems[x]);
      auto& row = prodclass_[x];
      row.resize(k_);
      for (std::uint32_t j = 0; j < k_; ++j)
        row[j] = static_cast<std::uint16_t>(cl_.id(amb.mul(xi, cl_.reps[j])));
    }
  }

  // rows of the lifted exact table, unsorted
  std::vector<std::vector<Cyc>> run() {
    std::uint64_t lower = 1;
    while (lower * lower <= 4 * order_) ++lower;  // lower = floor(2 sqrt|G|) + 1
    std::uint64_t l = next_admissible_prime(cl_.exponent, lower);
    for (int attempt = 0; attempt < 5; ++attempt, l = next_admissible_prime(cl_.exponent, l)) {
      auto rows = try_prime(l);
      if (!rows.empty()) return rows;
    }
    throw std::logic_error("irr_table: eigenspace splitting failed for all attempted primes");
  }

 private:
  Mat build_combo(const Vec& coeffs, std::uint64_t l) const {
    Mat m(k_, Vec(k_, 0));
    for (std::size_t x = 0; x < uclass_.size(); ++x) {
      std::uint64_t c = coeffs[uclass_[x]];
      if (c == 0) continue;
      const auto& row = prodclass_[x];
      for (std::uint32_t j = 0; j < k_; ++j) m[row[j]][j] = addm(m[row[j]][j], c, l);
    }
    return m;
  }

  std::vector<std::vector<Cyc>> try_prime(std::uint64_t l) {
    std::vector<Subspace> spaces(1);
    spaces[0].basis.resize(k_, Vec(k_, 0));
    for (std::uint32_t i = 0; i < k_; ++i) spaces[0].basis[i][i] = 1;

    std::mt19937_64 rng(seed_ ^ l);
    auto all_split = [&] {
      for (const auto& s : spaces)
        if (s.basis.size() > 1) return false;
      return true;
    };
    for (std::uint32_t round = 0; round + 1 < k_ + 3 && !all_split(); ++round) {
      Vec coeffs(k_, 0);
      if (round < 3) {
        for (auto& c : coeffs) c = rng() % l;
      } else {
        coeffs[round - 2] = 1;  // deterministic single class matrices, skipping identity
      }
      Mat m = build_combo(coeffs, l);
      std::vector<Subspace> next;
      for (auto& s : spaces) {
        if (s.basis.size() == 1) {
          next.push_back(std::move(s));
          continue;
        }
        if (!split_one(m, s, l, next)) return {};  // defect: retry another prime
      }
      spaces = std::move(next);
    }
    if (!all_split()) return {};
    return lift(spaces, l);
  }

  // restrict m to the subspace, split it into eigenspaces, append results
  bool split_one(const Mat& m, const Subspace& s, std::uint64_t l, std::vector<Subspace>& out) {
    const std::uint32_t d = static_cast<std::uint32_t>(s.basis.size());
    // images of the basis vectors
    std::vector<Vec> img(d, Vec(k_, 0));
    for (std::uint32_t j = 0; j < d; ++j)
      for (std::uint32_t r = 0; r < k_; ++r) {
        std::uint64_t acc = 0;
        for (std::uint32_t c = 0; c < k_; ++c)
          if (m[r][c] && s.basis[j][c]) acc = addm(acc, mulm(m[r][c], s.basis[j][c], l), l);
        img[j][r] = acc;
      }
    // coordinates of images in the basis: solve [B | img] with B columns
    Mat sys(k_, Vec(d + d, 0));
    for (std::uint32_t r = 0; r < k_; ++r) {
      for (std::uint32_t j = 0; j < d; ++j) sys[r][j] = s.basis[j][r];
      for (std::uint32_t j = 0; j < d; ++j) sys[r][d + j] = img[j][r];
    }
    std::vector<std::uint32_t> pivots;
    echelon(sys, l, &pivots);
    Mat x(d, Vec(d, 0));  // restriction matrix, column j = coords of img[j]
    for (std::uint32_t r = 0; r < pivots.size(); ++r) {
      if (pivots[r] >= d) return false;  // image left the subspace: not invariant
      for (std::uint32_t j = 0; j < d; ++j) x[pivots[r]][j] = sys[r][d + j];
    }
    // eigenvalues via Hessenberg charpoly scan
    Mat h = to_hessenberg(x, l);
    std::uint32_t found = 0;
    for (std::uint64_t lam = 0; lam < l; ++lam) {
      if (det_hessenberg_shifted(h, lam, l) != 0) continue;
      Mat shifted = x;
      for (std::uint32_t i = 0; i < d; ++i) shifted[i][i] = subm(shifted[i][i], lam, l);
      auto null_coords = nullspace(std::move(shifted), l);
      if (null_coords.empty()) return false;
      Subspace eig;
      for (const auto& nc : null_coords) {
        Vec v(k_, 0);
        for (std::uint32_t j = 0; j < d; ++j)
          if (nc[j])
            for (std::uint32_t r = 0; r < k_; ++r)
              v[r] = addm(v[r], mulm(nc[j], s.basis[j][r], l), l);
        eig.basis.push_back(std::move(v));
      }
      found += static_cast<std::uint32_t>(eig.basis.size());
      out.push_back(std::move(eig));
      if (found == d) break;
    }
    return found == d;  // defective restriction means bad prime
  }

  std::vector<std::vector<Cyc>> lift(const std::vector<Subspace>& spaces, std::uint64_t l) {
    const std::uint32_t e = cl_.exponent;
    const std::uint64_t z = powm(primitive_root(l), (l - 1) / e, l);
    // power-map classes
    std::vector<std::vector<std::uint32_t>> pm(k_);
    const Ambient& amb = pg_.ambient();
    for (std::uint32_t j = 0; j < k_; ++j) {
      std::uint32_t o = cl_.rep_order[j];
      pm[j].resize(o);
      Elem cur;  // identity
      for (std::uint32_t s = 0; s < o; ++s) {
        pm[j][s] = cl_.id(cur);
        cur = amb.mul(cur, cl_.reps[j]);
      }
    }
    std::vector<std::vector<Cyc>> rows;
    rows.reserve(k_);
    for (const auto& sp : spaces) {
      const Vec& raw = sp.basis[0];
      if (raw[0] == 0) throw std::logic_error("dixon: eigenvector vanishes at identity class");
      std::uint64_t norm = invm(raw[0], l);
      Vec w(k_);
      for (std::uint32_t j = 0; j < k_; ++j) w[j] = mulm(raw[j], norm, l);
      // degree from the norm relation sum_j w_j w_{j*} / n_j = |G| / d^2
      std::uint64_t s = 0;
      for (std::uint32_t j = 0; j < k_; ++j)
        s = addm(s, mulm(mulm(w[j], w[cl_.inverse_class[j]], l), invm(cl_.sizes[j] % l, l), l), l);
      if (s == 0) throw std::logic_error("dixon: degenerate norm sum");
      std::uint64_t d2 = mulm(order_ % l, invm(s, l), l);
      std::uint64_t deg = 0;
      for (std::uint64_t t = 1; 2 * t < l; ++t)
        if (mulm(t, t, l) == d2) { deg = t; break; }
      if (deg == 0 || deg * deg > order_) throw std::logic_error("dixon: no admissible degree");
      // mod-l character values
      Vec theta(k_);
      for (std::uint32_t j = 0; j < k_; ++j)
        theta[j] = mulm(mulm(deg, w[j], l), invm(cl_.sizes[j] % l, l), l);
      // exact lift per class
      std::vector<Cyc> row(k_);
      for (std::uint32_t j = 0; j < k_; ++j) {
        std::uint32_t o = cl_.rep_order[j];
        std::uint64_t zo = powm(z, e / o, l);
        std::uint64_t oinv = invm(o % l, l);
        Cyc val;
        std::uint64_t total = 0;
        for (std::uint32_t u = 0; u < o; ++u) {
          std::uint64_t acc = 0;
          for (std::uint32_t sidx = 0; sidx < o; ++sidx) {
            std::uint64_t expo = (o - static_cast<std::uint64_t>(u) * sidx % o) % o;
            acc = addm(acc, mulm(theta[pm[j][sidx]], powm(zo, expo, l), l), l);
          }
          std::uint64_t mu = mulm(acc, oinv, l);
          if (mu > deg) throw std::logic_error("dixon: eigenvalue multiplicity out of range");
          total += mu;
          if (mu != 0) val += Rat(static_cast<std::int64_t>(mu)) * Cyc::root(static_cast<std::uint64_t>(u) * (e / o), e);
        }
        if (total != deg) throw std::logic_error("dixon: multiplicities do not sum to degree");
        row[j] = val.at_level(e);
      }
      rows.push_back(std::move(row));
    }
    return rows;
  }

  const PatternGroup& pg_;
  const Classes& cl_;
  std::uint64_t seed_;
  std::uint32_t k_ = 0;
  std::uint64_t order_ = 0;
  std::vector<std::uint32_t> uclass_;
  std::vector<std::vector<std::uint16_t>> prodclass_;
};

}  // namespace dixon_detail

// Exact table for an abelian pattern group straight from the
// positionwise linear characters.
inline std::vector<std::vector<Cyc>> abelian_irr_rows(const PatternGroup& pg) {
  if (pg.order() > (1ull << 11))
    throw std::invalid_argument("irr_table: abelian table exceeds 2^11 elements");
  const auto& cl = pg.classes();
  std::uint32_t e = cl.exponent;
  std::vector<std::vector<Cyc>> rows;
  for (const auto& chi : abelianization_characters(pg)) {
    std::vector<Cyc> row;
    row.reserve(cl.count());
    for (const auto& rep : cl.reps) row.push_back(chi.eval(rep).at_level(e));
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace detail {

inline void verify_table(const PatternGroup& pg, const std::vector<std::vector<Cyc>>& rows) {
  const auto& cl = pg.classes();
  if (rows.size() != cl.count())
    throw std::logic_error("irr_table: row count differs from class count");
  Rat order(static_cast<std::int64_t>(pg.order()));
  Rat degsum(0);
  for (std::size_t a = 0; a < rows.size(); ++a) {
    if (!rows[a][0].is_integer()) throw std::logic_error("irr_table: non-integer degree");
    degsum += rows[a][0].rational_part() * rows[a][0].rational_part();
    for (std::size_t b = a; b < rows.size(); ++b) {
      Cyc acc;
      for (std::uint32_t j = 0; j < cl.count(); ++j)
        acc += Rat(cl.sizes[j]) * (rows[a][j] * rows[b][j].conjugate());
      Cyc expected = (a == b) ? Cyc(Rat(static_cast<std::int64_t>(pg.order()))) : Cyc(0);
      if (acc != expected) throw std::logic_error("irr_table: orthogonality failure");
    }
  }
  if (degsum != order) throw std::logic_error("irr_table: degree sum mismatch");
}

}  // namespace detail

// Memoized: the exact table is computed once per live group object.
inline CharacterTable irr_table(const PatternGroupPtr& pg, std::uint64_t seed = 0x5eed5eedull) {
  using Rows = std::vector<std::vector<Cyc>>;
  struct Entry {
    std::weak_ptr<const PatternGroup> wp;
    std::shared_ptr<const Rows> rows;
  };
  static std::mutex mu;
  static std::map<const PatternGroup*, Entry> cache;

  std::shared_ptr<const Rows> rows;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(pg.get());
    if (it != cache.end()) {
      if (auto live = it->second.wp.lock(); live == pg)
        rows = it->second.rows;
      else
        cache.erase(it);
    }
  }
  if (!rows) {
    Rows r;
    if (derived_set(pg->gamma()).empty()) {
      r = abelian_irr_rows(*pg);
    } else {
      dixon_detail::DixonRun run(*pg, seed);
      r = run.run();
    }
    // canonical order: by degree, then lexicographic values
    std::sort(r.begin(), r.end(), [](const std::vector<Cyc>& a, const std::vector<Cyc>& b) {
      int c = rat_cmp(a[0].rational_part(), b[0].rational_part());
      if (c != 0) return c < 0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        c = cyc_cmp(a[i], b[i]);
        if (c != 0) return c < 0;
      }
      return false;
    });
    detail::verify_table(*pg, r);
    auto shared = std::make_shared<const Rows>(std::move(r));
    std::lock_guard<std::mutex> lock(mu);
    cache[pg.get()] = Entry{pg, shared};
    rows = shared;
  }
  CharacterTable table;
  table.group = pg;
  table.irr.reserve(rows->size());
  for (const auto& row : *rows) table.irr.emplace_back(pg, row);
  return table;
}

struct Constituent {
  std::uint32_t index;
  std::int64_t mult;
};

// chi as a nonnegative integral combination of the irreducibles;
// throws if it is not one.
inline std::vector<Constituent> decompose(const ClassFunction& chi, const CharacterTable& table) {
  if (!chi.same_group(table.irr.at(0)))
    throw std::invalid_argument("decompose: class function on a different group");
  std::vector<Constituent> out;
  ClassFunction recon = Rat(0) * chi;  // zero function on the right group
  for (std::uint32_t i = 0; i < table.irr.size(); ++i) {
    Rat m = inner_product_rat(chi, table.irr[i]);
    if (!m.is_nonneg_integer())
      throw std::domain_error("decompose: multiplicity not a nonnegative integer");
    if (m.is_zero()) continue;
    out.push_back({i, m.num()});
    recon = recon + m * table.irr[i];
  }
  if (recon != chi) throw std::domain_error("decompose: residue after subtracting constituents");
  return out;
}

}  // namespace mclain
