// Release gate: twelve numbered criteria, each printing one [PASS]/[FAIL]
// line with its runtime against a hard limit.  All arithmetic is exact;
// a criterion fails on any wrong value, any unexpected skip, or a blown
// time budget.  Run with no arguments for the full gate, or --only N
// for a single criterion.

#include <chrono>
#include <cstdint>
#include <cstring>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mclain/verify.hpp"

using namespace mclain;

namespace {

constexpr std::uint64_t kSeed = 0x5eed5eedull;

struct Gate {
  int failures = 0;
  std::vector<std::string> reasons;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ++failures;
      reasons.push_back(what);
    }
  }
  // a verifier result must pass; skips only count as passes when allowed
  void check(const CheckResult& res, bool allow_skip = false) {
    bool ok = res.pass && (allow_skip || !res.skipped);
    if (!ok) {
      ++failures;
      reasons.push_back(res.id + " " + res.subject + ": " + res.detail);
    }
  }
};

AmbientPtr ambient(std::uint32_t n, RingSpec spec) {
  return std::make_shared<const Ambient>(Lambda{n}, Ring::make(spec));
}

Scaffold scaffold_for(const AmbientPtr& amb, std::vector<PhiPair> members) {
  auto prim = primitive_characters(amb->ring());
  std::vector<AddChar> chars(members.size(), prim[0]);
  return build_scaffold(
      amb, make_basic_datum(amb->lam(), amb->ring(), std::move(members), std::move(chars)));
}

Elem random_elem(const Ambient& amb, std::mt19937& rng) {
  std::vector<std::pair<PhiPair, RElem>> entries;
  std::uniform_int_distribution<RElem> coin(0, amb.ring().size() - 1);
  for (const auto& p : PhiSet::full(amb.lam()))
    if (RElem r = coin(rng)) entries.emplace_back(p, r);
  return amb.make(std::move(entries));
}

// 1. group laws on random triples, factorization round-trip exhaustively
void criterion_1(Gate& g) {
  auto amb = ambient(5, RingSpec::gf(3, 1));
  std::mt19937 rng(20240817);
  for (int i = 0; i < 10000; ++i) {
    Elem a = random_elem(*amb, rng);
    Elem b = random_elem(*amb, rng);
    Elem c = random_elem(*amb, rng);
    if (!(amb->mul(amb->mul(a, b), c) == amb->mul(a, amb->mul(b, c)))) {
      g.require(false, "associativity fails at triple " + std::to_string(i));
      return;
    }
    if (!amb->mul(a, amb->inverse(a)).is_identity() ||
        !amb->mul(amb->inverse(a), a).is_identity()) {
      g.require(false, "inverse fails at triple " + std::to_string(i));
      return;
    }
    if (!(amb->mul(a, amb->identity()) == a) || !(amb->mul(amb->identity(), a) == a)) {
      g.require(false, "identity fails at triple " + std::to_string(i));
      return;
    }
  }
  g.check(verify_factorization(full_group(ambient(4, RingSpec::gf(2, 1)))));
  g.check(verify_factorization(full_group(ambient(4, RingSpec::gf(3, 1)))));
}

// 2. transversal bijections and derived subgroups on closed patterns
void criterion_2(Gate& g) {
  for (RingSpec rs : {RingSpec::gf(2, 1), RingSpec::gf(3, 1)}) {
    auto amb = ambient(3, rs);
    auto closed = all_closed_subsets(amb->lam());
    g.require(closed.size() == 7, "closed subset count at n=3");
    int executed = 0;
    for (const PhiSet& sub : closed) {
      g.check(verify_derived(pattern_group(amb, sub)));
      for (const PhiSet& super : closed) {
        if ((sub - super).size() != 0) continue;
        CheckResult res = verify_transversal_pair(pattern_group(amb, sub),
                                                  pattern_group(amb, super));
        g.check(res, /*allow_skip=*/true);
        if (!res.skipped) ++executed;
      }
    }
    g.require(executed >= 10, "too few normal pairs exercised at n=3");
  }

  auto amb4 = ambient(4, RingSpec::gf(2, 1));
  auto m4 = full_group(amb4);
  g.check(verify_derived(m4));
  int executed = 0;
  for (const PhiSet& sub : all_closed_subsets(amb4->lam())) {
    CheckResult res = verify_transversal_pair(pattern_group(amb4, sub), m4);
    g.check(res, /*allow_skip=*/true);
    if (!res.skipped) ++executed;
  }
  g.require(executed >= 5, "too few normal patterns exercised at n=4");
}

// 3. two-sided primitivity agreement across the ring battery
void criterion_3(Gate& g) {
  std::vector<RingSpec> battery;
  for (std::uint32_t n = 2; n <= 16; ++n) battery.push_back(RingSpec::zmod(n));
  battery.push_back(RingSpec::gf(2, 1));
  battery.push_back(RingSpec::gf(3, 1));
  battery.push_back(RingSpec::gf(2, 2));
  battery.push_back(RingSpec::gf(5, 1));
  battery.push_back(RingSpec::gf(2, 3));
  battery.push_back(RingSpec::gf(3, 2));
  battery.push_back(RingSpec::truncpoly(2, 1, 2));
  battery.push_back(RingSpec::truncpoly(2, 1, 3));
  battery.push_back(RingSpec::zmod(4));
  battery.push_back(RingSpec::zmod(8));
  battery.push_back(RingSpec::zmod(9));
  battery.push_back(RingSpec::mat(2, 2));
  for (const RingSpec& rs : battery) g.check(verify_ring_symmetry(Ring::make(rs)));
}

// 4. a single irreducible above each primitive position character
void criterion_4(Gate& g) {
  for (RingSpec rs : {RingSpec::gf(2, 1), RingSpec::gf(3, 1), RingSpec::zmod(4)}) {
    auto amb = ambient(3, rs);
    auto prim = primitive_characters(amb->ring());
    g.require(!prim.empty(), "no primitive character for " + rs.str());
    for (const AddChar& chi : prim)
      g.check(verify_uniqueness_over_lambda(amb, PhiPair(1, 3), chi, kSeed));
  }
}

const std::vector<std::pair<std::uint32_t, RingSpec>>& norm_sweeps() {
  static const std::vector<std::pair<std::uint32_t, RingSpec>> v = {
      {2, RingSpec::gf(2, 1)}, {3, RingSpec::gf(2, 1)}, {4, RingSpec::gf(2, 1)},
      {2, RingSpec::gf(3, 1)}, {3, RingSpec::gf(3, 1)}, {4, RingSpec::gf(3, 1)},
      {5, RingSpec::gf(2, 1)}};
  return v;
}

// 5. norm = index = |R|^|omega| on every sweep case
void criterion_5(Gate& g) {
  for (const auto& [n, rs] : norm_sweeps()) {
    auto amb = ambient(n, rs);
    for (const SweepCase& c : sweep_cases(amb, /*include_empty=*/true))
      g.check(verify_norm(c.scaffold, c.chi));
  }
}

// 6. distinct basic data give orthogonal supercharacters
void criterion_6(Gate& g) {
  for (RingSpec rs : {RingSpec::gf(2, 1), RingSpec::gf(3, 1)}) {
    for (std::uint32_t n = 2; n <= 4; ++n) {
      auto amb = ambient(n, rs);
      std::vector<std::pair<std::string, ClassFunction>> items;
      for (SweepCase& c : sweep_cases(amb, /*include_empty=*/true))
        items.emplace_back(c.name, c.chi);
      g.check(verify_disjointness(items));
    }
  }
}

// 7. the five irreducibility conditions agree on every sweep case
void criterion_7(Gate& g) {
  for (const auto& [n, rs] : norm_sweeps()) {
    auto amb = ambient(n, rs);
    auto m = full_group(amb);
    std::optional<CharacterTable> table;
    if (check_detail::dixon_feasible(*m)) table = irr_table(m, kSeed);
    for (const SweepCase& c : sweep_cases(amb, /*include_empty=*/true))
      g.check(verify_irreducibility(c.scaffold, c.chi, table ? &*table : nullptr));
  }
}

// 8. combinatorial extendibility equals brute force on n <= 5 over GF(2)
void criterion_8(Gate& g) {
  for (std::uint32_t n = 2; n <= 5; ++n) {
    auto amb = ambient(n, RingSpec::gf(2, 1));
    for (const SweepCase& c : sweep_cases(amb, /*include_empty=*/true))
      g.check(verify_extendibility(c.scaffold));
  }
  auto amb5 = ambient(5, RingSpec::gf(2, 1));
  Scaffold pivot = scaffold_for(amb5, {PhiPair(1, 3), PhiPair(2, 4), PhiPair(3, 5)});
  g.require(!pivot.flags.extendible, "pivot chain must not be extendible");
  Scaffold pair = scaffold_for(amb5, {PhiPair(1, 3), PhiPair(2, 4)});
  g.require(pair.flags.extendible, "overlapping pair must be extendible");
}

// 9. pivot chain at n=5 over GF(2): norm 4, chi twice one irreducible
void criterion_9(Gate& g) {
  auto amb = ambient(5, RingSpec::gf(2, 1));
  Scaffold sc = scaffold_for(amb, {PhiPair(1, 3), PhiPair(2, 4), PhiPair(3, 5)});
  ClassFunction chi = supercharacter(sc);
  g.require(sc.omega.size() == 2, "omega size");
  g.check(verify_norm(sc, chi));
  g.require(inner_product_rat(chi, chi) == Rat(4), "norm != 4");
  CheckResult ex = verify_example_8_19(sc, chi, kSeed);
  g.check(ex);

  // the same statement read off the full order-1024 table
  CharacterTable table = irr_table(sc.M, kSeed);
  auto cons = decompose(chi, table);
  g.require(cons.size() == 1, "constituent count != 1");
  if (cons.size() == 1) {
    g.require(cons[0].mult == 2, "multiplicity != 2");
    g.require(table.irr[cons[0].index].degree() == Cyc(Rat(4)), "constituent degree != 4");
  }
}

// 10. multiplicity-freeness predicate equals the oracle; repeated
// constituents appear exactly on special-triple cases
void criterion_10(Gate& g) {
  for (std::uint32_t n = 2; n <= 5; ++n) {
    auto amb = ambient(n, RingSpec::gf(2, 1));
    auto m = full_group(amb);
    if (!check_detail::dixon_feasible(*m)) {
      g.require(false, "table infeasible at n=" + std::to_string(n));
      continue;
    }
    CharacterTable table = irr_table(m, kSeed);
    for (const SweepCase& c : sweep_cases(amb, /*include_empty=*/true)) {
      g.check(verify_multiplicity_free(c.scaffold, c.chi, table));
      bool repeated = false;
      for (const Constituent& k : decompose(c.chi, table))
        if (k.mult >= 2) repeated = true;
      g.require(repeated == c.scaffold.flags.has_special_triple,
                c.name + ": repeated constituent vs special triple disagree");
    }
  }
}

// 11. every irreducible lies in exactly one supercharacter (fields)
void criterion_11(Gate& g) {
  struct Row {
    std::uint32_t n;
    RingSpec rs;
    std::size_t irr_count;
  };
  for (const Row& row : {Row{3, RingSpec::gf(2, 1), 5}, Row{3, RingSpec::gf(3, 1), 11},
                         Row{4, RingSpec::gf(2, 1), 16}}) {
    auto amb = ambient(row.n, row.rs);
    g.require(irr_table(full_group(amb), kSeed).size() == row.irr_count,
              row.rs.str() + " n=" + std::to_string(row.n) + ": irreducible count");
    g.check(verify_completeness(amb, kSeed));
  }
}

// 12. table oracle self-consistency on every battery group
void criterion_12(Gate& g) {
  struct Row {
    std::uint32_t n;
    RingSpec rs;
  };
  int checked = 0;
  for (const Row& row : {Row{3, RingSpec::gf(2, 1)}, Row{3, RingSpec::gf(3, 1)},
                         Row{3, RingSpec::zmod(4)}, Row{4, RingSpec::gf(2, 1)},
                         Row{4, RingSpec::gf(3, 1)}, Row{5, RingSpec::gf(2, 1)}}) {
    auto m = full_group(ambient(row.n, row.rs));
    if (!check_detail::dixon_feasible(*m)) continue;
    g.check(verify_table_consistency(irr_table(m, kSeed)));
    ++checked;
  }
  g.require(checked >= 4, "too few tables were feasible");
}

struct Criterion {
  int id;
  const char* label;
  double limit_s;
  void (*fn)(Gate&);
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> v = {
      {1, "group laws and canonical factorization", 10, criterion_1},
      {2, "transversals and derived subgroups on closed patterns", 30, criterion_2},
      {3, "two-sided primitivity across the ring battery", 30, criterion_3},
      {4, "unique irreducible over a primitive position character", 20, criterion_4},
      {5, "supercharacter norms across full sweeps", 300, criterion_5},
      {6, "orthogonality of distinct supercharacters", 300, criterion_6},
      {7, "five-way irreducibility equivalence", 600, criterion_7},
      {8, "extendibility predicate against brute force", 120, criterion_8},
      {9, "pivot chain decomposition at n=5", 300, criterion_9},
      {10, "multiplicity-freeness predicate against the oracle", 600, criterion_10},
      {11, "one-to-one irreducible coverage", 300, criterion_11},
      {12, "character table self-consistency", 600, criterion_12},
  };
  return v;
}

int run_one(const Criterion& c) {
  Gate gate;
  auto t0 = std::chrono::steady_clock::now();
  try {
    c.fn(gate);
  } catch (const std::exception& e) {
    gate.require(false, std::string("exception: ") + e.what());
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (s > c.limit_s) gate.require(false, "time limit exceeded");
  char timing[64];
  std::snprintf(timing, sizeof timing, "(%.1f s, limit %.0f s)", s, c.limit_s);
  std::cout << (gate.failures == 0 ? "[PASS] " : "[FAIL] ") << c.id << " " << c.label << " "
            << timing << "\n";
  for (const std::string& r : gate.reasons) std::cout << "       - " << r << "\n";
  return gate.failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--only N]\n";
      return 1;
    }
  }
  if (only < 0 || only > static_cast<int>(criteria().size())) {
    std::cerr << "no such criterion: " << only << "\n";
    return 1;
  }

  int failed = 0;
  for (const Criterion& c : criteria()) {
    if (only != 0 && c.id != only) continue;
    failed += run_one(c);
  }
  if (only == 0)
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed")
              << "\n";
  return failed == 0 ? 0 : 2;
}
