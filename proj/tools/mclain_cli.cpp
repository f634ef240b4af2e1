// Batch front end: problem specs in JSON, verification reports and
// character data out, stable exit codes for CI (0 pass, 1 usage error,
// 2 verification failure).

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "mclain/io.hpp"
#include "mclain/verify.hpp"

namespace {

using namespace mclain;

constexpr int kExitPass = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFail = 2;

struct Options {
  std::string spec_path;
  std::string out_path;
  std::string format = "json";
  std::string checks_arg;
  unsigned jobs = 1;
  std::uint64_t max_group_order = 0;  // 0 = take the spec's value
  std::uint64_t seed = 0;             // 0 = take the spec's value
  bool timing = false;
};

// The check ids cmd_verify understands, in report order.
const std::vector<std::string> kKnownChecks = {
    "prop-2.3", "prop-2.5", "prop-2.7", "cor-4.6",  "thm-4.5",  "thm-5.2",
    "thm-7.5c", "thm-8.1",  "thm-8.3",  "thm-8.14", "thm-8.21", "thm-8.8",
    "ex-8.19",  "ex-8.22",  "note-8.11", "completeness"};

std::vector<std::string> default_datum_checks() {
  return {"prop-2.3", "prop-2.5", "prop-2.7", "cor-4.6",  "thm-4.5", "thm-7.5c",
          "thm-8.1",  "thm-8.3",  "thm-8.14", "thm-8.21", "thm-8.8", "ex-8.19",
          "ex-8.22",  "note-8.11"};
}

std::vector<std::string> default_sweep_checks() {
  return {"thm-8.1", "thm-8.3", "thm-7.5c", "thm-8.14", "thm-8.21",
          "thm-8.8", "ex-8.19", "ex-8.22",  "thm-5.2",  "completeness"};
}

json read_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open spec file: " + path);
  json j;
  in >> j;
  return j;
}

ProblemSpec load_spec(const Options& opt) {
  if (opt.spec_path.empty()) throw std::invalid_argument("--spec is required");
  ProblemSpec spec = parse_problem_spec(read_spec_file(opt.spec_path));
  if (opt.max_group_order) spec.max_group_order = opt.max_group_order;
  if (opt.seed) spec.seed = opt.seed;
  if (!opt.checks_arg.empty()) {
    spec.checks.clear();
    std::stringstream ss(opt.checks_arg);
    std::string tok;
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) spec.checks.push_back(tok);
  }
  for (const auto& c : spec.checks)
    if (std::find(kKnownChecks.begin(), kKnownChecks.end(), c) == kKnownChecks.end())
      throw std::invalid_argument("unknown check id: " + c);
  return spec;
}

void emit(const Options& opt, const std::string& text) {
  if (opt.out_path.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
  } else {
    std::ofstream out(opt.out_path);
    if (!out) throw std::invalid_argument("cannot open output file: " + opt.out_path);
    out << text;
    if (text.empty() || text.back() != '\n') out << '\n';
  }
}

void emit_report(const Options& opt, json j, std::int64_t elapsed_ms) {
  if (opt.timing) j["timing_ms"] = elapsed_ms;
  emit(opt, j.dump(2));
}

bool wants(const std::vector<std::string>& checks, const std::string& id) {
  return std::find(checks.begin(), checks.end(), id) != checks.end();
}

// Supercharacter plus everything the per-datum verifiers need; null
// parts mean the corresponding guard was exceeded.
struct CaseContext {
  Scaffold sc;
  bool chi_ok = false;
  ClassFunction chi;
  std::string chi_err;
};

CaseContext make_case(const AmbientPtr& amb, BasicDatum bd, std::uint64_t max_order) {
  CaseContext ctx;
  ctx.sc = build_scaffold(amb, std::move(bd));
  if (ctx.sc.M->order() <= max_order && check_detail::classes_feasible(*ctx.sc.M)) {
    ctx.chi = supercharacter(ctx.sc);
    ctx.chi_ok = true;
  } else {
    ctx.chi_err = "supercharacter skipped: group order exceeds guard";
  }
  return ctx;
}

CheckResult skipped_result(const std::string& id, const std::string& subject,
                           const std::string& why) {
  CheckResult res;
  res.id = id;
  res.subject = subject;
  res.pass = true;
  res.skipped = true;
  res.detail = why;
  return res;
}

// Per-datum checks in a fixed order; sweep-level ids are ignored here.
std::vector<CheckResult> run_datum_checks(const CaseContext& ctx,
                                          const std::vector<std::string>& checks,
                                          std::uint64_t seed) {
  std::vector<CheckResult> out;
  const Scaffold& sc = ctx.sc;
  const std::string name = datum_str(sc.datum);
  auto need_chi = [&](const std::string& id) -> bool {
    if (ctx.chi_ok) return true;
    out.push_back(skipped_result(id, name, ctx.chi_err));
    return false;
  };

  if (wants(checks, "prop-2.3")) {
    if (sc.H->order() <= (1ull << 16))
      out.push_back(verify_factorization(sc.H));
    else
      out.push_back(skipped_result("prop-2.3", name, "H exceeds enumeration guard"));
  }
  if (wants(checks, "prop-2.5")) {
    if (sc.I->order() <= (1ull << 16))
      out.push_back(verify_transversal_pair(sc.H, sc.I));
    else
      out.push_back(skipped_result("prop-2.5", name, "I exceeds enumeration guard"));
  }
  if (wants(checks, "prop-2.7")) out.push_back(verify_derived(sc.H));
  if (wants(checks, "cor-4.6")) out.push_back(verify_ring_symmetry(sc.ambient->ring_ptr()));
  if (wants(checks, "thm-4.5"))
    for (std::size_t i = 0; i < sc.datum.d.size(); ++i)
      out.push_back(verify_uniqueness_over_lambda(sc.ambient, sc.datum.d[i], sc.datum.f[i], seed));
  if (wants(checks, "thm-7.5c")) {
    if (sc.M->order() <= (1ull << 16))
      out.push_back(verify_stabilizer(sc));
    else
      out.push_back(skipped_result("thm-7.5c", name, "M exceeds enumeration guard"));
  }
  if (wants(checks, "thm-8.1") && need_chi("thm-8.1")) out.push_back(verify_norm(sc, ctx.chi));
  if (wants(checks, "thm-8.3") && need_chi("thm-8.3")) {
    if (check_detail::dixon_feasible(*sc.M)) {
      CharacterTable table = irr_table(sc.M, seed);
      out.push_back(verify_irreducibility(sc, ctx.chi, &table));
    } else {
      out.push_back(verify_irreducibility(sc, ctx.chi, nullptr));
    }
  }
  if (wants(checks, "thm-8.14")) out.push_back(verify_extendibility(sc));
  if (wants(checks, "thm-8.21") && need_chi("thm-8.21")) {
    if (check_detail::dixon_feasible(*sc.M))
      out.push_back(verify_multiplicity_free(sc, ctx.chi, irr_table(sc.M, seed)));
    else
      out.push_back(skipped_result("thm-8.21", name, "irr_table(M) exceeds guards"));
  }
  if (wants(checks, "thm-8.8") && need_chi("thm-8.8"))
    out.push_back(verify_decomposition(sc, ctx.chi, seed));
  if (wants(checks, "ex-8.19") && need_chi("ex-8.19"))
    out.push_back(verify_example_8_19(sc, ctx.chi, seed));
  if (wants(checks, "ex-8.22") && need_chi("ex-8.22"))
    out.push_back(verify_example_8_22(sc, ctx.chi, seed));
  if (wants(checks, "note-8.11")) out.push_back(verify_core_inertia(sc));
  return out;
}

int exit_code_for(const std::vector<CheckResult>& checks) {
  for (const auto& c : checks)
    if (!c.pass) return kExitFail;
  return kExitPass;
}

int cmd_scaffold(const Options& opt) {
  auto t0 = std::chrono::steady_clock::now();
  ProblemSpec spec = load_spec(opt);
  if (!spec.has_d) throw std::invalid_argument("scaffold: spec must contain D");
  if (opt.format != "json") throw std::invalid_argument("scaffold: only json output");
  RingPtr ring = Ring::make(spec.ring);
  auto amb = std::make_shared<const Ambient>(Lambda{spec.lambda_n}, ring);
  Scaffold sc = build_scaffold(amb, resolve_datum(spec, *ring));
  json extra;
  extra["scaffold"] = scaffold_json(sc);
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  emit_report(opt, report_json(spec, {}, extra), ms);
  return kExitPass;
}

int cmd_character(const Options& opt) {
  auto t0 = std::chrono::steady_clock::now();
  ProblemSpec spec = load_spec(opt);
  if (!spec.has_d) throw std::invalid_argument("character: spec must contain D");
  RingPtr ring = Ring::make(spec.ring);
  auto amb = std::make_shared<const Ambient>(Lambda{spec.lambda_n}, ring);
  CaseContext ctx = make_case(amb, resolve_datum(spec, *ring), spec.max_group_order);
  if (!ctx.chi_ok) throw std::invalid_argument(ctx.chi_err);
  if (opt.format == "csv") {
    emit(opt, table_csv({ctx.chi}));
    return kExitPass;
  }
  json extra;
  extra["scaffold"] = scaffold_json(ctx.sc);
  extra["character"] = class_function_json(ctx.chi);
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  emit_report(opt, report_json(spec, {}, extra), ms);
  return kExitPass;
}

int cmd_verify(const Options& opt) {
  auto t0 = std::chrono::steady_clock::now();
  ProblemSpec spec = load_spec(opt);
  if (!spec.has_d) throw std::invalid_argument("verify: spec must contain D (use sweep otherwise)");
  if (opt.format != "json") throw std::invalid_argument("verify: only json output");
  std::vector<std::string> checks = spec.checks.empty() ? default_datum_checks() : spec.checks;
  RingPtr ring = Ring::make(spec.ring);
  auto amb = std::make_shared<const Ambient>(Lambda{spec.lambda_n}, ring);
  CaseContext ctx = make_case(amb, resolve_datum(spec, *ring), spec.max_group_order);
  std::vector<CheckResult> results = run_datum_checks(ctx, checks, spec.seed);

  // sweep-level ids requested explicitly against this datum's ambient
  if (wants(checks, "thm-5.2")) {
    if (ctx.chi_ok && spec.lambda_n <= 5) {
      std::vector<std::pair<std::string, ClassFunction>> items;
      for (const SweepCase& c : sweep_cases(amb, true)) items.emplace_back(c.name, c.chi);
      results.push_back(verify_disjointness(items));
    } else {
      results.push_back(skipped_result("thm-5.2", datum_str(ctx.sc.datum), "sweep guard"));
    }
  }
  if (wants(checks, "completeness")) results.push_back(verify_completeness(amb, spec.seed));

  json extra;
  extra["scaffold"] = scaffold_json(ctx.sc);
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  emit_report(opt, report_json(spec, results, extra), ms);
  return exit_code_for(results);
}

int cmd_sweep(const Options& opt) {
  auto t0 = std::chrono::steady_clock::now();
  ProblemSpec spec = load_spec(opt);
  if (opt.format != "json") throw std::invalid_argument("sweep: only json output");
  std::vector<std::string> checks = spec.checks.empty() ? default_sweep_checks() : spec.checks;
  RingPtr ring = Ring::make(spec.ring);
  auto amb = std::make_shared<const Ambient>(Lambda{spec.lambda_n}, ring);

  // warm the shared tables before the parallel section
  PatternGroupPtr m = full_group(amb);
  if (m->order() > spec.max_group_order)
    throw std::invalid_argument("sweep: group order exceeds guard");
  bool table_wanted = wants(checks, "thm-8.3") || wants(checks, "thm-8.21") ||
                      wants(checks, "completeness");
  if (table_wanted && check_detail::dixon_feasible(*m)) irr_table(m, spec.seed);

  auto data = basic_data(amb->lam(), amb->ring(), /*include_empty=*/true);
  std::vector<CaseContext> cases(data.size());
  std::vector<std::vector<CheckResult>> results(data.size());
  std::atomic<std::size_t> next{0};
  unsigned jobs = std::max(1u, opt.jobs);
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= data.size()) return;
      cases[i] = make_case(amb, data[i], spec.max_group_order);
      results[i] = run_datum_checks(cases[i], checks, spec.seed);
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::vector<CheckResult> flat;
  for (auto& r : results)
    for (auto& c : r) flat.push_back(std::move(c));
  if (wants(checks, "thm-5.2")) {
    std::vector<std::pair<std::string, ClassFunction>> items;
    for (std::size_t i = 0; i < cases.size(); ++i)
      if (cases[i].chi_ok) items.emplace_back(datum_str(cases[i].sc.datum), cases[i].chi);
    flat.push_back(verify_disjointness(items));
  }
  if (wants(checks, "completeness")) flat.push_back(verify_completeness(amb, spec.seed));

  json extra;
  extra["cases"] = data.size();
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  emit_report(opt, report_json(spec, flat, extra), ms);
  return exit_code_for(flat);
}

int cmd_irrtable(const Options& opt) {
  auto t0 = std::chrono::steady_clock::now();
  ProblemSpec spec = load_spec(opt);
  RingPtr ring = Ring::make(spec.ring);
  auto amb = std::make_shared<const Ambient>(Lambda{spec.lambda_n}, ring);
  PatternGroupPtr pg;
  if (spec.has_d) {
    // interpret D as an explicit pattern when it is closed
    pg = pattern_group(amb, PhiSet(spec.d));
  } else {
    pg = full_group(amb);
  }
  if (pg->order() > spec.max_group_order)
    throw std::invalid_argument("irrtable: group order exceeds guard");
  if (!check_detail::dixon_feasible(*pg))
    throw std::invalid_argument("irrtable: table guards exceeded");
  CharacterTable table = irr_table(pg, spec.seed);
  if (opt.format == "csv") {
    emit(opt, table_csv(table.irr));
    return kExitPass;
  }
  json j = character_table_json(table);
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  if (opt.timing) j["timing_ms"] = ms;
  emit(opt, j.dump(2));
  return kExitPass;
}

int cmd_rings(const Options& opt) {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<RingSpec> specs;
  if (!opt.spec_path.empty()) {
    json j = read_spec_file(opt.spec_path);
    if (!j.is_object() || !j.contains("rings") || !j["rings"].is_array())
      throw std::invalid_argument("rings: spec must be {\"rings\": [...]}");
    for (const auto& r : j["rings"]) specs.push_back(parse_ring_spec(r));
  } else {
    for (std::uint32_t n = 2; n <= 16; ++n) specs.push_back(RingSpec::zmod(n));
    specs.push_back(RingSpec::gf(2, 1));
    specs.push_back(RingSpec::gf(3, 1));
    specs.push_back(RingSpec::gf(2, 2));
    specs.push_back(RingSpec::gf(5, 1));
    specs.push_back(RingSpec::gf(2, 3));
    specs.push_back(RingSpec::gf(3, 2));
    specs.push_back(RingSpec::truncpoly(2, 1, 2));
    specs.push_back(RingSpec::truncpoly(2, 1, 3));
    specs.push_back(RingSpec::mat(2, 2));
  }
  json rows = json::array();
  std::string csv = "ring,characters,primitive,symmetric\n";
  bool all_ok = true;
  for (const RingSpec& rs : specs) {
    RingPtr ring = Ring::make(rs);
    CheckResult res = verify_ring_symmetry(ring);
    std::uint32_t prim = static_cast<std::uint32_t>(primitive_characters(*ring).size());
    all_ok = all_ok && res.pass;
    rows.push_back(json{{"ring", rs.str()},
                        {"spec", ring_spec_json(rs)},
                        {"characters", ring->size()},
                        {"primitive", prim},
                        {"symmetric", res.pass},
                        {"detail", res.detail}});
    csv += rs.str() + "," + std::to_string(ring->size()) + "," + std::to_string(prim) + "," +
           (res.pass ? "yes" : "no") + "\n";
  }
  if (opt.format == "csv") {
    emit(opt, csv);
  } else {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["rings"] = rows;
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    if (opt.timing) j["timing_ms"] = ms;
    emit(opt, j.dump(2));
  }
  return all_ok ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact supercharacter verification for unitriangular groups over finite rings"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--spec", opt.spec_path, "problem spec JSON file");
    sub->add_option("--out", opt.out_path, "output path (default stdout)");
    sub->add_option("--format", opt.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--jobs", opt.jobs, "worker threads for sweeps");
    sub->add_option("--max-group-order", opt.max_group_order, "override enumeration guard");
    sub->add_option("--seed", opt.seed, "table-splitting seed override");
    sub->add_option("--checks", opt.checks_arg, "comma-separated check ids");
    sub->add_flag("--timing", opt.timing, "attach timing_ms to the report");
  };

  CLI::App* scaffold = app.add_subcommand("scaffold", "combinatorial scaffold of a basic datum");
  CLI::App* character = app.add_subcommand("character", "compute the supercharacter");
  CLI::App* verify = app.add_subcommand("verify", "run checks for one basic datum");
  CLI::App* sweep = app.add_subcommand("sweep", "run checks over every basic datum");
  CLI::App* irrtable = app.add_subcommand("irrtable", "exact irreducible character table");
  CLI::App* rings = app.add_subcommand("rings", "additive character primitivity survey");
  for (CLI::App* sub : {scaffold, character, verify, sweep, irrtable, rings}) add_common(sub);

  CLI11_PARSE(app, argc, argv);

  try {
    if (scaffold->parsed()) return cmd_scaffold(opt);
    if (character->parsed()) return cmd_character(opt);
    if (verify->parsed()) return cmd_verify(opt);
    if (sweep->parsed()) return cmd_sweep(opt);
    if (irrtable->parsed()) return cmd_irrtable(opt);
    if (rings->parsed()) return cmd_rings(opt);
  } catch (const std::invalid_argument& e) {
    std::cerr << nlohmann::json{{"error", e.what()}}.dump() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << nlohmann::json{{"error", e.what()}}.dump() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}
