#pragma once

// JSON/CSV serialization: problem specs in, reports and character data
// out.  All output is deterministic for a fixed input (keys sorted by
// nlohmann's std::map storage, values exact strings); timing is only
// attached on request so byte-identical reruns stay byte-identical.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mclain/basic_character.hpp"
#include "mclain/character_table.hpp"
#include "mclain/class_function.hpp"
#include "mclain/verify.hpp"

namespace mclain {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// ---- ring specs ----

inline json ring_spec_json(const RingSpec& spec) {
  json j;
  switch (spec.kind) {
    case RingSpec::Kind::zmod:
      j["kind"] = "zmod";
      j["n"] = spec.n;
      break;
    case RingSpec::Kind::gf:
      j["kind"] = "gf";
      j["p"] = spec.p;
      j["deg"] = spec.deg;
      break;
    case RingSpec::Kind::truncpoly:
      j["kind"] = "truncpoly";
      j["p"] = spec.p;
      j["deg"] = spec.deg;
      j["m"] = spec.m;
      break;
    case RingSpec::Kind::mat:
      j["kind"] = "mat";
      j["p"] = spec.p;
      j["size"] = spec.size;
      break;
  }
  return j;
}

// nonnegative integer regardless of the parser's signed/unsigned storage
inline bool json_is_uint(const json& j) {
  return j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0);
}

inline RingSpec parse_ring_spec(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw std::invalid_argument("ring spec: missing kind");
  std::string kind = j["kind"].get<std::string>();
  auto want = [&](const char* key) -> std::uint32_t {
    if (!j.contains(key) || !json_is_uint(j[key]))
      throw std::invalid_argument(std::string("ring spec: missing field ") + key);
    return j[key].get<std::uint32_t>();
  };
  if (kind == "zmod") return RingSpec::zmod(want("n"));
  if (kind == "gf") return RingSpec::gf(want("p"), want("deg"));
  if (kind == "truncpoly") return RingSpec::truncpoly(want("p"), want("deg"), want("m"));
  if (kind == "mat") return RingSpec::mat(want("p"), want("size"));
  throw std::invalid_argument("ring spec: unknown kind " + kind);
}

// ---- problem specs ----

struct ProblemSpec {
  std::uint32_t lambda_n = 0;
  RingSpec ring;
  bool has_d = false;  // absent D means: sweep over all basic subsets
  std::vector<PhiPair> d;
  std::vector<std::int64_t> f;  // index into linear_characters; -1 = canonical
  std::vector<std::string> checks;
  std::uint64_t seed = 0x5eed5eedull;
  std::uint64_t max_group_order = 1ull << 20;
};

inline ProblemSpec parse_problem_spec(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("problem spec: not an object");
  ProblemSpec spec;
  if (!j.contains("lambda_n") || !json_is_uint(j["lambda_n"]))
    throw std::invalid_argument("problem spec: missing lambda_n");
  spec.lambda_n = j["lambda_n"].get<std::uint32_t>();
  if (!j.contains("ring")) throw std::invalid_argument("problem spec: missing ring");
  spec.ring = parse_ring_spec(j["ring"]);
  if (j.contains("D")) {
    if (!j["D"].is_array()) throw std::invalid_argument("problem spec: D must be an array");
    spec.has_d = true;
    for (const auto& entry : j["D"]) {
      if (!entry.is_array() || entry.size() != 2 || !json_is_uint(entry[0]) ||
          !json_is_uint(entry[1]))
        throw std::invalid_argument("problem spec: D entries must be [row, col]");
      spec.d.emplace_back(entry[0].get<std::uint32_t>(), entry[1].get<std::uint32_t>());
    }
  }
  if (j.contains("f")) {
    if (j["f"].is_string() && j["f"].get<std::string>() == "canonical") {
      spec.f.assign(spec.d.size(), -1);
    } else if (j["f"].is_array()) {
      for (const auto& sel : j["f"]) {
        if (sel.is_string() && sel.get<std::string>() == "canonical")
          spec.f.push_back(-1);
        else if (json_is_uint(sel))
          spec.f.push_back(sel.get<std::int64_t>());
        else
          throw std::invalid_argument("problem spec: f entries are indices or \"canonical\"");
      }
    } else {
      throw std::invalid_argument("problem spec: f must be an array or \"canonical\"");
    }
    if (!spec.has_d || spec.f.size() != spec.d.size())
      throw std::invalid_argument("problem spec: f must pair up with D");
  }
  if (j.contains("checks")) {
    if (!j["checks"].is_array()) throw std::invalid_argument("problem spec: checks must be an array");
    for (const auto& c : j["checks"]) {
      if (!c.is_string()) throw std::invalid_argument("problem spec: check ids are strings");
      spec.checks.push_back(c.get<std::string>());
    }
  }
  if (j.contains("seed")) {
    if (!json_is_uint(j["seed"])) throw std::invalid_argument("problem spec: bad seed");
    spec.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("guards")) {
    const auto& g = j["guards"];
    if (!g.is_object()) throw std::invalid_argument("problem spec: guards must be an object");
    if (g.contains("max_group_order")) {
      if (!json_is_uint(g["max_group_order"]))
        throw std::invalid_argument("problem spec: bad max_group_order");
      spec.max_group_order = g["max_group_order"].get<std::uint64_t>();
    }
  }
  return spec;
}

inline json problem_spec_json(const ProblemSpec& spec) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["lambda_n"] = spec.lambda_n;
  j["ring"] = ring_spec_json(spec.ring);
  if (spec.has_d) {
    json d = json::array();
    for (const auto& p : spec.d) d.push_back({p.a, p.b});
    j["D"] = d;
    json f = json::array();
    for (std::size_t i = 0; i < spec.d.size(); ++i) {
      std::int64_t sel = i < spec.f.size() ? spec.f[i] : -1;
      if (sel < 0)
        f.push_back("canonical");
      else
        f.push_back(sel);
    }
    j["f"] = f;
  }
  if (!spec.checks.empty()) j["checks"] = spec.checks;
  j["seed"] = spec.seed;
  j["guards"] = json{{"max_group_order", spec.max_group_order}};
  return j;
}

// Character selectors to an actual datum; throws invalid_argument on a
// non-basic D or a non-primitive selection.
inline BasicDatum resolve_datum(const ProblemSpec& spec, const Ring& ring) {
  Lambda lam{spec.lambda_n};
  auto chars = linear_characters(ring);
  auto prim = primitive_characters(ring);
  if (prim.empty()) throw std::invalid_argument("ring has no primitive character");
  std::vector<AddChar> f;
  for (std::size_t i = 0; i < spec.d.size(); ++i) {
    std::int64_t sel = i < spec.f.size() ? spec.f[i] : -1;
    if (sel < 0)
      f.push_back(prim[0]);
    else if (sel < static_cast<std::int64_t>(chars.size()))
      f.push_back(chars[static_cast<std::size_t>(sel)]);
    else
      throw std::invalid_argument("character index out of range");
  }
  return make_basic_datum(lam, ring, spec.d, std::move(f));
}

// ---- cyclotomic values ----

inline std::string rat_str(const Rat& r) { return r.str(); }

inline Rat parse_rat(const std::string& s) {
  std::size_t slash = s.find('/');
  auto parse_int = [](const std::string& t) {
    if (t.empty()) throw std::invalid_argument("rational: empty component");
    std::size_t pos = 0;
    std::int64_t v = std::stoll(t, &pos);
    if (pos != t.size()) throw std::invalid_argument("rational: trailing characters in " + t);
    return v;
  };
  if (slash == std::string::npos) return Rat(parse_int(s));
  return Rat(parse_int(s.substr(0, slash)), parse_int(s.substr(slash + 1)));
}

inline json cyc_json(const Cyc& c) {
  json j;
  j["level"] = c.level();
  json coeffs = json::array();
  for (const Rat& r : c.coeffs()) coeffs.push_back(rat_str(r));
  j["coeffs"] = coeffs;
  return j;
}

inline Cyc parse_cyc(const json& j) {
  if (!j.is_object() || !j.contains("level") || !j.contains("coeffs"))
    throw std::invalid_argument("cyclotomic: missing level/coeffs");
  std::uint32_t level = j["level"].get<std::uint32_t>();
  Cyc acc = Cyc(Rat(0)).at_level(level);
  std::uint64_t k = 0;
  for (const auto& entry : j["coeffs"]) {
    Rat r = parse_rat(entry.get<std::string>());
    if (!r.is_zero()) acc += r * Cyc::root(k, level);
    ++k;
  }
  return acc;
}

// CSV cell: "level:c0;c1;..." with rational coefficients
inline std::string cyc_csv(const Cyc& c) {
  std::string s = std::to_string(c.level()) + ":";
  const auto& v = c.coeffs();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ";";
    s += rat_str(v[i]);
  }
  return s;
}

// ---- group/element descriptors ----

inline json elem_json(const Elem& e) {
  json j = json::array();
  for (const auto& [k, r] : e.supp) j.push_back({k >> 8, k & 0xff, r});
  return j;
}

inline json group_json(const PatternGroup& pg) {
  json j;
  j["lambda_n"] = pg.ambient().lam().n;
  j["ring"] = ring_spec_json(pg.ring().spec());
  json gamma = json::array();
  for (const auto& p : pg.gamma()) gamma.push_back({p.a, p.b});
  j["gamma"] = gamma;
  j["order"] = pg.order();
  return j;
}

inline json phi_set_json(const PhiSet& s) {
  json j = json::array();
  for (const auto& p : s) j.push_back({p.a, p.b});
  return j;
}

// ---- scaffold and checks ----

inline json scaffold_json(const Scaffold& sc) {
  json j;
  json d = json::array();
  for (std::size_t i = 0; i < sc.datum.d.size(); ++i)
    d.push_back({sc.datum.d[i].a, sc.datum.d[i].b, sc.datum.f[i].index});
  j["D"] = d;
  j["gamma"] = phi_set_json(sc.gamma);
  j["omega"] = phi_set_json(sc.omega);
  j["gamma1"] = phi_set_json(sc.gamma1);
  j["gamma0"] = phi_set_json(sc.gamma0);
  j["orders"] = json{{"M", sc.M->order()}, {"H", sc.H->order()}, {"I", sc.I->order()}};
  j["flags"] = json{{"nested", sc.flags.nested},
                    {"overlapping", sc.flags.overlapping},
                    {"non_overlapping", sc.flags.non_overlapping},
                    {"type1", sc.flags.type1},
                    {"has_special_triple", sc.flags.has_special_triple},
                    {"extendible", sc.flags.extendible},
                    {"ih_abelian", sc.flags.ih_abelian},
                    {"irreducible", sc.flags.irreducible_pred},
                    {"multiplicity_free", sc.flags.multiplicity_free_pred}};
  json blocks = json::array();
  for (const auto& block : sc.disconnection) {
    json b = json::array();
    for (const auto& p : block) b.push_back({p.a, p.b});
    blocks.push_back(b);
  }
  j["disconnection"] = blocks;
  return j;
}

inline json check_json(const CheckResult& res) {
  json j;
  j["id"] = res.id;
  j["subject"] = res.subject;
  j["pass"] = res.pass;
  j["skipped"] = res.skipped;
  j["detail"] = res.detail;
  return j;
}

inline json report_json(const ProblemSpec& spec, const std::vector<CheckResult>& checks,
                        const json& extra = json()) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["problem"] = problem_spec_json(spec);
  json arr = json::array();
  std::uint32_t failed = 0, skipped = 0;
  for (const auto& c : checks) {
    arr.push_back(check_json(c));
    if (!c.pass) ++failed;
    if (c.skipped) ++skipped;
  }
  j["checks"] = arr;
  j["summary"] = json{{"pass", failed == 0},
                      {"checks_run", checks.size()},
                      {"checks_failed", failed},
                      {"checks_skipped", skipped}};
  if (!extra.is_null())
    for (const auto& [key, val] : extra.items()) j[key] = val;
  return j;
}

// ---- class functions and tables ----

inline json class_function_json(const ClassFunction& cf) {
  const PatternGroup& g = *cf.group();
  const Classes& cl = g.classes();
  std::uint32_t level = cl.exponent;
  json j;
  j["schema_version"] = kSchemaVersion;
  j["group"] = group_json(g);
  j["level"] = level;
  json vals = json::array();
  for (std::uint32_t i = 0; i < cl.count(); ++i) {
    json row;
    row["rep"] = elem_json(cl.reps[i]);
    row["size"] = cl.sizes[i];
    row["order"] = cl.rep_order[i];
    row["value"] = cyc_json(cf.at_class(i).at_level(level));
    vals.push_back(row);
  }
  j["values"] = vals;
  return j;
}

// Reattaches a serialized class function to an existing ambient; the
// class order is recomputed and must match the file.
inline ClassFunction parse_class_function(const json& j, const AmbientPtr& amb) {
  if (!j.is_object() || !j.contains("group") || !j.contains("values"))
    throw std::invalid_argument("class function: missing group/values");
  const json& gj = j["group"];
  if (gj["lambda_n"].get<std::uint32_t>() != amb->lam().n)
    throw std::invalid_argument("class function: lambda_n mismatch");
  if (!(Ring::make(parse_ring_spec(gj["ring"]))->spec().str() == amb->ring().spec().str()))
    throw std::invalid_argument("class function: ring mismatch");
  std::vector<PhiPair> gamma;
  for (const auto& e : gj["gamma"]) gamma.emplace_back(e[0].get<std::uint32_t>(), e[1].get<std::uint32_t>());
  PatternGroupPtr pg = pattern_group(amb, PhiSet(std::move(gamma)));
  const Classes& cl = pg->classes();
  if (j["values"].size() != cl.count())
    throw std::invalid_argument("class function: class count mismatch");
  std::vector<Cyc> vals;
  vals.reserve(cl.count());
  for (std::uint32_t i = 0; i < cl.count(); ++i) {
    const json& row = j["values"][i];
    std::vector<std::pair<PhiPair, RElem>> entries;
    for (const auto& t : row["rep"]) {
      entries.emplace_back(PhiPair(t[0].get<std::uint32_t>(), t[1].get<std::uint32_t>()),
                           static_cast<RElem>(t[2].get<std::uint32_t>()));
    }
    Elem rep = amb->make(std::move(entries));
    if (!(rep == cl.reps[i]))
      throw std::invalid_argument("class function: class rep order mismatch at " +
                                  std::to_string(i));
    if (row["size"].get<std::uint32_t>() != cl.sizes[i])
      throw std::invalid_argument("class function: class size mismatch");
    vals.push_back(parse_cyc(row["value"]));
  }
  return ClassFunction(pg, std::move(vals));
}

inline std::string elem_csv(const Elem& e) {
  // CSV-safe element descriptor: no commas
  if (e.supp.empty()) return "1";
  std::string s = "1";
  for (const auto& [k, r] : e.supp) {
    s += "+" + std::to_string(r) + "e[" + std::to_string(k >> 8) + "." +
         std::to_string(k & 0xff) + "]";
  }
  return s;
}

// Legend block (class,rep,size,order), blank line, then one row per
// character: degree followed by one cell per class.
inline std::string table_csv(const std::vector<ClassFunction>& rows) {
  if (rows.empty()) return "";
  const PatternGroup& g = *rows[0].group();
  const Classes& cl = g.classes();
  std::string out = "class,rep,size,order\n";
  for (std::uint32_t i = 0; i < cl.count(); ++i)
    out += std::to_string(i) + "," + elem_csv(cl.reps[i]) + "," + std::to_string(cl.sizes[i]) +
           "," + std::to_string(cl.rep_order[i]) + "\n";
  out += "\ndegree";
  for (std::uint32_t i = 0; i < cl.count(); ++i) out += ",K" + std::to_string(i);
  out += "\n";
  for (const ClassFunction& row : rows) {
    out += row.degree().rational_part().str();
    for (std::uint32_t i = 0; i < cl.count(); ++i)
      out += "," + cyc_csv(row.at_class(i).at_level(cl.exponent));
    out += "\n";
  }
  return out;
}

inline json character_table_json(const CharacterTable& table) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["group"] = group_json(*table.group);
  const Classes& cl = table.group->classes();
  j["level"] = cl.exponent;
  json classes = json::array();
  for (std::uint32_t i = 0; i < cl.count(); ++i)
    classes.push_back(json{{"rep", elem_json(cl.reps[i])},
                           {"size", cl.sizes[i]},
                           {"order", cl.rep_order[i]}});
  j["classes"] = classes;
  json irr = json::array();
  for (const ClassFunction& row : table.irr) {
    json r;
    r["degree"] = row.degree().rational_part().num();
    json vals = json::array();
    for (std::uint32_t i = 0; i < cl.count(); ++i)
      vals.push_back(cyc_json(row.at_class(i).at_level(cl.exponent)));
    r["values"] = vals;
    irr.push_back(r);
  }
  j["irreducibles"] = irr;
  return j;
}

}  // namespace mclain
