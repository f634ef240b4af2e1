#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "mclain/io.hpp"

#ifndef MCLAIN_SCHEMA_DIR
#define MCLAIN_SCHEMA_DIR "schema"
#endif

using namespace mclain;

namespace {

AmbientPtr ambient(std::uint32_t n, RingSpec spec) {
  return std::make_shared<const Ambient>(Lambda{n}, Ring::make(spec));
}

std::string unique_path(const std::string& stem) {
  static int counter = 0;
  return "/tmp/mclain_io_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + "_" +
         stem;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// spec file that deletes itself when the test section ends
struct TempFile {
  std::string path;
  explicit TempFile(const json& j) : path(unique_path("spec.json")) { write_file(path, j.dump()); }
  TempFile(const TempFile&) = delete;
  ~TempFile() { std::remove(path.c_str()); }
};

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

const char* cli_bin() {
  const char* bin = std::getenv("MCLAIN_BIN");
  return (bin && *bin) ? bin : nullptr;
}

RunResult run_cli(const std::string& args) {
  RunResult r;
  const char* bin = cli_bin();
  if (!bin) return r;
  std::string out = unique_path("stdout.txt");
  std::string err = unique_path("stderr.txt");
  std::string cmd = std::string(bin) + " " + args + " >" + out + " 2>" + err;
  int rc = std::system(cmd.c_str());
  r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  r.out = read_file(out);
  r.err = read_file(err);
  std::remove(out.c_str());
  std::remove(err.c_str());
  return r;
}

json spec_gf2(std::uint32_t n) {
  return json{{"lambda_n", n}, {"ring", {{"kind", "gf"}, {"p", 2}, {"deg", 1}}}};
}

}  // namespace

TEST_CASE("ring spec json round trip") {
  std::vector<RingSpec> specs = {RingSpec::zmod(6), RingSpec::gf(3, 2),
                                 RingSpec::truncpoly(2, 1, 3), RingSpec::mat(2, 2)};
  for (const RingSpec& rs : specs) {
    json j = ring_spec_json(rs);
    RingSpec back = parse_ring_spec(j);
    CHECK(ring_spec_json(back) == j);
    CHECK(back.str() == rs.str());
  }
  CHECK_THROWS_AS(parse_ring_spec(json{{"kind", "field"}}), std::invalid_argument);
  CHECK_THROWS_AS(parse_ring_spec(json{{"kind", "zmod"}}), std::invalid_argument);
  CHECK_THROWS_AS(parse_ring_spec(json::array()), std::invalid_argument);
}

TEST_CASE("problem spec parsing, defaults and echo fixpoint") {
  json j = {{"lambda_n", 4},
            {"ring", {{"kind", "zmod"}, {"n", 4}}},
            {"D", {{1, 3}, {2, 4}}},
            {"f", "canonical"},
            {"seed", 7},
            {"guards", {{"max_group_order", 4096}}}};
  ProblemSpec spec = parse_problem_spec(j);
  CHECK(spec.lambda_n == 4);
  CHECK(spec.has_d);
  REQUIRE(spec.d.size() == 2);
  CHECK(spec.d[0] == PhiPair(1, 3));
  CHECK(spec.d[1] == PhiPair(2, 4));
  REQUIRE(spec.f.size() == 2);
  CHECK(spec.f[0] == -1);
  CHECK(spec.f[1] == -1);
  CHECK(spec.seed == 7);
  CHECK(spec.max_group_order == 4096);

  json echoed = problem_spec_json(spec);
  ProblemSpec again = parse_problem_spec(echoed);
  CHECK(problem_spec_json(again) == echoed);

  // defaults when the optional keys are absent
  ProblemSpec bare = parse_problem_spec(spec_gf2(3));
  CHECK_FALSE(bare.has_d);
  CHECK(bare.seed == 0x5eed5eedull);
  CHECK(bare.max_group_order == (1ull << 20));
  CHECK(bare.checks.empty());
}

TEST_CASE("problem spec selector forms") {
  json j = spec_gf2(4);
  j["D"] = {{1, 3}, {2, 4}};
  SECTION("member-wise selectors") {
    j["f"] = {0, "canonical"};
    ProblemSpec spec = parse_problem_spec(j);
    REQUIRE(spec.f.size() == 2);
    CHECK(spec.f[0] == 0);
    CHECK(spec.f[1] == -1);
  }
  SECTION("missing f means canonical everywhere") {
    ProblemSpec spec = parse_problem_spec(j);
    BasicDatum bd = resolve_datum(spec, *Ring::make(RingSpec::gf(2, 1)));
    auto prim = primitive_characters(*Ring::make(RingSpec::gf(2, 1)));
    REQUIRE(bd.f.size() == 2);
    CHECK(bd.f[0].index == prim[0].index);
  }
  SECTION("rejected shapes") {
    j["f"] = "primitive";
    CHECK_THROWS_AS(parse_problem_spec(j), std::invalid_argument);
    j["f"] = json{{"k", 1}};
    CHECK_THROWS_AS(parse_problem_spec(j), std::invalid_argument);
  }
}

TEST_CASE("problem spec rejects malformed input") {
  CHECK_THROWS_AS(parse_problem_spec(json::array()), std::invalid_argument);
  CHECK_THROWS_AS(parse_problem_spec(json{{"ring", {{"kind", "zmod"}, {"n", 4}}}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_problem_spec(json{{"lambda_n", 3}}), std::invalid_argument);
  json bad_d = spec_gf2(3);
  bad_d["D"] = {{1}};
  CHECK_THROWS_AS(parse_problem_spec(bad_d), std::invalid_argument);
  json bad_checks = spec_gf2(3);
  bad_checks["checks"] = "thm-8.1";
  CHECK_THROWS_AS(parse_problem_spec(bad_checks), std::invalid_argument);
  json bad_seed = spec_gf2(3);
  bad_seed["seed"] = -1;
  CHECK_THROWS_AS(parse_problem_spec(bad_seed), std::invalid_argument);
}

TEST_CASE("rational strings") {
  CHECK(parse_rat("3") == Rat(3));
  CHECK(parse_rat("-1/2") == Rat(-1, 2));
  CHECK(parse_rat("0") == Rat(0));
  CHECK(parse_rat(rat_str(Rat(22, 7))) == Rat(22, 7));
  CHECK_THROWS(parse_rat(""));
  CHECK_THROWS(parse_rat("1/0"));
  CHECK_THROWS(parse_rat("2x"));
  CHECK_THROWS(parse_rat("1/"));
}

TEST_CASE("cyclotomic json round trip") {
  std::vector<Cyc> values = {Cyc(Rat(5)), Cyc(Rat(-3, 2)), Cyc::root(1, 4),
                             Rat(2) * Cyc::root(1, 3) + Cyc(Rat(1)),
                             Cyc::root(1, 8) + Cyc::root(7, 8)};
  for (const Cyc& c : values) {
    json j = cyc_json(c);
    CHECK(parse_cyc(j) == c);
  }
  // alignment survives a forced common level
  Cyc third = Cyc::root(1, 3);
  CHECK(parse_cyc(cyc_json(third.at_level(12))) == third);
  CHECK_THROWS_AS(parse_cyc(json{{"level", 4}}), std::invalid_argument);

  CHECK(cyc_csv(Cyc::root(1, 4)) == "4:0;1");
  CHECK(cyc_csv(Cyc(Rat(2))) == "1:2");
}

TEST_CASE("element and group descriptors") {
  auto amb = ambient(3, RingSpec::zmod(5));
  CHECK(elem_json(amb->identity()) == json::array());
  Elem g = amb->make({{PhiPair(1, 2), 3}, {PhiPair(1, 3), 4}});
  json j = elem_json(g);
  REQUIRE(j.size() == 2);
  CHECK(j[0] == json::array({1, 2, 3}));
  CHECK(j[1] == json::array({1, 3, 4}));

  auto pg = full_group(amb);
  json gj = group_json(*pg);
  CHECK(gj["lambda_n"] == 3);
  CHECK(gj["ring"]["kind"] == "zmod");
  CHECK(gj["order"] == 125);
  CHECK(gj["gamma"].size() == 3);
}

TEST_CASE("class function json round trip") {
  auto amb = ambient(3, RingSpec::gf(2, 1));
  auto prim = primitive_characters(amb->ring());
  Scaffold sc = build_scaffold(
      amb, make_basic_datum(amb->lam(), amb->ring(), {PhiPair(1, 3)}, {prim[0]}));
  ClassFunction chi = supercharacter(sc);

  json j = class_function_json(chi);
  CHECK(j["schema_version"] == 1);
  CHECK(j["group"]["order"] == 8);
  REQUIRE(j["values"].size() == sc.M->classes().count());

  ClassFunction back = parse_class_function(j, amb);
  CHECK(back.group() == chi.group());
  for (std::uint32_t i = 0; i < sc.M->classes().count(); ++i)
    CHECK(back.at_class(i) == chi.at_class(i));

  SECTION("ambient mismatches are rejected") {
    json wrong = j;
    wrong["group"]["lambda_n"] = 4;
    CHECK_THROWS_AS(parse_class_function(wrong, amb), std::invalid_argument);
    wrong = j;
    wrong["group"]["ring"] = ring_spec_json(RingSpec::gf(3, 1));
    CHECK_THROWS_AS(parse_class_function(wrong, amb), std::invalid_argument);
  }
  SECTION("class data mismatches are rejected") {
    json wrong = j;
    wrong["values"].erase(wrong["values"].size() - 1);
    CHECK_THROWS_AS(parse_class_function(wrong, amb), std::invalid_argument);
    wrong = j;
    wrong["values"][1]["rep"] = j["values"][2]["rep"];
    CHECK_THROWS_AS(parse_class_function(wrong, amb), std::invalid_argument);
    wrong = j;
    wrong["values"][0]["size"] = 2;
    CHECK_THROWS_AS(parse_class_function(wrong, amb), std::invalid_argument);
  }
}

TEST_CASE("csv emitters") {
  auto amb = ambient(3, RingSpec::gf(2, 1));
  CHECK(elem_csv(amb->identity()) == "1");
  Elem g = amb->make({{PhiPair(1, 2), 1}, {PhiPair(2, 3), 1}});
  std::string cell = elem_csv(g);
  CHECK(cell == "1+1e[1.2]+1e[2.3]");
  CHECK(cell.find(',') == std::string::npos);

  auto prim = primitive_characters(amb->ring());
  Scaffold sc = build_scaffold(
      amb, make_basic_datum(amb->lam(), amb->ring(), {PhiPair(1, 3)}, {prim[0]}));
  std::string table = table_csv({supercharacter(sc)});
  CHECK(table.rfind("class,rep,size,order\n", 0) == 0);
  std::size_t hdr = table.find("\n\ndegree,K0,");
  REQUIRE(hdr != std::string::npos);
  std::size_t row = table.find('\n', hdr + 2);
  CHECK(table.compare(row + 1, 2, "2,") == 0);  // the character row starts with its degree
}

TEST_CASE("schema files match the check vocabulary") {
  json prob = json::parse(read_file(std::string(MCLAIN_SCHEMA_DIR) + "/problemspec.schema.json"));
  CHECK(prob["$id"] == "problemspec.schema.json");
  std::vector<std::string> ids = prob["properties"]["checks"]["items"]["enum"];
  std::vector<std::string> expected = {
      "prop-2.3", "thm-4.5",  "thm-5.2",  "prop-2.5", "prop-2.7",  "cor-4.6",
      "thm-7.5c", "thm-8.1",  "thm-8.3",  "thm-8.14", "thm-8.21",  "thm-8.8",
      "ex-8.19",  "ex-8.22",  "note-8.11", "completeness"};
  std::sort(ids.begin(), ids.end());
  std::sort(expected.begin(), expected.end());
  CHECK(ids == expected);

  json rep = json::parse(read_file(std::string(MCLAIN_SCHEMA_DIR) + "/report.schema.json"));
  CHECK(rep["$id"] == "report.schema.json");
  std::vector<std::string> req = rep["required"];
  CHECK(req == std::vector<std::string>{"schema_version", "problem", "checks", "summary"});
  std::vector<std::string> creq = rep["definitions"]["check"]["required"];
  CHECK(creq == std::vector<std::string>{"id", "subject", "pass", "skipped", "detail"});
  CHECK(rep["definitions"]["class_function"]["properties"].contains("values"));
}

TEST_CASE("cli scaffold") {
  if (!cli_bin()) SKIP("MCLAIN_BIN not set");
  json spec = spec_gf2(4);
  spec["D"] = {{1, 3}, {2, 4}};
  TempFile f(spec);
  RunResult r = run_cli("scaffold --spec " + f.path);
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["schema_version"] == 1);
  CHECK(j["checks"].empty());
  CHECK(j["summary"]["pass"] == true);
  CHECK(j["scaffold"]["orders"]["M"] == 64);
  CHECK(j["scaffold"]["orders"]["I"] == 32);
  CHECK(j["scaffold"]["orders"]["H"] == 16);
  CHECK(j["scaffold"]["flags"]["overlapping"] == true);
  CHECK(j["scaffold"]["flags"]["irreducible"] == false);  // omega is nonempty
  CHECK(j["scaffold"]["omega"] == json::array({json::array({1, 2})}));
  CHECK_FALSE(j.contains("timing_ms"));

  // --out writes the same report to a file
  std::string out_path = unique_path("report.json");
  RunResult r2 = run_cli("scaffold --spec " + f.path + " --out " + out_path);
  REQUIRE(r2.exit_code == 0);
  CHECK(r2.out.empty());
  CHECK(json::parse(read_file(out_path)) == j);
  std::remove(out_path.c_str());
}

TEST_CASE("cli verify runs the default battery") {
  if (!cli_bin()) SKIP("MCLAIN_BIN not set");
  json spec = spec_gf2(3);
  spec["D"] = {{1, 3}};
  TempFile f(spec);
  RunResult r = run_cli("verify --spec " + f.path);
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["summary"]["pass"] == true);
  CHECK(j["summary"]["checks_failed"] == 0);
  CHECK(j["summary"]["checks_run"] == 14);
  REQUIRE(j["checks"].size() == 14);
  CHECK(j["checks"][0]["id"] == "prop-2.3");
  for (const auto& c : j["checks"]) {
    INFO(c["id"].get<std::string>() << ": " << c["detail"].get<std::string>());
    CHECK(c["pass"] == true);
  }
  CHECK(j.contains("scaffold"));

  // explicit check selection narrows the battery
  RunResult r3 = run_cli("verify --spec " + f.path + " --checks thm-8.1,thm-8.3");
  REQUIRE(r3.exit_code == 0);
  json j3 = json::parse(r3.out);
  REQUIRE(j3["checks"].size() == 2);
  CHECK(j3["checks"][0]["id"] == "thm-8.1");
  CHECK(j3["checks"][1]["id"] == "thm-8.3");

  // --timing attaches the only nondeterministic field
  RunResult r4 = run_cli("verify --spec " + f.path + " --timing");
  CHECK(json::parse(r4.out).contains("timing_ms"));
}

TEST_CASE("cli character agrees with the library") {
  if (!cli_bin()) SKIP("MCLAIN_BIN not set");
  json spec = spec_gf2(3);
  spec["D"] = {{1, 3}};
  TempFile f(spec);
  RunResult r = run_cli("character --spec " + f.path);
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);

  auto amb = ambient(3, RingSpec::gf(2, 1));
  auto prim = primitive_characters(amb->ring());
  Scaffold sc = build_scaffold(
      amb, make_basic_datum(amb->lam(), amb->ring(), {PhiPair(1, 3)}, {prim[0]}));
  ClassFunction mine = supercharacter(sc);
  ClassFunction theirs = parse_class_function(j["character"], amb);
  for (std::uint32_t i = 0; i < sc.M->classes().count(); ++i)
    CHECK(theirs.at_class(i) == mine.at_class(i));
  CHECK(theirs.degree() == Cyc(Rat(2)));

  RunResult rc = run_cli("character --spec " + f.path + " --format csv");
  REQUIRE(rc.exit_code == 0);
  CHECK(rc.out.rfind("class,rep,size,order\n", 0) == 0);
}

TEST_CASE("cli sweep output is byte deterministic") {
  if (!cli_bin()) SKIP("MCLAIN_BIN not set");
  TempFile f(spec_gf2(3));
  RunResult a = run_cli("sweep --spec " + f.path);
  RunResult b = run_cli("sweep --spec " + f.path);
  RunResult c = run_cli("sweep --spec " + f.path + " --jobs 2");
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  json j = json::parse(a.out);
  CHECK(j["cases"] == 5);  // four nonempty basic subsets plus the empty one
  CHECK(j["summary"]["pass"] == true);
  CHECK(j["summary"]["checks_run"].get<std::uint32_t>() > 0);
}

TEST_CASE("cli usage errors exit 1 with a json error line") {
  if (!cli_bin()) SKIP("MCLAIN_BIN not set");
  RunResult missing = run_cli("verify --spec /nonexistent/path.json");
  CHECK(missing.exit_code == 1);
  CHECK(json::parse(missing.err).contains("error"));

  json spec = spec_gf2(3);
  spec["D"] = {{1, 3}};
  TempFile f(spec);
  CHECK(run_cli("verify --spec " + f.path + " --checks thm-9.9").exit_code == 1);
  CHECK(run_cli("verify --spec " + f.path + " --format csv").exit_code == 1);
  CHECK(run_cli("verify").exit_code == 1);

  json non_basic = spec_gf2(4);
  non_basic["D"] = {{1, 3}, {1, 4}};  // repeated row
  TempFile g(non_basic);
  RunResult nb = run_cli("verify --spec " + g.path);
  CHECK(nb.exit_code == 1);

  json no_d = spec_gf2(3);
  TempFile h(no_d);
  CHECK(run_cli("scaffold --spec " + h.path).exit_code == 1);
  CHECK(run_cli("character --spec " + h.path).exit_code == 1);

  // enumeration guard: the full group over n = 8 is far past the default cap
  TempFile big(spec_gf2(8));
  CHECK(run_cli("irrtable --spec " + big.path).exit_code == 1);
}

TEST_CASE("cli irrtable") {
  if (!cli_bin()) SKIP("MCLAIN_BIN not set");
  TempFile f(spec_gf2(3));
  RunResult r = run_cli("irrtable --spec " + f.path);
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["level"] == 4);
  REQUIRE(j["classes"].size() == 5);
  std::vector<std::int64_t> degrees;
  for (const auto& row : j["irreducibles"]) degrees.push_back(row["degree"].get<std::int64_t>());
  std::sort(degrees.begin(), degrees.end());
  CHECK(degrees == std::vector<std::int64_t>{1, 1, 1, 1, 2});

  RunResult rc = run_cli("irrtable --spec " + f.path + " --format csv");
  REQUIRE(rc.exit_code == 0);
  CHECK(rc.out.rfind("class,rep,size,order\n", 0) == 0);
  CHECK(rc.out.find("\n\ndegree,K0,K1,K2,K3,K4\n") != std::string::npos);
}

TEST_CASE("cli rings survey") {
  if (!cli_bin()) SKIP("MCLAIN_BIN not set");
  RunResult r = run_cli("rings");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  REQUIRE(j["rings"].size() == 24);
  for (const auto& row : j["rings"]) {
    INFO(row["ring"].get<std::string>());
    CHECK(row["symmetric"] == true);
    CHECK(row["primitive"].get<std::uint32_t>() >= 1);
  }

  RunResult rc = run_cli("rings --format csv");
  REQUIRE(rc.exit_code == 0);
  CHECK(rc.out.rfind("ring,characters,primitive,symmetric\n", 0) == 0);
}
