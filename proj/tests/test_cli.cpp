#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
// End-to-end tests for the hhcalc command-line tool: every command is run
// against the shipped fixtures and its report is compared with frozen tables,
// exit codes are pinned for the documented failure classes, input documents
// written in explicit form must reproduce their builtin counterparts, the
// emitted crossed product must be re-ingestible, and repeated runs must be
// byte-identical.
//
// The binary path and the fixtures directory arrive via the environment
// (HHCALC_BIN, FIXTURES_DIR), set by the build system.

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include <sys/wait.h>

namespace {

std::string env_or_die(const char* name) {
  const char* v = std::getenv(name);
  REQUIRE_MESSAGE(v != nullptr, "environment variable missing: " << name);
  return v;
}

std::string bin() { return env_or_die("HHCALC_BIN"); }

std::string fixture(const std::string& name) {
  return env_or_die("FIXTURES_DIR") + "/" + name;
}

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

/// Runs the tool with the given arguments, capturing output and the real
/// process exit code (pipelines would mask it).
RunResult run(const std::string& args) {
  const std::string cmd = "'" + bin() + "' " + args + " 2>&1";
  RunResult r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE_MESSAGE(p != nullptr, "failed to launch: " << cmd);
  std::array<char, 4096> buf;
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.output.append(buf.data(), got);
  const int status = pclose(p);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

nlohmann::json parse_report(const RunResult& r) {
  auto j = nlohmann::json::parse(r.output, nullptr, false);
  REQUIRE_MESSAGE(!j.is_discarded(), "output is not JSON: " << r.output.substr(0, 200));
  return j;
}

std::vector<int> table(const nlohmann::json& report, const std::string& name) {
  for (const auto& t : report.at("tables")) {
    if (t.at("complex") == name) {
      std::vector<int> dims;
      for (const auto& row : t.at("rows")) dims.push_back(row.at("dim").get<int>());
      return dims;
    }
  }
  FAIL("no table named " << name);
  return {};
}

bool has_validation(const nlohmann::json& report, const std::string& subject, bool ok) {
  for (const auto& v : report.at("validations"))
    if (v.at("subject") == subject && v.at("ok") == ok) return true;
  return false;
}

std::string write_temp(const std::string& stem, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / (stem + ".json");
  std::ofstream out(path);
  out << text;
  return path.string();
}

const std::vector<std::string> kFixtures = {
    "f01_trivial_dual_rational.json", "f02_sign_dual_fp.json",
    "f03_sign_dual_rational.json",    "f04_sweedler_dual_fp.json",
    "f05_adjoint_sweedler_fp.json",   "f06_sweedler_dual_rational.json",
    "f07_category_sweedler_fp.json",  "f08_yd_adjoint_fp.json",
    "f09_explicit_sign_rational.json", "f10_z3_counit_fp.json",
};

}  // namespace

TEST_CASE("validate succeeds on every shipped fixture") {
  for (const auto& f : kFixtures) {
    CAPTURE(f);
    auto r = run("validate '" + fixture(f) + "'");
    CHECK(r.exit_code == 0);
    auto rep = parse_report(r);
    CHECK(rep.at("ok") == true);
    CHECK(has_validation(rep, "module algebra", true));
  }
}

TEST_CASE("homology tables match frozen values on every fixture") {
  struct Expected {
    std::string file;
    std::vector<int> hh, quotient, relations;
  };
  const std::vector<Expected> cases = {
      {"f01_trivial_dual_rational.json", {2, 1, 1, 1, 1}, {2, 4, 8, 16, 32}, {0, 0, 0, 0, 0}},
      {"f02_sign_dual_fp.json", {1, 0, 0, 0, 0}, {1, 2, 4, 8, 16}, {1, 2, 4, 8, 16}},
      {"f03_sign_dual_rational.json", {1, 0, 0, 0, 0}, {1, 2, 4, 8, 16}, {1, 2, 4, 8, 16}},
      {"f04_sweedler_dual_fp.json", {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}, {2, 4, 8, 16, 32}},
      {"f05_adjoint_sweedler_fp.json", {2, 0, 0, 0}, {2, 4, 10, 36}, {2, 12, 54, 220}},
      {"f06_sweedler_dual_rational.json", {0, 0, 0, 0}, {0, 0, 0, 0}, {2, 4, 8, 16}},
      {"f07_category_sweedler_fp.json", {0, 0, 0, 0}, {0, 0, 0, 0}, {2, 4, 8, 16}},
      {"f08_yd_adjoint_fp.json", {0, 0, 0, 0}, {0, 0, 0, 0}, {2, 4, 8, 16}},
      {"f09_explicit_sign_rational.json", {1, 0, 0, 0}, {1, 2, 4, 8}, {1, 2, 4, 8}},
      {"f10_z3_counit_fp.json", {2, 1, 1, 1}, {2, 4, 8, 16}, {0, 0, 0, 0}},
  };
  for (const auto& e : cases) {
    CAPTURE(e.file);
    auto r = run("homology '" + fixture(e.file) + "'");
    REQUIRE(r.exit_code == 0);
    auto rep = parse_report(r);
    CHECK(rep.at("ok") == true);
    CHECK(table(rep, "hopf_hochschild") == e.hh);
    CHECK(table(rep, "quotient") == e.quotient);
    CHECK(table(rep, "relations") == e.relations);
  }
}

TEST_CASE("cohomology tables match frozen values") {
  struct Expected {
    std::string file;
    std::vector<int> cohomology, space;
  };
  const std::vector<Expected> cases = {
      {"f01_trivial_dual_rational.json", {2, 1, 1, 1, 1}, {2, 4, 8, 16, 32}},
      {"f02_sign_dual_fp.json", {1, 1, 1, 1, 1}, {1, 2, 4, 8, 16}},
      {"f04_sweedler_dual_fp.json", {1, 0, 1, 0, 1}, {1, 1, 2, 4, 8}},
      {"f05_adjoint_sweedler_fp.json", {1, 0, 0, 0}, {1, 5, 18, 68}},
      {"f10_z3_counit_fp.json", {2, 1, 1, 1}, {2, 4, 8, 16}},
  };
  for (const auto& e : cases) {
    CAPTURE(e.file);
    auto r = run("cohomology '" + fixture(e.file) + "'");
    REQUIRE(r.exit_code == 0);
    auto rep = parse_report(r);
    CHECK(rep.at("ok") == true);
    CHECK(has_validation(rep, "equivariant cochain", true));
    CHECK(table(rep, "hopf_hochschild_cochain") == e.cohomology);
    CHECK(table(rep, "cochain_space") == e.space);
  }
}

TEST_CASE("an explicit document reproduces its builtin counterpart") {
  // f09 spells out the sign-action package (group:Z/2 on dual numbers) with
  // explicit tables, sparse blocks, and fraction strings; f03 uses builtins.
  auto explicit_run = run("homology '" + fixture("f09_explicit_sign_rational.json") + "'");
  auto builtin_run = run("homology '" + fixture("f03_sign_dual_rational.json") + "' --max-degree 3");
  REQUIRE(explicit_run.exit_code == 0);
  REQUIRE(builtin_run.exit_code == 0);
  auto er = parse_report(explicit_run);
  auto br = parse_report(builtin_run);
  for (const char* name : {"hopf_hochschild", "quotient", "relations"})
    CHECK(table(er, name) == table(br, name));
}

TEST_CASE("crossed product emits a re-ingestible algebra block") {
  auto r = run("crossed-product '" + fixture("f04_sweedler_dual_fp.json") + "'");
  REQUIRE(r.exit_code == 0);
  auto rep = parse_report(r);
  CHECK(rep.at("ok") == true);
  CHECK(rep.at("algebra").at("dim") == 16);

  nlohmann::json doc = {{"field", {{"kind", "prime"}, {"p", 32003}}},
                        {"bialgebra", "trivial"},
                        {"algebra", rep.at("algebra")},
                        {"action", "counit"},
                        {"options", {{"max_degree", 1}}}};
  const auto path = write_temp("hhcalc_roundtrip", doc.dump());
  auto rt = run("validate '" + path + "'");
  CHECK(rt.exit_code == 0);
  CHECK(parse_report(rt).at("ok") == true);
  std::filesystem::remove(path);
}

TEST_CASE("oracle main-iso reports matching dimension tables") {
  for (const char* f : {"f02_sign_dual_fp.json", "f04_sweedler_dual_fp.json"}) {
    CAPTURE(f);
    auto r = run("oracle main-iso '" + fixture(f) + "' --max-degree 3");
    REQUIRE(r.exit_code == 0);
    auto rep = parse_report(r);
    CHECK(rep.at("ok") == true);
    CHECK(has_validation(rep, "main isomorphism", true));
    CHECK(table(rep, "coinvariant_quotient") == table(rep, "tensor_bar_quotient"));
  }
}

TEST_CASE("oracle tor-ext cross-checks the derived-functor descriptions") {
  for (const char* f : {"f01_trivial_dual_rational.json", "f02_sign_dual_fp.json",
                        "f05_adjoint_sweedler_fp.json"}) {
    CAPTURE(f);
    auto r = run("oracle tor-ext '" + fixture(f) + "' --max-degree 2");
    REQUIRE(r.exit_code == 0);
    auto rep = parse_report(r);
    CHECK(rep.at("ok") == true);
    CHECK(has_validation(rep, "derived-functor comparison", true));
    CHECK(table(rep, "hopf_hochschild") == table(rep, "tensor_bar"));
    CHECK(table(rep, "cochain_reduced") == table(rep, "cochain_full"));
  }
}

TEST_CASE("oracle cofinal and free-gen transfer along the category change") {
  auto cof = run("oracle cofinal '" + fixture("f07_category_sweedler_fp.json") + "'");
  REQUIRE(cof.exit_code == 0);
  auto cr = parse_report(cof);
  CHECK(cr.at("ok") == true);
  CHECK(has_validation(cr, "retraction transfer oracle", true));
  CHECK(table(cr, "full") == std::vector<int>{2, 0, 2});
  CHECK(table(cr, "subcategory") == std::vector<int>{2, 0, 2});
  CHECK(table(cr, "full_quotient") == std::vector<int>{10, 50, 500});
  CHECK(table(cr, "subcategory_quotient") == std::vector<int>{8, 32, 256});

  auto gen = run("oracle free-gen '" + fixture("f07_category_sweedler_fp.json") + "'");
  REQUIRE(gen.exit_code == 0);
  auto gr = parse_report(gen);
  CHECK(gr.at("ok") == true);
  CHECK(has_validation(gr, "generation transfer oracle", true));
  CHECK(table(gr, "full") == table(gr, "subcategory"));
  CHECK(table(gr, "subcategory_quotient") == std::vector<int>{2, 2, 4});
}

TEST_CASE("oracle dgm-homotopy reports the degree-zero sign") {
  auto r = run("oracle dgm-homotopy '" + fixture("f04_sweedler_dual_fp.json") + "'");
  REQUIRE(r.exit_code == 0);
  auto rep = parse_report(r);
  CHECK(rep.at("ok") == true);
  CHECK(has_validation(rep, "homotopy", true));
  std::string notes = rep.at("notes").dump();
  CHECK(notes.find("(-1)^(m+0)") != std::string::npos);
}

TEST_CASE("twist command reports twisted tables") {
  auto triv = run("twist '" + fixture("f06_sweedler_dual_rational.json") + "'");
  REQUIRE(triv.exit_code == 0);
  auto tr = parse_report(triv);
  CHECK(tr.at("ok") == true);
  CHECK(has_validation(tr, "yd module", true));
  CHECK(table(tr, "twisted") == std::vector<int>{0, 0, 0, 0});

  auto adj = run("twist '" + fixture("f08_yd_adjoint_fp.json") + "'");
  REQUIRE(adj.exit_code == 0);
  auto ar = parse_report(adj);
  CHECK(ar.at("ok") == true);
  CHECK(table(ar, "twisted") == std::vector<int>{0, 0, 0, 0});
  CHECK(table(ar, "twisted_relations") == std::vector<int>{8, 16, 32, 64});
}

TEST_CASE("compare matches the ordinary reference for cocommutative inputs") {
  for (const char* f : {"f01_trivial_dual_rational.json", "f02_sign_dual_fp.json",
                        "f10_z3_counit_fp.json"}) {
    CAPTURE(f);
    auto r = run("compare '" + fixture(f) + "' --against ordinary");
    REQUIRE(r.exit_code == 0);
    auto rep = parse_report(r);
    CHECK(rep.at("ok") == true);
    CHECK(rep.at("against") == "ordinary");
    CHECK(has_validation(rep, "ordinary-homology comparison", true));
    CHECK(table(rep, "hopf_hochschild") == table(rep, "ordinary_reference"));
    for (int d : table(rep, "obstruction_relations")) CHECK(d == 0);
  }
}

TEST_CASE("compare refuses a non-cocommutative bialgebra with exit code 1") {
  auto r = run("compare '" + fixture("f04_sweedler_dual_fp.json") + "' --against ordinary");
  CHECK(r.exit_code == 1);
  auto rep = parse_report(r);
  CHECK(rep.at("ok") == false);
  CHECK(has_validation(rep, "cocommutativity", false));
}

TEST_CASE("parse and shape failures exit with code 2 and name the problem") {
  struct Bad {
    std::string stem, text, needle;
  };
  const std::vector<Bad> cases = {
      {"hhcalc_badjson", "{not json", "input document is not valid JSON"},
      {"hhcalc_nofield", R"({"bialgebra":"trivial","algebra":"dual_numbers","action":"counit"})",
       "field: missing required field"},
      {"hhcalc_nounit",
       R"({"field":"rational","bialgebra":"trivial","action":"counit",
           "algebra":{"dim":2,"mult":[[[1,0],[0,1]],[[0,1],[0,0]]]}})",
       "algebra.unit: missing required field"},
      {"hhcalc_notprime",
       R"({"field":{"kind":"prime","p":4},"bialgebra":"trivial","algebra":"dual_numbers","action":"counit"})",
       "p must be prime"},
      {"hhcalc_unknownkey",
       R"({"field":"rational","bialgebra":"trivial","algebra":"dual_numbers","action":"counit","extra":1})",
       "extra: unknown field"},
      {"hhcalc_zeroden",
       R"({"field":"rational","bialgebra":"trivial","action":"counit",
           "algebra":{"dim":2,"mult":[[[1,0],[0,1]],[[0,1],[0,0]]],"unit":["1/0",0]}})",
       "zero denominator"},
      {"hhcalc_unknownbuiltin",
       R"({"field":"rational","bialgebra":"nosuch","algebra":"dual_numbers","action":"counit"})",
       "unknown builtin bialgebra"},
  };
  for (const auto& c : cases) {
    CAPTURE(c.stem);
    const auto path = write_temp(c.stem, c.text);
    auto r = run("validate '" + path + "'");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find(c.needle) != std::string::npos);
    std::filesystem::remove(path);
  }

  auto missing = run("homology /nonexistent/input.json");
  CHECK(missing.exit_code == 2);
  CHECK(missing.output.find("cannot open input file") != std::string::npos);

  auto noyd = run("twist '" + fixture("f01_trivial_dual_rational.json") + "'");
  CHECK(noyd.exit_code == 2);
  CHECK(noyd.output.find("yd: missing required field") != std::string::npos);
}

TEST_CASE("command-line misuse exits with code 2 and help with 0") {
  CHECK(run("nosuchcommand").exit_code == 2);
  CHECK(run("homology").exit_code == 2);  // missing input file
  CHECK(run("--help").exit_code == 0);
}

TEST_CASE("field override swaps the coefficient field for one run") {
  // A prime-field fixture forced onto the rationals must reproduce the
  // rational fixture of the same package, and vice versa.
  auto forced = run("homology '" + fixture("f02_sign_dual_fp.json") + "' --field rational");
  REQUIRE(forced.exit_code == 0);
  auto fr = parse_report(forced);
  CHECK(fr.at("field") == "rational");
  auto reference = parse_report(run("homology '" + fixture("f03_sign_dual_rational.json") + "'"));
  CHECK(table(fr, "hopf_hochschild") == table(reference, "hopf_hochschild"));

  auto prime7 = run("homology '" + fixture("f03_sign_dual_rational.json") + "' --field 7");
  REQUIRE(prime7.exit_code == 0);
  CHECK(parse_report(prime7).at("field") == "prime:7");
}

TEST_CASE("csv format emits the documented header and nothing else") {
  auto r = run("homology '" + fixture("f04_sweedler_dual_fp.json") + "' --format csv");
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.rfind("complex,degree,dim\n", 0) == 0);
  std::istringstream lines(r.output);
  std::string line;
  std::getline(lines, line);
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    CAPTURE(line);
    CHECK(std::count(line.begin(), line.end(), ',') == 2);
  }
}

TEST_CASE("text format carries timing, json stays time-free") {
  auto text = run("validate '" + fixture("f01_trivial_dual_rational.json") + "' --format text");
  REQUIRE(text.exit_code == 0);
  CHECK(text.output.find("elapsed:") != std::string::npos);
  auto json = run("validate '" + fixture("f01_trivial_dual_rational.json") + "'");
  CHECK(json.output.find("elapsed") == std::string::npos);
}

TEST_CASE("--out writes the report to a file") {
  const auto path = std::filesystem::temp_directory_path() / "hhcalc_out.json";
  std::filesystem::remove(path);
  auto r = run("homology '" + fixture("f02_sign_dual_fp.json") + "' --out '" + path.string() + "'");
  REQUIRE(r.exit_code == 0);
  std::ifstream in(path);
  REQUIRE(in.good());
  nlohmann::json rep = nlohmann::json::parse(in);
  CHECK(rep.at("command") == "homology");
  std::filesystem::remove(path);
}

TEST_CASE("repeated runs are byte-identical") {
  const std::vector<std::string> invocations = {
      "homology '" + fixture("f04_sweedler_dual_fp.json") + "'",
      "cohomology '" + fixture("f02_sign_dual_fp.json") + "'",
      "twist '" + fixture("f08_yd_adjoint_fp.json") + "'",
      "compare '" + fixture("f01_trivial_dual_rational.json") + "' --against ordinary",
      "oracle tor-ext '" + fixture("f02_sign_dual_fp.json") + "' --max-degree 1",
      "crossed-product '" + fixture("f04_sweedler_dual_fp.json") + "'",
  };
  for (const auto& inv : invocations) {
    CAPTURE(inv);
    auto a = run(inv);
    auto b = run(inv);
    REQUIRE(a.exit_code == 0);
    CHECK(a.exit_code == b.exit_code);
    CHECK(a.output == b.output);
  }
}
