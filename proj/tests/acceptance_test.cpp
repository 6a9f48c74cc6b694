// Acceptance suite for the engine and the hhcalc tool. Each numbered
// criterion prints exactly one PASS/FAIL line (with its wall time); the
// process exits with the number of failed criteria. Criteria cover: the
// structural validators and their mutation sensitivity, chain-level identity
// checks on every complex the shipped fixtures realize, agreement with the
// ordinary reference on cocommutative inputs, closed forms for the bottom
// cohomology, the quotient/tensor isomorphism oracle, degree-0 identities and
// derived-functor cross-checks, transfer along category changes, twisting,
// and byte-determinism of the command-line tool.
//
// argv[1] = fixtures directory, argv[2] = path to the hhcalc binary.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "json.hpp"

#include "hh/category.hpp"
#include "hh/complex.hpp"
#include "hh/errors.hpp"
#include "hh/hochschild.hpp"
#include "hh/io.hpp"
#include "hh/module_algebra.hpp"
#include "hh/ordinary_oracle.hpp"
#include "hh/yd.hpp"

namespace {

std::string g_fixtures;
std::string g_binary;
std::string g_why;  // first failure witness of the criterion being evaluated

const std::vector<std::string> kFixtures = {
    "f01_trivial_dual_rational.json", "f02_sign_dual_fp.json",
    "f03_sign_dual_rational.json",    "f04_sweedler_dual_fp.json",
    "f05_adjoint_sweedler_fp.json",   "f06_sweedler_dual_rational.json",
    "f07_category_sweedler_fp.json",  "f08_yd_adjoint_fp.json",
    "f09_explicit_sign_rational.json", "f10_z3_counit_fp.json",
};

std::string fixture(const std::string& name) { return g_fixtures + "/" + name; }

bool expect(bool ok, const std::string& why) {
  if (!ok && g_why.empty()) g_why = why;
  return ok;
}

bool clean(const hh::ValidationReport& rep, const std::string& where) {
  return expect(rep.ok, where + ": " + (rep.failures.empty() ? "failed" : rep.failures.front()));
}

/// Loads a fixture and calls fn(parsed_document, raw_json) over the field the
/// document declares.
template <class Fn>
void with_document(const std::string& name, Fn&& fn) {
  auto doc = hh::io::load_file(fixture(name));
  auto fs = hh::io::document_field_spec(doc, true);
  if (fs->rational) {
    fn(hh::io::parse_document<hh::RationalField>(doc), doc);
  } else {
    hh::PrimeField::set_modulus(fs->p);
    fn(hh::io::parse_document<hh::PrimeField>(doc), doc);
  }
}

bool document_is_rational(const std::string& name) {
  auto doc = hh::io::load_file(fixture(name));
  return hh::io::document_field_spec(doc, true)->rational;
}

// ---------------------------------------------------------------- criterion 1

bool criterion_validators() {
  using F = hh::RationalField;
  bool ok = true;
  for (auto make : {+[] { return hh::trivial_hopf<F>(); }, +[] { return hh::cyclic_group_algebra<F>(2); },
                    +[] { return hh::cyclic_group_algebra<F>(3); }, +[] { return hh::sweedler4<F>(); }}) {
    auto h = make();
    ok &= clean(h.validate(), "reference structure rejected");
  }
  auto sweedler = hh::sweedler4<F>();
  for (const auto& [label, mutated] : hh::single_entry_mutations(sweedler))
    ok &= expect(!mutated.validate().ok, "mutation not caught: " + label);
  return ok;
}

// ---------------------------------------------------------------- criterion 2

/// Identity battery for one fixture: chain complexes to degree 5, the
/// fixture's quotient pipeline, both cochain realizations, and the
/// category-level and twisted complexes where the document declares them.
template <class F>
bool identity_battery(const hh::io::InputDocument<F>& in, const nlohmann::json& doc) {
  using hh::QuotientMode;
  bool ok = true;
  const auto V = in.coefficients();

  auto ch5 = hh::hochschild_complex_ops(in.ma, V, 5, in.size_cap);
  ok &= clean(hh::check_presimplicial(ch5), "chain faces");
  ok &= clean(hh::check_d_squared(ch5), "chain d^2");

  auto cb5 = hh::bar_complex_ops(in.ma.A, 5, in.size_cap);
  ok &= clean(hh::check_presimplicial(cb5), "bar faces");
  ok &= clean(hh::check_d_squared(cb5), "bar d^2");

  const std::size_t t = std::min<std::size_t>(in.max_degree + 1, 5);
  auto cht = hh::hochschild_complex_ops(in.ma, V, t, in.size_cap);
  for (auto mode : {QuotientMode::Obstruction, QuotientMode::Coinvariant}) {
    auto levels = hh::build_quotient_levels(cht, mode);
    ok &= clean(hh::check_induced_d_squared(cht, levels),
                std::string("induced d^2, ") + hh::quotient_mode_name(mode));
  }

  const std::size_t ctop = std::min<std::size_t>(in.max_degree, 5);
  ok &= clean(hh::full_cochain_table(in.ma, V, ctop, in.size_cap).checks, "cochain on bar");
  ok &= clean(hh::reduced_cochain_table(in.ma, V, ctop).checks, "reduced cochain");

  if (doc.contains("category")) {
    auto mc = hh::module_category(in.ma, in.ranks);
    auto cache = hh::obstruction_cache(mc.cat, mc.action, mc.hom, in.max_degree, in.size_cap);
    ok &= clean(hh::check_presimplicial(cache.complex.ops), "category faces");
    ok &= clean(hh::check_d_squared(cache.complex.ops), "category d^2");
    ok &= clean(hh::check_induced_d_squared(cache.complex.ops, cache.levels),
                "category induced d^2");
  }

  if (in.yd) {
    auto tc = hh::twisted_complex(in.ma, *in.yd, t, in.size_cap);
    ok &= clean(hh::check_presimplicial(tc.complex.ops), "twisted faces");
    ok &= clean(hh::check_d_squared(tc.complex.ops), "twisted d^2");
    auto levels = hh::build_quotient_levels(tc.complex.ops, QuotientMode::Coinvariant);
    ok &= clean(hh::check_induced_d_squared(tc.complex.ops, levels), "twisted induced d^2");
  }
  return ok;
}

bool criterion_identities(double& fp_seconds, double& q_seconds) {
  bool ok = true;
  for (const auto& f : kFixtures) {
    const auto t0 = std::chrono::steady_clock::now();
    bool here = true;
    with_document(f, [&](const auto& in, const nlohmann::json& doc) {
      here = identity_battery(in, doc);
    });
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    (document_is_rational(f) ? q_seconds : fp_seconds) += secs;
    ok &= expect(here, "identity battery failed on " + f + (g_why.empty() ? "" : " (" + g_why + ")"));
  }
  ok &= expect(fp_seconds < 30.0, "prime-field battery exceeded 30s");
  ok &= expect(q_seconds < 300.0, "rational battery exceeded 5min");
  return ok;
}

// ---------------------------------------------------------------- criterion 3

bool criterion_cocommutative_reduction() {
  bool ok = true;
  for (const char* f : {"f01_trivial_dual_rational.json", "f02_sign_dual_fp.json"}) {
    with_document(f, [&](const auto& in, const nlohmann::json&) {
      const auto V = in.coefficients();
      auto C = hh::hochschild_complex_ops(in.ma, V, 4, in.size_cap);
      auto coinv = hh::quotient_homology(C, hh::QuotientMode::Coinvariant);
      auto ref = hh::oracle::ordinary_coinvariant_homology(in.ma, V, 3);
      ok &= expect(coinv.homology == ref.homology,
                   std::string(f) + ": coinvariant homology deviates from the reference");
      auto obstruction = hh::quotient_homology(C, hh::QuotientMode::Obstruction);
      for (auto r : obstruction.relation_dims)
        ok &= expect(r == 0, std::string(f) + ": obstruction relations do not vanish");
    });
  }
  return ok;
}

// ---------------------------------------------------------------- criterion 4

bool criterion_closed_forms() {
  bool ok = true;
  for (const auto& f : kFixtures) {
    with_document(f, [&](const auto& in, const nlohmann::json&) {
      const auto V = in.coefficients();
      auto table = hh::full_cochain_table(in.ma, V, 1, in.size_cap);
      ok &= expect(table.cohomology[0] == hh::hh0_closed_form(in.ma, V),
                   f + ": degree-0 cohomology deviates from its closed form");
      ok &= expect(table.cohomology[1] == hh::hh1_closed_form(in.ma, V),
                   f + ": degree-1 cohomology deviates from its closed form");
    });
  }
  return ok;
}

// ---------------------------------------------------------------- criterion 5

bool criterion_main_isomorphism() {
  bool ok = true;
  for (const char* f : {"f04_sweedler_dual_fp.json", "f02_sign_dual_fp.json"}) {
    with_document(f, [&](const auto& in, const nlohmann::json&) {
      const auto V = in.coefficients();
      auto res = hh::main_iso_oracle(in.ma, V, 3, in.size_cap);
      ok &= clean(res.details, std::string(f) + ": isomorphism oracle");
      ok &= expect(res.quotient_dims == res.tensor_dims,
                   std::string(f) + ": dimension tables disagree");
    });
  }
  return ok;
}

// ---------------------------------------------------------------- criterion 6

bool criterion_degree_zero_and_cross_checks() {
  bool ok = true;
  for (const auto& f : kFixtures) {
    with_document(f, [&](const auto& in, const nlohmann::json&) {
      const auto V = in.coefficients();
      auto C = hh::hochschild_complex_ops(in.ma, V, 2, in.size_cap);
      auto coinv = hh::quotient_homology(C, hh::QuotientMode::Coinvariant);
      ok &= expect(coinv.homology[0] == hh::hh0_from_relations(in.ma, V),
                   f + ": degree-0 homology deviates from its relation description");
    });
  }
  for (const char* f : {"f01_trivial_dual_rational.json", "f02_sign_dual_fp.json",
                        "f04_sweedler_dual_fp.json"}) {
    with_document(f, [&](const auto& in, const nlohmann::json&) {
      const auto V = in.coefficients();
      auto C = hh::hochschild_complex_ops(in.ma, V, 3, in.size_cap);
      auto coinv = hh::quotient_homology(C, hh::QuotientMode::Coinvariant);
      auto tensor = hh::tensor_bar_homology(in.ma, V, 3, in.size_cap);
      auto full = hh::full_cochain_table(in.ma, V, 2, in.size_cap);
      auto reduced = hh::reduced_cochain_table(in.ma, V, 2);
      for (std::size_t n : {std::size_t{1}, std::size_t{2}}) {
        ok &= expect(coinv.homology[n] == tensor.homology[n],
                     std::string(f) + ": tensor-side homology deviates at degree " +
                         std::to_string(n));
        ok &= expect(full.cohomology[n] == reduced.cohomology[n],
                     std::string(f) + ": cochain realizations deviate at degree " +
                         std::to_string(n));
      }
    });
  }
  return ok;
}

// ---------------------------------------------------------------- criterion 7

bool criterion_transfer_oracles() {
  bool ok = true;
  with_document("f07_category_sweedler_fp.json", [&](const auto& in, const nlohmann::json&) {
    auto mc = hh::module_category(in.ma, in.ranks);
    auto cache = hh::obstruction_cache(mc.cat, mc.action, mc.hom, in.max_degree, in.size_cap);
    const std::size_t target =
        std::max_element(in.ranks.begin(), in.ranks.end()) - in.ranks.begin();
    const std::size_t gen = std::min_element(in.ranks.begin(), in.ranks.end()) - in.ranks.begin();

    auto retraction = hh::cofinality_oracle(cache, hh::module_retraction(mc, target), 1, in.size_cap);
    ok &= clean(retraction.details, "retraction oracle");
    ok &= expect(retraction.sub_table.homology == cache.table.homology,
                 "retraction homology deviates from the full category");

    auto generation =
        hh::free_generation_oracle(cache, hh::module_generation(mc, gen), 1, in.size_cap);
    ok &= clean(generation.details, "generation oracle");
    ok &= expect(generation.sub_table.homology == cache.table.homology,
                 "generation homology deviates from the full category");

    ok &= expect(cache.table.homology == std::vector<std::size_t>{2, 0, 2},
                 "full-category homology deviates from the frozen table");
  });
  return ok;
}

// ---------------------------------------------------------------- criterion 8

/// One-dimensional trivial twist: same dimensions, same differentials.
template <class F>
bool trivial_twist_identity(const hh::io::InputDocument<F>& in) {
  bool ok = true;
  auto mc = hh::module_category(in.ma, {1});
  auto tw = hh::twist_bifunctor(mc.cat, mc.action, *in.yd, mc.hom);
  auto plain = hh::category_complex(mc.cat, mc.action, mc.hom, in.max_degree + 1, in.size_cap);
  auto twisted = hh::category_complex(mc.cat, mc.action, tw, in.max_degree + 1, in.size_cap);
  ok &= expect(twisted.ops.dims == plain.ops.dims, "trivial twist changes level dimensions");
  for (std::size_t n = 1; n <= in.max_degree + 1 && ok; ++n)
    for (std::size_t k = 0; k < plain.ops.dims[n]; ++k)
      if (!hh::sparse_eq<F>(hh::apply_d(twisted.ops, n, k), hh::apply_d(plain.ops, n, k))) {
        ok &= expect(false, "trivial twist changes a differential at level " + std::to_string(n));
        break;
      }
  return ok;
}

/// Adjoint twist: the module-comodule validates, the bifunctor's internal
/// axiom suite passes on construction, and enlarging the category from ranks
/// {1} to {1,2} leaves the twisted tables unchanged (the generation oracle
/// exhibits the rank-one subcategory inside the enlarged one).
template <class F>
bool adjoint_twist_invariance(const hh::io::InputDocument<F>& in) {
  bool ok = true;
  ok &= clean(hh::validate_yd(in.ma.B, *in.yd), "adjoint module-comodule");
  auto one = hh::twisted_complex(in.ma, *in.yd, 3, in.size_cap);
  auto small_table = hh::quotient_homology(one.complex.ops, hh::QuotientMode::Obstruction);

  auto mc = hh::module_category(in.ma, {1, 2});
  auto tw = hh::twist_bifunctor(mc.cat, mc.action, *in.yd, mc.hom);
  auto big = hh::obstruction_cache(mc.cat, mc.action, tw, 3, in.size_cap);
  auto rep = hh::free_generation_oracle(big, hh::module_generation(mc, 0), 1, in.size_cap);
  ok &= clean(rep.details, "twisted generation oracle");
  ok &= expect(rep.sub_table.quotient_dims == small_table.quotient_dims,
               "twisted quotient dims change when the category is enlarged");
  ok &= expect(rep.sub_table.homology == small_table.homology,
               "twisted homology changes when the category is enlarged");
  ok &= expect(big.table.homology == small_table.homology,
               "enlarged-category twisted homology deviates");
  return ok;
}

bool criterion_twisting() {
  bool ok = true;
  with_document("f06_sweedler_dual_rational.json", [&](const auto& in, const nlohmann::json&) {
    ok &= trivial_twist_identity(in);
  });
  with_document("f08_yd_adjoint_fp.json", [&](const auto& in, const nlohmann::json&) {
    ok &= adjoint_twist_invariance(in);
  });
  return ok;
}

// ---------------------------------------------------------------- criterion 9

int run_tool(const std::string& args) {
  const int status = std::system(("'" + g_binary + "' " + args + " > /dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

bool criterion_determinism() {
  const std::vector<std::string> invocations = {
      "validate '" + fixture("f09_explicit_sign_rational.json") + "'",
      "homology '" + fixture("f04_sweedler_dual_fp.json") + "'",
      "cohomology '" + fixture("f05_adjoint_sweedler_fp.json") + "'",
      "crossed-product '" + fixture("f04_sweedler_dual_fp.json") + "'",
      "oracle main-iso '" + fixture("f02_sign_dual_fp.json") + "' --max-degree 2",
      "oracle cofinal '" + fixture("f07_category_sweedler_fp.json") + "'",
      "twist '" + fixture("f08_yd_adjoint_fp.json") + "'",
      "compare '" + fixture("f01_trivial_dual_rational.json") + "' --against ordinary",
  };
  const auto tmp = std::filesystem::temp_directory_path();
  const auto a = tmp / "hh_acceptance_a.json";
  const auto b = tmp / "hh_acceptance_b.json";
  bool ok = true;
  for (const auto& inv : invocations) {
    std::filesystem::remove(a);
    std::filesystem::remove(b);
    ok &= expect(run_tool(inv + " --out '" + a.string() + "'") == 0, "nonzero exit: " + inv);
    ok &= expect(run_tool(inv + " --out '" + b.string() + "'") == 0, "nonzero exit: " + inv);
    const auto ra = slurp(a), rb = slurp(b);
    ok &= expect(!ra.empty(), "empty report: " + inv);
    ok &= expect(ra == rb, "reports differ between runs: " + inv);
  }
  std::filesystem::remove(a);
  std::filesystem::remove(b);
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::fprintf(stderr, "usage: acceptance_test <fixtures-dir> <hhcalc-binary>\n");
    return 64;
  }
  g_fixtures = argv[1];
  g_binary = argv[2];

  int failures = 0;
  auto run = [&](int num, const std::string& label, auto&& fn, double budget = 0.0) {
    g_why.clear();
    bool ok = false;
    std::string extra;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      ok = fn();
    } catch (const std::exception& e) {
      ok = false;
      extra = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget > 0.0 && secs >= budget) {
      ok = false;
      if (extra.empty()) extra = "time budget exceeded";
    }
    if (!ok && extra.empty()) extra = g_why;
    std::printf("%s criterion %d: %s [%.2fs]%s%s\n", ok ? "PASS" : "FAIL", num, label.c_str(),
                secs, extra.empty() ? "" : " -- ", extra.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  };

  run(1, "validators accept the references and reject every single-entry mutation",
      criterion_validators, 1.0);

  {
    g_why.clear();
    double fp = 0.0, q = 0.0;
    bool ok = false;
    std::string extra;
    try {
      ok = criterion_identities(fp, q);
    } catch (const std::exception& e) {
      ok = false;
      extra = std::string("exception: ") + e.what();
    }
    if (!ok && extra.empty()) extra = g_why;
    std::printf("%s criterion 2: face and d^2 identities on every realized complex "
                "[prime %.2fs, rational %.2fs]%s%s\n",
                ok ? "PASS" : "FAIL", fp, q, extra.empty() ? "" : " -- ", extra.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }

  run(3, "cocommutative inputs match the ordinary reference with vanishing obstruction",
      criterion_cocommutative_reduction);
  run(4, "degree-0/1 cohomology equals its closed forms on every fixture",
      criterion_closed_forms);
  run(5, "quotient and tensor-side complexes are isomorphic degreewise",
      criterion_main_isomorphism);
  run(6, "degree-0 identity and derived-functor cross-checks agree",
      criterion_degree_zero_and_cross_checks);
  run(7, "homology transfers along retraction and free generation", criterion_transfer_oracles,
      300.0);
  run(8, "twisting is trivial for the unit twist and rank-invariant for the adjoint",
      criterion_twisting);
  run(9, "repeated tool runs are byte-identical", criterion_determinism);

  return failures;
}
