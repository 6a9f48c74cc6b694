/// hhcalc — exact homology calculator for module algebras over bialgebras.
///
/// Usage: hhcalc <command> <input-file> [--max-degree N] [--field rational|p]
///                                      [--format json|csv|text] [--out path]
///
/// Commands: validate, homology, cohomology, crossed-product,
///           oracle {main-iso|tor-ext|cofinal|free-gen|dgm-homotopy},
///           twist, compare --against ordinary.
///
/// Exit codes: 0 success, 1 validation or oracle failure, 2 parse/shape
/// error. Every failure carries a witness on stderr or in the report.

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hh/category.hpp"
#include "hh/complex.hpp"
#include "hh/errors.hpp"
#include "hh/hochschild.hpp"
#include "hh/io.hpp"
#include "hh/module_algebra.hpp"
#include "hh/ordinary_oracle.hpp"
#include "hh/report.hpp"
#include "hh/yd.hpp"

namespace {

struct Invocation {
  std::string command;
  std::string oracle_kind;
  std::string input_path;
  std::string field_override;
  std::string format = "json";
  std::string out_path;
  long max_degree = -1;
};

hh::QuotientMode mode_of(const std::string& s) {
  if (s == "plain") return hh::QuotientMode::Plain;
  if (s == "obstruction") return hh::QuotientMode::Obstruction;
  return hh::QuotientMode::Coinvariant;
}

/// Structure checks shared by every command; returns false (and records the
/// witnesses) when the declared data fails its axioms.
template <class F>
bool validate_core(const hh::io::InputDocument<F>& in, hh::io::Report& rep) {
  rep.add(in.ma.B.validate());
  rep.add(in.ma.A.validate());
  rep.add(in.ma.validate());
  return rep.ok;
}

template <class F>
void run_validate(const hh::io::InputDocument<F>& in, hh::io::Report& rep) {
  validate_core(in, rep);
  const auto V = in.coefficients();
  rep.add(V.validate(in.ma));
  if (in.yd) rep.add(hh::validate_yd(in.ma.B, *in.yd));
  rep.notes.push_back(in.ma.B.is_cocommutative() ? "the bialgebra is cocommutative"
                                                 : "the bialgebra is not cocommutative");
}

template <class F>
void run_homology(const hh::io::InputDocument<F>& in, hh::io::Report& rep) {
  if (!validate_core(in, rep)) return;
  const auto V = in.coefficients();
  auto C = hh::hochschild_complex_ops(in.ma, V, in.max_degree + 1, in.size_cap);
  auto qh = hh::quotient_homology(C, mode_of(in.mode));
  rep.add_table("hopf_hochschild", qh.homology);
  rep.add_table("quotient", qh.quotient_dims);
  rep.add_table("relations", qh.relation_dims);
  rep.extra["mode"] = in.mode;
}

template <class F>
void run_cohomology(const hh::io::InputDocument<F>& in, hh::io::Report& rep) {
  if (!validate_core(in, rep)) return;
  const auto V = in.coefficients();
  auto ct = hh::full_cochain_table(in.ma, V, in.max_degree, in.size_cap);
  rep.add(ct.checks);
  rep.add_table("hopf_hochschild_cochain", ct.cohomology);
  rep.add_table("cochain_space", ct.space_dims);
}

template <class F>
void run_crossed_product(const hh::io::InputDocument<F>& in, hh::io::Report& rep) {
  if (!validate_core(in, rep)) return;
  auto E = hh::crossed_product(in.ma);
  rep.add(E.validate());
  rep.extra["algebra"] = hh::io::algebra_to_json<F>(E);
  rep.notes.push_back(
      "the emitted block can be fed back in as the \"algebra\" field of a document");
}

template <class F>
void run_main_iso(const hh::io::InputDocument<F>& in, hh::io::Report& rep) {
  if (!validate_core(in, rep)) return;
  const auto V = in.coefficients();
  auto res = hh::main_iso_oracle(in.ma, V, in.max_degree, in.size_cap);
  rep.add(res.details);
  rep.add_table("coinvariant_quotient", res.quotient_dims);
  rep.add_table("tensor_bar_quotient", res.tensor_dims);
}

template <class F>
void run_tor_ext(const hh::io::InputDocument<F>& in, hh::io::Report& rep) {
  if (!validate_core(in, rep)) return;
  const auto V = in.coefficients();
  const std::size_t top = in.max_degree;

  auto C = hh::hochschild_complex_ops(in.ma, V, top + 1, in.size_cap);
  auto qh = hh::quotient_homology(C, hh::QuotientMode::Coinvariant);
  auto tb = hh::tensor_bar_homology(in.ma, V, top + 1, in.size_cap);
  hh::ValidationReport tor("derived-functor comparison");
  for (std::size_t n = 0; n < qh.homology.size() && n < tb.homology.size(); ++n)
    if (qh.homology[n] != tb.homology[n])
      tor.fail("homology differs in degree " + std::to_string(n) + ": coinvariant " +
               std::to_string(qh.homology[n]) + ", tensor-bar " + std::to_string(tb.homology[n]));
  const std::size_t h0 = hh::hh0_from_relations(in.ma, V);
  if (!qh.homology.empty() && h0 != qh.homology[0])
    tor.fail("degree-0 relation count " + std::to_string(h0) + " differs from homology " +
             std::to_string(qh.homology[0]));

  auto red = hh::reduced_cochain_table(in.ma, V, top);
  auto full = hh::full_cochain_table(in.ma, V, top, in.size_cap);
  rep.add(red.checks);
  rep.add(full.checks);
  for (std::size_t n = 0; n < red.cohomology.size() && n < full.cohomology.size(); ++n)
    if (red.cohomology[n] != full.cohomology[n])
      tor.fail("cohomology differs in degree " + std::to_string(n) + ": reduced " +
               std::to_string(red.cohomology[n]) + ", full " +
               std::to_string(full.cohomology[n]));
  rep.add(tor);

  rep.add_table("hopf_hochschild", qh.homology);
  rep.add_table("tensor_bar", tb.homology);
  rep.add_table("cochain_reduced", red.cohomology);
  rep.add_table("cochain_full", full.cohomology);
}

template <class F>
void run_transfer(const hh::io::InputDocument<F>& in, hh::io::Report& rep, bool cofinal) {
  if (!validate_core(in, rep)) return;
  auto mc = hh::module_category(in.ma, in.ranks);
  auto cache = hh::obstruction_cache(mc.cat, mc.action, mc.hom, in.max_degree, in.size_cap);
  hh::TransferReport<F> res;
  if (cofinal) {
    std::size_t target = 0;
    for (std::size_t i = 1; i < mc.ranks.size(); ++i)
      if (mc.ranks[i] > mc.ranks[target]) target = i;
    res = hh::cofinality_oracle(cache, hh::module_retraction(mc, target), 1, in.size_cap);
  } else {
    std::size_t gen = 0;
    for (std::size_t i = 1; i < mc.ranks.size(); ++i)
      if (mc.ranks[i] < mc.ranks[gen]) gen = i;
    res = hh::free_generation_oracle(cache, hh::module_generation(mc, gen), 1, in.size_cap);
  }
  rep.add(res.details);
  rep.notes.push_back(res.boundary_roles);
  rep.add_table("full", res.full_table.homology);
  rep.add_table("subcategory", res.sub_table.homology);
  rep.add_table("full_quotient", res.full_table.quotient_dims);
  rep.add_table("subcategory_quotient", res.sub_table.quotient_dims);
}

template <class F>
void run_dgm_homotopy(const hh::io::InputDocument<F>& in, hh::io::Report& rep) {
  if (!validate_core(in, rep)) return;
  const auto V = in.coefficients();
  auto C = hh::hochschild_complex_ops(in.ma, V, in.max_degree + 1, in.size_cap);
  auto res = hh::homotopy_oracle(C);
  rep.add(res.details);
  if (res.sign_offset >= 0)
    rep.notes.push_back("the degree-zero homotopy uses the sign (-1)^(m+" +
                        std::to_string(res.sign_offset) + ")");
}

template <class F>
void run_twist(const hh::io::InputDocument<F>& in, hh::io::Report& rep) {
  if (!in.yd) throw hh::ShapeError("yd: missing required field (the twist command needs one)");
  if (!validate_core(in, rep)) return;
  rep.add(hh::validate_yd(in.ma.B, *in.yd));
  if (!rep.ok) return;
  auto tc = hh::twisted_complex(in.ma, *in.yd, in.max_degree + 1, in.size_cap);
  rep.add_table("twisted", tc.table.homology);
  rep.add_table("twisted_quotient", tc.table.quotient_dims);
  rep.add_table("twisted_relations", tc.table.relation_dims);
}

template <class F>
void run_compare(const hh::io::InputDocument<F>& in, hh::io::Report& rep) {
  if (!validate_core(in, rep)) return;
  if (!in.ma.B.is_cocommutative()) {
    hh::ValidationReport coc("cocommutativity");
    coc.fail("the ordinary-homology comparison requires a cocommutative bialgebra");
    rep.add(coc);
    return;
  }
  const auto V = in.coefficients();
  auto C = hh::hochschild_complex_ops(in.ma, V, in.max_degree + 1, in.size_cap);
  auto qh = hh::quotient_homology(C, hh::QuotientMode::Coinvariant);
  auto obs = hh::quotient_homology(C, hh::QuotientMode::Obstruction);
  auto ref = hh::oracle::ordinary_coinvariant_homology(in.ma, V, in.max_degree);

  hh::ValidationReport cmp("ordinary-homology comparison");
  for (std::size_t n = 0; n <= in.max_degree; ++n)
    if (qh.homology[n] != ref.homology[n])
      cmp.fail("homology differs in degree " + std::to_string(n) + ": engine " +
               std::to_string(qh.homology[n]) + ", reference " + std::to_string(ref.homology[n]));
  for (std::size_t n = 0; n < obs.relation_dims.size(); ++n)
    if (obs.relation_dims[n] != 0)
      cmp.fail("obstruction relations are nonzero in degree " + std::to_string(n) + " (dim " +
               std::to_string(obs.relation_dims[n]) + ") despite cocommutativity");
  rep.add(cmp);

  rep.add_table("hopf_hochschild", qh.homology);
  rep.add_table("ordinary_reference", ref.homology);
  rep.add_table("obstruction_relations", obs.relation_dims);
}

template <class F>
int run_with_field(const nlohmann::json& doc, const Invocation& inv,
                   const std::string& field_label) {
  const auto t0 = std::chrono::steady_clock::now();
  hh::io::InputDocument<F> in = hh::io::parse_document<F>(doc);
  if (inv.max_degree >= 0) in.max_degree = static_cast<std::size_t>(inv.max_degree);

  hh::io::Report rep;
  rep.command = inv.command == "oracle" ? "oracle " + inv.oracle_kind : inv.command;
  rep.field_label = field_label;
  rep.max_degree = in.max_degree;

  if (inv.command == "validate") {
    rep.max_degree.reset();
    run_validate(in, rep);
  } else if (inv.command == "homology") {
    run_homology(in, rep);
  } else if (inv.command == "cohomology") {
    run_cohomology(in, rep);
  } else if (inv.command == "crossed-product") {
    rep.max_degree.reset();
    run_crossed_product(in, rep);
  } else if (inv.command == "oracle") {
    if (inv.oracle_kind == "main-iso")
      run_main_iso(in, rep);
    else if (inv.oracle_kind == "tor-ext")
      run_tor_ext(in, rep);
    else if (inv.oracle_kind == "cofinal")
      run_transfer(in, rep, true);
    else if (inv.oracle_kind == "free-gen")
      run_transfer(in, rep, false);
    else
      run_dgm_homotopy(in, rep);
  } else if (inv.command == "twist") {
    run_twist(in, rep);
  } else {
    rep.extra["against"] = "ordinary";
    run_compare(in, rep);
  }

  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::string bytes;
  if (inv.format == "json")
    bytes = hh::io::emit_json(rep);
  else if (inv.format == "csv")
    bytes = hh::io::emit_csv(rep);
  else
    bytes = hh::io::emit_text(rep);

  if (inv.out_path.empty()) {
    std::cout << bytes;
  } else {
    std::ofstream out(inv.out_path, std::ios::binary);
    if (!out) throw hh::ParseError("cannot open output file: " + inv.out_path);
    out << bytes;
  }
  return rep.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  Invocation inv;

  CLI::App app{"exact Hopf-module homology calculator"};
  app.require_subcommand(1);
  std::vector<CLI::App*> subs;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("input", inv.input_path, "JSON input document")->required();
    sub->add_option("--max-degree", inv.max_degree, "override the document's max degree")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--field", inv.field_override, "override the field: rational|p");
    sub->add_option("--format", inv.format, "output format")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--out", inv.out_path, "write the report to a file");
    subs.push_back(sub);
  };

  add_common(app.add_subcommand("validate", "run every applicable axiom suite"));
  add_common(app.add_subcommand("homology", "Betti table of the quotient complex"));
  add_common(app.add_subcommand("cohomology", "Betti table of the equivariant cochain complex"));
  add_common(app.add_subcommand("crossed-product", "emit the crossed product's structure constants"));
  auto* orc = app.add_subcommand("oracle", "run an internal consistency oracle");
  orc->add_option("kind", inv.oracle_kind, "which oracle")
      ->required()
      ->check(CLI::IsMember({"main-iso", "tor-ext", "cofinal", "free-gen", "dgm-homotopy"}));
  add_common(orc);
  add_common(app.add_subcommand("twist", "Betti table of the twisted complex"));
  auto* cmp = app.add_subcommand("compare", "check against a reference computation");
  add_common(cmp);
  std::string against;
  cmp->add_option("--against", against, "reference to compare with")
      ->required()
      ->check(CLI::IsMember({"ordinary"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  for (CLI::App* sub : subs)
    if (sub->parsed()) inv.command = sub->get_name();

  try {
    nlohmann::json doc = hh::io::load_file(inv.input_path);
    hh::io::FieldSpec fs;
    if (inv.field_override.empty()) {
      fs = *hh::io::document_field_spec(doc, true);
    } else {
      fs = hh::io::parse_field_override(inv.field_override);
      hh::io::document_field_spec(doc, false);  // still shape-check any declared field
    }
    if (fs.rational) return run_with_field<hh::RationalField>(doc, inv, fs.label());
    hh::PrimeField::set_modulus(fs.p);
    return run_with_field<hh::PrimeField>(doc, inv, fs.label());
  } catch (const hh::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const hh::ShapeError& e) {
    std::cerr << "shape error: " << e.what() << "\n";
    return 2;
  } catch (const hh::ValidationFailure& e) {
    std::cerr << "validation failure: " << e.what() << "\n";
    return 1;
  } catch (const hh::OracleFailure& e) {
    std::cerr << "oracle failure: " << e.what() << "\n";
    return 1;
  } catch (const hh::HHError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
