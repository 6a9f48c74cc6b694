#pragma once
/// @file io.hpp
/// @brief JSON input documents: field selection, builtin resolution, and
///        ingestion of explicit structure-constant blocks.
///
/// A document is a single JSON object with the following top-level fields:
///
///   field      {"kind":"rational"} or {"kind":"prime","p":N}     (required*)
///   bialgebra  builtin name or explicit block
///   algebra    builtin name or explicit block
///   action     builtin name or array of matrices (one per bialgebra basis)
///   bimodule   optional; "regular" or explicit block
///   yd         optional; "trivial", "adjoint", or explicit block
///   category   optional; {"ranks":[r1,...]} for the free-module category
///   options    optional; {"max_degree":N, "size_cap":N, "mode":...}
///
/// (*) the command line may override the field, in which case the document's
/// field entry is optional.
///
/// Scalars are JSON integers or "num/den" strings; over a prime field the
/// fraction is resolved by modular inversion. Matrices are nested arrays of
/// rows, or {"sparse":[[row,col,value],...]}. Multiplication tables are
/// nested dim x dim x dim arrays (entry [i][j][k] is the e_k-coefficient of
/// e_i e_j), or {"sparse":[[i,j,k,value],...]}. Coproducts and coactions are
/// per-basis lists of [value, left_index, right_index] terms.
///
/// Parse problems throw ParseError (malformed values) or ShapeError (missing
/// or mis-sized fields); both carry the JSON path of the offending entry.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hh/algebra.hpp"
#include "hh/errors.hpp"
#include "hh/field.hpp"
#include "hh/hopf.hpp"
#include "hh/matrix.hpp"
#include "hh/module_algebra.hpp"
#include "hh/yd.hpp"

namespace hh::io {

using nlohmann::json;

// ------------------------------------------------------------ file handling

inline json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("input document is not valid JSON: ") + e.what());
  }
}

inline json load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open input file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_json_text(text);
}

// --------------------------------------------------------- path-aware access

inline std::string joined(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

inline const json* opt_field(const json& j, const char* key) {
  if (!j.is_object()) return nullptr;
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

inline const json& need(const json& j, const std::string& path, const char* key) {
  if (!j.is_object()) throw ShapeError(path.empty() ? std::string("document: expected a JSON object")
                                                    : path + ": expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw ShapeError(joined(path, key) + ": missing required field");
  return *it;
}

inline void check_keys(const json& j, const std::string& path,
                       std::initializer_list<const char*> allowed) {
  if (!j.is_object()) return;
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = std::any_of(allowed.begin(), allowed.end(),
                             [&](const char* k) { return it.key() == k; });
    if (!known) throw ShapeError(joined(path, it.key()) + ": unknown field");
  }
}

inline std::size_t need_index(const json& v, const std::string& path) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
    throw ShapeError(path + ": expected a nonnegative integer");
  return static_cast<std::size_t>(v.get<std::int64_t>());
}

inline std::string need_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw ShapeError(path + ": expected a string");
  return v.get<std::string>();
}

// ------------------------------------------------------------------ scalars

/// An integer, or a string "num", "num/den" (den nonzero).
template <class F>
typename F::Elem parse_scalar(const json& v, const std::string& path) {
  if (v.is_number_integer()) return F::from_long(static_cast<long>(v.get<std::int64_t>()));
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    auto malformed = [&] {
      return ParseError(path + ": malformed scalar \"" + s +
                        "\" (expected an integer or \"num/den\")");
    };
    const std::size_t slash = s.find('/');
    const std::string num_s = slash == std::string::npos ? s : s.substr(0, slash);
    try {
      std::size_t used = 0;
      const long num = std::stol(num_s, &used);
      if (used != num_s.size() || num_s.empty()) throw malformed();
      if (slash == std::string::npos) return F::from_long(num);
      const std::string den_s = s.substr(slash + 1);
      std::size_t used2 = 0;
      const long den = std::stol(den_s, &used2);
      if (used2 != den_s.size() || den_s.empty()) throw malformed();
      return F::from_fraction(num, den);
    } catch (const std::invalid_argument&) {
      throw malformed();
    } catch (const std::out_of_range&) {
      throw malformed();
    }
  }
  throw ParseError(path + ": expected an integer or \"num/den\" string");
}

template <class F>
std::vector<typename F::Elem> parse_vector(const json& v, std::size_t len,
                                           const std::string& path) {
  if (!v.is_array())
    throw ShapeError(path + ": expected an array of " + std::to_string(len) + " scalars");
  if (v.size() != len)
    throw ShapeError(path + ": expected " + std::to_string(len) + " entries, got " +
                     std::to_string(v.size()));
  std::vector<typename F::Elem> out;
  out.reserve(len);
  for (std::size_t i = 0; i < len; ++i)
    out.push_back(parse_scalar<F>(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

// --------------------------------------------------------- matrices, tensors

template <class F>
Matrix<F> parse_matrix(const json& v, std::size_t rows, std::size_t cols,
                       const std::string& path) {
  Matrix<F> m(rows, cols);
  if (v.is_object()) {
    check_keys(v, path, {"sparse"});
    const json& entries = need(v, path, "sparse");
    if (!entries.is_array())
      throw ShapeError(path + ".sparse: expected an array of [row, col, value] triples");
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const std::string ep = path + ".sparse[" + std::to_string(i) + "]";
      const json& e = entries[i];
      if (!e.is_array() || e.size() != 3) throw ShapeError(ep + ": expected [row, col, value]");
      const std::size_t r = need_index(e[0], ep + "[0]");
      const std::size_t c = need_index(e[1], ep + "[1]");
      if (r >= rows || c >= cols) throw ShapeError(ep + ": index out of range");
      m.at(r, c) = F::add(m.at(r, c), parse_scalar<F>(e[2], ep + "[2]"));
    }
    return m;
  }
  if (!v.is_array() || v.size() != rows)
    throw ShapeError(path + ": expected " + std::to_string(rows) + " rows");
  for (std::size_t r = 0; r < rows; ++r) {
    const json& row = v[r];
    const std::string rp = path + "[" + std::to_string(r) + "]";
    if (!row.is_array() || row.size() != cols)
      throw ShapeError(rp + ": expected " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c)
      m.at(r, c) = parse_scalar<F>(row[c], rp + "[" + std::to_string(c) + "]");
  }
  return m;
}

template <class F>
std::vector<Matrix<F>> parse_matrix_list(const json& v, std::size_t count, std::size_t rows,
                                         std::size_t cols, const std::string& path) {
  if (!v.is_array() || v.size() != count)
    throw ShapeError(path + ": expected " + std::to_string(count) + " matrices");
  std::vector<Matrix<F>> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(parse_matrix<F>(v[i], rows, cols, path + "[" + std::to_string(i) + "]"));
  return out;
}

/// Multiplication table: nested [i][j][k] arrays or {"sparse":[[i,j,k,value]]}.
template <class F>
std::vector<std::vector<std::vector<typename F::Elem>>> parse_mult(const json& v, std::size_t dim,
                                                                   const std::string& path) {
  using Elem = typename F::Elem;
  std::vector<std::vector<std::vector<Elem>>> mult(
      dim, std::vector<std::vector<Elem>>(dim, std::vector<Elem>(dim, F::zero())));
  if (v.is_object()) {
    check_keys(v, path, {"sparse"});
    const json& entries = need(v, path, "sparse");
    if (!entries.is_array())
      throw ShapeError(path + ".sparse: expected an array of [i, j, k, value] entries");
    for (std::size_t n = 0; n < entries.size(); ++n) {
      const std::string ep = path + ".sparse[" + std::to_string(n) + "]";
      const json& e = entries[n];
      if (!e.is_array() || e.size() != 4) throw ShapeError(ep + ": expected [i, j, k, value]");
      const std::size_t i = need_index(e[0], ep + "[0]");
      const std::size_t j = need_index(e[1], ep + "[1]");
      const std::size_t k = need_index(e[2], ep + "[2]");
      if (i >= dim || j >= dim || k >= dim) throw ShapeError(ep + ": index out of range");
      mult[i][j][k] = F::add(mult[i][j][k], parse_scalar<F>(e[3], ep + "[3]"));
    }
    return mult;
  }
  if (!v.is_array() || v.size() != dim)
    throw ShapeError(path + ": expected " + std::to_string(dim) + " rows");
  for (std::size_t i = 0; i < dim; ++i) {
    const json& row = v[i];
    const std::string rp = path + "[" + std::to_string(i) + "]";
    if (!row.is_array() || row.size() != dim)
      throw ShapeError(rp + ": expected " + std::to_string(dim) + " entries");
    for (std::size_t j = 0; j < dim; ++j)
      mult[i][j] = parse_vector<F>(row[j], dim, rp + "[" + std::to_string(j) + "]");
  }
  return mult;
}

/// Per-basis sparse pairings: out[i] lists terms [value, left, right] with
/// left < left_dim and right < right_dim.
template <class F>
std::vector<std::vector<CoprodTerm<F>>> parse_terms(const json& v, std::size_t dim,
                                                    std::size_t left_dim, std::size_t right_dim,
                                                    const std::string& path) {
  if (!v.is_array() || v.size() != dim)
    throw ShapeError(path + ": expected one term list per basis element (" + std::to_string(dim) +
                     " lists)");
  std::vector<std::vector<CoprodTerm<F>>> out(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const json& terms = v[i];
    const std::string tp = path + "[" + std::to_string(i) + "]";
    if (!terms.is_array()) throw ShapeError(tp + ": expected an array of [value, left, right]");
    for (std::size_t n = 0; n < terms.size(); ++n) {
      const std::string ep = tp + "[" + std::to_string(n) + "]";
      const json& e = terms[n];
      if (!e.is_array() || e.size() != 3) throw ShapeError(ep + ": expected [value, left, right]");
      CoprodTerm<F> t{parse_scalar<F>(e[0], ep + "[0]"), need_index(e[1], ep + "[1]"),
                      need_index(e[2], ep + "[2]")};
      if (t.j >= left_dim || t.k >= right_dim) throw ShapeError(ep + ": index out of range");
      out[i].push_back(t);
    }
  }
  return out;
}

// ------------------------------------------------------------------ builtins

/// Recognizes "group:Z/N" and extracts N >= 1.
inline bool group_builtin(const std::string& s, std::size_t& n) {
  const std::string prefix = "group:Z/";
  if (s.rfind(prefix, 0) != 0) return false;
  const std::string tail = s.substr(prefix.size());
  if (tail.empty() || tail.size() > 4) return false;
  for (char c : tail)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  n = std::stoul(tail);
  return n >= 1;
}

template <class F>
HopfData<F> builtin_bialgebra(const std::string& s, const std::string& path) {
  if (s == "trivial") return trivial_hopf<F>();
  if (s == "sweedler4") return sweedler4<F>();
  std::size_t n = 0;
  if (group_builtin(s, n)) return cyclic_group_algebra<F>(n);
  throw ParseError(path + ": unknown builtin bialgebra \"" + s +
                   "\" (expected \"trivial\", \"sweedler4\", or \"group:Z/N\")");
}

template <class F>
StructureAlgebra<F> builtin_algebra(const std::string& s, const std::string& path) {
  if (s == "dual_numbers") return dual_numbers_algebra<F>();
  if (s == "trivial") return trivial_hopf<F>().alg;
  if (s == "sweedler4") return sweedler4<F>().alg;
  std::size_t n = 0;
  if (group_builtin(s, n)) return cyclic_group_algebra<F>(n).alg;
  throw ParseError(path + ": unknown builtin algebra \"" + s +
                   "\" (expected \"dual_numbers\", \"trivial\", \"sweedler4\", or \"group:Z/N\")");
}

// -------------------------------------------------------------------- blocks

template <class F>
StructureAlgebra<F> parse_algebra_fields(const json& v, const std::string& path) {
  StructureAlgebra<F> a;
  a.dim = need_index(need(v, path, "dim"), path + ".dim");
  if (a.dim == 0 || a.dim > 64) throw ShapeError(path + ".dim: must be between 1 and 64");
  if (const json* names = opt_field(v, "basis_names")) {
    if (!names->is_array() || names->size() != a.dim)
      throw ShapeError(path + ".basis_names: expected " + std::to_string(a.dim) + " strings");
    for (std::size_t i = 0; i < a.dim; ++i)
      a.basis_names.push_back(
          need_string((*names)[i], path + ".basis_names[" + std::to_string(i) + "]"));
  } else {
    for (std::size_t i = 0; i < a.dim; ++i) a.basis_names.push_back("e" + std::to_string(i));
  }
  a.mult = parse_mult<F>(need(v, path, "mult"), a.dim, path + ".mult");
  a.unit = parse_vector<F>(need(v, path, "unit"), a.dim, path + ".unit");
  return a;
}

template <class F>
StructureAlgebra<F> parse_algebra_block(const json& v, const std::string& path) {
  if (v.is_string()) return builtin_algebra<F>(v.get<std::string>(), path);
  if (!v.is_object()) throw ShapeError(path + ": expected a builtin name or an explicit block");
  check_keys(v, path, {"dim", "basis_names", "mult", "unit"});
  StructureAlgebra<F> a = parse_algebra_fields<F>(v, path);
  a.check_shapes();
  return a;
}

template <class F>
HopfData<F> parse_bialgebra_block(const json& v, const std::string& path) {
  if (v.is_string()) return builtin_bialgebra<F>(v.get<std::string>(), path);
  if (!v.is_object()) throw ShapeError(path + ": expected a builtin name or an explicit block");
  check_keys(v, path,
             {"dim", "basis_names", "mult", "unit", "comult", "counit", "antipode",
              "antipode_inv"});
  HopfData<F> h;
  h.alg = parse_algebra_fields<F>(v, path);
  const std::size_t d = h.alg.dim;
  h.comult = parse_terms<F>(need(v, path, "comult"), d, d, d, path + ".comult");
  h.counit = parse_vector<F>(need(v, path, "counit"), d, path + ".counit");
  if (const json* a = opt_field(v, "antipode"))
    h.antipode = parse_matrix<F>(*a, d, d, path + ".antipode");
  if (const json* a = opt_field(v, "antipode_inv"))
    h.antipode_inv = parse_matrix<F>(*a, d, d, path + ".antipode_inv");
  h.check_shapes();
  return h;
}

template <class F>
EquivariantBimodule<F> parse_bimodule_block(const json& v, const ModuleAlgebra<F>& ma,
                                            const std::string& path) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "regular") return regular_bimodule(ma);
    throw ParseError(path + ": unknown builtin bimodule \"" + s + "\" (expected \"regular\")");
  }
  if (!v.is_object()) throw ShapeError(path + ": expected a builtin name or an explicit block");
  check_keys(v, path, {"dim", "basis_names", "left", "right", "bact"});
  EquivariantBimodule<F> V;
  V.dim = need_index(need(v, path, "dim"), path + ".dim");
  if (V.dim == 0 || V.dim > 64) throw ShapeError(path + ".dim: must be between 1 and 64");
  if (const json* names = opt_field(v, "basis_names")) {
    if (!names->is_array() || names->size() != V.dim)
      throw ShapeError(path + ".basis_names: expected " + std::to_string(V.dim) + " strings");
    for (std::size_t i = 0; i < V.dim; ++i)
      V.basis_names.push_back(
          need_string((*names)[i], path + ".basis_names[" + std::to_string(i) + "]"));
  } else {
    for (std::size_t i = 0; i < V.dim; ++i) V.basis_names.push_back("v" + std::to_string(i));
  }
  V.left = parse_matrix_list<F>(need(v, path, "left"), ma.A.dim, V.dim, V.dim, path + ".left");
  V.right = parse_matrix_list<F>(need(v, path, "right"), ma.A.dim, V.dim, V.dim, path + ".right");
  V.bact = parse_matrix_list<F>(need(v, path, "bact"), ma.B.dim(), V.dim, V.dim, path + ".bact");
  return V;
}

template <class F>
YDModule<F> parse_yd_block(const json& v, const HopfData<F>& B, const std::string& path) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "trivial") return trivial_yd(B);
    if (s == "adjoint") return adjoint_yd(B);
    throw ParseError(path + ": unknown builtin module-comodule \"" + s +
                     "\" (expected \"trivial\" or \"adjoint\")");
  }
  if (!v.is_object()) throw ShapeError(path + ": expected a builtin name or an explicit block");
  check_keys(v, path, {"dim", "basis_names", "act", "coact"});
  YDModule<F> m;
  m.dim = need_index(need(v, path, "dim"), path + ".dim");
  if (m.dim == 0 || m.dim > 64) throw ShapeError(path + ".dim: must be between 1 and 64");
  if (const json* names = opt_field(v, "basis_names")) {
    if (!names->is_array() || names->size() != m.dim)
      throw ShapeError(path + ".basis_names: expected " + std::to_string(m.dim) + " strings");
    for (std::size_t i = 0; i < m.dim; ++i)
      m.basis_names.push_back(
          need_string((*names)[i], path + ".basis_names[" + std::to_string(i) + "]"));
  } else {
    for (std::size_t i = 0; i < m.dim; ++i) m.basis_names.push_back("m" + std::to_string(i));
  }
  m.act = parse_matrix_list<F>(need(v, path, "act"), B.dim(), m.dim, m.dim, path + ".act");
  m.coact = parse_terms<F>(need(v, path, "coact"), m.dim, B.dim(), m.dim, path + ".coact");
  m.check_shapes(B);
  return m;
}

// --------------------------------------------------------------- field spec

struct FieldSpec {
  bool rational = false;
  std::uint64_t p = 32003;

  std::string label() const { return rational ? "rational" : "prime:" + std::to_string(p); }
};

inline FieldSpec parse_field_spec(const json& field) {
  if (field.is_string()) {
    if (field.get<std::string>() == "rational") return FieldSpec{true, 0};
    throw ParseError(
        "field: expected {\"kind\":\"rational\"} or {\"kind\":\"prime\",\"p\":N}");
  }
  if (!field.is_object())
    throw ShapeError("field: expected {\"kind\":\"rational\"} or {\"kind\":\"prime\",\"p\":N}");
  check_keys(field, "field", {"kind", "p"});
  const std::string kind = need_string(need(field, "field", "kind"), "field.kind");
  if (kind == "rational") {
    if (opt_field(field, "p")) throw ShapeError("field.p: not allowed for the rational field");
    return FieldSpec{true, 0};
  }
  if (kind == "prime") {
    FieldSpec fs{false, 32003};
    if (const json* p = opt_field(field, "p"))
      fs.p = static_cast<std::uint64_t>(need_index(*p, "field.p"));
    return fs;
  }
  throw ParseError("field.kind: expected \"rational\" or \"prime\"");
}

/// Document-level field entry; `required` mirrors whether a command-line
/// override is absent.
inline std::optional<FieldSpec> document_field_spec(const json& doc, bool required) {
  const json* f = opt_field(doc, "field");
  if (!f) {
    if (required) throw ShapeError("field: missing required field");
    return std::nullopt;
  }
  return parse_field_spec(*f);
}

/// Command-line override: "rational" or a prime number.
inline FieldSpec parse_field_override(const std::string& s) {
  if (s == "rational") return FieldSpec{true, 0};
  if (!s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isdigit(c) != 0;
      })) {
    if (s.size() > 10) throw ParseError("--field: prime modulus is too large");
    return FieldSpec{false, std::stoull(s)};
  }
  throw ParseError("--field: expected \"rational\" or a prime number");
}

// ------------------------------------------------------------ full document

template <class F>
struct InputDocument {
  ModuleAlgebra<F> ma;
  std::optional<EquivariantBimodule<F>> bimodule;
  std::optional<YDModule<F>> yd;
  std::vector<std::size_t> ranks{1, 2};  ///< free-module ranks for category commands
  std::size_t max_degree = 4;
  std::size_t size_cap = 200000;
  std::string mode = "coinvariant";  ///< "plain" | "obstruction" | "coinvariant"

  /// Declared coefficients, defaulting to the regular bimodule.
  EquivariantBimodule<F> coefficients() const {
    return bimodule ? *bimodule : regular_bimodule(ma);
  }
};

/// Assembles the bialgebra, algebra, and action per the rules in the header
/// comment; named package actions ("sign", "sweedler", "adjoint") supply
/// their own structures and require any declared blocks to name the same
/// builtins.
template <class F>
ModuleAlgebra<F> parse_action(const json& doc) {
  const json* jb = opt_field(doc, "bialgebra");
  const json* ja = opt_field(doc, "algebra");
  const json& jact = need(doc, "", "action");

  auto is_name = [](const json* j, const char* name) {
    return j && j->is_string() && j->get<std::string>() == name;
  };

  if (jact.is_string()) {
    const std::string s = jact.get<std::string>();
    if (s == "sign" || s == "sweedler") {
      const char* expected = (s == "sign") ? "group:Z/2" : "sweedler4";
      if (jb && !is_name(jb, expected))
        throw ShapeError("action: builtin \"" + s + "\" requires bialgebra \"" + expected +
                         "\" (or omit the bialgebra field)");
      if (ja && !is_name(ja, "dual_numbers"))
        throw ShapeError("action: builtin \"" + s +
                         "\" requires algebra \"dual_numbers\" (or omit the algebra field)");
      return (s == "sign") ? sign_action_on_dual_numbers<F>() : sweedler_on_dual_numbers<F>();
    }
    if (s == "adjoint") {
      if (!jb) throw ShapeError("bialgebra: missing required field (the adjoint action needs one)");
      if (ja && !(jb->is_string() && ja->is_string() &&
                  jb->get<std::string>() == ja->get<std::string>()))
        throw ShapeError(
            "action: builtin \"adjoint\" acts on the bialgebra's own underlying algebra; omit "
            "the algebra field or repeat the bialgebra's builtin name");
      return adjoint_action<F>(parse_bialgebra_block<F>(*jb, "bialgebra"));
    }
    if (s == "counit") {
      if (!jb) throw ShapeError("bialgebra: missing required field (the counit action needs one)");
      if (!ja) throw ShapeError("algebra: missing required field (the counit action needs one)");
      return counit_action<F>(parse_bialgebra_block<F>(*jb, "bialgebra"),
                              parse_algebra_block<F>(*ja, "algebra"));
    }
    throw ParseError("action: unknown builtin action \"" + s +
                     "\" (expected \"counit\", \"sign\", \"sweedler\", \"adjoint\", or an array "
                     "of matrices)");
  }

  if (jact.is_array()) {
    if (!jb) throw ShapeError("bialgebra: missing required field (explicit actions need one)");
    if (!ja) throw ShapeError("algebra: missing required field (explicit actions need one)");
    ModuleAlgebra<F> ma;
    ma.B = parse_bialgebra_block<F>(*jb, "bialgebra");
    ma.A = parse_algebra_block<F>(*ja, "algebra");
    ma.rho = parse_matrix_list<F>(jact, ma.B.dim(), ma.A.dim, ma.A.dim, "action");
    return ma;
  }
  throw ShapeError("action: expected a builtin name or an array of matrices");
}

template <class F>
InputDocument<F> parse_document(const json& doc) {
  if (!doc.is_object()) throw ShapeError("document: expected a JSON object");
  check_keys(doc, "",
             {"field", "bialgebra", "algebra", "action", "bimodule", "yd", "category", "options"});

  InputDocument<F> in;
  in.ma = parse_action<F>(doc);

  if (const json* jv = opt_field(doc, "bimodule"))
    in.bimodule = parse_bimodule_block<F>(*jv, in.ma, "bimodule");
  if (const json* jy = opt_field(doc, "yd")) in.yd = parse_yd_block<F>(*jy, in.ma.B, "yd");

  if (const json* jc = opt_field(doc, "category")) {
    if (!jc->is_object()) throw ShapeError("category: expected an object");
    check_keys(*jc, "category", {"ranks"});
    const json& ranks = need(*jc, "category", "ranks");
    if (!ranks.is_array() || ranks.empty())
      throw ShapeError("category.ranks: expected a nonempty array of positive integers");
    in.ranks.clear();
    for (std::size_t i = 0; i < ranks.size(); ++i) {
      const std::size_t r = need_index(ranks[i], "category.ranks[" + std::to_string(i) + "]");
      if (r == 0 || r > 8)
        throw ShapeError("category.ranks[" + std::to_string(i) + "]: must be between 1 and 8");
      in.ranks.push_back(r);
    }
  }

  if (const json* jo = opt_field(doc, "options")) {
    if (!jo->is_object()) throw ShapeError("options: expected an object");
    check_keys(*jo, "options", {"max_degree", "size_cap", "mode"});
    if (const json* m = opt_field(*jo, "max_degree")) {
      in.max_degree = need_index(*m, "options.max_degree");
      if (in.max_degree > 16) throw ShapeError("options.max_degree: must be at most 16");
    }
    if (const json* c = opt_field(*jo, "size_cap")) {
      in.size_cap = need_index(*c, "options.size_cap");
      if (in.size_cap == 0) throw ShapeError("options.size_cap: must be positive");
    }
    if (const json* m = opt_field(*jo, "mode")) {
      in.mode = need_string(*m, "options.mode");
      if (in.mode != "plain" && in.mode != "obstruction" && in.mode != "coinvariant")
        throw ShapeError("options.mode: expected \"plain\", \"obstruction\", or \"coinvariant\"");
    }
  }
  return in;
}

// ----------------------------------------------------------------- emission

/// Scalar in the canonical report form: prime-field values as integers,
/// rationals as canonical strings ("2", "-1/2").
template <class F>
json scalar_to_json(const typename F::Elem& x) {
  if constexpr (F::is_prime_field)
    return json(static_cast<std::uint64_t>(x));
  else
    return json(F::str(x));
}

/// An algebra block in the input schema, so emitted structures can be fed
/// back in as the "algebra" field of another document.
template <class F>
json algebra_to_json(const StructureAlgebra<F>& A) {
  json j;
  j["dim"] = A.dim;
  j["basis_names"] = A.basis_names;
  json unit = json::array();
  for (const auto& u : A.unit) unit.push_back(scalar_to_json<F>(u));
  j["unit"] = unit;
  json mult = json::array();
  for (std::size_t i = 0; i < A.dim; ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < A.dim; ++k) {
      json prod = json::array();
      for (const auto& c : A.mult[i][k]) prod.push_back(scalar_to_json<F>(c));
      row.push_back(prod);
    }
    mult.push_back(row);
  }
  j["mult"] = mult;
  return j;
}

}  // namespace hh::io
