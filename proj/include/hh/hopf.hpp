#pragma once
/// @file hopf.hpp
/// @brief Bialgebras/Hopf algebras by structure constants: validation with
///        witnesses, iterated coproducts, cocommutativity defect, builtins.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hh/algebra.hpp"
#include "hh/subspace.hpp"
#include "hh/tensor.hpp"

namespace hh {

/// One term c * (e_j tensor e_k) of a coproduct.
template <class F>
struct CoprodTerm {
  typename F::Elem c;
  std::size_t j, k;
};

/// A bialgebra (optionally Hopf) on top of a StructureAlgebra. The coproduct
/// is stored sparsely; antipode and inverse antipode are optional matrices
/// acting on coefficient vectors (column i = image of basis i).
template <class F>
struct HopfData {
  using Elem = typename F::Elem;

  StructureAlgebra<F> alg;
  std::vector<std::vector<CoprodTerm<F>>> comult;  // per basis index
  std::vector<Elem> counit;
  std::optional<Matrix<F>> antipode;
  std::optional<Matrix<F>> antipode_inv;

  std::size_t dim() const { return alg.dim; }
  const std::string& name_of(std::size_t i) const { return alg.basis_names[i]; }

  void check_shapes() const {
    alg.check_shapes();
    if (comult.size() != dim()) throw ShapeError("bialgebra: comult has wrong length");
    for (const auto& terms : comult)
      for (const auto& t : terms)
        if (t.j >= dim() || t.k >= dim())
          throw ShapeError("bialgebra: coproduct index out of range");
    if (counit.size() != dim()) throw ShapeError("bialgebra: counit has wrong length");
    for (const auto& m : {antipode, antipode_inv})
      if (m && (m->rows() != dim() || m->cols() != dim()))
        throw ShapeError("bialgebra: antipode matrix has wrong shape");
  }

  /// Dense coproduct of a coefficient vector, as a dim*dim vector (row-major).
  std::vector<Elem> comult_vec(const std::vector<Elem>& x) const {
    std::vector<Elem> out(dim() * dim(), F::zero());
    for (std::size_t i = 0; i < dim(); ++i) {
      if (F::is_zero(x[i])) continue;
      for (const auto& t : comult[i]) {
        auto& slot = out[t.j * dim() + t.k];
        slot = F::add(slot, F::mul(x[i], t.c));
      }
    }
    return out;
  }

  Elem counit_vec(const std::vector<Elem>& x) const {
    Elem e = F::zero();
    for (std::size_t i = 0; i < dim(); ++i)
      if (!F::is_zero(x[i])) e = F::add(e, F::mul(x[i], counit[i]));
    return e;
  }

  std::vector<Elem> apply_antipode(const std::vector<Elem>& x) const {
    if (!antipode) throw AntipodeRequired("antipode required but not supplied");
    return antipode->apply(x);
  }

  std::vector<Elem> apply_antipode_inv(const std::vector<Elem>& x) const {
    if (!antipode_inv) throw AntipodeRequired("inverse antipode required but not supplied");
    return antipode_inv->apply(x);
  }

  bool is_cocommutative() const;

  ValidationReport validate() const;
};

/// One term of an n-fold coproduct: coefficient and an n-tuple of basis indices.
template <class F>
struct CoprodTupleTerm {
  typename F::Elem c;
  std::vector<std::size_t> legs;
};

/// Left-nested iterated coproduct Delta^(n) = (Delta ox id^(n-2)) o ... o Delta
/// applied to basis element i; tuples merged, zero coefficients dropped.
/// n = 1 returns the identity; n = 0 returns the counit evaluated at i (as a
/// single empty-tuple term when nonzero).
template <class F>
std::vector<CoprodTupleTerm<F>> iterated_coproduct(const HopfData<F>& H, std::size_t n,
                                                   std::size_t i) {
  using Elem = typename F::Elem;
  std::map<std::vector<std::size_t>, Elem> acc;
  if (n == 0) {
    if (!F::is_zero(H.counit[i])) acc[{}] = H.counit[i];
  } else {
    acc[{i}] = F::one();
    for (std::size_t step = 1; step < n; ++step) {
      std::map<std::vector<std::size_t>, Elem> next;
      for (const auto& [legs, c] : acc) {
        for (const auto& t : H.comult[legs[0]]) {
          std::vector<std::size_t> nl;
          nl.reserve(legs.size() + 1);
          nl.push_back(t.j);
          nl.push_back(t.k);
          nl.insert(nl.end(), legs.begin() + 1, legs.end());
          auto& slot = next[nl];
          slot = F::add(slot, F::mul(c, t.c));
        }
      }
      acc = std::move(next);
    }
  }
  std::vector<CoprodTupleTerm<F>> out;
  for (auto& [legs, c] : acc)
    if (!F::is_zero(c)) out.push_back({c, legs});
  return out;
}

/// Right-nested variant (expands the last leg); coassociativity makes it agree
/// with the left-nested form, which tests assert for n <= 6.
template <class F>
std::vector<CoprodTupleTerm<F>> iterated_coproduct_right(const HopfData<F>& H, std::size_t n,
                                                         std::size_t i) {
  using Elem = typename F::Elem;
  std::map<std::vector<std::size_t>, Elem> acc;
  if (n == 0) {
    if (!F::is_zero(H.counit[i])) acc[{}] = H.counit[i];
  } else {
    acc[{i}] = F::one();
    for (std::size_t step = 1; step < n; ++step) {
      std::map<std::vector<std::size_t>, Elem> next;
      for (const auto& [legs, c] : acc) {
        for (const auto& t : H.comult[legs.back()]) {
          std::vector<std::size_t> nl(legs.begin(), legs.end() - 1);
          nl.push_back(t.j);
          nl.push_back(t.k);
          auto& slot = next[nl];
          slot = F::add(slot, F::mul(c, t.c));
        }
      }
      acc = std::move(next);
    }
  }
  std::vector<CoprodTupleTerm<F>> out;
  for (auto& [legs, c] : acc)
    if (!F::is_zero(c)) out.push_back({c, legs});
  return out;
}

/// Span of (id - tau) o Delta over the basis; zero iff cocommutative.
template <class F>
SubspaceBasis<F> cocommutativity_defect(const HopfData<F>& H) {
  const std::size_t d = H.dim();
  SubspaceBasis<F> s(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<typename F::Elem> v(d * d, F::zero());
    for (const auto& t : H.comult[i]) {
      v[t.j * d + t.k] = F::add(v[t.j * d + t.k], t.c);
      v[t.k * d + t.j] = F::sub(v[t.k * d + t.j], t.c);
    }
    s.insert(std::move(v));
  }
  return s;
}

template <class F>
bool HopfData<F>::is_cocommutative() const {
  return cocommutativity_defect(*this).dim() == 0;
}

template <class F>
ValidationReport HopfData<F>::validate() const {
  check_shapes();
  ValidationReport rep("bialgebra");
  rep.merge(alg.validate());
  const std::size_t d = dim();

  // Coassociativity on each basis element, as dense vectors in B^(x3).
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<Elem> lhs(d * d * d, F::zero()), rhs(d * d * d, F::zero());
    for (const auto& t : comult[i]) {
      for (const auto& u : comult[t.j]) {  // (Delta ox id)
        auto& slot = lhs[(u.j * d + u.k) * d + t.k];
        slot = F::add(slot, F::mul(t.c, u.c));
      }
      for (const auto& u : comult[t.k]) {  // (id ox Delta)
        auto& slot = rhs[(t.j * d + u.j) * d + u.k];
        slot = F::add(slot, F::mul(t.c, u.c));
      }
    }
    for (std::size_t s = 0; s < lhs.size(); ++s)
      if (!F::eq(lhs[s], rhs[s])) {
        rep.fail("coassociativity fails at basis " + name_of(i));
        break;
      }
  }

  // Counit laws (eps ox id) Delta = id = (id ox eps) Delta.
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<Elem> l(d, F::zero()), r(d, F::zero());
    for (const auto& t : comult[i]) {
      l[t.k] = F::add(l[t.k], F::mul(t.c, counit[t.j]));
      r[t.j] = F::add(r[t.j], F::mul(t.c, counit[t.k]));
    }
    for (std::size_t k = 0; k < d; ++k) {
      const Elem want = (k == i) ? F::one() : F::zero();
      if (!F::eq(l[k], want)) {
        rep.fail("left counit law fails at basis " + name_of(i));
        break;
      }
      if (!F::eq(r[k], want)) {
        rep.fail("right counit law fails at basis " + name_of(i));
        break;
      }
    }
  }

  // Bialgebra compatibility: Delta and eps are algebra maps.
  {
    auto d_unit = comult_vec(alg.unit);
    std::vector<Elem> want(d * d, F::zero());
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b)
        want[a * d + b] = F::mul(alg.unit[a], alg.unit[b]);
    for (std::size_t s = 0; s < want.size(); ++s)
      if (!F::eq(d_unit[s], want[s])) {
        rep.fail("coproduct of the unit is not unit tensor unit");
        break;
      }
    if (!F::eq(counit_vec(alg.unit), F::one())) rep.fail("counit of the unit is not 1");
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      // Delta(e_i e_j)
      auto de = comult_vec(alg.mult[i][j]);
      // Delta(e_i) Delta(e_j) computed termwise
      std::vector<Elem> prod(d * d, F::zero());
      for (const auto& t : comult[i])
        for (const auto& u : comult[j]) {
          const Elem c = F::mul(t.c, u.c);
          const auto& left = alg.mult[t.j][u.j];
          const auto& right = alg.mult[t.k][u.k];
          for (std::size_t a = 0; a < d; ++a) {
            if (F::is_zero(left[a])) continue;
            const Elem ca = F::mul(c, left[a]);
            for (std::size_t b = 0; b < d; ++b)
              if (!F::is_zero(right[b]))
                prod[a * d + b] = F::add(prod[a * d + b], F::mul(ca, right[b]));
          }
        }
      bool bad = false;
      for (std::size_t s = 0; s < prod.size() && !bad; ++s)
        if (!F::eq(de[s], prod[s])) bad = true;
      if (bad)
        rep.fail("coproduct is not multiplicative at (" + name_of(i) + ", " + name_of(j) + ")");
      Elem em = counit_vec(alg.mult[i][j]);
      if (!F::eq(em, F::mul(counit[i], counit[j])))
        rep.fail("counit is not multiplicative at (" + name_of(i) + ", " + name_of(j) + ")");
    }

  // Antipode axiom, both sides: m(S ox id)Delta = eta eps = m(id ox S)Delta.
  if (antipode) {
    for (std::size_t i = 0; i < d; ++i) {
      std::vector<Elem> l(d, F::zero()), r(d, F::zero());
      for (const auto& t : comult[i]) {
        auto sj = apply_antipode(alg.basis_vec(t.j));
        auto lk = alg.mul_vec(sj, alg.basis_vec(t.k));
        auto sk = apply_antipode(alg.basis_vec(t.k));
        auto rk = alg.mul_vec(alg.basis_vec(t.j), sk);
        for (std::size_t s = 0; s < d; ++s) {
          l[s] = F::add(l[s], F::mul(t.c, lk[s]));
          r[s] = F::add(r[s], F::mul(t.c, rk[s]));
        }
      }
      for (std::size_t s = 0; s < d; ++s) {
        const Elem want = F::mul(counit[i], alg.unit[s]);
        if (!F::eq(l[s], want)) {
          rep.fail("antipode axiom (left) fails at basis " + name_of(i));
          break;
        }
        if (!F::eq(r[s], want)) {
          rep.fail("antipode axiom (right) fails at basis " + name_of(i));
          break;
        }
      }
    }
  }

  // Inverse antipode: S o S^{-1} = S^{-1} o S = id.
  if (antipode_inv) {
    if (!antipode) {
      rep.fail("inverse antipode supplied without an antipode");
    } else {
      Matrix<F> id = Matrix<F>::identity(d);
      if (!((*antipode) * (*antipode_inv) == id))
        rep.fail("antipode composed with inverse antipode is not the identity");
      if (!((*antipode_inv) * (*antipode) == id))
        rep.fail("inverse antipode composed with antipode is not the identity");
    }
  }

  return rep;
}

// --------------------------------------------------------------- builtins

/// The ground field as the trivial one-dimensional Hopf algebra.
template <class F>
HopfData<F> trivial_hopf() {
  HopfData<F> h;
  h.alg.dim = 1;
  h.alg.basis_names = {"1"};
  h.alg.unit = {F::one()};
  h.alg.mult = {{{F::one()}}};
  h.comult = {{{F::one(), 0, 0}}};
  h.counit = {F::one()};
  h.antipode = Matrix<F>::identity(1);
  h.antipode_inv = Matrix<F>::identity(1);
  return h;
}

/// Group algebra k[G] from a Cayley table (table[i][j] = index of g_i g_j).
/// The table is validated: closure, two-sided identity, associativity,
/// inverses. Grouplike coproduct, counit 1, antipode g -> g^{-1}.
template <class F>
HopfData<F> group_algebra(const std::vector<std::vector<std::size_t>>& table,
                          std::vector<std::string> names = {}) {
  const std::size_t n = table.size();
  if (n == 0) throw InvalidGroupTable("empty Cayley table");
  for (const auto& row : table) {
    if (row.size() != n) throw InvalidGroupTable("Cayley table is not square");
    for (auto v : row)
      if (v >= n) throw InvalidGroupTable("Cayley table entry out of range");
  }
  // find identity
  std::size_t e = n;
  for (std::size_t i = 0; i < n && e == n; ++i) {
    bool ok = true;
    for (std::size_t j = 0; j < n; ++j)
      if (table[i][j] != j || table[j][i] != j) {
        ok = false;
        break;
      }
    if (ok) e = i;
  }
  if (e == n) throw InvalidGroupTable("Cayley table has no two-sided identity");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (table[table[i][j]][k] != table[i][table[j][k]])
          throw InvalidGroupTable("Cayley table is not associative at (" + std::to_string(i) +
                                  "," + std::to_string(j) + "," + std::to_string(k) + ")");
  std::vector<std::size_t> inverse(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      if (table[i][j] == e && table[j][i] == e) {
        inverse[i] = j;
        break;
      }
    if (inverse[i] == n)
      throw InvalidGroupTable("element " + std::to_string(i) + " has no inverse");
  }

  HopfData<F> h;
  h.alg.dim = n;
  if (names.empty()) {
    for (std::size_t i = 0; i < n; ++i)
      names.push_back(i == e ? "1" : ("g" + std::to_string(i)));
  }
  if (names.size() != n) throw ShapeError("group algebra: wrong number of names");
  h.alg.basis_names = names;
  h.alg.unit.assign(n, F::zero());
  h.alg.unit[e] = F::one();
  h.alg.mult.assign(n, std::vector<std::vector<typename F::Elem>>(
                           n, std::vector<typename F::Elem>(n, F::zero())));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h.alg.mult[i][j][table[i][j]] = F::one();
  h.comult.resize(n);
  for (std::size_t i = 0; i < n; ++i) h.comult[i] = {{F::one(), i, i}};
  h.counit.assign(n, F::one());
  Matrix<F> S(n, n);
  for (std::size_t i = 0; i < n; ++i) S.at(inverse[i], i) = F::one();
  h.antipode = S;
  h.antipode_inv = S;  // S^2 = id for group algebras
  return h;
}

/// Cyclic group Z/n with basis 1, g, ..., g^{n-1}.
template <class F>
HopfData<F> cyclic_group_algebra(std::size_t n) {
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) table[i][j] = (i + j) % n;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i)
    names.push_back(i == 0 ? "1" : (i == 1 ? "g" : "g^" + std::to_string(i)));
  return group_algebra<F>(table, names);
}

/// The 4-dimensional Hopf algebra with basis {1, g, x, gx}, relations
/// g^2 = 1, x^2 = 0, xg = -gx, grouplike g, and Delta(x) = x ox 1 + g ox x.
/// Its antipode has order 4 (S^2 = conjugation by g), so it is the smallest
/// standard example with S^2 != id and a genuinely noncocommutative coproduct.
template <class F>
HopfData<F> sweedler4() {
  using Elem = typename F::Elem;
  HopfData<F> h;
  auto& a = h.alg;
  a.dim = 4;
  a.basis_names = {"1", "g", "x", "gx"};
  a.unit = {F::one(), F::zero(), F::zero(), F::zero()};
  a.mult.assign(4, std::vector<std::vector<Elem>>(4, std::vector<Elem>(4, F::zero())));
  const std::size_t I = 0, G = 1, X = 2, GX = 3;
  auto set = [&](std::size_t i, std::size_t j, std::size_t k, long c) {
    a.mult[i][j][k] = F::from_long(c);
  };
  // unit row/column
  for (std::size_t j = 0; j < 4; ++j) {
    set(I, j, j, 1);
    if (j != I) set(j, I, j, 1);
  }
  set(G, G, I, 1);    // g*g = 1
  set(G, X, GX, 1);   // g*x = gx
  set(G, GX, X, 1);   // g*gx = x
  set(X, G, GX, -1);  // x*g = -gx
  // x*x = 0, x*gx = 0
  set(GX, G, X, -1);  // gx*g = -x
  // gx*x = 0, gx*gx = 0
  h.comult.resize(4);
  h.comult[I] = {{F::one(), I, I}};
  h.comult[G] = {{F::one(), G, G}};
  h.comult[X] = {{F::one(), X, I}, {F::one(), G, X}};
  h.comult[GX] = {{F::one(), GX, G}, {F::one(), I, GX}};
  h.counit = {F::one(), F::one(), F::zero(), F::zero()};
  Matrix<F> S(4, 4), Sinv(4, 4);
  S.at(I, I) = F::one();
  S.at(G, G) = F::one();
  S.at(GX, X) = F::neg(F::one());  // S(x) = -gx
  S.at(X, GX) = F::one();          // S(gx) = x
  Sinv.at(I, I) = F::one();
  Sinv.at(G, G) = F::one();
  Sinv.at(GX, X) = F::one();           // S^{-1}(x) = gx
  Sinv.at(X, GX) = F::neg(F::one());   // S^{-1}(gx) = -x
  h.antipode = S;
  h.antipode_inv = Sinv;
  return h;
}

// ---------------------------------------------------- single-entry mutations

/// All single-entry +1 mutations of a bialgebra's tables (multiplication,
/// densified coproduct, counit, antipode, inverse antipode), each labeled.
/// Used to assert that every mutation breaks at least one axiom.
template <class F>
std::vector<std::pair<std::string, HopfData<F>>> single_entry_mutations(const HopfData<F>& h) {
  std::vector<std::pair<std::string, HopfData<F>>> out;
  const std::size_t d = h.dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        HopfData<F> m = h;
        m.alg.mult[i][j][k] = F::add(m.alg.mult[i][j][k], F::one());
        out.emplace_back("mult[" + std::to_string(i) + "][" + std::to_string(j) + "][" +
                             std::to_string(k) + "]",
                         std::move(m));
      }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        HopfData<F> m = h;
        // densify, bump, re-sparsify
        std::vector<typename F::Elem> dense(d * d, F::zero());
        for (const auto& t : m.comult[i]) dense[t.j * d + t.k] = F::add(dense[t.j * d + t.k], t.c);
        dense[j * d + k] = F::add(dense[j * d + k], F::one());
        m.comult[i].clear();
        for (std::size_t a = 0; a < d; ++a)
          for (std::size_t b = 0; b < d; ++b)
            if (!F::is_zero(dense[a * d + b])) m.comult[i].push_back({dense[a * d + b], a, b});
        out.emplace_back("comult[" + std::to_string(i) + "](" + std::to_string(j) + "," +
                             std::to_string(k) + ")",
                         std::move(m));
      }
  for (std::size_t i = 0; i < d; ++i) {
    HopfData<F> m = h;
    m.counit[i] = F::add(m.counit[i], F::one());
    out.emplace_back("counit[" + std::to_string(i) + "]", std::move(m));
  }
  if (h.antipode)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        HopfData<F> m = h;
        m.antipode->at(i, j) = F::add(m.antipode->at(i, j), F::one());
        out.emplace_back("antipode(" + std::to_string(i) + "," + std::to_string(j) + ")",
                         std::move(m));
      }
  if (h.antipode_inv)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        HopfData<F> m = h;
        m.antipode_inv->at(i, j) = F::add(m.antipode_inv->at(i, j), F::one());
        out.emplace_back("antipode_inv(" + std::to_string(i) + "," + std::to_string(j) + ")",
                         std::move(m));
      }
  return out;
}

}  // namespace hh
