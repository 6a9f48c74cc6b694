#pragma once
/// @file module_algebra.hpp
/// @brief Module algebras over a bialgebra, equivariant bimodule coefficients,
///        and the associated crossed-product (enveloping) algebra.

#include <string>
#include <vector>

#include "hh/hopf.hpp"
#include "hh/matrix.hpp"
#include "hh/subspace.hpp"

namespace hh {

/// An algebra A together with an action of a bialgebra B making it a module
/// algebra: each rho[i] is the matrix of the B-basis element i acting on A
/// (column j = image of the j-th A-basis element).
template <class F>
struct ModuleAlgebra {
  using Elem = typename F::Elem;

  HopfData<F> B;
  StructureAlgebra<F> A;
  std::vector<Matrix<F>> rho;

  void check_shapes() const {
    B.check_shapes();
    A.check_shapes();
    if (rho.size() != B.dim()) throw ShapeError("module algebra: one action matrix per B basis");
    for (const auto& m : rho)
      if (m.rows() != A.dim || m.cols() != A.dim)
        throw ShapeError("module algebra: action matrix has wrong shape");
  }

  /// Matrix of a general element of B acting on A.
  Matrix<F> action_matrix(const std::vector<Elem>& b) const {
    Matrix<F> m(A.dim, A.dim);
    for (std::size_t i = 0; i < B.dim(); ++i)
      if (!F::is_zero(b[i])) m = m + rho[i].scaled(b[i]);
    return m;
  }

  std::vector<Elem> act(std::size_t b_index, const std::vector<Elem>& a) const {
    return rho[b_index].apply(a);
  }

  ValidationReport validate() const {
    check_shapes();
    ValidationReport rep("module algebra");
    rep.merge(B.validate());
    const std::size_t db = B.dim(), da = A.dim;

    // rho is a representation of the algebra B.
    if (!(action_matrix(B.alg.unit) == Matrix<F>::identity(da)))
      rep.fail("unit of the acting bialgebra does not act as the identity");
    for (std::size_t i = 0; i < db; ++i)
      for (std::size_t j = 0; j < db; ++j)
        if (!(action_matrix(B.alg.mult[i][j]) == rho[i] * rho[j]))
          rep.fail("action is not multiplicative at (" + B.name_of(i) + ", " + B.name_of(j) +
                   ")");

    // Module-algebra compatibility: b(aa') = sum b_(1)(a) b_(2)(a').
    for (std::size_t i = 0; i < db; ++i) {
      for (std::size_t p = 0; p < da; ++p)
        for (std::size_t q = 0; q < da; ++q) {
          auto lhs = rho[i].apply(A.mult[p][q]);
          std::vector<Elem> rhs(da, F::zero());
          for (const auto& t : B.comult[i]) {
            auto u = rho[t.j].apply(A.basis_vec(p));
            auto v = rho[t.k].apply(A.basis_vec(q));
            auto w = A.mul_vec(u, v);
            for (std::size_t s = 0; s < da; ++s) rhs[s] = F::add(rhs[s], F::mul(t.c, w[s]));
          }
          bool bad = false;
          for (std::size_t s = 0; s < da && !bad; ++s)
            if (!F::eq(lhs[s], rhs[s])) bad = true;
          if (bad)
            rep.fail("product rule fails for " + B.name_of(i) + " on (" + A.basis_names[p] +
                     ", " + A.basis_names[q] + ")");
        }
      // b(1_A) = eps(b) 1_A
      auto u1 = rho[i].apply(A.unit);
      for (std::size_t s = 0; s < da; ++s)
        if (!F::eq(u1[s], F::mul(B.counit[i], A.unit[s]))) {
          rep.fail("unit rule fails for " + B.name_of(i));
          break;
        }
    }
    return rep;
  }
};

/// An A-bimodule V with a compatible B-action. All three actions are stored
/// as per-basis matrices on V; `right[i]` is the matrix of v -> v * e_i.
template <class F>
struct EquivariantBimodule {
  using Elem = typename F::Elem;

  std::size_t dim = 0;
  std::vector<std::string> basis_names;
  std::vector<Matrix<F>> left;   // one per A basis
  std::vector<Matrix<F>> right;  // one per A basis
  std::vector<Matrix<F>> bact;   // one per B basis

  void check_shapes(const ModuleAlgebra<F>& ma) const {
    if (basis_names.size() != dim) throw ShapeError("bimodule: one name per basis element");
    if (left.size() != ma.A.dim || right.size() != ma.A.dim)
      throw ShapeError("bimodule: one left and one right action matrix per A basis");
    if (bact.size() != ma.B.dim()) throw ShapeError("bimodule: one action matrix per B basis");
    for (const auto* fam : {&left, &right, &bact})
      for (const auto& m : *fam)
        if (m.rows() != dim || m.cols() != dim)
          throw ShapeError("bimodule: action matrix has wrong shape");
  }

  Matrix<F> left_matrix(const std::vector<Elem>& a) const {
    Matrix<F> m(dim, dim);
    for (std::size_t i = 0; i < left.size(); ++i)
      if (!F::is_zero(a[i])) m = m + left[i].scaled(a[i]);
    return m;
  }
  Matrix<F> right_matrix(const std::vector<Elem>& a) const {
    Matrix<F> m(dim, dim);
    for (std::size_t i = 0; i < right.size(); ++i)
      if (!F::is_zero(a[i])) m = m + right[i].scaled(a[i]);
    return m;
  }
  Matrix<F> b_matrix(const std::vector<Elem>& b) const {
    Matrix<F> m(dim, dim);
    for (std::size_t i = 0; i < bact.size(); ++i)
      if (!F::is_zero(b[i])) m = m + bact[i].scaled(b[i]);
    return m;
  }

  ValidationReport validate(const ModuleAlgebra<F>& ma) const {
    check_shapes(ma);
    ValidationReport rep("bimodule");
    const std::size_t da = ma.A.dim, db = ma.B.dim();
    const Matrix<F> id = Matrix<F>::identity(dim);

    if (!(left_matrix(ma.A.unit) == id)) rep.fail("unit does not act as identity on the left");
    if (!(right_matrix(ma.A.unit) == id)) rep.fail("unit does not act as identity on the right");
    if (!(b_matrix(ma.B.alg.unit) == id))
      rep.fail("unit of the acting bialgebra does not act as identity");

    for (std::size_t i = 0; i < da; ++i)
      for (std::size_t j = 0; j < da; ++j) {
        if (!(left_matrix(ma.A.mult[i][j]) == left[i] * left[j]))
          rep.fail("left action is not multiplicative at (" + ma.A.basis_names[i] + ", " +
                   ma.A.basis_names[j] + ")");
        if (!(right_matrix(ma.A.mult[i][j]) == right[j] * right[i]))
          rep.fail("right action is not anti-multiplicative at (" + ma.A.basis_names[i] + ", " +
                   ma.A.basis_names[j] + ")");
        if (!(left[i] * right[j] == right[j] * left[i]))
          rep.fail("left and right actions do not commute at (" + ma.A.basis_names[i] + ", " +
                   ma.A.basis_names[j] + ")");
      }

    for (std::size_t i = 0; i < db; ++i)
      for (std::size_t j = 0; j < db; ++j)
        if (!(b_matrix(ma.B.alg.mult[i][j]) == bact[i] * bact[j]))
          rep.fail("bialgebra action is not multiplicative at (" + ma.B.name_of(i) + ", " +
                   ma.B.name_of(j) + ")");

    // Equivariance of both structure maps, with B acting diagonally.
    for (std::size_t b = 0; b < db; ++b)
      for (std::size_t a = 0; a < da; ++a) {
        Matrix<F> lhsL = bact[b] * left[a];
        Matrix<F> rhsL(dim, dim);
        for (const auto& t : ma.B.comult[b])
          rhsL = rhsL + (left_matrix(ma.rho[t.j].apply(ma.A.basis_vec(a))) * bact[t.k]).scaled(t.c);
        if (!(lhsL == rhsL))
          rep.fail("left structure map is not equivariant for " + ma.B.name_of(b) + " on " +
                   ma.A.basis_names[a]);

        Matrix<F> lhsR = bact[b] * right[a];
        Matrix<F> rhsR(dim, dim);
        for (const auto& t : ma.B.comult[b])
          rhsR =
              rhsR + (right_matrix(ma.rho[t.k].apply(ma.A.basis_vec(a))) * bact[t.j]).scaled(t.c);
        if (!(lhsR == rhsR))
          rep.fail("right structure map is not equivariant for " + ma.B.name_of(b) + " on " +
                   ma.A.basis_names[a]);
      }
    return rep;
  }
};

// -------------------------------------------------------------- bimodules

/// The algebra itself, with left/right multiplication and the defining action.
template <class F>
EquivariantBimodule<F> regular_bimodule(const ModuleAlgebra<F>& ma) {
  EquivariantBimodule<F> v;
  v.dim = ma.A.dim;
  v.basis_names = ma.A.basis_names;
  for (std::size_t i = 0; i < ma.A.dim; ++i) {
    v.left.push_back(ma.A.left_mult_matrix(ma.A.basis_vec(i)));
    v.right.push_back(ma.A.right_mult_matrix(ma.A.basis_vec(i)));
  }
  v.bact = ma.rho;
  return v;
}

/// One-dimensional coefficients along an algebra map aug : A -> k, with B
/// acting through its counit. Only valid when aug intertwines the B-action
/// with the counit; validate() reports this faithfully.
template <class F>
EquivariantBimodule<F> augmentation_bimodule(const ModuleAlgebra<F>& ma,
                                             const std::vector<typename F::Elem>& aug) {
  if (aug.size() != ma.A.dim) throw ShapeError("augmentation has wrong length");
  EquivariantBimodule<F> v;
  v.dim = 1;
  v.basis_names = {"1"};
  for (std::size_t i = 0; i < ma.A.dim; ++i) {
    Matrix<F> m(1, 1);
    m.at(0, 0) = aug[i];
    v.left.push_back(m);
    v.right.push_back(m);
  }
  for (std::size_t i = 0; i < ma.B.dim(); ++i) {
    Matrix<F> m(1, 1);
    m.at(0, 0) = ma.B.counit[i];
    v.bact.push_back(m);
  }
  return v;
}

// ------------------------------------------------------- builtin actions

/// B acts through its counit: b(a) = eps(b) a. A module-algebra action for
/// any B and any A.
template <class F>
ModuleAlgebra<F> counit_action(HopfData<F> B, StructureAlgebra<F> A) {
  ModuleAlgebra<F> ma;
  ma.rho.reserve(B.dim());
  for (std::size_t i = 0; i < B.dim(); ++i)
    ma.rho.push_back(Matrix<F>::identity(A.dim).scaled(B.counit[i]));
  ma.B = std::move(B);
  ma.A = std::move(A);
  return ma;
}

/// The order-two group acting on k[y]/(y^2) by y -> -y.
template <class F>
ModuleAlgebra<F> sign_action_on_dual_numbers() {
  ModuleAlgebra<F> ma;
  ma.B = cyclic_group_algebra<F>(2);
  ma.A = dual_numbers_algebra<F>();
  Matrix<F> s = Matrix<F>::identity(2);
  s.at(1, 1) = F::neg(F::one());
  ma.rho = {Matrix<F>::identity(2), s};
  return ma;
}

/// The four-dimensional Hopf algebra acting on k[y]/(y^2): the grouplike
/// generator acts by the sign involution and the skew generator by the
/// y-derivative evaluated against the sign twist.
template <class F>
ModuleAlgebra<F> sweedler_on_dual_numbers() {
  ModuleAlgebra<F> ma;
  ma.B = sweedler4<F>();
  ma.A = dual_numbers_algebra<F>();
  Matrix<F> g = Matrix<F>::identity(2);
  g.at(1, 1) = F::neg(F::one());
  Matrix<F> x(2, 2);
  x.at(0, 1) = F::one();  // x(y) = 1, x(1) = 0
  ma.rho = {Matrix<F>::identity(2), g, x, g * x};
  return ma;
}

/// A Hopf algebra acting on itself by the adjoint action b(a) = b_(1) a S(b_(2)).
template <class F>
ModuleAlgebra<F> adjoint_action(const HopfData<F>& B) {
  if (!B.antipode) throw AntipodeRequired("adjoint action requires an antipode");
  ModuleAlgebra<F> ma;
  ma.B = B;
  ma.A = B.alg;
  const std::size_t d = B.dim();
  for (std::size_t i = 0; i < d; ++i) {
    Matrix<F> m(d, d);
    for (const auto& t : B.comult[i]) {
      auto s = B.apply_antipode(B.alg.basis_vec(t.k));
      m = m + (B.alg.left_mult_matrix(B.alg.basis_vec(t.j)) * B.alg.right_mult_matrix(s))
                  .scaled(t.c);
    }
    ma.rho.push_back(std::move(m));
  }
  return ma;
}

// ------------------------------------------------------ crossed product

/// Index of the basis element (a, a', b) in the crossed product, with the
/// B index fastest.
inline std::size_t crossed_index(std::size_t ia, std::size_t iap, std::size_t ib, std::size_t da,
                                 std::size_t db) {
  return (ia * da + iap) * db + ib;
}

/// The crossed product A # A^op # B governing one-sided module structures on
/// bimodules with a compatible B-action: (a1, a1', b1)(a2, a2', b2) =
/// (a1 b1_(1)(a2), b1_(3)(a2') a1', b1_(2) b2).
template <class F>
StructureAlgebra<F> crossed_product(const ModuleAlgebra<F>& ma) {
  using Elem = typename F::Elem;
  const std::size_t da = ma.A.dim, db = ma.B.dim();
  const std::size_t dim = da * da * db;
  StructureAlgebra<F> e;
  e.dim = dim;
  for (std::size_t ia = 0; ia < da; ++ia)
    for (std::size_t iap = 0; iap < da; ++iap)
      for (std::size_t ib = 0; ib < db; ++ib)
        e.basis_names.push_back("(" + ma.A.basis_names[ia] + "|" + ma.A.basis_names[iap] + "|" +
                                ma.B.name_of(ib) + ")");
  // unit = 1_A ox 1_A ox 1_B (expanded trilinearly)
  e.unit.assign(dim, F::zero());
  for (std::size_t ia = 0; ia < da; ++ia)
    for (std::size_t iap = 0; iap < da; ++iap) {
      const Elem c = F::mul(ma.A.unit[ia], ma.A.unit[iap]);
      if (F::is_zero(c)) continue;
      for (std::size_t ib = 0; ib < db; ++ib)
        if (!F::is_zero(ma.B.alg.unit[ib]))
          e.unit[crossed_index(ia, iap, ib, da, db)] = F::mul(c, ma.B.alg.unit[ib]);
    }

  // three-fold coproducts of the B basis, precomputed
  std::vector<std::vector<CoprodTupleTerm<F>>> delta3;
  delta3.reserve(db);
  for (std::size_t b = 0; b < db; ++b) delta3.push_back(iterated_coproduct(ma.B, 3, b));

  e.mult.assign(dim, std::vector<std::vector<Elem>>(dim, std::vector<Elem>(dim, F::zero())));
  for (std::size_t i1 = 0; i1 < da; ++i1)
    for (std::size_t i1p = 0; i1p < da; ++i1p)
      for (std::size_t b1 = 0; b1 < db; ++b1) {
        const std::size_t row = crossed_index(i1, i1p, b1, da, db);
        for (std::size_t i2 = 0; i2 < da; ++i2)
          for (std::size_t i2p = 0; i2p < da; ++i2p)
            for (std::size_t b2 = 0; b2 < db; ++b2) {
              const std::size_t col = crossed_index(i2, i2p, b2, da, db);
              auto& out = e.mult[row][col];
              for (const auto& t : delta3[b1]) {
                auto first = ma.A.mul_vec(ma.A.basis_vec(i1), ma.rho[t.legs[0]].apply(
                                                                  ma.A.basis_vec(i2)));
                auto second = ma.A.mul_vec(ma.rho[t.legs[2]].apply(ma.A.basis_vec(i2p)),
                                           ma.A.basis_vec(i1p));
                const auto& third = ma.B.alg.mult[t.legs[1]][b2];
                for (std::size_t x = 0; x < da; ++x) {
                  if (F::is_zero(first[x])) continue;
                  const Elem cx = F::mul(t.c, first[x]);
                  for (std::size_t y = 0; y < da; ++y) {
                    if (F::is_zero(second[y])) continue;
                    const Elem cxy = F::mul(cx, second[y]);
                    for (std::size_t z = 0; z < db; ++z)
                      if (!F::is_zero(third[z])) {
                        auto& slot = out[crossed_index(x, y, z, da, db)];
                        slot = F::add(slot, F::mul(cxy, third[z]));
                      }
                  }
                }
              }
            }
      }
  return e;
}

/// Action of a crossed-product basis element (a, a', b) on a bimodule:
/// v -> a (b(v)) a'.
template <class F>
std::vector<typename F::Elem> crossed_act(const ModuleAlgebra<F>& ma,
                                          const EquivariantBimodule<F>& V, std::size_t e_index,
                                          const std::vector<typename F::Elem>& v) {
  const std::size_t da = ma.A.dim, db = ma.B.dim();
  const std::size_t ib = e_index % db;
  const std::size_t iap = (e_index / db) % da;
  const std::size_t ia = e_index / (db * da);
  auto w = V.bact[ib].apply(v);
  w = V.right[iap].apply(w);
  return V.left[ia].apply(w);
}

/// Right action of (a, a', b) on a bimodule: v -> S(b)(a' v a).
/// Requires an antipode on B.
template <class F>
std::vector<typename F::Elem> crossed_act_right(const ModuleAlgebra<F>& ma,
                                                const EquivariantBimodule<F>& V,
                                                const std::vector<typename F::Elem>& v,
                                                std::size_t e_index) {
  const std::size_t da = ma.A.dim, db = ma.B.dim();
  const std::size_t ib = e_index % db;
  const std::size_t iap = (e_index / db) % da;
  const std::size_t ia = e_index / (db * da);
  auto w = V.left[iap].apply(v);
  w = V.right[ia].apply(w);
  if (!ma.B.antipode) throw AntipodeRequired("right crossed action requires an antipode");
  auto sb = ma.B.antipode->apply(ma.B.alg.basis_vec(ib));
  return V.b_matrix(sb).apply(w);
}

/// Checks the right-module axiom (v.e1).e2 = v.(e1 e2) for the right action
/// against the crossed product's multiplication. The axiom holds whenever the
/// square of the antipode acts trivially through the action (group algebras,
/// cocommutative B); for a genuinely non-involutive antipode it fails, and the
/// report says so with witnesses. The bilinear map itself is still exactly
/// what the quotient construction in the homology pipeline consumes.
template <class F>
ValidationReport right_action_axiom_report(const ModuleAlgebra<F>& ma,
                                           const EquivariantBimodule<F>& V,
                                           const StructureAlgebra<F>& E) {
  using Elem = typename F::Elem;
  ValidationReport rep("right action");
  for (std::size_t e1 = 0; e1 < E.dim; ++e1)
    for (std::size_t e2 = 0; e2 < E.dim; ++e2)
      for (std::size_t k = 0; k < V.dim; ++k) {
        std::vector<Elem> v(V.dim, F::zero());
        v[k] = F::one();
        auto lhs = crossed_act_right(ma, V, crossed_act_right(ma, V, v, e1), e2);
        std::vector<Elem> rhs(V.dim, F::zero());
        for (std::size_t s = 0; s < E.dim; ++s) {
          if (F::is_zero(E.mult[e1][e2][s])) continue;
          auto w = crossed_act_right(ma, V, v, s);
          for (std::size_t t = 0; t < V.dim; ++t)
            rhs[t] = F::add(rhs[t], F::mul(E.mult[e1][e2][s], w[t]));
        }
        for (std::size_t t = 0; t < V.dim; ++t)
          if (!F::eq(lhs[t], rhs[t])) {
            rep.fail("right-module axiom fails at (" + E.basis_names[e1] + ", " +
                     E.basis_names[e2] + ") on " + V.basis_names[k]);
            break;
          }
      }
  return rep;
}

/// Action of a crossed-product basis element on A ox A (two-sided coefficients
/// in tensor degree zero): (a, a', b) sends a0 ox a1 to a b_(1)(a0) ox b_(2)(a1) a'.
template <class F>
std::vector<typename F::Elem> crossed_act_pair(const ModuleAlgebra<F>& ma, std::size_t e_index,
                                               const std::vector<typename F::Elem>& w) {
  using Elem = typename F::Elem;
  const std::size_t da = ma.A.dim, db = ma.B.dim();
  const std::size_t ib = e_index % db;
  const std::size_t iap = (e_index / db) % da;
  const std::size_t ia = e_index / (db * da);
  std::vector<Elem> out(da * da, F::zero());
  for (std::size_t p = 0; p < da; ++p)
    for (std::size_t q = 0; q < da; ++q) {
      if (F::is_zero(w[p * da + q])) continue;
      const Elem c = w[p * da + q];
      for (const auto& t : ma.B.comult[ib]) {
        auto u = ma.A.mul_vec(ma.A.basis_vec(ia), ma.rho[t.j].apply(ma.A.basis_vec(p)));
        auto z = ma.A.mul_vec(ma.rho[t.k].apply(ma.A.basis_vec(q)), ma.A.basis_vec(iap));
        const Elem ct = F::mul(c, t.c);
        for (std::size_t x = 0; x < da; ++x) {
          if (F::is_zero(u[x])) continue;
          const Elem cx = F::mul(ct, u[x]);
          for (std::size_t y = 0; y < da; ++y)
            if (!F::is_zero(z[y])) out[x * da + y] = F::add(out[x * da + y], F::mul(cx, z[y]));
        }
      }
    }
  return out;
}

/// Kernel of the multiplication map A ox A -> A, as a canonical subspace of
/// the da^2-dimensional pair space.
template <class F>
SubspaceBasis<F> multiplication_kernel(const StructureAlgebra<F>& A) {
  Matrix<F> mu(A.dim, A.dim * A.dim);
  for (std::size_t i = 0; i < A.dim; ++i)
    for (std::size_t j = 0; j < A.dim; ++j)
      for (std::size_t k = 0; k < A.dim; ++k) mu.at(k, i * A.dim + j) = A.mult[i][j][k];
  return kernel_basis(mu);
}

}  // namespace hh
