#pragma once
/// @file category.hpp
/// @brief Finite k-linear categories carrying a Hopf-algebra action on their
///        morphism spaces, coefficient bifunctors, the associated
///        presimplicial complex with its diagonal action, invariant
///        subcategories, and transfer oracles that compare the quotient
///        homology of a subcategory's complex with the ambient one.
///
/// Conventions used throughout:
///  - hom(x, y) holds morphisms FROM x TO y; composition compose(x,y,z)(g, f)
///    is "g after f" for g : y -> z and f : x -> y.
///  - A chain word at level n is (h, u_1, ..., u_n) with coefficient h in
///    val(X_0, X_n) and legs u_j : X_j -> X_{j-1}; the coefficient is the
///    slowest-varying tensor slot.
///  - Faces: the first face pushes u_1 into h through the contravariant
///    structure map, interior face j composes u_j after u_{j+1}, and the last
///    face pushes u_n into h through the covariant structure map.
///  - Diagonal action: coproduct leg 1 acts on the coefficient, leg j+1 on
///    u_j.  Structure maps distribute over the action with the OUTER factor
///    taking the first coproduct leg, exactly like composition itself; with
///    that rule every face except the last commutes with the action.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hh/complex.hpp"
#include "hh/errors.hpp"
#include "hh/hochschild.hpp"
#include "hh/hopf.hpp"
#include "hh/matrix.hpp"
#include "hh/module_algebra.hpp"
#include "hh/sparse.hpp"
#include "hh/subspace.hpp"
#include "hh/tensor.hpp"
#include "hh/validation.hpp"

namespace hh {

// ---------------------------------------------------------------------------
// Finite k-linear categories
// ---------------------------------------------------------------------------

template <class F>
struct FiniteLinearCategory {
  using Elem = typename F::Elem;
  /// table[g][f] = coordinates of the composite of basis morphisms.
  using PairTable = std::vector<std::vector<SparseVec<F>>>;

  std::vector<std::string> object_names;
  std::vector<std::vector<std::size_t>> hom_dims;                 // [src][dst]
  std::vector<std::vector<std::vector<std::string>>> hom_names;   // [src][dst]
  /// compose[x][y][z][g][f] = (g : y->z) after (f : x->y), in hom(x,z).
  std::vector<std::vector<std::vector<PairTable>>> compose;
  std::vector<std::vector<Elem>> identity;                        // in hom(x,x)

  std::size_t objects() const { return object_names.size(); }

  const SparseVec<F>& compose_basis(std::size_t x, std::size_t y, std::size_t z,
                                    std::size_t g, std::size_t f) const {
    return compose[x][y][z][g][f];
  }

  SparseVec<F> compose_vec(std::size_t x, std::size_t y, std::size_t z,
                           const SparseVec<F>& g, const SparseVec<F>& f) const {
    SparseBuilder<F> b;
    for (const auto& [gi, gc] : g)
      for (const auto& [fi, fc] : f) {
        const Elem c = F::mul(gc, fc);
        for (const auto& [k, w] : compose[x][y][z][gi][fi]) b.add(k, F::mul(c, w));
      }
    return b.finish();
  }

  void check_shapes() const {
    const std::size_t m = objects();
    if (hom_dims.size() != m) throw ShapeError("category: hom_dims row count");
    for (const auto& row : hom_dims)
      if (row.size() != m) throw ShapeError("category: hom_dims column count");
    if (!hom_names.empty()) {
      if (hom_names.size() != m) throw ShapeError("category: hom_names row count");
      for (std::size_t x = 0; x < m; ++x) {
        if (hom_names[x].size() != m) throw ShapeError("category: hom_names column count");
        for (std::size_t y = 0; y < m; ++y)
          if (hom_names[x][y].size() != hom_dims[x][y])
            throw ShapeError("category: hom_names entry count");
      }
    }
    if (compose.size() != m) throw ShapeError("category: compose table rank");
    for (std::size_t x = 0; x < m; ++x) {
      if (compose[x].size() != m) throw ShapeError("category: compose table rank");
      for (std::size_t y = 0; y < m; ++y) {
        if (compose[x][y].size() != m) throw ShapeError("category: compose table rank");
        for (std::size_t z = 0; z < m; ++z) {
          const auto& tab = compose[x][y][z];
          if (tab.size() != hom_dims[y][z]) throw ShapeError("category: compose outer arity");
          for (const auto& row : tab) {
            if (row.size() != hom_dims[x][y]) throw ShapeError("category: compose inner arity");
            for (const auto& v : row)
              for (const auto& [k, c] : v) {
                (void)c;
                if (k >= hom_dims[x][z]) throw ShapeError("category: composite out of range");
              }
          }
        }
      }
    }
    if (identity.size() != m) throw ShapeError("category: one identity per object");
    for (std::size_t x = 0; x < m; ++x)
      if (identity[x].size() != hom_dims[x][x])
        throw ShapeError("category: identity coordinate length");
  }
};

namespace detail {

template <class F>
SparseVec<F> unit_sparse(std::size_t k) {
  return SparseVec<F>{{k, F::one()}};
}

inline std::string morphism_label(std::size_t x, std::size_t y, std::size_t i) {
  return "hom(" + std::to_string(x) + "->" + std::to_string(y) + ")[" + std::to_string(i) + "]";
}

}  // namespace detail

/// Associativity and identity neutrality on every basis triple.
template <class F>
ValidationReport validate_category(const FiniteLinearCategory<F>& cat) {
  ValidationReport rep("linear category");
  cat.check_shapes();
  const std::size_t m = cat.objects();

  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y)
      for (std::size_t f = 0; f < cat.hom_dims[x][y]; ++f) {
        const auto ef = detail::unit_sparse<F>(f);
        const auto idx = dense_to_sparse<F>(cat.identity[x]);
        const auto idy = dense_to_sparse<F>(cat.identity[y]);
        if (!sparse_eq<F>(cat.compose_vec(x, x, y, ef, idx), ef))
          rep.fail("precomposing the identity moved " + detail::morphism_label(x, y, f));
        if (!sparse_eq<F>(cat.compose_vec(x, y, y, idy, ef), ef))
          rep.fail("postcomposing the identity moved " + detail::morphism_label(x, y, f));
      }

  for (std::size_t w = 0; w < m; ++w)
    for (std::size_t x = 0; x < m; ++x)
      for (std::size_t y = 0; y < m; ++y)
        for (std::size_t z = 0; z < m; ++z)
          for (std::size_t h = 0; h < cat.hom_dims[y][z]; ++h)
            for (std::size_t g = 0; g < cat.hom_dims[x][y]; ++g)
              for (std::size_t f = 0; f < cat.hom_dims[w][x]; ++f) {
                const auto gf = cat.compose_basis(w, x, y, g, f);
                const auto hg = cat.compose_basis(x, y, z, h, g);
                const auto lhs = cat.compose_vec(w, y, z, detail::unit_sparse<F>(h), gf);
                const auto rhs = cat.compose_vec(w, x, z, hg, detail::unit_sparse<F>(f));
                if (!sparse_eq<F>(lhs, rhs))
                  rep.fail("associativity fails on " + detail::morphism_label(y, z, h) + " o " +
                           detail::morphism_label(x, y, g) + " o " +
                           detail::morphism_label(w, x, f));
              }
  return rep;
}

// ---------------------------------------------------------------------------
// Hopf-algebra action on morphism spaces
// ---------------------------------------------------------------------------

template <class F>
struct CategoryAction {
  HopfData<F> B;
  /// act[x][y][b] : matrix of the action of the b-th basis element on hom(x,y).
  std::vector<std::vector<std::vector<Matrix<F>>>> act;

  SparseVec<F> act_vec(std::size_t x, std::size_t y, std::size_t b,
                       const SparseVec<F>& v) const {
    SparseBuilder<F> out;
    const Matrix<F>& mtx = act[x][y][b];
    for (const auto& [i, c] : v)
      for (std::size_t r = 0; r < mtx.rows(); ++r) out.add(r, F::mul(c, mtx.at(r, i)));
    return out.finish();
  }

  void check_shapes(const FiniteLinearCategory<F>& cat) const {
    const std::size_t m = cat.objects();
    if (act.size() != m) throw ShapeError("category action: object arity");
    for (std::size_t x = 0; x < m; ++x) {
      if (act[x].size() != m) throw ShapeError("category action: object arity");
      for (std::size_t y = 0; y < m; ++y) {
        if (act[x][y].size() != B.dim())
          throw ShapeError("category action: one matrix per Hopf basis element");
        for (const auto& mtx : act[x][y])
          if (mtx.rows() != cat.hom_dims[x][y] || mtx.cols() != cat.hom_dims[x][y])
            throw ShapeError("category action: matrix shape");
      }
    }
  }
};

/// Module axioms per hom space, counit scaling on identities, and the
/// coproduct rule b(g o f) = b_(1)(g) o b_(2)(f).
template <class F>
ValidationReport validate_category_action(const FiniteLinearCategory<F>& cat,
                                          const CategoryAction<F>& action) {
  using Elem = typename F::Elem;
  ValidationReport rep("category action");
  action.check_shapes(cat);
  const std::size_t m = cat.objects();
  const std::size_t db = action.B.dim();

  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y) {
      const std::size_t d = cat.hom_dims[x][y];
      if (d == 0) continue;
      Matrix<F> unit_act(d, d);
      for (std::size_t b = 0; b < db; ++b)
        if (!F::is_zero(action.B.alg.unit[b]))
          unit_act = unit_act + action.act[x][y][b].scaled(action.B.alg.unit[b]);
      if (!(unit_act == Matrix<F>::identity(d)))
        rep.fail("unit does not act as the identity on hom(" + std::to_string(x) + "->" +
                 std::to_string(y) + ")");

      for (std::size_t b = 0; b < db; ++b)
        for (std::size_t b2 = 0; b2 < db; ++b2) {
          Matrix<F> lhs = action.act[x][y][b] * action.act[x][y][b2];
          Matrix<F> rhs(d, d);
          for (std::size_t c = 0; c < db; ++c) {
            const Elem coeff = action.B.alg.mult[b][b2][c];
            if (F::is_zero(coeff)) continue;
            rhs = rhs + action.act[x][y][c].scaled(coeff);
          }
          if (!(lhs == rhs))
            rep.fail("action not multiplicative on hom(" + std::to_string(x) + "->" +
                     std::to_string(y) + ") for basis pair (" + std::to_string(b) + "," +
                     std::to_string(b2) + ")");
        }
    }

  for (std::size_t x = 0; x < m; ++x) {
    const auto idx = dense_to_sparse<F>(cat.identity[x]);
    for (std::size_t b = 0; b < db; ++b) {
      SparseBuilder<F> want;
      for (const auto& [i, c] : idx) want.add(i, F::mul(action.B.counit[b], c));
      if (!sparse_eq<F>(action.act_vec(x, x, b, idx), want.finish()))
        rep.fail("identity of object " + std::to_string(x) +
                 " is not scaled by the counit under basis element " + std::to_string(b));
    }
  }

  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y)
      for (std::size_t z = 0; z < m; ++z)
        for (std::size_t g = 0; g < cat.hom_dims[y][z]; ++g)
          for (std::size_t f = 0; f < cat.hom_dims[x][y]; ++f)
            for (std::size_t b = 0; b < db; ++b) {
              const auto lhs = action.act_vec(x, z, b, cat.compose_basis(x, y, z, g, f));
              SparseBuilder<F> rhs;
              for (const auto& term : action.B.comult[b]) {
                const auto bg = action.act_vec(y, z, term.j, detail::unit_sparse<F>(g));
                const auto bf = action.act_vec(x, y, term.k, detail::unit_sparse<F>(f));
                for (const auto& [k, w] : cat.compose_vec(x, y, z, bg, bf))
                  rhs.add(k, F::mul(term.c, w));
              }
              if (!sparse_eq<F>(lhs, rhs.finish()))
                rep.fail("composition rule fails for basis element " + std::to_string(b) +
                         " on " + detail::morphism_label(y, z, g) + " o " +
                         detail::morphism_label(x, y, f));
            }
  return rep;
}

// ---------------------------------------------------------------------------
// Coefficient bifunctors
// ---------------------------------------------------------------------------

template <class F>
struct Bifunctor {
  using Elem = typename F::Elem;
  using PairTable = std::vector<std::vector<SparseVec<F>>>;

  std::vector<std::vector<std::size_t>> val_dims;                 // val(x,y)
  std::vector<std::vector<std::vector<std::string>>> val_names;
  std::vector<std::vector<std::vector<Matrix<F>>>> bact;          // per pair, per B basis
  /// pre[xp][x][y][u][h]: h pulled back along u : xp -> x, landing in val(xp, y).
  std::vector<std::vector<std::vector<PairTable>>> pre;
  /// post[x][y][yp][u][h]: h pushed forward along u : y -> yp, landing in val(x, yp).
  std::vector<std::vector<std::vector<PairTable>>> post;

  SparseVec<F> pre_vec(std::size_t xp, std::size_t x, std::size_t y, const SparseVec<F>& u,
                       const SparseVec<F>& h) const {
    SparseBuilder<F> b;
    for (const auto& [ui, uc] : u)
      for (const auto& [hi, hc] : h) {
        const Elem c = F::mul(uc, hc);
        for (const auto& [k, w] : pre[xp][x][y][ui][hi]) b.add(k, F::mul(c, w));
      }
    return b.finish();
  }

  SparseVec<F> post_vec(std::size_t x, std::size_t y, std::size_t yp, const SparseVec<F>& u,
                        const SparseVec<F>& h) const {
    SparseBuilder<F> b;
    for (const auto& [ui, uc] : u)
      for (const auto& [hi, hc] : h) {
        const Elem c = F::mul(uc, hc);
        for (const auto& [k, w] : post[x][y][yp][ui][hi]) b.add(k, F::mul(c, w));
      }
    return b.finish();
  }

  SparseVec<F> bact_vec(std::size_t x, std::size_t y, std::size_t b,
                        const SparseVec<F>& h) const {
    SparseBuilder<F> out;
    const Matrix<F>& mtx = bact[x][y][b];
    for (const auto& [i, c] : h)
      for (std::size_t r = 0; r < mtx.rows(); ++r) out.add(r, F::mul(c, mtx.at(r, i)));
    return out.finish();
  }

  void check_shapes(const FiniteLinearCategory<F>& cat) const {
    const std::size_t m = cat.objects();
    if (val_dims.size() != m || bact.size() != m || pre.size() != m || post.size() != m)
      throw ShapeError("bifunctor: object arity");
    for (std::size_t x = 0; x < m; ++x) {
      if (val_dims[x].size() != m || bact[x].size() != m || pre[x].size() != m ||
          post[x].size() != m)
        throw ShapeError("bifunctor: object arity");
      for (std::size_t y = 0; y < m; ++y) {
        for (const auto& mtx : bact[x][y])
          if (mtx.rows() != val_dims[x][y] || mtx.cols() != val_dims[x][y])
            throw ShapeError("bifunctor: action matrix shape");
        if (pre[x][y].size() != m || post[x][y].size() != m)
          throw ShapeError("bifunctor: structure table arity");
      }
    }
    for (std::size_t xp = 0; xp < m; ++xp)
      for (std::size_t x = 0; x < m; ++x)
        for (std::size_t y = 0; y < m; ++y) {
          const auto& tab = pre[xp][x][y];
          if (tab.size() != cat.hom_dims[xp][x]) throw ShapeError("bifunctor: pre arity");
          for (const auto& row : tab) {
            if (row.size() != val_dims[x][y]) throw ShapeError("bifunctor: pre arity");
            for (const auto& v : row)
              for (const auto& [k, c] : v) {
                (void)c;
                if (k >= val_dims[xp][y]) throw ShapeError("bifunctor: pre image out of range");
              }
          }
        }
    for (std::size_t x = 0; x < m; ++x)
      for (std::size_t y = 0; y < m; ++y)
        for (std::size_t yp = 0; yp < m; ++yp) {
          const auto& tab = post[x][y][yp];
          if (tab.size() != cat.hom_dims[y][yp]) throw ShapeError("bifunctor: post arity");
          for (const auto& row : tab) {
            if (row.size() != val_dims[x][y]) throw ShapeError("bifunctor: post arity");
            for (const auto& v : row)
              for (const auto& [k, c] : v) {
                (void)c;
                if (k >= val_dims[x][yp]) throw ShapeError("bifunctor: post image out of range");
              }
          }
        }
  }
};

/// Functoriality of both structure maps, their commutation, the module axioms
/// of the value action, and the twisted distribution law: the action passes
/// through a structure map with coproduct leg 1 on the outer factor.
template <class F>
ValidationReport validate_bifunctor(const FiniteLinearCategory<F>& cat,
                                    const CategoryAction<F>& action, const Bifunctor<F>& bif) {
  using Elem = typename F::Elem;
  ValidationReport rep("bifunctor");
  bif.check_shapes(cat);
  const std::size_t m = cat.objects();
  const std::size_t db = action.B.dim();

  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y)
      if (bif.bact[x][y].size() != db) {
        rep.fail("value action must provide one matrix per Hopf basis element");
        return rep;
      }

  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y) {
      const auto idx = dense_to_sparse<F>(cat.identity[x]);
      const auto idy = dense_to_sparse<F>(cat.identity[y]);
      for (std::size_t h = 0; h < bif.val_dims[x][y]; ++h) {
        const auto eh = detail::unit_sparse<F>(h);
        if (!sparse_eq<F>(bif.pre_vec(x, x, y, idx, eh), eh))
          rep.fail("pulling back along the identity moved val(" + std::to_string(x) + "," +
                   std::to_string(y) + ")[" + std::to_string(h) + "]");
        if (!sparse_eq<F>(bif.post_vec(x, y, y, idy, eh), eh))
          rep.fail("pushing forward along the identity moved val(" + std::to_string(x) + "," +
                   std::to_string(y) + ")[" + std::to_string(h) + "]");
      }

      const std::size_t d = bif.val_dims[x][y];
      if (d > 0) {
        Matrix<F> unit_act(d, d);
        for (std::size_t b = 0; b < db; ++b)
          if (!F::is_zero(action.B.alg.unit[b]))
            unit_act = unit_act + bif.bact[x][y][b].scaled(action.B.alg.unit[b]);
        if (!(unit_act == Matrix<F>::identity(d)))
          rep.fail("unit does not act as the identity on val(" + std::to_string(x) + "," +
                   std::to_string(y) + ")");
        for (std::size_t b = 0; b < db; ++b)
          for (std::size_t b2 = 0; b2 < db; ++b2) {
            Matrix<F> lhs = bif.bact[x][y][b] * bif.bact[x][y][b2];
            Matrix<F> rhs(d, d);
            for (std::size_t c = 0; c < db; ++c) {
              const Elem coeff = action.B.alg.mult[b][b2][c];
              if (F::is_zero(coeff)) continue;
              rhs = rhs + bif.bact[x][y][c].scaled(coeff);
            }
            if (!(lhs == rhs))
              rep.fail("value action not multiplicative on val(" + std::to_string(x) + "," +
                       std::to_string(y) + ")");
          }
      }
    }

  // Functoriality: iterated pulls/pushes agree with pulling/pushing composites.
  for (std::size_t x2 = 0; x2 < m; ++x2)
    for (std::size_t x1 = 0; x1 < m; ++x1)
      for (std::size_t x0 = 0; x0 < m; ++x0)
        for (std::size_t y = 0; y < m; ++y)
          for (std::size_t u = 0; u < cat.hom_dims[x1][x0]; ++u)
            for (std::size_t u2 = 0; u2 < cat.hom_dims[x2][x1]; ++u2)
              for (std::size_t h = 0; h < bif.val_dims[x0][y]; ++h) {
                const auto step = bif.pre_vec(x1, x0, y, detail::unit_sparse<F>(u),
                                              detail::unit_sparse<F>(h));
                const auto lhs = bif.pre_vec(x2, x1, y, detail::unit_sparse<F>(u2), step);
                const auto uu = cat.compose_basis(x2, x1, x0, u, u2);
                const auto rhs = bif.pre_vec(x2, x0, y, uu, detail::unit_sparse<F>(h));
                if (!sparse_eq<F>(lhs, rhs))
                  rep.fail("iterated pullback disagrees with pullback of the composite at val(" +
                           std::to_string(x0) + "," + std::to_string(y) + ")");
              }
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y0 = 0; y0 < m; ++y0)
      for (std::size_t y1 = 0; y1 < m; ++y1)
        for (std::size_t y2 = 0; y2 < m; ++y2)
          for (std::size_t v = 0; v < cat.hom_dims[y0][y1]; ++v)
            for (std::size_t v2 = 0; v2 < cat.hom_dims[y1][y2]; ++v2)
              for (std::size_t h = 0; h < bif.val_dims[x][y0]; ++h) {
                const auto step = bif.post_vec(x, y0, y1, detail::unit_sparse<F>(v),
                                               detail::unit_sparse<F>(h));
                const auto lhs = bif.post_vec(x, y1, y2, detail::unit_sparse<F>(v2), step);
                const auto vv = cat.compose_basis(y0, y1, y2, v2, v);
                const auto rhs = bif.post_vec(x, y0, y2, vv, detail::unit_sparse<F>(h));
                if (!sparse_eq<F>(lhs, rhs))
                  rep.fail("iterated pushforward disagrees with pushforward of the composite at val(" +
                           std::to_string(x) + "," + std::to_string(y0) + ")");
              }
  for (std::size_t xp = 0; xp < m; ++xp)
    for (std::size_t x = 0; x < m; ++x)
      for (std::size_t y = 0; y < m; ++y)
        for (std::size_t yp = 0; yp < m; ++yp)
          for (std::size_t u = 0; u < cat.hom_dims[xp][x]; ++u)
            for (std::size_t v = 0; v < cat.hom_dims[y][yp]; ++v)
              for (std::size_t h = 0; h < bif.val_dims[x][y]; ++h) {
                const auto pull = bif.pre_vec(xp, x, y, detail::unit_sparse<F>(u),
                                              detail::unit_sparse<F>(h));
                const auto lhs = bif.post_vec(xp, y, yp, detail::unit_sparse<F>(v), pull);
                const auto push = bif.post_vec(x, y, yp, detail::unit_sparse<F>(v),
                                               detail::unit_sparse<F>(h));
                const auto rhs = bif.pre_vec(xp, x, yp, detail::unit_sparse<F>(u), push);
                if (!sparse_eq<F>(lhs, rhs))
                  rep.fail("pullback and pushforward do not commute at val(" + std::to_string(x) +
                           "," + std::to_string(y) + ")");
              }

  // Twisted distribution over the action (outer factor takes leg 1).
  for (std::size_t xp = 0; xp < m; ++xp)
    for (std::size_t x = 0; x < m; ++x)
      for (std::size_t y = 0; y < m; ++y)
        for (std::size_t u = 0; u < cat.hom_dims[xp][x]; ++u)
          for (std::size_t h = 0; h < bif.val_dims[x][y]; ++h)
            for (std::size_t b = 0; b < db; ++b) {
              const auto lhs = bif.bact_vec(
                  xp, y, b,
                  bif.pre_vec(xp, x, y, detail::unit_sparse<F>(u), detail::unit_sparse<F>(h)));
              SparseBuilder<F> rhs;
              for (const auto& term : action.B.comult[b]) {
                const auto bh = bif.bact_vec(x, y, term.j, detail::unit_sparse<F>(h));
                const auto bu = action.act_vec(xp, x, term.k, detail::unit_sparse<F>(u));
                for (const auto& [k, w] : bif.pre_vec(xp, x, y, bu, bh))
                  rhs.add(k, F::mul(term.c, w));
              }
              if (!sparse_eq<F>(lhs, rhs.finish()))
                rep.fail("action does not distribute over pullback at val(" + std::to_string(x) +
                         "," + std::to_string(y) + ") for basis element " + std::to_string(b));
            }
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y)
      for (std::size_t yp = 0; yp < m; ++yp)
        for (std::size_t v = 0; v < cat.hom_dims[y][yp]; ++v)
          for (std::size_t h = 0; h < bif.val_dims[x][y]; ++h)
            for (std::size_t b = 0; b < db; ++b) {
              const auto lhs = bif.bact_vec(
                  x, yp, b,
                  bif.post_vec(x, y, yp, detail::unit_sparse<F>(v), detail::unit_sparse<F>(h)));
              SparseBuilder<F> rhs;
              for (const auto& term : action.B.comult[b]) {
                const auto bv = action.act_vec(y, yp, term.j, detail::unit_sparse<F>(v));
                const auto bh = bif.bact_vec(x, y, term.k, detail::unit_sparse<F>(h));
                for (const auto& [k, w] : bif.post_vec(x, y, yp, bv, bh))
                  rhs.add(k, F::mul(term.c, w));
              }
              if (!sparse_eq<F>(lhs, rhs.finish()))
                rep.fail("action does not distribute over pushforward at val(" + std::to_string(x) +
                         "," + std::to_string(y) + ") for basis element " + std::to_string(b));
            }
  return rep;
}

/// The hom bifunctor: values are the hom spaces themselves, pullback is
/// precomposition, pushforward is postcomposition.
template <class F>
Bifunctor<F> hom_bifunctor(const FiniteLinearCategory<F>& cat, const CategoryAction<F>& action) {
  const std::size_t m = cat.objects();
  Bifunctor<F> bif;
  bif.val_dims = cat.hom_dims;
  bif.val_names = cat.hom_names;
  bif.bact = action.act;
  bif.pre.assign(m, std::vector<std::vector<typename Bifunctor<F>::PairTable>>(
                        m, std::vector<typename Bifunctor<F>::PairTable>(m)));
  bif.post = bif.pre;
  for (std::size_t xp = 0; xp < m; ++xp)
    for (std::size_t x = 0; x < m; ++x)
      for (std::size_t y = 0; y < m; ++y) {
        auto& tab = bif.pre[xp][x][y];
        tab.assign(cat.hom_dims[xp][x], std::vector<SparseVec<F>>(cat.hom_dims[x][y]));
        for (std::size_t u = 0; u < cat.hom_dims[xp][x]; ++u)
          for (std::size_t h = 0; h < cat.hom_dims[x][y]; ++h)
            tab[u][h] = cat.compose_basis(xp, x, y, h, u);
      }
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y)
      for (std::size_t yp = 0; yp < m; ++yp) {
        auto& tab = bif.post[x][y][yp];
        tab.assign(cat.hom_dims[y][yp], std::vector<SparseVec<F>>(cat.hom_dims[x][y]));
        for (std::size_t u = 0; u < cat.hom_dims[y][yp]; ++u)
          for (std::size_t h = 0; h < cat.hom_dims[x][y]; ++h)
            tab[u][h] = cat.compose_basis(x, y, yp, u, h);
      }
  return bif;
}

// ---------------------------------------------------------------------------
// The category of free modules over a module algebra
// ---------------------------------------------------------------------------

template <class F>
struct ModuleCategory {
  FiniteLinearCategory<F> cat;
  CategoryAction<F> action;
  Bifunctor<F> hom;  ///< the hom bifunctor of cat
  std::vector<std::size_t> ranks;
};

/// Free-column-module category over a module algebra: object r is the free
/// module of that rank, hom(x, y) consists of ranks[y] x ranks[x] matrices
/// with algebra entries, composition is matrix multiplication (outer factor
/// first), and the Hopf algebra acts entry by entry.  The entrywise action
/// realizes conjugation of module maps through the antipode, so an antipode
/// is required even though the tables never evaluate it.
template <class F>
ModuleCategory<F> module_category(const ModuleAlgebra<F>& ma, std::vector<std::size_t> ranks) {
  using Elem = typename F::Elem;
  if (!ma.B.antipode)
    throw AntipodeRequired("module category needs an antipode: the morphism action is conjugation");
  for (std::size_t r : ranks)
    if (r == 0) throw HHError("module category: ranks must be positive");

  const std::size_t m = ranks.size();
  const std::size_t da = ma.A.dim;
  ModuleCategory<F> mc;
  mc.ranks = ranks;
  auto& cat = mc.cat;

  cat.object_names.reserve(m);
  for (std::size_t r : ranks) cat.object_names.push_back("free module of rank " + std::to_string(r));

  const auto hom_dim = [&](std::size_t x, std::size_t y) { return ranks[y] * ranks[x] * da; };
  const auto ent = [&](std::size_t x, std::size_t k, std::size_t l, std::size_t t) {
    return (k * ranks[x] + l) * da + t;
  };

  cat.hom_dims.assign(m, std::vector<std::size_t>(m, 0));
  cat.hom_names.assign(m, std::vector<std::vector<std::string>>(m));
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y) {
      cat.hom_dims[x][y] = hom_dim(x, y);
      auto& names = cat.hom_names[x][y];
      names.resize(hom_dim(x, y));
      for (std::size_t k = 0; k < ranks[y]; ++k)
        for (std::size_t l = 0; l < ranks[x]; ++l)
          for (std::size_t t = 0; t < da; ++t)
            names[ent(x, k, l, t)] = "E" + std::to_string(k) + std::to_string(l) + "(" +
                                     ma.A.basis_names[t] + ")";
    }

  cat.compose.assign(
      m, std::vector<std::vector<typename FiniteLinearCategory<F>::PairTable>>(
             m, std::vector<typename FiniteLinearCategory<F>::PairTable>(m)));
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y)
      for (std::size_t z = 0; z < m; ++z) {
        auto& tab = cat.compose[x][y][z];
        tab.assign(hom_dim(y, z), std::vector<SparseVec<F>>(hom_dim(x, y)));
        for (std::size_t k = 0; k < ranks[z]; ++k)
          for (std::size_t mid = 0; mid < ranks[y]; ++mid)
            for (std::size_t t = 0; t < da; ++t)
              for (std::size_t l = 0; l < ranks[x]; ++l)
                for (std::size_t t2 = 0; t2 < da; ++t2) {
                  SparseBuilder<F> out;
                  for (std::size_t tau = 0; tau < da; ++tau)
                    out.add(ent(x, k, l, tau), ma.A.mult[t][t2][tau]);
                  tab[ent(y, k, mid, t)][ent(x, mid, l, t2)] = out.finish();
                }
      }

  cat.identity.assign(m, {});
  for (std::size_t x = 0; x < m; ++x) {
    std::vector<Elem> id(hom_dim(x, x), F::zero());
    for (std::size_t k = 0; k < ranks[x]; ++k)
      for (std::size_t t = 0; t < da; ++t)
        id[ent(x, k, k, t)] = F::add(id[ent(x, k, k, t)], ma.A.unit[t]);
    cat.identity[x] = std::move(id);
  }

  mc.action.B = ma.B;
  mc.action.act.assign(m, std::vector<std::vector<Matrix<F>>>(m));
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y) {
      auto& per_b = mc.action.act[x][y];
      per_b.reserve(ma.B.dim());
      for (std::size_t b = 0; b < ma.B.dim(); ++b) {
        Matrix<F> mtx(hom_dim(x, y), hom_dim(x, y));
        for (std::size_t k = 0; k < ranks[y]; ++k)
          for (std::size_t l = 0; l < ranks[x]; ++l)
            for (std::size_t t = 0; t < da; ++t)
              for (std::size_t tau = 0; tau < da; ++tau)
                mtx.at(ent(x, k, l, tau), ent(x, k, l, t)) = ma.rho[b].at(tau, t);
        per_b.push_back(std::move(mtx));
      }
    }

  mc.hom = hom_bifunctor(cat, mc.action);
  return mc;
}

// ---------------------------------------------------------------------------
// The presimplicial complex of a category with coefficients in a bifunctor
// ---------------------------------------------------------------------------

struct CategoryBlock {
  std::vector<std::size_t> objs;  ///< (X_0, ..., X_n)
  std::size_t offset = 0;
  TensorShape shape;  ///< slots: val(X_0, X_n), hom(X_1, X_0), ..., hom(X_n, X_{n-1})
};

struct CategoryLayout {
  std::size_t num_objects = 0;
  std::vector<std::vector<CategoryBlock>> levels;  ///< indexed by the object tuple, base-m
  std::vector<std::size_t> dims;

  std::size_t tuple_number(const std::vector<std::size_t>& objs) const {
    std::size_t t = 0;
    for (std::size_t x : objs) t = t * num_objects + x;
    return t;
  }

  /// Block holding global index k of level n, plus the index within the block.
  std::pair<const CategoryBlock*, std::size_t> locate(std::size_t n, std::size_t k) const {
    const auto& blocks = levels[n];
    std::size_t lo = 0, hi = blocks.size();
    while (hi - lo > 1) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (blocks[mid].offset <= k)
        lo = mid;
      else
        hi = mid;
    }
    return {&blocks[lo], k - blocks[lo].offset};
  }
};

template <class F>
struct CategoryComplex {
  ComplexOps<F> ops;
  std::shared_ptr<const CategoryLayout> layout;
  std::shared_ptr<const FiniteLinearCategory<F>> cat;
  std::shared_ptr<const CategoryAction<F>> action;
  std::shared_ptr<const Bifunctor<F>> bif;
};

namespace detail {

/// Like expand_tensor_product, but writes into a block at a global offset.
template <class F>
void expand_tensor_block(const TensorShape& shape,
                         const std::vector<std::vector<typename F::Elem>>& slots,
                         const typename F::Elem& coeff, std::size_t offset,
                         SparseBuilder<F>& out) {
  std::vector<std::size_t> tuple(slots.size(), 0);
  std::function<void(std::size_t, const typename F::Elem&)> rec =
      [&](std::size_t pos, const typename F::Elem& c) {
        if (pos == slots.size()) {
          out.add(offset + shape.index(tuple), c);
          return;
        }
        for (std::size_t i = 0; i < slots[pos].size(); ++i) {
          if (F::is_zero(slots[pos][i])) continue;
          tuple[pos] = i;
          rec(pos + 1, F::mul(c, slots[pos][i]));
        }
      };
  rec(0, coeff);
}

template <class F>
std::vector<typename F::Elem> matrix_column(const Matrix<F>& m, std::size_t j) {
  std::vector<typename F::Elem> col(m.rows(), F::zero());
  for (std::size_t r = 0; r < m.rows(); ++r) col[r] = m.at(r, j);
  return col;
}

}  // namespace detail

/// Chain complex of a category with coefficients in a bifunctor.  Level n is
/// the direct sum over object tuples (X_0, ..., X_n) of
/// val(X_0, X_n) (x) hom(X_1, X_0) (x) ... (x) hom(X_n, X_{n-1}), blocks in
/// lexicographic tuple order and the coefficient slot varying slowest.
template <class F>
CategoryComplex<F> category_complex(const FiniteLinearCategory<F>& cat,
                                    const CategoryAction<F>& action, const Bifunctor<F>& bif,
                                    std::size_t top_degree, std::size_t size_cap = 200000) {
  cat.check_shapes();
  action.check_shapes(cat);
  bif.check_shapes(cat);

  auto pcat = std::make_shared<const FiniteLinearCategory<F>>(cat);
  auto pact = std::make_shared<const CategoryAction<F>>(action);
  auto pbif = std::make_shared<const Bifunctor<F>>(bif);

  const std::size_t m = cat.objects();
  if (m == 0) throw ShapeError("category complex: no objects");
  auto layout = std::make_shared<CategoryLayout>();
  layout->num_objects = m;
  layout->levels.resize(top_degree + 1);
  layout->dims.resize(top_degree + 1, 0);

  std::size_t tuples = 1;
  for (std::size_t n = 0; n <= top_degree; ++n) {
    tuples *= m;
    if (tuples > size_cap)
      throw SizeLimit("category complex level " + std::to_string(n) + ": too many object tuples");
    auto& blocks = layout->levels[n];
    blocks.reserve(tuples);
    std::vector<std::size_t> objs(n + 1, 0);
    std::size_t offset = 0;
    for (std::size_t t = 0; t < tuples; ++t) {
      std::size_t rem = t;
      for (std::size_t i = n + 1; i-- > 0;) {
        objs[i] = rem % m;
        rem /= m;
      }
      std::vector<std::size_t> slot_dims;
      slot_dims.reserve(n + 1);
      slot_dims.push_back(bif.val_dims[objs[0]][objs[n]]);
      for (std::size_t j = 1; j <= n; ++j) slot_dims.push_back(cat.hom_dims[objs[j]][objs[j - 1]]);
      CategoryBlock blk;
      blk.objs = objs;
      blk.offset = offset;
      blk.shape = TensorShape(std::move(slot_dims));
      offset += blk.shape.total;
      if (offset > size_cap)
        throw SizeLimit("category complex level " + std::to_string(n) + " exceeds the size cap");
      blocks.push_back(std::move(blk));
    }
    layout->dims[n] = offset;
  }

  auto cache = std::make_shared<detail::CoprodCache<F>>();

  CategoryComplex<F> cc;
  cc.layout = layout;
  cc.cat = pcat;
  cc.action = pact;
  cc.bif = pbif;

  ComplexOps<F>& C = cc.ops;
  C.label = "category complex on " + std::to_string(m) + " objects";
  C.top_degree = top_degree;
  C.dims = layout->dims;
  C.num_faces = [](std::size_t n) { return n + 1; };

  C.face = [layout, pcat, pbif](std::size_t n, std::size_t j, std::size_t k) -> SparseVec<F> {
    const auto [blk, local] = layout->locate(n, k);
    std::vector<std::size_t> word(n + 1);
    blk->shape.decode(local, word);
    const auto& objs = blk->objs;
    SparseBuilder<F> out;

    const std::size_t dropped = (j == 0) ? std::size_t{0} : (j == n ? n : j);
    std::vector<std::size_t> tgt_objs;
    tgt_objs.reserve(n);
    for (std::size_t i = 0; i <= n; ++i)
      if (i != dropped) tgt_objs.push_back(objs[i]);
    const auto& tgt = layout->levels[n - 1][layout->tuple_number(tgt_objs)];

    std::vector<std::size_t> word2(n);
    if (j == 0) {
      // Coefficient absorbs u_1 through the pullback.
      const auto& img = pbif->pre[objs[1]][objs[0]][objs[n]][word[1]][word[0]];
      for (std::size_t i = 2; i <= n; ++i) word2[i - 1] = word[i];
      for (const auto& [hi, c] : img) {
        word2[0] = hi;
        out.add(tgt.offset + tgt.shape.index(word2), c);
      }
    } else if (j == n) {
      // Coefficient absorbs u_n through the pushforward.
      const auto& img = pbif->post[objs[0]][objs[n]][objs[n - 1]][word[n]][word[0]];
      for (std::size_t i = 1; i < n; ++i) word2[i] = word[i];
      for (const auto& [hi, c] : img) {
        word2[0] = hi;
        out.add(tgt.offset + tgt.shape.index(word2), c);
      }
    } else {
      // u_j after u_{j+1}.
      const auto& img =
          pcat->compose[objs[j + 1]][objs[j]][objs[j - 1]][word[j]][word[j + 1]];
      word2[0] = word[0];
      for (std::size_t i = 1; i < j; ++i) word2[i] = word[i];
      for (std::size_t i = j + 2; i <= n; ++i) word2[i - 1] = word[i];
      for (const auto& [ui, c] : img) {
        word2[j] = ui;
        out.add(tgt.offset + tgt.shape.index(word2), c);
      }
    }
    return out.finish();
  };

  C.b_dim = action.B.dim();
  C.counit = action.B.counit;
  C.act = [layout, pact, pbif, cache](std::size_t n, std::size_t b,
                                      std::size_t k) -> SparseVec<F> {
    const auto [blk, local] = layout->locate(n, k);
    std::vector<std::size_t> word(n + 1);
    blk->shape.decode(local, word);
    const auto& objs = blk->objs;
    SparseBuilder<F> out;
    std::vector<std::vector<typename F::Elem>> slots(n + 1);
    for (const auto& term : detail::cached_coproduct(pact->B, *cache, n + 1, b)) {
      slots[0] = detail::matrix_column(pbif->bact[objs[0]][objs[n]][term.legs[0]], word[0]);
      for (std::size_t i = 1; i <= n; ++i)
        slots[i] =
            detail::matrix_column(pact->act[objs[i]][objs[i - 1]][term.legs[i]], word[i]);
      detail::expand_tensor_block<F>(blk->shape, slots, term.c, blk->offset, out);
    }
    return out.finish();
  };

  return cc;
}

// ---------------------------------------------------------------------------
// Invariant subcategory
// ---------------------------------------------------------------------------

template <class F>
struct InvariantSubcategory {
  std::vector<std::vector<SubspaceBasis<F>>> inv;  ///< per (src, dst)
  std::vector<std::vector<std::size_t>> dims;
  ValidationReport details{"invariant subcategory"};
};

/// Morphisms on which every basis element acts by its counit scalar.  Checks
/// that identities are invariant and that the invariant spaces are closed
/// under composition.
template <class F>
InvariantSubcategory<F> invariant_subcategory(const FiniteLinearCategory<F>& cat,
                                              const CategoryAction<F>& action) {
  const std::size_t m = cat.objects();
  const std::size_t db = action.B.dim();
  InvariantSubcategory<F> out;
  out.inv.assign(m, std::vector<SubspaceBasis<F>>(m));
  out.dims.assign(m, std::vector<std::size_t>(m, 0));

  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y) {
      const std::size_t d = cat.hom_dims[x][y];
      Matrix<F> stacked(db * d, d);
      for (std::size_t b = 0; b < db; ++b)
        for (std::size_t r = 0; r < d; ++r)
          for (std::size_t c = 0; c < d; ++c) {
            auto v = action.act[x][y][b].at(r, c);
            if (r == c) v = F::sub(v, action.B.counit[b]);
            stacked.at(b * d + r, c) = v;
          }
      out.inv[x][y] = kernel_basis(stacked);
      out.dims[x][y] = out.inv[x][y].dim();
    }

  for (std::size_t x = 0; x < m; ++x)
    if (!out.inv[x][x].contains(cat.identity[x]))
      out.details.fail("identity of object " + std::to_string(x) + " is not invariant");

  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y)
      for (std::size_t z = 0; z < m; ++z)
        for (const auto& grow : out.inv[y][z].basis())
          for (const auto& frow : out.inv[x][y].basis()) {
            const auto gf = cat.compose_vec(x, y, z, dense_to_sparse<F>(grow),
                                            dense_to_sparse<F>(frow));
            if (!out.inv[x][z].contains(sparse_to_dense<F>(gf, cat.hom_dims[x][z])))
              out.details.fail("invariant morphisms compose out of the invariant space at (" +
                               std::to_string(x) + "->" + std::to_string(y) + "->" +
                               std::to_string(z) + ")");
          }
  return out;
}

// ---------------------------------------------------------------------------
// Full subcategory restriction
// ---------------------------------------------------------------------------

template <class F>
struct RestrictedCategory {
  FiniteLinearCategory<F> cat;
  CategoryAction<F> action;
  Bifunctor<F> bif;
  std::vector<std::size_t> to_parent;  ///< object index map
};

template <class F>
RestrictedCategory<F> restrict_category(const FiniteLinearCategory<F>& cat,
                                        const CategoryAction<F>& action, const Bifunctor<F>& bif,
                                        std::vector<std::size_t> objects) {
  std::sort(objects.begin(), objects.end());
  const std::size_t m = objects.size();
  RestrictedCategory<F> out;
  out.to_parent = objects;

  out.cat.object_names.reserve(m);
  for (std::size_t x : objects) out.cat.object_names.push_back(cat.object_names[x]);
  out.cat.hom_dims.assign(m, std::vector<std::size_t>(m));
  out.cat.hom_names.assign(m, std::vector<std::vector<std::string>>(m));
  out.cat.compose.assign(
      m, std::vector<std::vector<typename FiniteLinearCategory<F>::PairTable>>(
             m, std::vector<typename FiniteLinearCategory<F>::PairTable>(m)));
  out.cat.identity.resize(m);
  out.action.B = action.B;
  out.action.act.assign(m, std::vector<std::vector<Matrix<F>>>(m));
  out.bif.val_dims.assign(m, std::vector<std::size_t>(m));
  out.bif.val_names.assign(m, std::vector<std::vector<std::string>>(m));
  out.bif.bact.assign(m, std::vector<std::vector<Matrix<F>>>(m));
  out.bif.pre.assign(m, std::vector<std::vector<typename Bifunctor<F>::PairTable>>(
                            m, std::vector<typename Bifunctor<F>::PairTable>(m)));
  out.bif.post = out.bif.pre;

  for (std::size_t x = 0; x < m; ++x) {
    out.cat.identity[x] = cat.identity[objects[x]];
    for (std::size_t y = 0; y < m; ++y) {
      out.cat.hom_dims[x][y] = cat.hom_dims[objects[x]][objects[y]];
      if (!cat.hom_names.empty()) out.cat.hom_names[x][y] = cat.hom_names[objects[x]][objects[y]];
      out.action.act[x][y] = action.act[objects[x]][objects[y]];
      out.bif.val_dims[x][y] = bif.val_dims[objects[x]][objects[y]];
      if (!bif.val_names.empty()) out.bif.val_names[x][y] = bif.val_names[objects[x]][objects[y]];
      out.bif.bact[x][y] = bif.bact[objects[x]][objects[y]];
      for (std::size_t z = 0; z < m; ++z) {
        out.cat.compose[x][y][z] = cat.compose[objects[x]][objects[y]][objects[z]];
        out.bif.pre[x][y][z] = bif.pre[objects[x]][objects[y]][objects[z]];
        out.bif.post[x][y][z] = bif.post[objects[x]][objects[y]][objects[z]];
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Transfer data: retractions onto a subcategory, and direct-sum generation
// ---------------------------------------------------------------------------

template <class F>
struct RetractionData {
  using Elem = typename F::Elem;
  std::vector<std::size_t> sub_objects;        ///< ambient indices, sorted
  std::vector<std::size_t> delta;              ///< chosen subcategory object per object
  std::vector<std::vector<Elem>> r;            ///< r[X] in hom(delta[X], X)
  std::vector<std::vector<Elem>> s;            ///< s[X] in hom(X, delta[X])
};

/// Every object must retract onto its chosen subcategory object: r o s = id.
/// Subcategory objects must carry the trivial choice.  The section and
/// retraction are also checked to be invariant morphisms, which the quotient
/// transfer needs.
template <class F>
ValidationReport validate_retraction(const FiniteLinearCategory<F>& cat,
                                     const CategoryAction<F>& action,
                                     const RetractionData<F>& data) {
  ValidationReport rep("retraction data");
  const std::size_t m = cat.objects();
  if (data.delta.size() != m || data.r.size() != m || data.s.size() != m) {
    rep.fail("one choice per object is required");
    return rep;
  }
  for (std::size_t x = 0; x < m; ++x) {
    const std::size_t dx = data.delta[x];
    if (std::find(data.sub_objects.begin(), data.sub_objects.end(), dx) ==
        data.sub_objects.end())
      rep.fail("chosen object for " + std::to_string(x) + " lies outside the subcategory");
    if (data.r[x].size() != cat.hom_dims[dx][x])
      rep.fail("retraction for object " + std::to_string(x) + " has the wrong shape");
    if (data.s[x].size() != cat.hom_dims[x][dx])
      rep.fail("section for object " + std::to_string(x) + " has the wrong shape");
  }
  if (!rep.ok) return rep;

  for (std::size_t x = 0; x < m; ++x) {
    const std::size_t dx = data.delta[x];
    const auto rs = cat.compose_vec(x, dx, x, dense_to_sparse<F>(data.r[x]),
                                    dense_to_sparse<F>(data.s[x]));
    if (!sparse_eq<F>(rs, dense_to_sparse<F>(cat.identity[x])))
      rep.fail("retraction after section is not the identity on object " + std::to_string(x));
    const bool in_sub = std::find(data.sub_objects.begin(), data.sub_objects.end(), x) !=
                        data.sub_objects.end();
    if (in_sub) {
      if (dx != x)
        rep.fail("subcategory object " + std::to_string(x) + " must be its own choice");
      else if (!sparse_eq<F>(dense_to_sparse<F>(data.r[x]),
                             dense_to_sparse<F>(cat.identity[x])) ||
               !sparse_eq<F>(dense_to_sparse<F>(data.s[x]),
                             dense_to_sparse<F>(cat.identity[x])))
        rep.fail("subcategory object " + std::to_string(x) + " must use identity maps");
    }
    for (std::size_t b = 0; b < action.B.dim(); ++b) {
      SparseBuilder<F> wr, ws;
      for (const auto& [i, c] : dense_to_sparse<F>(data.r[x]))
        wr.add(i, F::mul(action.B.counit[b], c));
      for (const auto& [i, c] : dense_to_sparse<F>(data.s[x]))
        ws.add(i, F::mul(action.B.counit[b], c));
      if (!sparse_eq<F>(action.act_vec(dx, x, b, dense_to_sparse<F>(data.r[x])), wr.finish()))
        rep.fail("retraction for object " + std::to_string(x) + " is not invariant");
      if (!sparse_eq<F>(action.act_vec(x, dx, b, dense_to_sparse<F>(data.s[x])), ws.finish()))
        rep.fail("section for object " + std::to_string(x) + " is not invariant");
    }
  }
  return rep;
}

template <class F>
struct GenerationData {
  using Elem = typename F::Elem;
  struct Component {
    std::size_t obj;                  ///< subcategory object (ambient index)
    std::vector<Elem> onto;           ///< u : X -> obj
    std::vector<Elem> into;           ///< v : obj -> X
  };
  std::vector<std::size_t> sub_objects;
  std::vector<std::vector<Component>> comps;  ///< per ambient object
};

/// Each object must split as a direct sum of subcategory objects: the sum of
/// into o onto over its components is the identity.  Subcategory objects must
/// carry the single trivial component, and all the splitting morphisms must
/// be invariant.
template <class F>
ValidationReport validate_generation(const FiniteLinearCategory<F>& cat,
                                     const CategoryAction<F>& action,
                                     const GenerationData<F>& data) {
  ValidationReport rep("generation data");
  const std::size_t m = cat.objects();
  if (data.comps.size() != m) {
    rep.fail("one component list per object is required");
    return rep;
  }
  for (std::size_t x = 0; x < m; ++x) {
    if (data.comps[x].empty()) {
      rep.fail("object " + std::to_string(x) + " has no components");
      continue;
    }
    bool shapes_ok = true;
    for (const auto& comp : data.comps[x]) {
      if (std::find(data.sub_objects.begin(), data.sub_objects.end(), comp.obj) ==
          data.sub_objects.end()) {
        rep.fail("component of object " + std::to_string(x) + " lies outside the subcategory");
        shapes_ok = false;
        continue;
      }
      if (comp.onto.size() != cat.hom_dims[x][comp.obj] ||
          comp.into.size() != cat.hom_dims[comp.obj][x]) {
        rep.fail("component maps of object " + std::to_string(x) + " have the wrong shape");
        shapes_ok = false;
      }
    }
    if (!shapes_ok) continue;
    SparseBuilder<F> total;
    for (const auto& comp : data.comps[x]) {
      for (const auto& [i, c] : cat.compose_vec(x, comp.obj, x, dense_to_sparse<F>(comp.into),
                                                dense_to_sparse<F>(comp.onto)))
        total.add(i, c);
      for (std::size_t b = 0; b < action.B.dim(); ++b) {
        SparseBuilder<F> wu, wv;
        for (const auto& [i, c] : dense_to_sparse<F>(comp.onto))
          wu.add(i, F::mul(action.B.counit[b], c));
        for (const auto& [i, c] : dense_to_sparse<F>(comp.into))
          wv.add(i, F::mul(action.B.counit[b], c));
        if (!sparse_eq<F>(action.act_vec(x, comp.obj, b, dense_to_sparse<F>(comp.onto)),
                          wu.finish()))
          rep.fail("projection map of object " + std::to_string(x) + " is not invariant");
        if (!sparse_eq<F>(action.act_vec(comp.obj, x, b, dense_to_sparse<F>(comp.into)),
                          wv.finish()))
          rep.fail("inclusion map of object " + std::to_string(x) + " is not invariant");
      }
    }
    if (!sparse_eq<F>(total.finish(), dense_to_sparse<F>(cat.identity[x])))
      rep.fail("components of object " + std::to_string(x) + " do not sum to the identity");
    const bool in_sub = std::find(data.sub_objects.begin(), data.sub_objects.end(), x) !=
                        data.sub_objects.end();
    if (in_sub) {
      const bool trivial = data.comps[x].size() == 1 && data.comps[x][0].obj == x &&
                           sparse_eq<F>(dense_to_sparse<F>(data.comps[x][0].onto),
                                        dense_to_sparse<F>(cat.identity[x])) &&
                           sparse_eq<F>(dense_to_sparse<F>(data.comps[x][0].into),
                                        dense_to_sparse<F>(cat.identity[x]));
      if (!trivial)
        rep.fail("subcategory object " + std::to_string(x) +
                 " must have the single trivial component");
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Transfer maps
// ---------------------------------------------------------------------------

/// Inclusion of the full subcategory's complex into the ambient complex, the
/// levelwise comparison map in the other direction, and its presimplicial
/// homotopy.  Columns are memoized: every public accessor returns a reference
/// into the cache.
template <class F>
class TransferMaps {
 public:
  TransferMaps(std::vector<std::size_t> big_dims, std::vector<std::size_t> small_dims)
      : big_dims_(std::move(big_dims)), small_dims_(std::move(small_dims)),
        inc_memo_(small_dims_.size()), ret_memo_(big_dims_.size()),
        hom_memo_(big_dims_.size()) {}
  virtual ~TransferMaps() = default;

  const SparseVec<F>& include(std::size_t n, std::size_t k) {
    auto& lvl = inc_memo_[n];
    if (lvl.empty()) lvl.resize(small_dims_[n]);
    if (!lvl[k]) lvl[k] = compute_include(n, k);
    return *lvl[k];
  }
  const SparseVec<F>& retract(std::size_t n, std::size_t k) {
    auto& lvl = ret_memo_[n];
    if (lvl.empty()) lvl.resize(big_dims_[n]);
    if (!lvl[k]) lvl[k] = compute_retract(n, k);
    return *lvl[k];
  }
  const SparseVec<F>& homotopy(std::size_t n, std::size_t i, std::size_t k) {
    auto& lvl = hom_memo_[n];
    if (lvl.empty()) lvl.resize((n + 1) * big_dims_[n]);
    auto& slot = lvl[i * big_dims_[n] + k];
    if (!slot) slot = compute_homotopy(n, i, k);
    return *slot;
  }

  SparseVec<F> include_vec(std::size_t n, const SparseVec<F>& v) {
    SparseBuilder<F> b;
    for (const auto& [k, c] : v)
      for (const auto& [i, w] : include(n, k)) b.add(i, F::mul(c, w));
    return b.finish();
  }
  SparseVec<F> retract_vec(std::size_t n, const SparseVec<F>& v) {
    SparseBuilder<F> b;
    for (const auto& [k, c] : v)
      for (const auto& [i, w] : retract(n, k)) b.add(i, F::mul(c, w));
    return b.finish();
  }
  SparseVec<F> homotopy_vec(std::size_t n, std::size_t i, const SparseVec<F>& v) {
    SparseBuilder<F> b;
    for (const auto& [k, c] : v)
      for (const auto& [idx, w] : homotopy(n, i, k)) b.add(idx, F::mul(c, w));
    return b.finish();
  }

 protected:
  virtual SparseVec<F> compute_include(std::size_t n, std::size_t k) = 0;
  virtual SparseVec<F> compute_retract(std::size_t n, std::size_t k) = 0;
  virtual SparseVec<F> compute_homotopy(std::size_t n, std::size_t i, std::size_t k) = 0;

 private:
  std::vector<std::size_t> big_dims_, small_dims_;
  std::vector<std::vector<std::optional<SparseVec<F>>>> inc_memo_, ret_memo_, hom_memo_;
};

/// Transfer maps of a retraction: words are conjugated leg by leg through the
/// sections and retractions, and the homotopy interpolates by switching over
/// at one position.
template <class F>
class RetractionTransfer : public TransferMaps<F> {
 public:
  RetractionTransfer(const CategoryComplex<F>& big, const CategoryComplex<F>& small,
                     const std::vector<std::size_t>& to_parent, const RetractionData<F>& data)
      : TransferMaps<F>(big.layout->dims, small.layout->dims),
        big_(big), small_(small), data_(data), to_parent_(to_parent) {
    from_parent_.assign(big.cat->objects(), 0);
    for (std::size_t i = 0; i < to_parent.size(); ++i) from_parent_[to_parent[i]] = i;
  }

 protected:
  SparseVec<F> compute_include(std::size_t n, std::size_t k) override {
    const auto [blk, local] = small_.layout->locate(n, k);
    std::vector<std::size_t> objs(blk->objs.size());
    for (std::size_t i = 0; i < objs.size(); ++i) objs[i] = to_parent_[blk->objs[i]];
    const auto& tgt = big_.layout->levels[n][big_.layout->tuple_number(objs)];
    return SparseVec<F>{{tgt.offset + local, F::one()}};
  }

  SparseVec<F> compute_retract(std::size_t n, std::size_t k) override {
    const auto [blk, local] = big_.layout->locate(n, k);
    std::vector<std::size_t> word(n + 1);
    blk->shape.decode(local, word);
    const auto& objs = blk->objs;
    const auto& cat = *big_.cat;
    const auto& bif = *big_.bif;

    std::vector<std::size_t> tgt_objs(n + 1);
    for (std::size_t i = 0; i <= n; ++i) tgt_objs[i] = from_parent_[data_.delta[objs[i]]];
    const auto& tgt = small_.layout->levels[n][small_.layout->tuple_number(tgt_objs)];

    std::vector<std::vector<typename F::Elem>> slots(n + 1);
    {
      const std::size_t d0 = data_.delta[objs[0]], dn = data_.delta[objs[n]];
      auto h1 = bif.pre_vec(d0, objs[0], objs[n], dense_to_sparse<F>(data_.r[objs[0]]),
                            detail::unit_sparse<F>(word[0]));
      auto h2 = bif.post_vec(d0, objs[n], dn, dense_to_sparse<F>(data_.s[objs[n]]), h1);
      slots[0] = sparse_to_dense<F>(h2, bif.val_dims[d0][dn]);
    }
    for (std::size_t i = 1; i <= n; ++i) {
      const std::size_t di = data_.delta[objs[i]], dprev = data_.delta[objs[i - 1]];
      auto ur = cat.compose_vec(di, objs[i], objs[i - 1], detail::unit_sparse<F>(word[i]),
                                dense_to_sparse<F>(data_.r[objs[i]]));
      auto sur = cat.compose_vec(di, objs[i - 1], dprev,
                                 dense_to_sparse<F>(data_.s[objs[i - 1]]), ur);
      slots[i] = sparse_to_dense<F>(sur, cat.hom_dims[di][dprev]);
    }
    SparseBuilder<F> out;
    detail::expand_tensor_block<F>(tgt.shape, slots, F::one(), tgt.offset, out);
    return out.finish();
  }

  SparseVec<F> compute_homotopy(std::size_t n, std::size_t i, std::size_t k) override {
    const auto [blk, local] = big_.layout->locate(n, k);
    std::vector<std::size_t> word(n + 1);
    blk->shape.decode(local, word);
    const auto& objs = blk->objs;
    const auto& cat = *big_.cat;
    const auto& bif = *big_.bif;

    // Target tuple: (X_0, ..., X_i, dX_i, ..., dX_n) in the ambient complex.
    std::vector<std::size_t> tgt_objs(n + 2);
    for (std::size_t t = 0; t <= i; ++t) tgt_objs[t] = objs[t];
    for (std::size_t t = i; t <= n; ++t) tgt_objs[t + 1] = data_.delta[objs[t]];
    const auto& tgt = big_.layout->levels[n + 1][big_.layout->tuple_number(tgt_objs)];

    std::vector<std::vector<typename F::Elem>> slots(n + 2);
    {
      const std::size_t dn = data_.delta[objs[n]];
      auto h1 = bif.post_vec(objs[0], objs[n], dn, dense_to_sparse<F>(data_.s[objs[n]]),
                             detail::unit_sparse<F>(word[0]));
      slots[0] = sparse_to_dense<F>(h1, bif.val_dims[objs[0]][dn]);
    }
    for (std::size_t t = 1; t <= i; ++t) {
      slots[t].assign(cat.hom_dims[objs[t]][objs[t - 1]], F::zero());
      slots[t][word[t]] = F::one();
    }
    slots[i + 1] = data_.r[objs[i]];
    for (std::size_t t = i + 2; t <= n + 1; ++t) {
      const std::size_t src = objs[t - 1], dst = objs[t - 2];
      const std::size_t dsrc = data_.delta[src], ddst = data_.delta[dst];
      auto ur = cat.compose_vec(dsrc, src, dst, detail::unit_sparse<F>(word[t - 1]),
                                dense_to_sparse<F>(data_.r[src]));
      auto sur = cat.compose_vec(dsrc, dst, ddst, dense_to_sparse<F>(data_.s[dst]), ur);
      slots[t] = sparse_to_dense<F>(sur, cat.hom_dims[dsrc][ddst]);
    }
    SparseBuilder<F> out;
    detail::expand_tensor_block<F>(tgt.shape, slots, F::one(), tgt.offset, out);
    return out.finish();
  }

 private:
  const CategoryComplex<F>& big_;
  const CategoryComplex<F>& small_;
  RetractionData<F> data_;
  std::vector<std::size_t> to_parent_, from_parent_;
};

/// Transfer maps of a direct-sum generation: the comparison map sums over all
/// choices of components, and the homotopy switches from split legs to
/// original legs at one position.
template <class F>
class GenerationTransfer : public TransferMaps<F> {
 public:
  GenerationTransfer(const CategoryComplex<F>& big, const CategoryComplex<F>& small,
                     const std::vector<std::size_t>& to_parent, const GenerationData<F>& data)
      : TransferMaps<F>(big.layout->dims, small.layout->dims),
        big_(big), small_(small), data_(data), to_parent_(to_parent) {
    from_parent_.assign(big.cat->objects(), 0);
    for (std::size_t i = 0; i < to_parent.size(); ++i) from_parent_[to_parent[i]] = i;
  }

 protected:
  SparseVec<F> compute_include(std::size_t n, std::size_t k) override {
    const auto [blk, local] = small_.layout->locate(n, k);
    std::vector<std::size_t> objs(blk->objs.size());
    for (std::size_t i = 0; i < objs.size(); ++i) objs[i] = to_parent_[blk->objs[i]];
    const auto& tgt = big_.layout->levels[n][big_.layout->tuple_number(objs)];
    return SparseVec<F>{{tgt.offset + local, F::one()}};
  }

  SparseVec<F> compute_retract(std::size_t n, std::size_t k) override {
    const auto [blk, local] = big_.layout->locate(n, k);
    std::vector<std::size_t> word(n + 1);
    blk->shape.decode(local, word);
    const auto& objs = blk->objs;
    const auto& cat = *big_.cat;
    const auto& bif = *big_.bif;

    SparseBuilder<F> out;
    std::vector<std::size_t> pick(n + 1, 0);
    std::vector<std::size_t> tgt_objs(n + 1);
    std::vector<std::vector<typename F::Elem>> slots(n + 1);
    std::function<void(std::size_t)> rec = [&](std::size_t pos) {
      if (pos == n + 1) {
        const auto& c0 = data_.comps[objs[0]][pick[0]];
        const auto& cn = data_.comps[objs[n]][pick[n]];
        auto h1 = bif.pre_vec(c0.obj, objs[0], objs[n], dense_to_sparse<F>(c0.into),
                              detail::unit_sparse<F>(word[0]));
        auto h2 = bif.post_vec(c0.obj, objs[n], cn.obj, dense_to_sparse<F>(cn.onto), h1);
        slots[0] = sparse_to_dense<F>(h2, bif.val_dims[c0.obj][cn.obj]);
        for (std::size_t i = 1; i <= n; ++i) {
          const auto& ci = data_.comps[objs[i]][pick[i]];
          const auto& cprev = data_.comps[objs[i - 1]][pick[i - 1]];
          auto fv = cat.compose_vec(ci.obj, objs[i], objs[i - 1],
                                    detail::unit_sparse<F>(word[i]),
                                    dense_to_sparse<F>(ci.into));
          auto ufv = cat.compose_vec(ci.obj, objs[i - 1], cprev.obj,
                                     dense_to_sparse<F>(cprev.onto), fv);
          slots[i] = sparse_to_dense<F>(ufv, cat.hom_dims[ci.obj][cprev.obj]);
        }
        for (std::size_t i = 0; i <= n; ++i)
          tgt_objs[i] = from_parent_[data_.comps[objs[i]][pick[i]].obj];
        const auto& tgt = small_.layout->levels[n][small_.layout->tuple_number(tgt_objs)];
        detail::expand_tensor_block<F>(tgt.shape, slots, F::one(), tgt.offset, out);
        return;
      }
      for (pick[pos] = 0; pick[pos] < data_.comps[objs[pos]].size(); ++pick[pos]) rec(pos + 1);
    };
    rec(0);
    return out.finish();
  }

  SparseVec<F> compute_homotopy(std::size_t n, std::size_t i, std::size_t k) override {
    const auto [blk, local] = big_.layout->locate(n, k);
    std::vector<std::size_t> word(n + 1);
    blk->shape.decode(local, word);
    const auto& objs = blk->objs;
    const auto& cat = *big_.cat;
    const auto& bif = *big_.bif;

    SparseBuilder<F> out;
    std::vector<std::size_t> pick(i + 1, 0);
    std::vector<std::vector<typename F::Elem>> slots(n + 2);
    std::function<void(std::size_t)> rec = [&](std::size_t pos) {
      if (pos == i + 1) {
        const auto& c0 = data_.comps[objs[0]][pick[0]];
        auto h1 = bif.pre_vec(c0.obj, objs[0], objs[n], dense_to_sparse<F>(c0.into),
                              detail::unit_sparse<F>(word[0]));
        slots[0] = sparse_to_dense<F>(h1, bif.val_dims[c0.obj][objs[n]]);
        for (std::size_t t = 1; t <= i; ++t) {
          const auto& ct = data_.comps[objs[t]][pick[t]];
          const auto& cprev = data_.comps[objs[t - 1]][pick[t - 1]];
          auto fv = cat.compose_vec(ct.obj, objs[t], objs[t - 1],
                                    detail::unit_sparse<F>(word[t]),
                                    dense_to_sparse<F>(ct.into));
          auto ufv = cat.compose_vec(ct.obj, objs[t - 1], cprev.obj,
                                     dense_to_sparse<F>(cprev.onto), fv);
          slots[t] = sparse_to_dense<F>(ufv, cat.hom_dims[ct.obj][cprev.obj]);
        }
        const auto& ci = data_.comps[objs[i]][pick[i]];
        slots[i + 1] = ci.onto;
        for (std::size_t t = i + 2; t <= n + 1; ++t) {
          slots[t].assign(cat.hom_dims[objs[t - 1]][objs[t - 2]], F::zero());
          slots[t][word[t - 1]] = F::one();
        }
        // Target tuple: (D_0, ..., D_i, X_i, ..., X_n) in the ambient complex.
        std::vector<std::size_t> amb(n + 2);
        for (std::size_t t = 0; t <= i; ++t) amb[t] = data_.comps[objs[t]][pick[t]].obj;
        for (std::size_t t = i; t <= n; ++t) amb[t + 1] = objs[t];
        const auto& tgt = big_.layout->levels[n + 1][big_.layout->tuple_number(amb)];
        detail::expand_tensor_block<F>(tgt.shape, slots, F::one(), tgt.offset, out);
        return;
      }
      for (pick[pos] = 0; pick[pos] < data_.comps[objs[pos]].size(); ++pick[pos]) rec(pos + 1);
    };
    rec(0);
    return out.finish();
  }

 private:
  const CategoryComplex<F>& big_;
  const CategoryComplex<F>& small_;
  GenerationData<F> data_;
  std::vector<std::size_t> to_parent_, from_parent_;
};

// ---------------------------------------------------------------------------
// Transfer oracle
// ---------------------------------------------------------------------------

/// Ambient complex with its obstruction relation levels and quotient table,
/// built once and shared between oracles.
template <class F>
struct ObstructionCache {
  CategoryComplex<F> complex;
  std::vector<SubspaceBasis<F>> levels;
  QuotientHomology<F> table;
};

template <class F>
ObstructionCache<F> obstruction_cache(const FiniteLinearCategory<F>& cat,
                                      const CategoryAction<F>& action, const Bifunctor<F>& bif,
                                      std::size_t top_degree, std::size_t size_cap = 200000) {
  ObstructionCache<F> out{category_complex(cat, action, bif, top_degree, size_cap), {}, {}};
  out.levels = build_quotient_levels(out.complex.ops, QuotientMode::Obstruction);
  out.table = quotient_homology_over(out.complex.ops, out.levels, QuotientMode::Obstruction);
  return out;
}

template <class F>
struct TransferReport {
  ValidationReport details{"transfer oracle"};
  /// Which end face of the homotopy recovers the round trip through the
  /// subcategory, and which recovers the identity.
  std::string boundary_roles;
  QuotientHomology<F> sub_table;
  QuotientHomology<F> full_table;
};

namespace detail {

template <class F>
void run_transfer_checks(const ObstructionCache<F>& big, const CategoryComplex<F>& small,
                         TransferMaps<F>& maps, std::size_t jstab_top, TransferReport<F>& rep) {
  const ComplexOps<F>& B = big.complex.ops;
  const ComplexOps<F>& S = small.ops;
  const std::size_t top = B.top_degree;
  auto& det = rep.details;

  // Inclusion is an equivariant chain map.
  for (std::size_t n = 0; n <= top; ++n)
    for (std::size_t k = 0; k < S.dims[n]; ++k) {
      const auto& ik = maps.include(n, k);
      if (n >= 1)
        for (std::size_t j = 0; j < S.num_faces(n); ++j)
          if (!sparse_eq<F>(apply_face_vec(B, n, j, ik),
                            maps.include_vec(n - 1, S.face(n, j, k))))
            det.fail("inclusion does not commute with face " + std::to_string(j) + " at level " +
                     std::to_string(n));
      for (std::size_t b = 0; b < B.b_dim; ++b)
        if (!sparse_eq<F>(apply_act_vec(B, n, b, ik), maps.include_vec(n, S.act(n, b, k))))
          det.fail("inclusion does not commute with the action at level " + std::to_string(n));
    }

  // The comparison map is an equivariant presimplicial map, and a left
  // inverse of the inclusion.
  for (std::size_t n = 0; n <= top; ++n) {
    for (std::size_t k = 0; k < B.dims[n]; ++k) {
      const auto& mk = maps.retract(n, k);
      if (n >= 1)
        for (std::size_t j = 0; j < B.num_faces(n); ++j)
          if (!sparse_eq<F>(maps.retract_vec(n - 1, B.face(n, j, k)),
                            apply_face_vec(S, n, j, mk)))
            det.fail("comparison map does not commute with face " + std::to_string(j) +
                     " at level " + std::to_string(n));
      for (std::size_t b = 0; b < B.b_dim; ++b)
        if (!sparse_eq<F>(maps.retract_vec(n, B.act(n, b, k)), apply_act_vec(S, n, b, mk)))
          det.fail("comparison map does not commute with the action at level " +
                   std::to_string(n));
    }
    for (std::size_t k = 0; k < S.dims[n]; ++k)
      if (!sparse_eq<F>(maps.retract_vec(n, maps.include(n, k)), unit_sparse<F>(k)))
        det.fail("comparison map after inclusion is not the identity at level " +
                 std::to_string(n));
  }

  // Presimplicial homotopy identities, with detection of which end face
  // plays which role.
  bool first_is_roundtrip = true, first_is_identity = true;
  for (std::size_t n = 0; n + 1 <= top; ++n) {
    for (std::size_t k = 0; k < B.dims[n]; ++k) {
      std::vector<SparseVec<F>> h(n + 1);
      for (std::size_t i = 0; i <= n; ++i) h[i] = maps.homotopy(n, i, k);

      for (std::size_t j = 1; j <= n; ++j)
        if (!sparse_eq<F>(apply_face_vec(B, n + 1, j, h[j]),
                          apply_face_vec(B, n + 1, j, h[j - 1])))
          det.fail("adjacent homotopy maps disagree on face " + std::to_string(j) +
                   " at level " + std::to_string(n));
      if (n >= 1) {
        for (std::size_t i = 0; i <= n; ++i)
          for (std::size_t j = 0; j <= n; ++j) {
            if (j < i) {
              if (!sparse_eq<F>(apply_face_vec(B, n + 1, j, h[i]),
                                maps.homotopy_vec(n - 1, i - 1, B.face(n, j, k))))
                det.fail("homotopy does not commute with low face " + std::to_string(j) +
                         " at level " + std::to_string(n));
            } else if (j > i + 1) {
              if (!sparse_eq<F>(apply_face_vec(B, n + 1, j, h[i]),
                                maps.homotopy_vec(n - 1, i, B.face(n, j - 1, k))))
                det.fail("homotopy does not commute with high face " + std::to_string(j) +
                         " at level " + std::to_string(n));
            }
          }
        // The last face of the target level is also a high-face case.
        for (std::size_t i = 0; i + 1 <= n; ++i)
          if (!sparse_eq<F>(apply_face_vec(B, n + 1, n + 1, h[i]),
                            maps.homotopy_vec(n - 1, i, B.face(n, n, k))))
            det.fail("homotopy does not commute with the last face at level " +
                     std::to_string(n));
      }

      const auto c0 = apply_face_vec(B, n + 1, 0, h[0]);
      const auto cN = apply_face_vec(B, n + 1, n + 1, h[n]);
      const auto rt = maps.include_vec(n, maps.retract(n, k));
      const auto ex = unit_sparse<F>(k);
      const bool c0_rt = sparse_eq<F>(c0, rt), c0_ex = sparse_eq<F>(c0, ex);
      const bool cN_rt = sparse_eq<F>(cN, rt), cN_ex = sparse_eq<F>(cN, ex);
      if (!c0_rt) first_is_roundtrip = false;
      if (!c0_ex) first_is_identity = false;
      if ((!c0_rt && !c0_ex) || (!cN_rt && !cN_ex))
        det.fail("end faces of the homotopy realize neither the identity nor the round trip at level " +
                 std::to_string(n));

      // Alternating sums telescope: the signed faces of the signed homotopy,
      // plus the homotopy of the signed faces, add up to the difference of
      // the two end faces.
      SparseBuilder<F> acc;
      for (std::size_t i = 0; i <= n; ++i) {
        const bool ineg = (i % 2) != 0;
        for (std::size_t j = 0; j <= n + 1; ++j) {
          const bool jneg = (j % 2) != 0;
          for (const auto& [idx, c] : apply_face_vec(B, n + 1, j, h[i]))
            acc.add(idx, (ineg != jneg) ? F::neg(c) : c);
        }
      }
      if (n >= 1) {
        const auto dk = apply_d(B, n, k);
        for (std::size_t i = 0; i + 1 <= n; ++i) {
          const bool ineg = (i % 2) != 0;
          for (const auto& [idx, c] : maps.homotopy_vec(n - 1, i, dk))
            acc.add(idx, ineg ? F::neg(c) : c);
        }
      }
      SparseBuilder<F> want;
      for (const auto& [idx, c] : c0) want.add(idx, c);
      for (const auto& [idx, c] : cN) want.add(idx, F::neg(c));
      if (!sparse_eq<F>(acc.finish(), want.finish()))
        det.fail("alternating homotopy sum does not telescope to the end faces at level " +
                 std::to_string(n));
    }
  }
  if (first_is_roundtrip && first_is_identity)
    rep.boundary_roles = "degenerate: round trip equals the identity";
  else if (first_is_roundtrip)
    rep.boundary_roles = "first face gives the round trip, last face the identity";
  else if (first_is_identity)
    rep.boundary_roles = "first face gives the identity, last face the round trip";
  else
    rep.boundary_roles = "unrecognized end-face behavior";

  // The homotopy preserves the quotient relations.
  const std::size_t jtop = std::min(jstab_top, top >= 2 ? top - 2 : std::size_t{0});
  for (std::size_t mlev = 0; mlev + 1 < big.levels.size() && mlev <= jtop; ++mlev) {
    const auto& lower = big.levels[mlev];
    const auto& upper = big.levels[mlev + 1];
    for (const auto& row : lower.basis()) {
      const auto v = dense_to_sparse<F>(row);
      for (std::size_t i = 0; i <= mlev; ++i)
        if (!upper.contains_sparse(maps.homotopy_vec(mlev, i, v)))
          det.fail("homotopy image of a quotient relation leaves the relations at level " +
                   std::to_string(mlev));
    }
  }
}

}  // namespace detail

/// Compares the obstruction-quotient homology of a subcategory every ambient
/// object retracts onto with the ambient category's, checking the structure
/// that makes the comparison work: both transfer maps are equivariant
/// (pre)simplicial maps, their round trip is connected to the identity by a
/// presimplicial homotopy that preserves the quotient relations, and the
/// homology tables agree.
template <class F>
TransferReport<F> cofinality_oracle(const ObstructionCache<F>& big, const RetractionData<F>& data,
                                    std::size_t jstab_top = 1, std::size_t size_cap = 200000) {
  TransferReport<F> rep;
  rep.details = ValidationReport("retraction transfer oracle");
  rep.details.merge(validate_retraction(*big.complex.cat, *big.complex.action, data));
  if (!rep.details.ok) return rep;

  auto restricted = restrict_category(*big.complex.cat, *big.complex.action, *big.complex.bif,
                                      data.sub_objects);
  auto small = category_complex(restricted.cat, restricted.action, restricted.bif,
                                big.complex.ops.top_degree, size_cap);
  RetractionTransfer<F> maps(big.complex, small, restricted.to_parent, data);
  detail::run_transfer_checks(big, small, maps, jstab_top, rep);

  rep.full_table = big.table;
  rep.sub_table = quotient_homology(small.ops, QuotientMode::Obstruction);
  for (std::size_t n = 0; n < rep.full_table.homology.size(); ++n)
    if (rep.full_table.homology[n] != rep.sub_table.homology[n])
      rep.details.fail("homology tables differ in degree " + std::to_string(n) + ": full " +
                       std::to_string(rep.full_table.homology[n]) + ", subcategory " +
                       std::to_string(rep.sub_table.homology[n]));
  return rep;
}

/// Same comparison for a subcategory whose objects split every ambient object
/// as a direct sum.
template <class F>
TransferReport<F> free_generation_oracle(const ObstructionCache<F>& big,
                                         const GenerationData<F>& data,
                                         std::size_t jstab_top = 1,
                                         std::size_t size_cap = 200000) {
  TransferReport<F> rep;
  rep.details = ValidationReport("generation transfer oracle");
  rep.details.merge(validate_generation(*big.complex.cat, *big.complex.action, data));
  if (!rep.details.ok) return rep;

  auto restricted = restrict_category(*big.complex.cat, *big.complex.action, *big.complex.bif,
                                      data.sub_objects);
  auto small = category_complex(restricted.cat, restricted.action, restricted.bif,
                                big.complex.ops.top_degree, size_cap);
  GenerationTransfer<F> maps(big.complex, small, restricted.to_parent, data);
  detail::run_transfer_checks(big, small, maps, jstab_top, rep);

  rep.full_table = big.table;
  rep.sub_table = quotient_homology(small.ops, QuotientMode::Obstruction);
  for (std::size_t n = 0; n < rep.full_table.homology.size(); ++n)
    if (rep.full_table.homology[n] != rep.sub_table.homology[n])
      rep.details.fail("homology tables differ in degree " + std::to_string(n) + ": full " +
                       std::to_string(rep.full_table.homology[n]) + ", subcategory " +
                       std::to_string(rep.sub_table.homology[n]));
  return rep;
}

// ---------------------------------------------------------------------------
// Fixture builders
// ---------------------------------------------------------------------------

/// Coordinate t of the algebra unit inside a hom space of a module category,
/// read off the identity of the first object: its leading diagonal block
/// stores exactly the unit coordinates.
template <class F>
typename F::Elem unit_coord(const ModuleCategory<F>& mc, std::size_t t) {
  return mc.cat.identity[0][t];
}

/// Retraction of every free module onto the single object `target`, whose
/// rank must dominate all others: sections embed into the leading
/// coordinates, retractions project back out.
template <class F>
RetractionData<F> module_retraction(const ModuleCategory<F>& mc, std::size_t target) {
  using Elem = typename F::Elem;
  const auto& ranks = mc.ranks;
  const std::size_t da = mc.cat.hom_dims[0][0] / (ranks[0] * ranks[0]);
  RetractionData<F> data;
  data.sub_objects = {target};
  const std::size_t m = ranks.size();
  data.delta.assign(m, target);
  data.r.resize(m);
  data.s.resize(m);
  for (std::size_t x = 0; x < m; ++x) {
    if (ranks[x] > ranks[target])
      throw HHError("module retraction: target rank must dominate every rank");
    if (x == target) {
      data.r[x] = mc.cat.identity[x];
      data.s[x] = mc.cat.identity[x];
      continue;
    }
    std::vector<Elem> r(mc.cat.hom_dims[target][x], F::zero());
    std::vector<Elem> s(mc.cat.hom_dims[x][target], F::zero());
    for (std::size_t k = 0; k < ranks[x]; ++k)
      for (std::size_t t = 0; t < da; ++t) {
        const Elem u = unit_coord(mc, t);
        // r : target -> x is a ranks[x] x ranks[target] matrix with the unit
        // on the leading diagonal; s is its transpose.
        r[(k * ranks[target] + k) * da + t] = u;
        s[(k * ranks[x] + k) * da + t] = u;
      }
    data.r[x] = std::move(r);
    data.s[x] = std::move(s);
  }
  return data;
}

/// Direct-sum decomposition of every free module into copies of the rank-one
/// object `gen`: coordinate projections and inclusions.
template <class F>
GenerationData<F> module_generation(const ModuleCategory<F>& mc, std::size_t gen) {
  using Elem = typename F::Elem;
  const auto& ranks = mc.ranks;
  if (ranks[gen] != 1) throw HHError("module generation: generator must have rank one");
  const std::size_t da = mc.cat.hom_dims[gen][gen];
  GenerationData<F> data;
  data.sub_objects = {gen};
  const std::size_t m = ranks.size();
  data.comps.resize(m);
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t i = 0; i < ranks[x]; ++i) {
      typename GenerationData<F>::Component comp;
      comp.obj = gen;
      comp.onto.assign(mc.cat.hom_dims[x][gen], F::zero());
      comp.into.assign(mc.cat.hom_dims[gen][x], F::zero());
      for (std::size_t t = 0; t < da; ++t) {
        const Elem u = unit_coord(mc, t);
        // onto : x -> gen is a 1 x ranks[x] row picking coordinate i,
        // into : gen -> x the matching column.
        comp.onto[i * da + t] = u;
        comp.into[i * da + t] = u;
      }
      data.comps[x].push_back(std::move(comp));
    }
  }
  return data;
}

/// Two objects joined by a single arrow, with identity-only endomorphisms.
template <class F>
FiniteLinearCategory<F> arrow_category() {
  FiniteLinearCategory<F> cat;
  cat.object_names = {"source", "sink"};
  cat.hom_dims = {{1, 1}, {0, 1}};
  cat.hom_names = {{{"id"}, {"arrow"}}, {{}, {"id"}}};
  cat.compose.assign(2, std::vector<std::vector<typename FiniteLinearCategory<F>::PairTable>>(
                            2, std::vector<typename FiniteLinearCategory<F>::PairTable>(2)));
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y)
      for (std::size_t z = 0; z < 2; ++z) {
        auto& tab = cat.compose[x][y][z];
        tab.assign(cat.hom_dims[y][z], std::vector<SparseVec<F>>(cat.hom_dims[x][y]));
        for (std::size_t g = 0; g < cat.hom_dims[y][z]; ++g)
          for (std::size_t f = 0; f < cat.hom_dims[x][y]; ++f)
            if (cat.hom_dims[x][z] > 0) tab[g][f] = detail::unit_sparse<F>(0);
      }
  cat.identity = {{F::one()}, {F::one()}};
  return cat;
}

/// Counit-scalar action on every hom space: the bialgebra acts through its
/// counit character.
template <class F>
CategoryAction<F> counit_category_action(const FiniteLinearCategory<F>& cat, HopfData<F> B) {
  CategoryAction<F> action;
  const std::size_t m = cat.objects();
  const std::size_t db = B.dim();
  action.act.assign(m, std::vector<std::vector<Matrix<F>>>(m));
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y) {
      action.act[x][y].reserve(db);
      for (std::size_t b = 0; b < db; ++b)
        action.act[x][y].push_back(Matrix<F>::identity(cat.hom_dims[x][y]).scaled(B.counit[b]));
    }
  action.B = std::move(B);
  return action;
}

}  // namespace hh
