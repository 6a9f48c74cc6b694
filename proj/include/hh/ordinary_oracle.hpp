#pragma once
/// @file ordinary_oracle.hpp
/// @brief Self-contained reference computation of coinvariant Hochschild-type
///        homology for a module algebra with bimodule coefficients, written
///        against the coefficient-first simplicial model with its own Gauss
///        elimination and its own coproduct expansion. Intended for
///        cross-checking the main pipeline on cocommutative examples; shares
///        no linear algebra with it.

#include <cstddef>
#include <functional>
#include <map>
#include <vector>

#include "hh/errors.hpp"
#include "hh/module_algebra.hpp"

namespace hh::oracle {

namespace detail {

/// Plain row-echelon accumulator: rows keep a unit leading entry, later rows
/// are reduced against earlier pivots only (rank is all we need).
template <class F>
struct Eliminator {
  std::vector<std::vector<typename F::Elem>> rows;
  std::vector<std::size_t> pivots;

  bool add(std::vector<typename F::Elem> v) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const auto c = v[pivots[r]];
      if (F::is_zero(c)) continue;
      for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = F::sub(v[i], F::mul(c, rows[r][i]));
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (F::is_zero(v[i])) continue;
      const auto inv = F::inv(v[i]);
      for (auto& x : v) x = F::mul(x, inv);
      rows.push_back(std::move(v));
      pivots.push_back(i);
      return true;
    }
    return false;
  }

  std::size_t rank() const { return rows.size(); }
};

/// Right-nested expansion of the repeated coproduct into `legs` tensor
/// factors of basis element i: apply the coproduct to the last factor first.
template <class F>
std::map<std::vector<std::size_t>, typename F::Elem> repeated_coproduct(const HopfData<F>& B,
                                                                        std::size_t legs,
                                                                        std::size_t i) {
  std::map<std::vector<std::size_t>, typename F::Elem> out;
  if (legs == 0) {
    if (!F::is_zero(B.counit[i])) out[{}] = B.counit[i];
    return out;
  }
  if (legs == 1) {
    out[{i}] = F::one();
    return out;
  }
  for (const auto& t : B.comult[i]) {
    auto tail = repeated_coproduct(B, legs - 1, t.k);
    for (const auto& [tuple, c] : tail) {
      std::vector<std::size_t> full;
      full.reserve(legs);
      full.push_back(t.j);
      full.insert(full.end(), tuple.begin(), tuple.end());
      auto& slot = out[full];
      slot = F::add(slot, F::mul(t.c, c));
      if (F::is_zero(slot)) out.erase(full);
    }
  }
  return out;
}

}  // namespace detail

struct OrdinaryHomologyTable {
  std::vector<std::size_t> quotient_dims;  ///< coinvariant dims, degrees 0..top
  std::vector<std::size_t> homology;       ///< degrees 0..top
};

/// Coinvariant homology of the coefficient-first complex V ox A^(ox n) with
/// the usual cyclic-free boundary: first face multiplies a_1 into v on the
/// right, interior faces merge neighbours, last face multiplies a_n into v on
/// the left. The diagonal action (one coproduct leg on v, the rest in order
/// on the a_i) is quotiented out degreewise before taking homology. Only
/// meaningful when the acting bialgebra is cocommutative.
template <class F>
OrdinaryHomologyTable ordinary_coinvariant_homology(const ModuleAlgebra<F>& ma,
                                                    const EquivariantBimodule<F>& V,
                                                    std::size_t top) {
  using Elem = typename F::Elem;
  const std::size_t da = ma.A.dim, dv = V.dim, db = ma.B.dim();

  // level dims 0..top+1, coefficient slow: index = w * da^n + tuple
  std::vector<std::size_t> pow_da(top + 2, 1);
  for (std::size_t n = 1; n <= top + 1; ++n) {
    if (pow_da[n - 1] > 2000000 / da) throw SizeLimit("reference complex too large");
    pow_da[n] = pow_da[n - 1] * da;
  }
  auto level_dim = [&](std::size_t n) { return dv * pow_da[n]; };

  auto decode = [&](std::size_t n, std::size_t idx, std::size_t& w,
                    std::vector<std::size_t>& t) {
    w = idx / pow_da[n];
    std::size_t rest = idx % pow_da[n];
    t.assign(n, 0);
    for (std::size_t i = n; i-- > 0;) {
      t[i] = rest % da;
      rest /= da;
    }
  };
  auto encode = [&](std::size_t n, std::size_t w, const std::vector<std::size_t>& t) {
    std::size_t idx = w;
    for (std::size_t i = 0; i < n; ++i) idx = idx * da + t[i];
    return idx;
  };

  // boundary of one basis vector of level n, as a dense vector in level n-1
  auto boundary = [&](std::size_t n, std::size_t idx) {
    std::vector<Elem> out(level_dim(n - 1), F::zero());
    std::size_t w;
    std::vector<std::size_t> t;
    decode(n, idx, w, t);
    std::vector<Elem> vw(dv, F::zero());
    vw[w] = F::one();
    std::vector<std::size_t> u(n - 1);
    {  // j = 0: v . a_1
      auto img = V.right[t[0]].apply(vw);
      for (std::size_t i = 1; i < n; ++i) u[i - 1] = t[i];
      for (std::size_t w2 = 0; w2 < dv; ++w2)
        if (!F::is_zero(img[w2])) {
          const auto pos = encode(n - 1, w2, u);
          out[pos] = F::add(out[pos], img[w2]);
        }
    }
    for (std::size_t j = 1; j < n; ++j) {  // merge a_j a_{j+1}
      for (std::size_t i = 0; i + 1 < j; ++i) u[i] = t[i];
      for (std::size_t i = j + 1; i < n; ++i) u[i - 1] = t[i];
      const auto& prod = ma.A.mult[t[j - 1]][t[j]];
      for (std::size_t x = 0; x < da; ++x) {
        if (F::is_zero(prod[x])) continue;
        u[j - 1] = x;
        const auto pos = encode(n - 1, w, u);
        out[pos] = (j % 2) ? F::sub(out[pos], prod[x]) : F::add(out[pos], prod[x]);
      }
    }
    {  // j = n: a_n . v
      auto img = V.left[t[n - 1]].apply(vw);
      for (std::size_t i = 0; i + 1 < n; ++i) u[i] = t[i];
      for (std::size_t w2 = 0; w2 < dv; ++w2)
        if (!F::is_zero(img[w2])) {
          const auto pos = encode(n - 1, w2, u);
          out[pos] = (n % 2) ? F::sub(out[pos], img[w2]) : F::add(out[pos], img[w2]);
        }
    }
    return out;
  };

  // coinvariant relation span per level 0..top
  std::vector<detail::Eliminator<F>> relations(top + 1);
  for (std::size_t n = 0; n <= top; ++n)
    for (std::size_t b = 0; b < db; ++b) {
      const auto legs = detail::repeated_coproduct(ma.B, n + 1, b);
      for (std::size_t idx = 0; idx < level_dim(n); ++idx) {
        std::size_t w;
        std::vector<std::size_t> t;
        decode(n, idx, w, t);
        std::vector<Elem> row(level_dim(n), F::zero());
        std::vector<Elem> vw(dv, F::zero());
        vw[w] = F::one();
        for (const auto& [tuple, c] : legs) {
          // tuple[0] acts on the coefficient, the rest on the tensor legs
          auto vimg = V.bact[tuple[0]].apply(vw);
          std::vector<std::vector<Elem>> aimg(n);
          for (std::size_t i = 0; i < n; ++i)
            aimg[i] = ma.rho[tuple[i + 1]].apply(ma.A.basis_vec(t[i]));
          std::vector<std::size_t> u(n, 0);
          std::function<void(std::size_t, const Elem&)> rec = [&](std::size_t pos,
                                                                  const Elem& acc) {
            if (pos == n) {
              for (std::size_t w2 = 0; w2 < dv; ++w2)
                if (!F::is_zero(vimg[w2])) {
                  const auto p = encode(n, w2, u);
                  row[p] = F::add(row[p], F::mul(acc, vimg[w2]));
                }
              return;
            }
            for (std::size_t x = 0; x < da; ++x) {
              if (F::is_zero(aimg[pos][x])) continue;
              u[pos] = x;
              rec(pos + 1, F::mul(acc, aimg[pos][x]));
            }
          };
          rec(0, c);
        }
        row[idx] = F::sub(row[idx], ma.B.counit[b]);
        relations[n].add(std::move(row));
      }
    }

  OrdinaryHomologyTable table;
  for (std::size_t n = 0; n <= top; ++n)
    table.quotient_dims.push_back(level_dim(n) - relations[n].rank());

  // rank of the induced boundary at each level 1..top+1
  std::vector<std::size_t> induced_rank(top + 2, 0);
  for (std::size_t n = 1; n <= top + 1; ++n) {
    detail::Eliminator<F> acc;
    for (const auto& r : relations[n - 1].rows) acc.add(r);
    const std::size_t base = acc.rank();
    for (std::size_t idx = 0; idx < level_dim(n); ++idx) acc.add(boundary(n, idx));
    induced_rank[n] = acc.rank() - base;
  }
  for (std::size_t n = 0; n <= top; ++n)
    table.homology.push_back(table.quotient_dims[n] - induced_rank[n] - induced_rank[n + 1]);
  return table;
}

}  // namespace hh::oracle
