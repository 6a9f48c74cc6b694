#pragma once
/// @file sparse.hpp
/// @brief Sparse vectors with canonical (sorted, combined, zero-free) form.
///
/// Large chain groups are never materialized densely; face maps and diagonal
/// actions produce sparse vectors with small support, built through
/// SparseBuilder and compared in canonical form.

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "hh/field.hpp"

namespace hh {

template <class F>
using SparseVec = std::vector<std::pair<std::size_t, typename F::Elem>>;

/// Accumulates (index, coefficient) terms; finish() sorts by index, combines
/// duplicates, and drops zeros, yielding the canonical form.
template <class F>
struct SparseBuilder {
  std::vector<std::pair<std::size_t, typename F::Elem>> terms;

  void add(std::size_t i, typename F::Elem c) {
    if (!F::is_zero(c)) terms.emplace_back(i, std::move(c));
  }

  SparseVec<F> finish() {
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseVec<F> out;
    out.reserve(terms.size());
    for (auto& t : terms) {
      if (!out.empty() && out.back().first == t.first)
        out.back().second = F::add(out.back().second, t.second);
      else
        out.push_back(std::move(t));
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const auto& t) { return F::is_zero(t.second); }),
              out.end());
    terms.clear();
    return out;
  }
};

/// dst += c * src for canonical sparse vectors; result is canonical.
template <class F>
SparseVec<F> sparse_axpy(const SparseVec<F>& dst, const SparseVec<F>& src,
                         const typename F::Elem& c) {
  SparseBuilder<F> b;
  for (const auto& t : dst) b.add(t.first, t.second);
  for (const auto& t : src) b.add(t.first, F::mul(c, t.second));
  return b.finish();
}

template <class F>
bool sparse_eq(const SparseVec<F>& a, const SparseVec<F>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].first != b[i].first || !F::eq(a[i].second, b[i].second)) return false;
  return true;
}

template <class F>
std::vector<typename F::Elem> sparse_to_dense(const SparseVec<F>& v, std::size_t n) {
  std::vector<typename F::Elem> out(n, F::zero());
  for (const auto& t : v) out[t.first] = t.second;
  return out;
}

template <class F>
SparseVec<F> dense_to_sparse(const std::vector<typename F::Elem>& v) {
  SparseVec<F> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!F::is_zero(v[i])) out.emplace_back(i, v[i]);
  return out;
}

}  // namespace hh
