#pragma once
/// @file subspace.hpp
/// @brief Canonical subspaces as streaming reduced row-echelon bases, with
///        quotient coordinates and membership/coordinate queries.
///
/// A SubspaceBasis maintains the unique RREF basis of the span of everything
/// inserted so far, so the result is independent of insertion order and
/// insertion is idempotent. Quotient data (complement coordinates and the
/// projection annihilating the subspace) falls out of the RREF structure.

#include <cstddef>
#include <optional>
#include <vector>

#include "hh/matrix.hpp"
#include "hh/sparse.hpp"

namespace hh {

template <class F>
class SubspaceBasis {
 public:
  using Elem = typename F::Elem;

  SubspaceBasis() : SubspaceBasis(0) {}
  explicit SubspaceBasis(std::size_t ambient) : ambient_(ambient) {}

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return rows_.size(); }

  /// RREF rows, pivot columns strictly increasing, leading coefficient 1.
  const std::vector<std::vector<Elem>>& basis() const { return rows_; }
  const std::vector<std::size_t>& pivot_cols() const { return pivots_; }

  /// Clears every pivot coordinate of v against the basis (v -= sum v[p_i] * row_i).
  void reduce_in_place(std::vector<Elem>& v) const {
    if (v.size() != ambient_) throw ShapeError("reduce: ambient mismatch");
    if constexpr (F::is_prime_field) {
      if (PrimeField::p < (std::uint64_t{1} << 20)) {
        reduce_lazy(v);
        return;
      }
    }
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Elem c = v[pivots_[i]];
      if (F::is_zero(c)) continue;
      const auto& row = rows_[i];
      for (std::size_t j = pivots_[i]; j < ambient_; ++j)
        if (!F::is_zero(row[j])) v[j] = F::sub(v[j], F::mul(c, row[j]));
    }
  }

  bool contains(const std::vector<Elem>& v) const {
    std::vector<Elem> w = v;
    reduce_in_place(w);
    for (const auto& x : w)
      if (!F::is_zero(x)) return false;
    return true;
  }

  bool contains_sparse(const SparseVec<F>& v) const {
    return contains(sparse_to_dense<F>(v, ambient_));
  }

  /// Inserts v into the span; returns true if the dimension grew. The stored
  /// basis stays in canonical RREF (unique for the span).
  bool insert(std::vector<Elem> v) {
    reduce_in_place(v);
    std::size_t lead = ambient_;
    for (std::size_t j = 0; j < ambient_; ++j)
      if (!F::is_zero(v[j])) {
        lead = j;
        break;
      }
    if (lead == ambient_) return false;
    const Elem piv_inv = F::inv(v[lead]);
    for (std::size_t j = lead; j < ambient_; ++j) v[j] = F::mul(piv_inv, v[j]);
    // Fully reduce existing rows against the new pivot column.
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      Elem c = rows_[i][lead];
      if (F::is_zero(c)) continue;
      auto& row = rows_[i];
      for (std::size_t j = lead; j < ambient_; ++j)
        if (!F::is_zero(v[j])) row[j] = F::sub(row[j], F::mul(c, v[j]));
    }
    // Insert keeping pivots strictly increasing.
    std::size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < lead) ++pos;
    rows_.insert(rows_.begin() + pos, std::move(v));
    pivots_.insert(pivots_.begin() + pos, lead);
    return true;
  }

  bool insert_sparse(const SparseVec<F>& v) {
    return insert(sparse_to_dense<F>(v, ambient_));
  }

  /// If v lies in the span, returns its coefficients over basis(); else nullopt.
  std::optional<std::vector<Elem>> coordinates(const std::vector<Elem>& v) const {
    std::vector<Elem> w = v;
    std::vector<Elem> coords(rows_.size(), F::zero());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Elem c = w[pivots_[i]];
      if (F::is_zero(c)) continue;
      coords[i] = c;
      const auto& row = rows_[i];
      for (std::size_t j = pivots_[i]; j < ambient_; ++j)
        if (!F::is_zero(row[j])) w[j] = F::sub(w[j], F::mul(c, row[j]));
    }
    for (const auto& x : w)
      if (!F::is_zero(x)) return std::nullopt;
    return coords;
  }

  /// Non-pivot columns in increasing order; these index the quotient coordinates.
  std::vector<std::size_t> complement_indices() const {
    std::vector<std::size_t> out;
    out.reserve(ambient_ - rows_.size());
    std::size_t pi = 0;
    for (std::size_t c = 0; c < ambient_; ++c) {
      if (pi < pivots_.size() && pivots_[pi] == c) {
        ++pi;
      } else {
        out.push_back(c);
      }
    }
    return out;
  }

  /// Quotient coordinates of v: reduce v, then read off complement entries.
  /// The resulting linear map annihilates the subspace exactly and restricts
  /// to the identity on the complement coordinates.
  std::vector<Elem> project(const std::vector<Elem>& v) const {
    std::vector<Elem> w = v;
    reduce_in_place(w);
    std::vector<Elem> out;
    out.reserve(ambient_ - rows_.size());
    std::size_t pi = 0;
    for (std::size_t c = 0; c < ambient_; ++c) {
      if (pi < pivots_.size() && pivots_[pi] == c) {
        ++pi;
      } else {
        out.push_back(w[c]);
      }
    }
    return out;
  }

  std::vector<Elem> project_sparse(const SparseVec<F>& v) const {
    return project(sparse_to_dense<F>(v, ambient_));
  }

  /// The (ambient - dim) x ambient matrix of project().
  Matrix<F> projection_matrix() const {
    const auto comp = complement_indices();
    Matrix<F> P(comp.size(), ambient_);
    for (std::size_t k = 0; k < comp.size(); ++k) {
      P.at(k, comp[k]) = F::one();
      for (std::size_t i = 0; i < rows_.size(); ++i)
        P.at(k, pivots_[i]) = F::neg(rows_[i][comp[k]]);
    }
    return P;
  }

 private:
  // Lazy-accumulation reduction for small prime moduli: row subtractions run
  // as plain 64-bit multiply-adds, with a single final reduction. Safe while
  // dim * (p-1)^2 stays well below 2^64 (enforced by the p < 2^20 gate).
  void reduce_lazy(std::vector<Elem>& v) const {
    const std::uint64_t p = PrimeField::p;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const std::uint64_t c = v[pivots_[i]] % p;
      if (c == 0) continue;
      const std::uint64_t f = p - c;
      const auto& row = rows_[i];
      const std::size_t start = pivots_[i];
      for (std::size_t j = start; j < ambient_; ++j) v[j] += f * row[j];
    }
    for (auto& x : v) x %= p;
  }

  std::size_t ambient_;
  std::vector<std::vector<Elem>> rows_;
  std::vector<std::size_t> pivots_;
};

/// RREF span of a list of generators (order-independent by RREF uniqueness).
template <class F>
SubspaceBasis<F> span_reduce(const std::vector<std::vector<typename F::Elem>>& gens,
                             std::size_t ambient) {
  SubspaceBasis<F> s(ambient);
  for (const auto& g : gens) s.insert(g);
  return s;
}

/// Canonical basis of the common kernel of a span of constraint rows: all v
/// with r . v = 0 for every inserted row r (dimension = ambient - span dim).
/// Streaming the rows through a SubspaceBasis first keeps memory proportional
/// to the rank rather than to the number of constraints.
template <class F>
SubspaceBasis<F> kernel_of_span(const SubspaceBasis<F>& rows) {
  const std::size_t ambient = rows.ambient_dim();
  const auto& basis = rows.basis();
  const auto& pivots = rows.pivot_cols();
  std::vector<bool> is_pivot(ambient, false);
  for (auto p : pivots) is_pivot[p] = true;
  SubspaceBasis<F> out(ambient);
  for (std::size_t f = 0; f < ambient; ++f) {
    if (is_pivot[f]) continue;
    std::vector<typename F::Elem> w(ambient, F::zero());
    w[f] = F::one();
    for (std::size_t i = 0; i < pivots.size(); ++i) w[pivots[i]] = F::neg(basis[i][f]);
    out.insert(std::move(w));
  }
  return out;
}

/// Canonical basis of the kernel of m (dimension = cols - rank).
template <class F>
SubspaceBasis<F> kernel_basis(const Matrix<F>& m) {
  Matrix<F> r = m;
  const auto pivots = rref_in_place(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  SubspaceBasis<F> out(m.cols());
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<typename F::Elem> w(m.cols(), F::zero());
    w[f] = F::one();
    for (std::size_t i = 0; i < pivots.size(); ++i) w[pivots[i]] = F::neg(r.at(i, f));
    out.insert(std::move(w));
  }
  return out;
}

}  // namespace hh
