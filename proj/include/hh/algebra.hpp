#pragma once
/// @file algebra.hpp
/// @brief Finite-dimensional associative unital algebras by structure constants.

#include <string>
#include <vector>

#include "hh/field.hpp"
#include "hh/matrix.hpp"
#include "hh/validation.hpp"

namespace hh {

/// An algebra given by a basis, the multiplication table (coefficients of
/// e_i * e_j over the basis), and the coefficients of the unit element.
template <class F>
struct StructureAlgebra {
  using Elem = typename F::Elem;

  std::size_t dim = 0;
  std::vector<std::string> basis_names;
  std::vector<std::vector<std::vector<Elem>>> mult;  // mult[i][j] = e_i * e_j
  std::vector<Elem> unit;

  const std::string& name_of(std::size_t i) const { return basis_names[i]; }

  void check_shapes() const {
    if (basis_names.size() != dim) throw ShapeError("algebra: basis_names size != dim");
    if (mult.size() != dim) throw ShapeError("algebra: mult table has wrong row count");
    for (const auto& row : mult) {
      if (row.size() != dim) throw ShapeError("algebra: mult table has wrong column count");
      for (const auto& v : row)
        if (v.size() != dim) throw ShapeError("algebra: product vector has wrong length");
    }
    if (unit.size() != dim) throw ShapeError("algebra: unit vector has wrong length");
  }

  /// Bilinear extension of the multiplication table.
  std::vector<Elem> mul_vec(const std::vector<Elem>& x, const std::vector<Elem>& y) const {
    std::vector<Elem> out(dim, F::zero());
    for (std::size_t i = 0; i < dim; ++i) {
      if (F::is_zero(x[i])) continue;
      for (std::size_t j = 0; j < dim; ++j) {
        if (F::is_zero(y[j])) continue;
        const Elem c = F::mul(x[i], y[j]);
        const auto& prod = mult[i][j];
        for (std::size_t k = 0; k < dim; ++k)
          if (!F::is_zero(prod[k])) out[k] = F::add(out[k], F::mul(c, prod[k]));
      }
    }
    return out;
  }

  std::vector<Elem> basis_vec(std::size_t i) const {
    std::vector<Elem> v(dim, F::zero());
    v[i] = F::one();
    return v;
  }

  /// Matrix of left multiplication by x (columns = images of basis vectors).
  Matrix<F> left_mult_matrix(const std::vector<Elem>& x) const {
    Matrix<F> m(dim, dim);
    for (std::size_t j = 0; j < dim; ++j) {
      auto col = mul_vec(x, basis_vec(j));
      for (std::size_t r = 0; r < dim; ++r) m.at(r, j) = col[r];
    }
    return m;
  }

  Matrix<F> right_mult_matrix(const std::vector<Elem>& x) const {
    Matrix<F> m(dim, dim);
    for (std::size_t j = 0; j < dim; ++j) {
      auto col = mul_vec(basis_vec(j), x);
      for (std::size_t r = 0; r < dim; ++r) m.at(r, j) = col[r];
    }
    return m;
  }

  bool is_commutative() const {
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = i + 1; j < dim; ++j)
        for (std::size_t k = 0; k < dim; ++k)
          if (!F::eq(mult[i][j][k], mult[j][i][k])) return false;
    return true;
  }

  /// Associativity on all basis triples and the two-sided unit law.
  ValidationReport validate() const {
    check_shapes();
    ValidationReport rep("algebra");
    for (std::size_t i = 0; i < dim; ++i) {
      auto left = mul_vec(unit, basis_vec(i));
      auto right = mul_vec(basis_vec(i), unit);
      for (std::size_t k = 0; k < dim; ++k) {
        if (!F::eq(left[k], i == k ? F::one() : F::zero()))
          rep.fail("left unit law fails at basis " + name_of(i));
        if (!F::eq(right[k], i == k ? F::one() : F::zero()))
          rep.fail("right unit law fails at basis " + name_of(i));
      }
    }
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t k = 0; k < dim; ++k) {
          auto lhs = mul_vec(mul_vec(basis_vec(i), basis_vec(j)), basis_vec(k));
          auto rhs = mul_vec(basis_vec(i), mul_vec(basis_vec(j), basis_vec(k)));
          for (std::size_t t = 0; t < dim; ++t)
            if (!F::eq(lhs[t], rhs[t])) {
              rep.fail("associativity fails at (" + name_of(i) + ", " + name_of(j) + ", " +
                       name_of(k) + ")");
              break;
            }
        }
    return rep;
  }
};

/// The algebra of dual numbers k[y]/(y^2), basis {1, y}.
template <class F>
StructureAlgebra<F> dual_numbers_algebra() {
  StructureAlgebra<F> a;
  a.dim = 2;
  a.basis_names = {"1", "y"};
  a.unit = {F::one(), F::zero()};
  a.mult.assign(2, std::vector<std::vector<typename F::Elem>>(
                       2, std::vector<typename F::Elem>(2, F::zero())));
  a.mult[0][0][0] = F::one();  // 1*1 = 1
  a.mult[0][1][1] = F::one();  // 1*y = y
  a.mult[1][0][1] = F::one();  // y*1 = y
  // y*y = 0
  return a;
}

}  // namespace hh
