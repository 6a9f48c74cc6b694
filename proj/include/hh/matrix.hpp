#pragma once
/// @file matrix.hpp
/// @brief Dense matrices over an exact field, with deterministic reduced
///        row-echelon elimination and fraction-free rank over the rationals.

#include <cstddef>
#include <vector>

#include "hh/field.hpp"

namespace hh {

template <class F>
class Matrix {
 public:
  using Elem = typename F::Elem;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows_(r), cols_(c), a_(r * c, F::zero()) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = F::one();
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Elem& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Elem& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  bool operator==(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (std::size_t k = 0; k < a_.size(); ++k)
      if (!F::eq(a_[k], o.a_[k])) return false;
    return true;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!F::is_zero(x)) return false;
    return true;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw ShapeError("matrix product shape mismatch");
    Matrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Elem& x = at(i, k);
        if (F::is_zero(x)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j)
          r.at(i, j) = F::add(r.at(i, j), F::mul(x, o.at(k, j)));
      }
    return r;
  }

  Matrix operator+(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeError("matrix sum shape mismatch");
    Matrix r(rows_, cols_);
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = F::add(a_[k], o.a_[k]);
    return r;
  }

  Matrix operator-(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeError("matrix diff shape mismatch");
    Matrix r(rows_, cols_);
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = F::sub(a_[k], o.a_[k]);
    return r;
  }

  Matrix scaled(const Elem& c) const {
    Matrix r(rows_, cols_);
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = F::mul(c, a_[k]);
    return r;
  }

  std::vector<Elem> apply(const std::vector<Elem>& v) const {
    if (v.size() != cols_) throw ShapeError("matrix apply shape mismatch");
    std::vector<Elem> out(rows_, F::zero());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!F::is_zero(at(i, j))) out[i] = F::add(out[i], F::mul(at(i, j), v[j]));
    return out;
  }

  Matrix transpose() const {
    Matrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Elem> a_;
};

/// Deterministic reduced row-echelon form: leftmost pivot column first, first
/// nonzero row chosen as pivot, pivots normalized to 1, all other rows fully
/// reduced. Returns the pivot columns in increasing order.
template <class F>
std::vector<std::size_t> rref_in_place(Matrix<F>& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t pr = r;
    while (pr < m.rows() && F::is_zero(m.at(pr, c))) ++pr;
    if (pr == m.rows()) continue;
    if (pr != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(pr, j), m.at(r, j));
    typename F::Elem piv_inv = F::inv(m.at(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m.at(r, j) = F::mul(piv_inv, m.at(r, j));
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || F::is_zero(m.at(i, c))) continue;
      typename F::Elem f = m.at(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        m.at(i, j) = F::sub(m.at(i, j), F::mul(f, m.at(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class F>
std::size_t rank(const Matrix<F>& m) {
  Matrix<F> c = m;
  return rref_in_place(c).size();
}

/// Fraction-free (Bareiss) rank over the rationals: each row is scaled to
/// integers, then one-step fraction-free elimination with exact divisions
/// keeps the intermediate entries as minors of the integer matrix.
inline std::size_t rank(const Matrix<RationalField>& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::vector<mpz_class>> z(rows, std::vector<mpz_class>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < cols; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m.at(i, j).get_den().get_mpz_t());
    for (std::size_t j = 0; j < cols; ++j) {
      mpq_class s = m.at(i, j) * mpq_class(l);
      z[i][j] = s.get_num();  // exact: l clears every denominator in the row
    }
  }
  mpz_class prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pr = r;
    while (pr < rows && z[pr][c] == 0) ++pr;
    if (pr == rows) continue;
    if (pr != r) std::swap(z[pr], z[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        mpz_class t = z[i][j] * z[r][c] - z[i][c] * z[r][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        z[i][j] = t;
      }
      z[i][c] = 0;
    }
    prev = z[r][c];
    ++r;
  }
  return r;
}

}  // namespace hh
