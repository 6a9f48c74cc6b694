// Unit tests for the exact fields, dense matrices, and echelon subspaces.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <numeric>

#include "hh/matrix.hpp"
#include "hh/subspace.hpp"
#include "hh/tensor.hpp"

using namespace hh;

namespace {

// Small deterministic PRNG so property tests are reproducible.
struct XorShift {
  std::uint64_t s;
  explicit XorShift(std::uint64_t seed) : s(seed) {}
  std::uint64_t next() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
  }
  long small(long lo, long hi) {  // inclusive range
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

template <class F>
Matrix<F> random_matrix(XorShift& rng, std::size_t r, std::size_t c) {
  Matrix<F> m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = F::from_long(rng.small(-4, 4));
  return m;
}

}  // namespace

TEST_CASE("rational arithmetic is exact") {
  using F = RationalField;
  auto half = F::from_fraction(1, 2);
  auto third = F::from_fraction(1, 3);
  CHECK(F::eq(F::add(half, third), F::from_fraction(5, 6)));
  CHECK(F::eq(F::mul(half, third), F::from_fraction(1, 6)));
  CHECK(F::eq(F::inv(F::from_fraction(-3, 7)), F::from_fraction(-7, 3)));
  CHECK(F::str(F::from_fraction(1, 2)) == "1/2");
  CHECK(F::str(F::from_fraction(4, 2)) == "2");
  CHECK(F::is_zero(F::sub(half, half)));
}

TEST_CASE("prime field arithmetic and modulus validation") {
  using F = PrimeField;
  REQUIRE(F::p == 32003);
  CHECK(F::eq(F::mul(F::from_long(2), F::inv(F::from_long(2))), F::one()));
  CHECK(F::eq(F::inv(F::from_long(2)), 16002));
  CHECK(F::eq(F::from_long(-1), 32002));
  CHECK(F::eq(F::add(32002, 1), 0));
  CHECK_THROWS_AS(PrimeField::set_modulus(4), ParseError);
  CHECK_THROWS_AS(PrimeField::set_modulus(1), ParseError);
  PrimeField::set_modulus(7);
  CHECK(F::eq(F::from_long(10), 3));
  CHECK(F::eq(F::inv(3), 5));
  PrimeField::set_modulus(32003);
}

TEST_CASE("tensor index encoding is row-major, rightmost fastest") {
  TensorShape sh({2, 3, 2});
  CHECK(sh.total == 12);
  CHECK(sh.index({0, 0, 0}) == 0);
  CHECK(sh.index({0, 0, 1}) == 1);
  CHECK(sh.index({0, 1, 0}) == 2);
  CHECK(sh.index({1, 2, 1}) == 11);
  std::vector<std::size_t> t;
  sh.decode(7, t);
  CHECK(t == std::vector<std::size_t>{1, 0, 1});
  CHECK(sh.index(t) == 7);
}

TEST_CASE_TEMPLATE("rank of a dependent-row matrix", F, RationalField, PrimeField) {
  Matrix<F> m(2, 2);
  m.at(0, 0) = F::from_long(1);
  m.at(0, 1) = F::from_long(1);
  m.at(1, 0) = F::from_long(2);
  m.at(1, 1) = F::from_long(2);
  CHECK(rank(m) == 1);
}

TEST_CASE("fraction-free rank agrees with division rank over the rationals") {
  XorShift rng(12345);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t r = 1 + trial % 6, c = 1 + (trial / 2) % 6;
    Matrix<RationalField> m = random_matrix<RationalField>(rng, r, c);
    // also exercise non-integer entries
    if (trial % 3 == 0 && r > 0 && c > 0) m.at(0, 0) = RationalField::from_fraction(1, 3);
    Matrix<RationalField> cpy = m;
    CHECK(rank(m) == rref_in_place(cpy).size());
  }
}

TEST_CASE_TEMPLATE("kernel of [[1,1]] is span{(1,-1)}", F, RationalField, PrimeField) {
  Matrix<F> m(1, 2);
  m.at(0, 0) = F::one();
  m.at(0, 1) = F::one();
  auto k = kernel_basis(m);
  REQUIRE(k.dim() == 1);
  CHECK(F::eq(k.basis()[0][0], F::one()));
  CHECK(F::eq(k.basis()[0][1], F::neg(F::one())));
  CHECK(k.pivot_cols() == std::vector<std::size_t>{0});
}

TEST_CASE_TEMPLATE("kernel dimension = cols - rank", F, RationalField, PrimeField) {
  XorShift rng(999);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t r = 1 + trial % 5, c = 1 + (trial / 3) % 7;
    Matrix<F> m = random_matrix<F>(rng, r, c);
    auto k = kernel_basis(m);
    CHECK(k.dim() == c - rank(m));
    // every kernel basis vector is annihilated by m
    for (const auto& v : k.basis()) {
      auto img = m.apply(v);
      for (const auto& x : img) CHECK(F::is_zero(x));
    }
  }
}

TEST_CASE_TEMPLATE("span_reduce canonical form", F, RationalField, PrimeField) {
  std::vector<std::vector<typename F::Elem>> gens = {
      {F::from_long(1), F::from_long(0)},
      {F::from_long(1), F::from_long(1)},
      {F::from_long(2), F::from_long(1)}};
  auto s = span_reduce<F>(gens, 2);
  REQUIRE(s.dim() == 2);
  CHECK(s.pivot_cols() == std::vector<std::size_t>{0, 1});
  CHECK(F::eq(s.basis()[0][0], F::one()));
  CHECK(F::is_zero(s.basis()[0][1]));
  CHECK(F::is_zero(s.basis()[1][0]));
  CHECK(F::eq(s.basis()[1][1], F::one()));
}

TEST_CASE_TEMPLATE("span_reduce is order-independent and idempotent", F, RationalField,
                   PrimeField) {
  XorShift rng(4242);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 5;
    std::vector<std::vector<typename F::Elem>> gens;
    for (int g = 0; g < 6; ++g) {
      std::vector<typename F::Elem> v(n);
      for (auto& x : v) x = F::from_long(rng.small(-3, 3));
      gens.push_back(v);
    }
    auto s1 = span_reduce<F>(gens, n);
    std::reverse(gens.begin(), gens.end());
    auto s2 = span_reduce<F>(gens, n);
    REQUIRE(s1.dim() == s2.dim());
    for (std::size_t i = 0; i < s1.dim(); ++i)
      for (std::size_t j = 0; j < n; ++j) CHECK(F::eq(s1.basis()[i][j], s2.basis()[i][j]));
    // idempotence: re-inserting the basis changes nothing
    auto s3 = s1;
    for (const auto& row : s1.basis()) CHECK_FALSE(s3.insert(row));
    CHECK(s3.dim() == s1.dim());
  }
}

TEST_CASE("quotient data of span{(1,0,0)} in Q^3") {
  using F = RationalField;
  SubspaceBasis<F> s(3);
  s.insert({F::one(), F::zero(), F::zero()});
  CHECK(s.complement_indices() == std::vector<std::size_t>{1, 2});
  Matrix<F> P = s.projection_matrix();
  REQUIRE(P.rows() == 2);
  REQUIRE(P.cols() == 3);
  Matrix<F> expect(2, 3);
  expect.at(0, 1) = F::one();
  expect.at(1, 2) = F::one();
  CHECK(P == expect);
}

TEST_CASE_TEMPLATE("projection annihilates the subspace and is identity on complement", F,
                   RationalField, PrimeField) {
  XorShift rng(77);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t n = 6;
    SubspaceBasis<F> s(n);
    for (int g = 0; g < 3; ++g) {
      std::vector<typename F::Elem> v(n);
      for (auto& x : v) x = F::from_long(rng.small(-3, 3));
      s.insert(v);
    }
    const auto comp = s.complement_indices();
    CHECK(comp.size() == n - s.dim());
    for (const auto& row : s.basis()) {
      auto q = s.project(row);
      for (const auto& x : q) CHECK(F::is_zero(x));
    }
    // identity on complement coordinate vectors modulo the subspace: the
    // projection matrix restricted to complement columns is the identity
    Matrix<F> P = s.projection_matrix();
    for (std::size_t k = 0; k < comp.size(); ++k)
      for (std::size_t l = 0; l < comp.size(); ++l)
        CHECK(F::eq(P.at(k, comp[l]), l == k ? F::one() : F::zero()));
    // and project() agrees with the matrix
    std::vector<typename F::Elem> v(n);
    for (auto& x : v) x = F::from_long(rng.small(-5, 5));
    auto q1 = s.project(v);
    auto q2 = P.apply(v);
    REQUIRE(q1.size() == q2.size());
    for (std::size_t k = 0; k < q1.size(); ++k) CHECK(F::eq(q1[k], q2[k]));
  }
}

TEST_CASE_TEMPLATE("coordinates solve membership exactly", F, RationalField, PrimeField) {
  XorShift rng(31337);
  const std::size_t n = 5;
  SubspaceBasis<F> s(n);
  std::vector<std::vector<typename F::Elem>> gens;
  for (int g = 0; g < 3; ++g) {
    std::vector<typename F::Elem> v(n);
    for (auto& x : v) x = F::from_long(rng.small(-3, 3));
    gens.push_back(v);
    s.insert(v);
  }
  // combination of basis rows reconstructs; outside vector is rejected
  std::vector<typename F::Elem> v(n, F::zero());
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t j = 0; j < n; ++j)
      v[j] = F::add(v[j], F::mul(F::from_long(static_cast<long>(i) + 2), s.basis()[i][j]));
  auto coords = s.coordinates(v);
  REQUIRE(coords.has_value());
  std::vector<typename F::Elem> back(n, F::zero());
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t j = 0; j < n; ++j)
      back[j] = F::add(back[j], F::mul((*coords)[i], s.basis()[i][j]));
  for (std::size_t j = 0; j < n; ++j) CHECK(F::eq(back[j], v[j]));
  if (s.dim() < n) {
    auto comp = s.complement_indices();
    std::vector<typename F::Elem> out(n, F::zero());
    out[comp[0]] = F::one();
    // adding a complement coordinate leaves the span
    for (std::size_t j = 0; j < n; ++j) out[j] = F::add(out[j], v[j]);
    CHECK_FALSE(s.coordinates(out).has_value());
  }
}

TEST_CASE("sparse vectors canonicalize") {
  using F = RationalField;
  SparseBuilder<F> b;
  b.add(3, F::from_long(2));
  b.add(1, F::from_long(5));
  b.add(3, F::from_long(-2));
  b.add(0, F::zero());
  auto v = b.finish();
  REQUIRE(v.size() == 1);
  CHECK(v[0].first == 1);
  CHECK(F::eq(v[0].second, F::from_long(5)));
  auto w = sparse_axpy<F>(v, v, F::from_long(-1));
  CHECK(w.empty());
}

TEST_CASE("matrix product and apply") {
  using F = RationalField;
  Matrix<F> a(2, 3), b(3, 2);
  long val = 1;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j) a.at(i, j) = F::from_long(val++);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 2; ++j) b.at(i, j) = F::from_long(val++);
  Matrix<F> c = a * b;
  // [[1,2,3],[4,5,6]] * [[7,8],[9,10],[11,12]] = [[58,64],[139,154]]
  CHECK(F::eq(c.at(0, 0), F::from_long(58)));
  CHECK(F::eq(c.at(0, 1), F::from_long(64)));
  CHECK(F::eq(c.at(1, 0), F::from_long(139)));
  CHECK(F::eq(c.at(1, 1), F::from_long(154)));
  auto y = a.apply({F::one(), F::zero(), F::neg(F::one())});
  CHECK(F::eq(y[0], F::from_long(-2)));
  CHECK(F::eq(y[1], F::from_long(-2)));
  CHECK_THROWS_AS(b * a * b * b, ShapeError);
}
