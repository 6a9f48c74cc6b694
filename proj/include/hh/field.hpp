#pragma once
/// @file field.hpp
/// @brief Exact coefficient fields: arbitrary-precision rationals and F_p.
///
/// All arithmetic in the engine is exact; no floating point is used anywhere.
/// A field is a stateless trait struct exposing a value type `Elem` and static
/// operations; templated code calls `F::add(a,b)` etc. so the two fields can
/// share every algorithm.

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "hh/errors.hpp"

namespace hh {

/// Arbitrary-precision rationals backed by GMP (always canonicalized).
struct RationalField {
  using Elem = mpq_class;
  static constexpr bool is_prime_field = false;

  static Elem zero() { return Elem(0); }
  static Elem one() { return Elem(1); }
  static Elem from_long(long n) { return Elem(n); }
  static Elem from_fraction(long num, long den) {
    if (den == 0) throw ParseError("rational scalar with zero denominator");
    Elem r(num, den);
    r.canonicalize();
    return r;
  }
  static bool is_zero(const Elem& a) { return sgn(a) == 0; }
  static bool eq(const Elem& a, const Elem& b) { return a == b; }
  static Elem add(const Elem& a, const Elem& b) { return a + b; }
  static Elem sub(const Elem& a, const Elem& b) { return a - b; }
  static Elem mul(const Elem& a, const Elem& b) { return a * b; }
  static Elem neg(const Elem& a) { return -a; }
  static Elem inv(const Elem& a) {
    if (is_zero(a)) throw HHError("division by zero in rational field");
    return Elem(1) / a;
  }
  static std::string str(const Elem& a) { return a.get_str(); }
  static const char* name() { return "rational"; }
};

/// The prime field F_p with a process-global modulus (default p = 32003).
/// Elements are stored reduced in [0, p). The modulus must be set (once,
/// before any arithmetic) via set_modulus; it is validated to be prime.
struct PrimeField {
  using Elem = std::uint64_t;
  static constexpr bool is_prime_field = true;

  inline static std::uint64_t p = 32003;

  static bool is_prime(std::uint64_t q) {
    if (q < 2) return false;
    for (std::uint64_t d = 2; d * d <= q; ++d)
      if (q % d == 0) return false;
    return true;
  }

  static void set_modulus(std::uint64_t q) {
    if (!is_prime(q)) throw ParseError("p must be prime");
    if (q >= (std::uint64_t{1} << 31))
      throw ParseError("prime modulus must be below 2^31");
    p = q;
  }

  static Elem zero() { return 0; }
  static Elem one() { return 1 % p; }
  static Elem from_long(long n) {
    long long m = static_cast<long long>(n) % static_cast<long long>(p);
    if (m < 0) m += static_cast<long long>(p);
    return static_cast<Elem>(m);
  }
  static Elem from_fraction(long num, long den) {
    if (den == 0) throw ParseError("scalar with zero denominator");
    return mul(from_long(num), inv(from_long(den)));
  }
  static bool is_zero(Elem a) { return a == 0; }
  static bool eq(Elem a, Elem b) { return a == b; }
  static Elem add(Elem a, Elem b) {
    Elem s = a + b;
    return s >= p ? s - p : s;
  }
  static Elem sub(Elem a, Elem b) { return a >= b ? a - b : a + p - b; }
  static Elem mul(Elem a, Elem b) { return (a * b) % p; }  // p < 2^31: no overflow
  static Elem neg(Elem a) { return a == 0 ? 0 : p - a; }
  static Elem inv(Elem a) {
    if (a == 0) throw HHError("division by zero in prime field");
    // extended Euclid
    std::int64_t t = 0, nt = 1;
    std::int64_t r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a);
    while (nr != 0) {
      std::int64_t q = r / nr;
      std::int64_t tmp = t - q * nt;
      t = nt;
      nt = tmp;
      tmp = r - q * nr;
      r = nr;
      nr = tmp;
    }
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<Elem>(t);
  }
  static std::string str(Elem a) { return std::to_string(a); }
  static const char* name() { return "prime"; }
};

}  // namespace hh
