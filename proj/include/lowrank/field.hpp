#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "lowrank/rational.hpp"

namespace lowrank {

/// The rationals as a coefficient field for the generic algorithms.
struct RationalField {
  using T = Rational;

  T zero() const { return T(0); }
  T one() const { return T(1); }
  bool is_zero(const T& a) const { return sgn(a) == 0; }
  bool is_one(const T& a) const { return a == 1; }
  T add(const T& a, const T& b) const { return a + b; }
  T sub(const T& a, const T& b) const { return a - b; }
  T mul(const T& a, const T& b) const { return a * b; }
  T neg(const T& a) const { return -a; }
  T inv(const T& a) const {
    if (sgn(a) == 0) throw std::domain_error("inverse of zero");
    return T(1) / a;
  }
  T from_int(long v) const { return T(v); }
  T from_rational(const Rational& q) const { return q; }
  /// acc -= a * b
  void sub_mul(T& acc, const T& a, const T& b) const { acc -= a * b; }
  friend bool operator==(const RationalField&, const RationalField&) = default;
};

class BadPrime : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Z/pZ for an odd prime p < 2^31.
struct PrimeField {
  using T = std::uint32_t;
  std::uint32_t p;

  explicit PrimeField(std::uint32_t prime) : p(prime) {}

  T zero() const { return 0; }
  T one() const { return 1; }
  bool is_zero(T a) const { return a == 0; }
  bool is_one(T a) const { return a == 1; }
  T add(T a, T b) const {
    const T s = a + b;
    return s >= p ? s - p : s;
  }
  T sub(T a, T b) const { return a >= b ? a - b : a + p - b; }
  T mul(T a, T b) const { return static_cast<T>((static_cast<std::uint64_t>(a) * b) % p); }
  T neg(T a) const { return a == 0 ? 0 : p - a; }
  T inv(T a) const {
    if (a == 0) throw std::domain_error("inverse of zero mod p");
    std::int64_t t = 0, new_t = 1, r = p, new_r = a;
    while (new_r != 0) {
      const std::int64_t q = r / new_r;
      std::int64_t tmp = t - q * new_t;
      t = new_t;
      new_t = tmp;
      tmp = r - q * new_r;
      r = new_r;
      new_r = tmp;
    }
    if (t < 0) t += p;
    return static_cast<T>(t);
  }
  T from_int(long v) const {
    long r = v % static_cast<long>(p);
    if (r < 0) r += p;
    return static_cast<T>(r);
  }
  T from_integer(const Integer& z) const { return static_cast<T>(mpz_fdiv_ui(z.get_mpz_t(), p)); }
  /// Throws BadPrime when p divides the denominator.
  T from_rational(const Rational& q) const {
    const T den = from_integer(q.get_den());
    if (den == 0) throw BadPrime("prime divides a denominator");
    return mul(from_integer(q.get_num()), inv(den));
  }
  void sub_mul(T& acc, T a, T b) const { acc = sub(acc, mul(a, b)); }
  friend bool operator==(const PrimeField&, const PrimeField&) = default;
};

/// Deterministic Miller-Rabin for 32-bit inputs.
bool is_prime_u32(std::uint32_t n);

/// Largest prime strictly below `below`.
std::uint32_t previous_prime(std::uint32_t below);

}  // namespace lowrank
