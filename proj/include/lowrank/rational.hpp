#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace lowrank {

// GMP keeps mpq_class canonical: gcd(num, den) = 1, den > 0, zero is 0/1.
using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed
/// text or a zero denominator.
Rational parse_rational(std::string_view text);

/// "p" when the denominator is 1, "p/q" otherwise.
std::string to_string(const Rational& value);

inline bool is_canonical(const Rational& value) {
  if (sgn(value.get_den()) <= 0) return false;
  Integer g;
  mpz_gcd(g.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return g == 1;
}

inline Rational from_int(std::int64_t v) {
  return Rational(static_cast<long>(v));
}

/// num / den in canonical form; den must be nonzero.
inline Rational make_rational(std::int64_t num, std::int64_t den) {
  Rational out(static_cast<long>(num), static_cast<long>(den));
  out.canonicalize();
  return out;
}

}  // namespace lowrank
