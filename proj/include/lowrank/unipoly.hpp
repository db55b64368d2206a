#pragma once

#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "lowrank/field.hpp"
#include "lowrank/rational.hpp"

namespace lowrank {

/// Dense univariate polynomial over Q, ascending coefficients.
/// The leading coefficient is nonzero unless the polynomial is zero.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coeffs);
  UniPoly(std::initializer_list<Rational> coeffs) : UniPoly(std::vector<Rational>(coeffs)) {}

  static UniPoly constant(const Rational& c) { return UniPoly({c}); }
  /// The monomial t.
  static UniPoly t() { return UniPoly({Rational(0), Rational(1)}); }
  /// Monic polynomial with the given roots.
  static UniPoly from_roots(std::span<const Rational> roots);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : Rational(0); }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

  Rational eval(const Rational& x) const;
  int sign_at(const Rational& x) const { return sgn(eval(x)); }
  UniPoly derivative() const;
  UniPoly monic() const;

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const Rational& c, const UniPoly& a);
  UniPoly operator-() const;
  friend bool operator==(const UniPoly& a, const UniPoly& b) = default;

  /// (quotient, remainder)
  std::pair<UniPoly, UniPoly> divmod(const UniPoly& b) const;
  UniPoly operator%(const UniPoly& m) const { return divmod(m).second; }
  UniPoly operator/(const UniPoly& m) const { return divmod(m).first; }

  /// this(inner(t)) mod m
  UniPoly compose_mod(const UniPoly& inner, const UniPoly& m) const;

  std::string to_string(const std::string& var = "t") const;

 private:
  std::vector<Rational> c_;
};

/// Monic gcd; gcd(0, 0) = 0.
UniPoly univariate_gcd(const UniPoly& a, const UniPoly& b);
/// Monic squarefree part: same roots, each simple.
UniPoly squarefree_part(const UniPoly& a);
UniPoly derivative(const UniPoly& a);
/// Inverse of a modulo m. Throws std::domain_error when gcd(a, m) is not constant.
UniPoly inverse_mod(const UniPoly& a, const UniPoly& m);
bool is_squarefree(const UniPoly& a);

}  // namespace lowrank
