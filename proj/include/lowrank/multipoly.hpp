#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lowrank/monomial.hpp"
#include "lowrank/rational.hpp"

namespace lowrank {

class RationalMatrix;

/// Ordered list of variable names shared by all polynomials of a ring.
using Universe = std::shared_ptr<const std::vector<std::string>>;

Universe make_universe(std::vector<std::string> names);
bool same_universe(const Universe& a, const Universe& b);

/// Sparse multivariate polynomial over Q.
///
/// Terms are kept sorted by decreasing grevlex order with no zero
/// coefficients, so the first term is the grevlex leading term. Content is
/// left alone: coefficients stay exactly as computed.
class MultiPoly {
 public:
  struct Term {
    Monomial mono;
    Rational coef;
  };

  MultiPoly() = default;
  explicit MultiPoly(Universe universe) : universe_(std::move(universe)) {}

  static MultiPoly constant(Universe universe, const Rational& c);
  static MultiPoly variable(Universe universe, int index);
  static MultiPoly variable(Universe universe, std::string_view name);
  /// Sorts, merges equal monomials and drops zeros.
  static MultiPoly from_terms(Universe universe, std::vector<Term> terms);
  /// Parses the canonical text form, e.g. "3/2*x1^2*y1 - x2 + 7".
  static MultiPoly parse(Universe universe, std::string_view text);

  const Universe& universe() const { return universe_; }
  int nvars() const { return universe_ ? static_cast<int>(universe_->size()) : 0; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  Rational constant_term() const;

  int total_degree() const;
  /// Degree in the variables listed in `block`.
  int degree_in(std::span<const int> block) const;
  int degree_in(int var) const;

  Rational eval(std::span<const Rational> point) const;
  MultiPoly derivative(int var) const;
  /// Replaces every variable i by images[i] (all in a common target universe).
  MultiPoly compose(std::span<const MultiPoly> images, const Universe& target) const;
  /// Moves the polynomial into `target`, mapping variable i to target index map[i].
  MultiPoly rename(const Universe& target, std::span<const int> map) const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& other);
  MultiPoly& operator-=(const MultiPoly& other);
  MultiPoly& operator*=(const Rational& c);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b);

  std::string to_string() const;

 private:
  void check_universe(const MultiPoly& other) const;

  Universe universe_;
  std::vector<Term> terms_;
};

/// Ordered polynomial list over one universe.
using PolySystem = std::vector<MultiPoly>;

/// p composed with x_block -> M x_block, identity on the other variables.
/// Throws std::invalid_argument when M is singular or sizes disagree.
MultiPoly apply_linear_change(const MultiPoly& p, const RationalMatrix& m, std::span<const int> block);

}  // namespace lowrank
