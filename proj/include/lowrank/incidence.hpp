#pragma once

#include <span>
#include <vector>

#include "lowrank/matrix.hpp"
#include "lowrank/multipoly.hpp"
#include "lowrank/rng.hpp"

namespace lowrank {

/// A(x) = A0 + x1 A1 + ... + xn An with m x m rational matrices.
struct LinearMatrix {
  int m = 0;
  int n = 0;
  std::vector<RationalMatrix> mats;  // A0, ..., An

  LinearMatrix() = default;
  LinearMatrix(int m_, int n_, std::vector<RationalMatrix> mats_);

  RationalMatrix eval(std::span<const Rational> x) const;
  /// Entries of A(x) as polynomials in the first n variables of `u`.
  std::vector<std::vector<MultiPoly>> symbolic(const Universe& u) const;
  /// A o M: the matrix x -> A(M x).
  LinearMatrix compose(const RationalMatrix& M) const;
  /// Fix x1 = t: (A0 + t A1, A2, ..., An).
  LinearMatrix substitute_first_variable(const Rational& t) const;
};

/// Dense A(x) with integer entries in [-bound, bound].
LinearMatrix random_linear_matrix(int m, int n, int bound, Rng& rng);

/// All k x k minors of a square polynomial matrix, by Laplace expansion.
std::vector<MultiPoly> minors(const std::vector<std::vector<MultiPoly>>& a, int k);

struct IncidenceSystem {
  Universe universe;  // x1..xn, y1_1..ym_{m-r}
  PolySystem polys;   // A(x)Y(y) row-major, then U Y(y) - S row-major
  RationalMatrix U;
  RationalMatrix S;
  int m = 0;
  int n = 0;
  int r = 0;

  int ny() const { return m * (m - r); }
  /// Index in `universe` of y_{i,j} (0-based i, j).
  int y_index(int i, int j) const { return n + i * (m - r) + j; }
};

/// Throws std::invalid_argument on a bad rank, rank-deficient U or singular S.
IncidenceSystem build_incidence(const LinearMatrix& a, int r, const RationalMatrix& U, const RationalMatrix& S);

/// Draws U (full rank) and S (invertible) with entries in [-bound, bound].
std::pair<RationalMatrix, RationalMatrix> draw_incidence_data(int m, int r, int bound, Rng& rng);

/// The incidence system with U Y = S solved for m - r rows of Y.
struct ReducedIncidence {
  Universe universe;     // x1..xn, then the free y variables
  PolySystem polys;      // the m(m-r) entries of A(x)Y
  std::vector<int> pivot_rows;  // rows of Y eliminated
  std::vector<int> free_rows;
  /// Y(y) in the reduced universe, m x (m-r).
  std::vector<std::vector<MultiPoly>> Y;
  int n = 0;
};

/// Eliminates the last m - r rows of Y, falling back to the first pivot set
/// with an invertible column block of U. Throws when U has none.
ReducedIncidence eliminate_kernel_rows(const IncidenceSystem& sys);
ReducedIncidence eliminate_kernel_rows(const LinearMatrix& a, int r, const RationalMatrix& U, const RationalMatrix& S);

}  // namespace lowrank
