#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "lowrank/groebner.hpp"
#include "lowrank/incidence.hpp"
#include "lowrank/matrix.hpp"
#include "lowrank/rng.hpp"
#include "lowrank/unipoly.hpp"

namespace lowrank {

/// The finite set { (q1(t)/q0(t), ..., qn(t)/q0(t)) : qlast(t) = 0 }.
///
/// Normal form: qlast monic squarefree, q0 = qlast', deg qi < deg qlast.
/// The empty set is qlast = q0 = 1 with every qi = 0.
struct RationalParametrization {
  int n = 0;
  UniPoly q0 = UniPoly::constant(1);
  std::vector<UniPoly> q;
  UniPoly qlast = UniPoly::constant(1);

  static RationalParametrization empty(int n);
  /// Points x_i = g_i(t) over the roots of h (h squarefree, any leading coefficient).
  static RationalParametrization from_shape(const UniPoly& h, const std::vector<UniPoly>& g);

  int degree() const { return qlast.degree(); }
  bool is_empty() const { return qlast.degree() <= 0; }
  /// g_i = q_i * q0^{-1} mod qlast.
  std::vector<UniPoly> coordinates() const;
  /// Throws std::invalid_argument naming the first broken invariant.
  void validate() const;

  friend bool operator==(const RationalParametrization&, const RationalParametrization&) = default;
};

nlohmann::json to_json(const RationalParametrization& p);
RationalParametrization parametrization_from_json(const nlohmann::json& j);

class SeparationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RatParOptions {
  std::size_t max_steps = 2'000'000;
  std::size_t max_dim = 20'000;
  int lambda_bound = 99;
  int lambda_attempts = 8;
  int max_primes = 400;
  /// Multimodular Gröbner + rational reconstruction; false runs Buchberger over Q.
  bool modular = true;
  /// Positive-dimensional ideals: eliminate the other variables and parametrize the
  /// projection when it is finite.
  bool allow_elimination = true;
};

struct RatParInfo {
  std::vector<Rational> lambda;
  int primes = 0;
  int quotient_dim = 0;
  bool radicalized = false;
  bool eliminated = false;
};

/// Projection on `keep` (universe indices) of V(gens). Throws NotZeroDimensional when
/// the projection is not finite, SeparationFailure, GroebnerBudgetExceeded or QuotientTooLarge.
RationalParametrization rat_par(const PolySystem& gens, std::span<const int> keep, Rng& rng,
                                const RatParOptions& options = {}, RatParInfo* info = nullptr);
/// All variables of the ideal.
RationalParametrization rat_par(const Ideal& ideal, Rng& rng, const RatParOptions& options = {},
                                RatParInfo* info = nullptr);

/// Keep coordinates `keep` (0-based) and merge points that coincide there.
RationalParametrization project(const RationalParametrization& p, std::span<const int> keep, Rng& rng,
                                int lambda_bound = 99, int attempts = 16);
/// {(t0, x) : x in Z}
RationalParametrization lift(const RationalParametrization& p, const Rational& t0);
/// M^{-1} Z. Throws std::invalid_argument for singular or mis-sized M.
RationalParametrization image(const RationalParametrization& p, const RationalMatrix& M);
/// Z1 union Z2.
RationalParametrization unite(const RationalParametrization& a, const RationalParametrization& b, Rng& rng,
                              int lambda_bound = 99, int attempts = 16);

/// f(g_1(t), ..., g_n(t)) mod h, g_i the coordinates of p; f has p.n variables.
UniPoly evaluate_mod(const MultiPoly& f, const RationalParametrization& p);
/// True when every polynomial vanishes on every encoded point.
bool vanishes_on(const PolySystem& polys, const RationalParametrization& p);
/// True when all (r+1)-minors of A(x) vanish at every encoded point.
bool minors_vanish(const LinearMatrix& a, int r, const RationalParametrization& p);

/// Shape-position data over Q: t = lambda . x_vars, x_vars[i] = coords[i](t) mod h.
struct ShapeBasis {
  std::vector<Rational> lambda;
  std::vector<int> vars;
  UniPoly h;
  std::vector<UniPoly> coords;
};

/// Exact shape position of V(I) on `vars` for the given linear form, or a random one
/// (entries in [-99, 99], bounded retries) when `lambda` is empty.
ShapeBasis shape_position_basis(const Ideal& ideal, std::span<const int> vars, Rng& rng,
                                std::span<const Rational> lambda = {}, int attempts = 8);

}  // namespace lowrank
