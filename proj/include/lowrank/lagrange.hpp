#pragma once

#include <span>
#include <vector>

#include "lowrank/incidence.hpp"

namespace lowrank {

/// Partial derivatives of every polynomial with respect to `vars` (universe indices).
std::vector<std::vector<MultiPoly>> jacobian(const PolySystem& sys, std::span<const int> vars);

/// The square system (f(A o M, U, S), z' D1 f, v' z - 1).
struct LagrangeSystem {
  Universe universe;  // x1..xn, y1_1..ym_{m-r}, z1..zp
  PolySystem polys;
  LinearMatrix composed;  // A o M
  RationalMatrix M;
  RationalMatrix U;
  RationalMatrix S;
  std::vector<Rational> v;
  int n = 0;
  int num_incidence = 0;
  int num_multiplier_rows = 0;
};

/// Throws std::invalid_argument on dimension mismatches or singular M.
LagrangeSystem build_lagrange(const LinearMatrix& a, int r, const RationalMatrix& M, const RationalMatrix& U,
                              const RationalMatrix& S, std::span<const Rational> v);

/// Lagrange system of the y-eliminated incidence system, with one multiplier
/// removed through the normalization. Its solutions are in bijection with
/// those of the full system built on the same reduced incidence data; the
/// x-projection is the critical locus of x1 on the incidence variety.
struct ReducedLagrange {
  Universe universe;  // x1..xn, free y, remaining z
  PolySystem polys;
  int n = 0;
};

/// `v` supplies the m(m-r) multiplier weights; needs a nonzero entry. With
/// drop_first = false the full Jacobian is used, which gives the left-kernel
/// system of the Jacobian criterion.
ReducedLagrange build_reduced_lagrange(const ReducedIncidence& inc, std::span<const Rational> v, bool drop_first = true);

}  // namespace lowrank
