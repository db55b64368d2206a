#pragma once

#include <vector>

#include <json.hpp>

#include "lowrank/ratpar.hpp"
#include "lowrank/unipoly.hpp"

namespace lowrank {

/// Isolating interval of a real root: the open interval (lo, hi) when lo < hi,
/// the exact root when lo == hi.
struct RootInterval {
  Rational lo;
  Rational hi;
  bool exact() const { return lo == hi; }
  friend bool operator==(const RootInterval&, const RootInterval&) = default;
};

/// Descartes / Vincent-Collins-Akritas bisection. Intervals are disjoint, sorted,
/// with dyadic endpoints. Throws std::invalid_argument unless h is nonzero and squarefree.
std::vector<RootInterval> isolate_roots(const UniPoly& h);

/// Number of distinct real roots by Sturm sequence.
int sturm_count(const UniPoly& h);
/// Distinct real roots in the half-open interval (a, b].
int sturm_count(const UniPoly& h, const Rational& a, const Rational& b);

/// Halves the interval until hi - lo <= width (no-op on exact roots).
void refine(const UniPoly& h, RootInterval& root, const Rational& width);

/// Real points of a parametrization as rational boxes.
struct IsolatedRealPoint {
  std::vector<Rational> lo;
  std::vector<Rational> hi;
  RootInterval root;
  /// -log2 of the root interval width, 0 for exact roots.
  int precision_bits = 0;
};

/// Boxes of width <= `width` around the point encoded by the root in `root`.
/// Throws std::runtime_error when the refinement budget is exhausted.
IsolatedRealPoint evaluate_box(const RationalParametrization& p, RootInterval root, const Rational& width);

/// Sturm count of qlast's real roots.
int count_real(const RationalParametrization& p);

/// One box per real root of qlast, in increasing root order.
std::vector<IsolatedRealPoint> real_points(const RationalParametrization& p, const Rational& width);

/// [{"lo": [...], "hi": [...]}, ...] with "p/q" strings.
nlohmann::json to_json(const std::vector<IsolatedRealPoint>& points);

}  // namespace lowrank
