#include "lowrank/lagrange.hpp"

#include <stdexcept>
#include <string>

namespace lowrank {

std::vector<std::vector<MultiPoly>> jacobian(const PolySystem& sys, std::span<const int> vars) {
  std::vector<std::vector<MultiPoly>> out;
  out.reserve(sys.size());
  for (const auto& f : sys) {
    std::vector<MultiPoly> row;
    row.reserve(vars.size());
    for (int v : vars) {
      if (v < 0 || v >= f.nvars()) throw std::out_of_range("jacobian: variable outside the universe");
      row.push_back(f.derivative(v));
    }
    out.push_back(std::move(row));
  }
  return out;
}

LagrangeSystem build_lagrange(const LinearMatrix& a, int r, const RationalMatrix& M, const RationalMatrix& U,
                              const RationalMatrix& S, std::span<const Rational> v) {
  const int m = a.m, n = a.n, c = m - r;
  const int p = (2 * m - r) * c;
  if (n < 1) throw std::invalid_argument("build_lagrange: need n >= 1");
  if (static_cast<int>(v.size()) != p) throw std::invalid_argument("build_lagrange: v must have (2m-r)(m-r) entries");
  if (M.rows() != n || M.cols() != n || !M.inverse()) throw std::invalid_argument("build_lagrange: M must be invertible n x n");

  const LinearMatrix am = a.compose(M);
  const IncidenceSystem inc = build_incidence(am, r, U, S);
  std::vector<std::string> names = *inc.universe;
  for (int i = 1; i <= p; ++i) names.push_back("z" + std::to_string(i));
  const Universe u = make_universe(std::move(names));
  const int base = static_cast<int>(inc.universe->size());
  std::vector<int> embed(base);
  for (int i = 0; i < base; ++i) embed[i] = i;

  LagrangeSystem out;
  out.universe = u;
  out.composed = am;
  out.M = M;
  out.U = U;
  out.S = S;
  out.v.assign(v.begin(), v.end());
  out.n = n;
  PolySystem f;
  for (const auto& g : inc.polys) f.push_back(g.rename(u, embed));
  out.polys = f;
  out.num_incidence = static_cast<int>(f.size());

  std::vector<int> d1;
  for (int k = 1; k < base; ++k) d1.push_back(k);
  const auto jac = jacobian(f, d1);
  for (std::size_t col = 0; col < d1.size(); ++col) {
    MultiPoly e(u);
    for (int i = 0; i < p; ++i) e += MultiPoly::variable(u, base + i) * jac[i][col];
    out.polys.push_back(std::move(e));
  }
  out.num_multiplier_rows = static_cast<int>(d1.size());
  MultiPoly norm = MultiPoly::constant(u, -1);
  for (int i = 0; i < p; ++i) norm += v[i] * MultiPoly::variable(u, base + i);
  out.polys.push_back(std::move(norm));
  return out;
}

ReducedLagrange build_reduced_lagrange(const ReducedIncidence& inc, std::span<const Rational> v, bool drop_first) {
  const int p = static_cast<int>(inc.polys.size());
  if (static_cast<int>(v.size()) < p) throw std::invalid_argument("build_reduced_lagrange: v too short");
  int pivot = -1;
  for (int i = 0; i < p; ++i)
    if (sgn(v[i]) != 0) {
      pivot = i;
      break;
    }
  if (pivot < 0) throw std::invalid_argument("build_reduced_lagrange: v vanishes");

  const int base = static_cast<int>(inc.universe->size());
  std::vector<std::string> names = *inc.universe;
  for (int i = 0; i < p; ++i)
    if (i != pivot) names.push_back("z" + std::to_string(i + 1));
  ReducedLagrange out;
  out.universe = make_universe(std::move(names));
  out.n = inc.n;
  const Universe& u = out.universe;
  std::vector<int> embed(base);
  for (int i = 0; i < base; ++i) embed[i] = i;

  // z_pivot = (1 - sum_{i != pivot} v_i z_i) / v_pivot
  std::vector<MultiPoly> z(p, MultiPoly(u));
  for (int i = 0, k = base; i < p; ++i)
    if (i != pivot) z[i] = MultiPoly::variable(u, k++);
  {
    MultiPoly e = MultiPoly::constant(u, 1);
    for (int i = 0; i < p; ++i)
      if (i != pivot) e -= v[i] * z[i];
    z[pivot] = Rational(1) / v[pivot] * e;
  }

  PolySystem f;
  for (const auto& g : inc.polys) f.push_back(g.rename(u, embed));
  out.polys = f;
  std::vector<int> d1;
  for (int k = drop_first ? 1 : 0; k < base; ++k) d1.push_back(k);
  const auto jac = jacobian(f, d1);
  for (std::size_t col = 0; col < d1.size(); ++col) {
    MultiPoly e(u);
    for (int i = 0; i < p; ++i) e += z[i] * jac[i][col];
    out.polys.push_back(std::move(e));
  }
  return out;
}

}  // namespace lowrank
