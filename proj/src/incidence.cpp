#include "lowrank/incidence.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace lowrank {

LinearMatrix::LinearMatrix(int m_, int n_, std::vector<RationalMatrix> mats_) : m(m_), n(n_), mats(std::move(mats_)) {
  if (m < 1 || n < 0) throw std::invalid_argument("LinearMatrix: bad sizes");
  if (static_cast<int>(mats.size()) != n + 1) throw std::invalid_argument("LinearMatrix: expected n + 1 matrices");
  for (const auto& a : mats)
    if (a.rows() != m || a.cols() != m) throw std::invalid_argument("LinearMatrix: matrices must be m x m");
}

RationalMatrix LinearMatrix::eval(std::span<const Rational> x) const {
  if (static_cast<int>(x.size()) != n) throw std::invalid_argument("LinearMatrix::eval: wrong point length");
  RationalMatrix out = mats[0];
  for (int k = 0; k < n; ++k) out = out + x[k] * mats[k + 1];
  return out;
}

std::vector<std::vector<MultiPoly>> LinearMatrix::symbolic(const Universe& u) const {
  if (static_cast<int>(u->size()) < n) throw std::invalid_argument("LinearMatrix::symbolic: universe too small");
  std::vector<std::vector<MultiPoly>> out(m, std::vector<MultiPoly>(m, MultiPoly(u)));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      std::vector<MultiPoly::Term> terms;
      if (sgn(mats[0](i, j)) != 0) terms.push_back({Monomial(), mats[0](i, j)});
      for (int k = 0; k < n; ++k)
        if (sgn(mats[k + 1](i, j)) != 0) terms.push_back({Monomial::variable(k), mats[k + 1](i, j)});
      out[i][j] = MultiPoly::from_terms(u, std::move(terms));
    }
  return out;
}

LinearMatrix LinearMatrix::compose(const RationalMatrix& M) const {
  if (M.rows() != n || M.cols() != n) throw std::invalid_argument("LinearMatrix::compose: M must be n x n");
  std::vector<RationalMatrix> out{mats[0]};
  for (int j = 0; j < n; ++j) {
    RationalMatrix b(m, m);
    for (int i = 0; i < n; ++i)
      if (sgn(M(i, j)) != 0) b = b + M(i, j) * mats[i + 1];
    out.push_back(std::move(b));
  }
  return LinearMatrix(m, n, std::move(out));
}

LinearMatrix LinearMatrix::substitute_first_variable(const Rational& t) const {
  if (n < 1) throw std::invalid_argument("substitute_first_variable: no variable left");
  std::vector<RationalMatrix> out{mats[0] + t * mats[1]};
  for (int k = 2; k <= n; ++k) out.push_back(mats[k]);
  return LinearMatrix(m, n - 1, std::move(out));
}

LinearMatrix random_linear_matrix(int m, int n, int bound, Rng& rng) {
  std::vector<RationalMatrix> mats(n + 1, RationalMatrix(m, m));
  for (auto& a : mats)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) a(i, j) = Rational(static_cast<long>(rng.uniform(-bound, bound)));
  return LinearMatrix(m, n, std::move(mats));
}

std::vector<MultiPoly> minors(const std::vector<std::vector<MultiPoly>>& a, int k) {
  const int rows = static_cast<int>(a.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
  if (k < 1 || k > rows || k > cols) throw std::invalid_argument("minors: bad order");
  if (cols > 30) throw std::invalid_argument("minors: too many columns");
  const Universe& u = a[0][0].universe();
  std::vector<MultiPoly> out;

  std::vector<int> row_sel(k);
  for (int i = 0; i < k; ++i) row_sel[i] = i;
  while (true) {
    // level j: determinants of rows row_sel[0..j) against every j-subset of columns
    std::map<std::uint32_t, MultiPoly> level{{0u, MultiPoly::constant(u, 1)}};
    for (int j = 1; j <= k; ++j) {
      std::map<std::uint32_t, MultiPoly> next;
      for (const auto& [mask, det] : level) {
        if (det.is_zero()) continue;
        for (int c = 0; c < cols; ++c) {
          if (mask & (1u << c)) continue;
          const MultiPoly& e = a[row_sel[j - 1]][c];
          if (e.is_zero()) continue;
          // sign of moving column c into place after the columns of mask above it
          const int above = __builtin_popcount(mask >> c);
          MultiPoly term = e * det;
          if (above % 2) term = -term;
          auto [it, fresh] = next.try_emplace(mask | (1u << c), u);
          it->second += term;
        }
      }
      level = std::move(next);
    }
    // emit in lexicographic column-subset order
    std::vector<int> col_sel(k);
    for (int i = 0; i < k; ++i) col_sel[i] = i;
    while (true) {
      std::uint32_t mask = 0;
      for (int c : col_sel) mask |= 1u << c;
      auto it = level.find(mask);
      out.push_back(it == level.end() ? MultiPoly(u) : it->second);
      int i = k - 1;
      while (i >= 0 && col_sel[i] == cols - k + i) --i;
      if (i < 0) break;
      ++col_sel[i];
      for (int t = i + 1; t < k; ++t) col_sel[t] = col_sel[t - 1] + 1;
    }
    int i = k - 1;
    while (i >= 0 && row_sel[i] == rows - k + i) --i;
    if (i < 0) break;
    ++row_sel[i];
    for (int t = i + 1; t < k; ++t) row_sel[t] = row_sel[t - 1] + 1;
  }
  return out;
}

IncidenceSystem build_incidence(const LinearMatrix& a, int r, const RationalMatrix& U, const RationalMatrix& S) {
  const int m = a.m, n = a.n, c = m - r;
  if (r < 0 || r > m - 1) throw std::invalid_argument("build_incidence: need 0 <= r <= m - 1");
  if (U.rows() != c || U.cols() != m) throw std::invalid_argument("build_incidence: U must be (m-r) x m");
  if (S.rows() != c || S.cols() != c) throw std::invalid_argument("build_incidence: S must be (m-r) x (m-r)");
  if (U.rank() != c) throw std::invalid_argument("build_incidence: U is rank deficient");
  if (sgn(S.determinant()) == 0) throw std::invalid_argument("build_incidence: S is singular");

  std::vector<std::string> names;
  for (int k = 1; k <= n; ++k) names.push_back("x" + std::to_string(k));
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= c; ++j) names.push_back("y" + std::to_string(i) + "_" + std::to_string(j));
  IncidenceSystem sys;
  sys.universe = make_universe(std::move(names));
  sys.U = U;
  sys.S = S;
  sys.m = m;
  sys.n = n;
  sys.r = r;
  const auto ax = a.symbolic(sys.universe);
  auto y = [&](int i, int j) { return MultiPoly::variable(sys.universe, sys.y_index(i, j)); };
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < c; ++j) {
      MultiPoly e(sys.universe);
      for (int k = 0; k < m; ++k) e += ax[i][k] * y(k, j);
      sys.polys.push_back(std::move(e));
    }
  for (int i = 0; i < c; ++i)
    for (int j = 0; j < c; ++j) {
      MultiPoly e = MultiPoly::constant(sys.universe, -S(i, j));
      for (int k = 0; k < m; ++k) e += U(i, k) * y(k, j);
      sys.polys.push_back(std::move(e));
    }
  return sys;
}

std::pair<RationalMatrix, RationalMatrix> draw_incidence_data(int m, int r, int bound, Rng& rng) {
  const int c = m - r;
  RationalMatrix U(c, m), S(c, c);
  do {
    for (int i = 0; i < c; ++i)
      for (int j = 0; j < m; ++j) U(i, j) = Rational(static_cast<long>(rng.uniform(-bound, bound)));
  } while (U.rank() != c);
  do {
    for (int i = 0; i < c; ++i)
      for (int j = 0; j < c; ++j) S(i, j) = Rational(static_cast<long>(rng.uniform(-bound, bound)));
  } while (sgn(S.determinant()) == 0);
  return {U, S};
}

namespace {

ReducedIncidence reduce(const LinearMatrix& a, int r, const RationalMatrix& U, const RationalMatrix& S) {
  const int m = a.m, n = a.n, c = m - r;
  // Pivot rows: the last c rows first, then other c-subsets in lexicographic order.
  std::vector<int> pivots(c);
  for (int i = 0; i < c; ++i) pivots[i] = r + i;
  std::optional<RationalMatrix> inv = U.select_columns(pivots).inverse();
  if (!inv) {
    for (int i = 0; i < c; ++i) pivots[i] = i;
    while (true) {
      inv = U.select_columns(pivots).inverse();
      if (inv) break;
      int i = c - 1;
      while (i >= 0 && pivots[i] == m - c + i) --i;
      if (i < 0) throw std::invalid_argument("eliminate_kernel_rows: U has no invertible column block");
      ++pivots[i];
      for (int t = i + 1; t < c; ++t) pivots[t] = pivots[t - 1] + 1;
    }
  }
  std::vector<int> free_rows;
  for (int i = 0; i < m; ++i)
    if (std::find(pivots.begin(), pivots.end(), i) == pivots.end()) free_rows.push_back(i);

  std::vector<std::string> names;
  for (int k = 1; k <= n; ++k) names.push_back("x" + std::to_string(k));
  for (int i : free_rows)
    for (int j = 1; j <= c; ++j) names.push_back("y" + std::to_string(i + 1) + "_" + std::to_string(j));
  ReducedIncidence out;
  out.universe = make_universe(std::move(names));
  out.pivot_rows = pivots;
  out.free_rows = free_rows;
  out.n = n;
  const Universe& u = out.universe;

  out.Y.assign(m, std::vector<MultiPoly>(c, MultiPoly(u)));
  for (std::size_t f = 0; f < free_rows.size(); ++f)
    for (int j = 0; j < c; ++j) out.Y[free_rows[f]][j] = MultiPoly::variable(u, n + static_cast<int>(f) * c + j);
  // Y_P = U_P^{-1} (S - U_F Y_F)
  for (int j = 0; j < c; ++j) {
    std::vector<MultiPoly> rhs(c, MultiPoly(u));
    for (int i = 0; i < c; ++i) {
      rhs[i] = MultiPoly::constant(u, S(i, j));
      for (int fr : free_rows) rhs[i] -= U(i, fr) * out.Y[fr][j];
    }
    for (int p = 0; p < c; ++p) {
      MultiPoly e(u);
      for (int i = 0; i < c; ++i) e += (*inv)(p, i) * rhs[i];
      out.Y[pivots[p]][j] = std::move(e);
    }
  }
  const auto ax = a.symbolic(u);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < c; ++j) {
      MultiPoly e(u);
      for (int k = 0; k < m; ++k) e += ax[i][k] * out.Y[k][j];
      out.polys.push_back(std::move(e));
    }
  return out;
}

}  // namespace

ReducedIncidence eliminate_kernel_rows(const IncidenceSystem& sys) {
  // Rebuild A from the bilinear block is unnecessary: the coefficients of x_k y_{l,j}
  // in row (i, j) are A_k(i, l).
  std::vector<RationalMatrix> mats(sys.n + 1, RationalMatrix(sys.m, sys.m));
  const int c = sys.m - sys.r;
  for (int i = 0; i < sys.m; ++i) {
    for (const auto& t : sys.polys[i * c].terms()) {
      // polynomial (i, 0) = sum_l A(x)_{i,l} y_{l,0}
      int l = -1, k = 0;
      for (int v = 0; v < sys.m; ++v)
        if (t.mono.exponent(sys.y_index(v, 0))) l = v;
      for (int v = 0; v < sys.n; ++v)
        if (t.mono.exponent(v)) k = v + 1;
      if (l >= 0) mats[k](i, l) = t.coef;
    }
  }
  return reduce(LinearMatrix(sys.m, sys.n, std::move(mats)), sys.r, sys.U, sys.S);
}

ReducedIncidence eliminate_kernel_rows(const LinearMatrix& a, int r, const RationalMatrix& U, const RationalMatrix& S) {
  return reduce(a, r, U, S);
}

}  // namespace lowrank
