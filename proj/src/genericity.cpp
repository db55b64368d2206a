#include "lowrank/genericity.hpp"

#include <algorithm>
#include <stdexcept>

#include "lowrank/groebner.hpp"
#include "lowrank/lagrange.hpp"

namespace lowrank {

namespace {

std::vector<Rational> draw_vector(Rng& rng, int size) {
  std::vector<Rational> v(size);
  do {
    for (auto& x : v) x = Rational(static_cast<long>(rng.uniform(-99, 99)));
  } while (size > 0 && std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; }));
  return v;
}

PolySystem nonzero(PolySystem s) {
  std::erase_if(s, [](const MultiPoly& p) { return p.is_zero(); });
  return s;
}

// -1 when empty. Throws GroebnerBudgetExceeded.
int dimension_of(const Universe& u, PolySystem gens, std::size_t max_steps) {
  gens = nonzero(std::move(gens));
  if (gens.empty()) return static_cast<int>(u->size());
  return ideal_dimension_multimodular(Ideal(u, std::move(gens)), max_steps);
}

Universe x_universe(int n, int extra = 0) {
  std::vector<std::string> names;
  for (int k = 1; k <= n; ++k) names.push_back("x" + std::to_string(k));
  if (extra) names.push_back("s");
  return make_universe(std::move(names));
}

PolySystem minors_of(const LinearMatrix& a, int k, const Universe& u) {
  if (k > a.m) return {};
  if (k <= 0) return {MultiPoly::constant(u, 1)};
  return nonzero(minors(a.symbolic(u), k));
}

// V(gens) subset of V(h): gens + (1 - s h) is the unit ideal.
bool in_radical(const Universe& us, const PolySystem& gens, const MultiPoly& h, std::size_t max_steps) {
  PolySystem sys = gens;
  const MultiPoly s = MultiPoly::variable(us, static_cast<int>(us->size()) - 1);
  sys.push_back(MultiPoly::constant(us, 1) - s * h);
  return dimension_of(us, std::move(sys), max_steps) == -1;
}

PolySystem lift_to(const PolySystem& gens, const Universe& us) {
  std::vector<int> map;
  PolySystem out;
  for (const auto& g : gens) {
    map.resize(g.nvars());
    for (int i = 0; i < g.nvars(); ++i) map[i] = i;
    out.push_back(g.rename(us, map));
  }
  return out;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass:
      return "pass";
    case Verdict::kFail:
      return "fail";
    case Verdict::kSkipped:
      return "skipped";
    case Verdict::kUndetermined:
      return "undetermined";
  }
  return "undetermined";
}

std::string to_string(CheckLevel level) {
  switch (level) {
    case CheckLevel::kNone:
      return "none";
    case CheckLevel::kStandard:
      return "standard";
    case CheckLevel::kFull:
      return "full";
  }
  return "standard";
}

std::optional<CheckLevel> parse_check_level(const std::string& text) {
  if (text == "none") return CheckLevel::kNone;
  if (text == "standard") return CheckLevel::kStandard;
  if (text == "full") return CheckLevel::kFull;
  return std::nullopt;
}

Verdict check_G2(const IncidenceSystem& sys, Rng& rng, std::size_t max_steps) {
  try {
    const ReducedIncidence inc = eliminate_kernel_rows(sys);
    const int eqs = static_cast<int>(inc.polys.size());
    const int vars = static_cast<int>(inc.universe->size());
    // A component of dimension above vars - eqs is singular everywhere.
    const int d = dimension_of(inc.universe, inc.polys, max_steps);
    if (d == -1) return Verdict::kPass;
    if (d > std::max(vars - eqs, 0)) return Verdict::kFail;
    PolySystem test;
    Universe u;
    if (vars >= eqs) {
      auto ker = build_reduced_lagrange(inc, draw_vector(rng, eqs), false);
      u = ker.universe;
      test = std::move(ker.polys);
    } else {
      // Right kernel: Dg w = 0 with v' w = 1, w_pivot eliminated.
      const auto v = draw_vector(rng, vars);
      int pivot = 0;
      while (sgn(v[pivot]) == 0) ++pivot;
      std::vector<std::string> names = *inc.universe;
      for (int j = 0; j < vars; ++j)
        if (j != pivot) names.push_back("w" + std::to_string(j + 1));
      u = make_universe(std::move(names));
      std::vector<int> embed(vars);
      for (int i = 0; i < vars; ++i) embed[i] = i;
      std::vector<MultiPoly> w(vars, MultiPoly(u));
      for (int j = 0, k = vars; j < vars; ++j)
        if (j != pivot) w[j] = MultiPoly::variable(u, k++);
      MultiPoly e = MultiPoly::constant(u, 1);
      for (int j = 0; j < vars; ++j)
        if (j != pivot) e -= v[j] * w[j];
      w[pivot] = Rational(1) / v[pivot] * e;
      PolySystem g;
      for (const auto& p : inc.polys) g.push_back(p.rename(u, embed));
      test = g;
      std::vector<int> cols(vars);
      for (int j = 0; j < vars; ++j) cols[j] = j;
      const auto jac = jacobian(g, cols);
      for (const auto& row : jac) {
        MultiPoly s(u);
        for (int j = 0; j < vars; ++j) s += row[j] * w[j];
        test.push_back(std::move(s));
      }
    }
    return dimension_of(u, std::move(test), max_steps) == -1 ? Verdict::kPass : Verdict::kFail;
  } catch (const GroebnerBudgetExceeded&) {
    return Verdict::kUndetermined;
  }
}

Verdict check_G2_minors(const IncidenceSystem& sys, std::size_t max_steps) {
  try {
    const int eqs = static_cast<int>(sys.polys.size());
    const int vars = static_cast<int>(sys.universe->size());
    std::vector<int> cols(vars);
    for (int j = 0; j < vars; ++j) cols[j] = j;
    const auto jac = jacobian(sys.polys, cols);
    PolySystem test = sys.polys;
    for (auto& mi : minors(jac, std::min(eqs, vars))) test.push_back(std::move(mi));
    return dimension_of(sys.universe, std::move(test), max_steps) == -1 ? Verdict::kPass : Verdict::kFail;
  } catch (const GroebnerBudgetExceeded&) {
    return Verdict::kUndetermined;
  }
}

std::vector<DimensionCheck> check_dimensions(const LinearMatrix& a, int r, std::size_t max_steps) {
  const Universe u = x_universe(a.n);
  std::vector<DimensionCheck> out;
  for (int p = 0; p <= r; ++p) {
    DimensionCheck c;
    c.p = p;
    c.expected = a.n - (a.m - p) * (a.m - p);
    try {
      c.dimension = dimension_of(u, minors_of(a, p + 1, u), max_steps);
      c.ok = c.dimension == -1 || c.dimension == c.expected;
    } catch (const GroebnerBudgetExceeded&) {
      c.determined = false;
    }
    out.push_back(c);
  }
  return out;
}

Verdict check_G1(const LinearMatrix& a, int r, std::size_t max_steps) {
  const int n = a.n;
  const Universe u = x_universe(n);
  const Universe us = x_universe(n, 1);
  try {
    const PolySystem ir1 = minors_of(a, r + 1, u);
    const PolySystem ir = minors_of(a, r, u);  // {1} for r = 0
    const int d = dimension_of(u, ir1, max_steps);
    const bool lower_empty = r == 0 || dimension_of(u, ir, max_steps) == -1;
    // A finite reduced set is smooth, so sing D_r is empty there.
    if (d <= 0) return lower_empty ? Verdict::kPass : Verdict::kFail;

    const int c = n - d;
    std::vector<int> cols(n);
    for (int j = 0; j < n; ++j) cols[j] = j;
    const auto jac = jacobian(ir1, cols);
    const double count = static_cast<double>(binomial(static_cast<long>(ir1.size()), c).get_d()) *
                         binomial(n, c).get_d();
    if (count > 20000) return Verdict::kUndetermined;
    PolySystem j = ir1;
    for (auto& mi : minors(jac, c))
      if (!mi.is_zero()) j.push_back(std::move(mi));

    const PolySystem j_s = lift_to(j, us);
    const PolySystem ir_s = lift_to(ir, us);
    for (const auto& h : ir_s)
      if (!in_radical(us, j_s, h, max_steps)) return Verdict::kFail;
    for (const auto& h : j_s)
      if (!in_radical(us, ir_s, h, max_steps)) return Verdict::kFail;
    return Verdict::kPass;
  } catch (const GroebnerBudgetExceeded&) {
    return Verdict::kUndetermined;
  }
}

GenericityReport is_reg(const LinearMatrix& a, int r, const RationalMatrix& U, const RationalMatrix& S, CheckLevel level,
                        Rng& rng, std::size_t max_steps) {
  GenericityReport rep;
  rep.level = level;
  if (level == CheckLevel::kNone) {
    rep.overall = true;
    return rep;
  }
  rep.g2 = check_G2(build_incidence(a, r, U, S), rng, max_steps);
  rep.dims = check_dimensions(a, r, max_steps);
  if (level == CheckLevel::kFull) rep.g1 = check_G1(a, r, max_steps);
  rep.overall = rep.g2 == Verdict::kPass && (level != CheckLevel::kFull || rep.g1 == Verdict::kPass);
  return rep;
}

nlohmann::json to_json(const GenericityReport& report) {
  nlohmann::json dims = nlohmann::json::array();
  for (const auto& d : report.dims)
    dims.push_back({{"p", d.p},
                    {"dimension", d.determined ? nlohmann::json(d.dimension) : nlohmann::json("undetermined")},
                    {"expected", d.expected},
                    {"ok", d.ok}});
  return {{"level", to_string(report.level)},
          {"g1", to_string(report.g1)},
          {"g2", to_string(report.g2)},
          {"dims", dims},
          {"overall", report.overall}};
}

}  // namespace lowrank
