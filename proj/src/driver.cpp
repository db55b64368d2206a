#include "lowrank/driver.hpp"

#include <algorithm>
#include <future>
#include <numeric>

#include "lowrank/bounds.hpp"
#include "lowrank/groebner.hpp"
#include "lowrank/lagrange.hpp"
#include "lowrank/realroots.hpp"
#include "lowrank/zerodim.hpp"

namespace lowrank {

namespace {

Rational draw(Rng& rng, int bound) { return Rational(static_cast<long>(rng.uniform(-bound, bound))); }

RationalMatrix draw_invertible(int n, int bound, Rng& rng) {
  RationalMatrix M(n, n);
  do {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) M(i, j) = draw(rng, bound);
  } while (!M.inverse());
  return M;
}

std::vector<Rational> draw_weights(int size, int bound, Rng& rng) {
  std::vector<Rational> v(size);
  do {
    for (auto& x : v) x = draw(rng, bound);
  } while (std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; }));
  return v;
}

RatParOptions ratpar_options(const SolveConfig& cfg) {
  RatParOptions o;
  o.max_steps = cfg.gb_budget;
  o.lambda_bound = cfg.coeff_range;
  return o;
}

std::vector<int> first(int n) {
  std::vector<int> keep(n);
  std::iota(keep.begin(), keep.end(), 0);
  return keep;
}

// A constant matrix: the single point of C^0 when rank A0 <= r.
RationalParametrization constant_case(const LinearMatrix& a, int r) {
  if (a.mats[0].rank() > r) return RationalParametrization::empty(0);
  return RationalParametrization::from_shape(UniPoly({Rational(0), Rational(1)}), {});
}

// x-projection of the finite incidence variety.
RationalParametrization incidence_points(const LinearMatrix& a, int r, const RationalMatrix& U, const RationalMatrix& S,
                                         const SolveConfig& cfg, Rng& rng) {
  if (a.n == 0) return constant_case(a, r);
  const ReducedIncidence inc = eliminate_kernel_rows(a, r, U, S);
  const auto keep = first(a.n);
  return rat_par(inc.polys, keep, rng, ratpar_options(cfg));
}

LevelRecord record(int n, std::string kind, const RationalParametrization& p) {
  LevelRecord rec;
  rec.n = n;
  rec.kind = std::move(kind);
  rec.degree = p.degree();
  rec.real_count = p.is_empty() ? 0 : count_real(p);
  return rec;
}

// Fiber gate: G2 (and G1 at the full level) on the restricted matrix.
bool fiber_ok(const LinearMatrix& fiber, int r, const RationalMatrix& U, const RationalMatrix& S, const SolveConfig& cfg,
              Rng& rng) {
  if (cfg.level == CheckLevel::kNone) return true;
  GenericityReport rep = is_reg(fiber, r, U, S, cfg.level, rng, cfg.gb_budget);
  if (rep.undetermined()) throw GroebnerBudgetExceeded("fiber genericity check exceeded the budget");
  return rep.overall;
}

}  // namespace

std::vector<int> SolveTrace::partial_degrees() const {
  std::vector<int> out(std::max(n, 1), 0);
  for (const auto& l : levels) {
    const int idx = n - std::max(l.n, 1);
    if (idx >= 0 && idx < static_cast<int>(out.size())) out[idx] += l.degree;
  }
  return out;
}

RationalParametrization low_rank_rec(const LinearMatrix& a, int r, const RationalMatrix& U, const RationalMatrix& S,
                                     const SolveConfig& cfg, Rng& rng, SolveTrace& trace) {
  const int c = (a.m - r) * (a.m - r);
  const int n = a.n;
  if (n < c) {
    if (cfg.empty_policy == EmptyPolicy::kBox && !cfg.verify_empty) {
      trace.levels.push_back(record(n, "empty", RationalParametrization::empty(n)));
      return RationalParametrization::empty(n);
    }
    RationalParametrization p;
    try {
      p = incidence_points(a, r, U, S, cfg, rng);
    } catch (const NotZeroDimensional&) {
      throw GenericityError("rank locus is not finite although n < (m - r)^2", trace.genericity, n);
    }
    if (cfg.verify_empty && !p.is_empty())
      throw GenericityError("rank locus is not empty although n < (m - r)^2", trace.genericity, n);
    if (cfg.empty_policy == EmptyPolicy::kBox) p = RationalParametrization::empty(n);
    trace.levels.push_back(record(n, cfg.empty_policy == EmptyPolicy::kBox ? "empty" : "enumerate", p));
    return p;
  }
  if (n == c) {
    RationalParametrization p;
    try {
      p = incidence_points(a, r, U, S, cfg, rng);
    } catch (const NotZeroDimensional&) {
      throw GenericityError("incidence variety is not finite at n = (m - r)^2", trace.genericity, n);
    }
    trace.levels.push_back(record(n, "incidence", p));
    return p;
  }

  const RationalMatrix M = draw_invertible(n, cfg.coeff_range, rng);
  const RationalMatrix Minv = *M.inverse();
  const auto v = draw_weights(a.m * (a.m - r), cfg.coeff_range, rng);
  Rng critical_rng = rng.split();
  Rng fiber_rng = rng.split();
  const LinearMatrix am = a.compose(M);

  auto critical = [&]() {
    const ReducedIncidence inc = eliminate_kernel_rows(am, r, U, S);
    const ReducedLagrange lag = build_reduced_lagrange(inc, v);
    const auto keep = first(n);
    try {
      return image(rat_par(lag.polys, keep, critical_rng, ratpar_options(cfg)), Minv);
    } catch (const NotZeroDimensional&) {
      throw GenericityError("critical points of the first coordinate are not finite", trace.genericity, n);
    }
  };
  std::future<RationalParametrization> pending;
  RationalParametrization P;
  if (cfg.threads > 1) pending = std::async(std::launch::async, critical);
  else P = critical();

  std::optional<Rational> t;
  std::optional<LinearMatrix> fiber;
  for (int attempt = 0; attempt < cfg.fiber_attempts && !t; ++attempt) {
    const Rational candidate = draw(fiber_rng, cfg.coeff_range);
    LinearMatrix f = am.substitute_first_variable(candidate);
    if (fiber_ok(f, r, U, S, cfg, fiber_rng)) {
      t = candidate;
      fiber = std::move(f);
    }
  }
  if (!t) {
    if (pending.valid()) pending.wait();
    throw GenericityError("no fiber passed the genericity check at n = " + std::to_string(n), trace.genericity, n);
  }

  const std::size_t slot = trace.levels.size();
  trace.levels.emplace_back();
  RationalParametrization R;
  try {
    R = low_rank_rec(*fiber, r, U, S, cfg, fiber_rng, trace);
  } catch (...) {
    if (pending.valid()) pending.wait();
    throw;
  }
  if (pending.valid()) P = pending.get();

  LevelRecord& rec = trace.levels[slot];
  rec = record(n, "lagrange", P);
  rec.M = M;
  rec.t = *t;
  rec.v = v;

  const RationalParametrization lifted = image(lift(R, *t), Minv);
  return unite(P, lifted, rng, cfg.coeff_range);
}

SolveResult low_rank(const LinearMatrix& a, int r, const SolveConfig& cfg) {
  if (r < 0 || r >= a.m) throw std::invalid_argument("low_rank: need 0 <= r < m");
  if (cfg.coeff_range < 1) throw std::invalid_argument("low_rank: coefficient range must be positive");
  Rng rng(cfg.seed);
  SolveTrace trace;
  trace.m = a.m;
  trace.n = a.n;
  trace.r = r;
  trace.seed = cfg.seed;
  auto [U, S] = draw_incidence_data(a.m, r, cfg.coeff_range, rng);
  trace.U = U;
  trace.S = S;
  Rng check_rng = rng.split();
  try {
    trace.genericity = is_reg(a, r, U, S, cfg.level, check_rng, cfg.gb_budget);
    if (trace.genericity.undetermined()) throw BudgetExceeded("genericity check exceeded the budget", trace);
    if (!trace.genericity.overall) throw GenericityError("input is not generic", trace.genericity, a.n);
    RationalParametrization p = low_rank_rec(a, r, U, S, cfg, rng, trace);
    p.validate();
    if (!minors_vanish(a, r, p)) throw std::logic_error("low_rank: output point with rank above r");
    return {std::move(p), std::move(trace)};
  } catch (const GroebnerBudgetExceeded& e) {
    throw BudgetExceeded(e.what(), trace);
  } catch (const QuotientTooLarge& e) {
    throw BudgetExceeded(e.what(), trace);
  }
}

nlohmann::json to_json(const RationalMatrix& M) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : M.to_rows()) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& x : row) out.push_back(to_string(x));
    rows.push_back(out);
  }
  return rows;
}

nlohmann::json to_json(const SolveTrace& trace) {
  nlohmann::json levels = nlohmann::json::array();
  for (const auto& l : trace.levels) {
    nlohmann::json j = {{"n", l.n}, {"kind", l.kind}, {"degree", l.degree}, {"real", l.real_count}};
    if (l.M) j["M"] = to_json(*l.M);
    if (l.t) j["t"] = to_string(*l.t);
    if (!l.v.empty()) {
      j["v"] = nlohmann::json::array();
      for (const auto& x : l.v) j["v"].push_back(to_string(x));
    }
    levels.push_back(std::move(j));
  }
  nlohmann::json out = {{"m", trace.m},
                        {"n", trace.n},
                        {"r", trace.r},
                        {"seed", std::to_string(trace.seed)},
                        {"levels", levels},
                        {"partial_degrees", trace.partial_degrees()},
                        {"genericity", to_json(trace.genericity)}};
  if (trace.U) out["U"] = to_json(*trace.U);
  if (trace.S) out["S"] = to_json(*trace.S);
  return out;
}

nlohmann::json to_json(const SolveResult& result, const std::optional<Rational>& width) {
  const auto& p = result.parametrization;
  const auto& t = result.trace;
  nlohmann::json out = {{"parametrization", to_json(p)},
                        {"degree", p.degree()},
                        {"real_count", count_real(p)},
                        {"partial_degrees", t.partial_degrees()},
                        {"genericity", to_json(t.genericity)},
                        {"bounds", to_json(profile(t.m, t.n, t.r))},
                        {"trace", to_json(t)}};
  if (width) out["real_points"] = to_json(real_points(p, *width));
  return out;
}

}  // namespace lowrank
