// Acceptance run: one PASS/FAIL line per criterion, details indented below it.
// Exit status is 0 once every criterion has been evaluated; --strict makes any FAIL fatal.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstring>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "lowrank/bounds.hpp"
#include "lowrank/driver.hpp"
#include "lowrank/lagrange.hpp"
#include "lowrank/problem.hpp"
#include "lowrank/realroots.hpp"

using namespace lowrank;

namespace {

using Clock = std::chrono::steady_clock;

struct Report {
  bool ok = true;
  std::vector<std::string> lines;

  void check(bool cond, const std::string& what) {
    if (!cond) ok = false;
    lines.push_back(std::string(cond ? "ok   " : "FAIL ") + what);
  }
  void note(const std::string& what) { lines.push_back("     " + what); }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string str(const std::vector<int>& v) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  os << "]";
  return os.str();
}

std::string fmt(double s) {
  std::ostringstream os;
  os.precision(3);
  os << s << " s";
  return os.str();
}

std::string data_path(const std::string& name) { return std::string(LOWRANK_DATA_DIR "/") + name; }

const Rational kWidth = Rational(1) / Rational(Integer(1) << 60);

SolveConfig config(std::uint64_t seed) {
  SolveConfig cfg;
  cfg.seed = seed;
  cfg.width = kWidth;
  return cfg;
}

struct Interval {
  Rational lo, hi;
};

Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
Interval operator*(const Interval& a, const Interval& b) {
  const Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}
Interval operator*(const Rational& c, const Interval& a) { return Interval{c, c} * a; }

Rational magnitude(const Interval& x) { return std::max(abs(x.lo), abs(x.hi)); }

// Power sums of the roots of monic h: s_0 .. s_k, by Newton's identities.
std::vector<Rational> root_power_sums(const UniPoly& h, int k) {
  const UniPoly m = h.monic();
  const int d = m.degree();
  std::vector<Rational> s(k + 1);
  s[0] = d;
  // e-coefficients: m = t^d + c_{d-1} t^{d-1} + ... + c_0
  for (int j = 1; j <= k; ++j) {
    Rational acc = 0;
    for (int i = 1; i <= std::min(j - 1, d); ++i) acc += m.coeff(d - i) * s[j - i];
    if (j <= d) acc += j * m.coeff(d - j);
    s[j] = -acc;
  }
  return s;
}

// sum over encoded points of (lambda . x)^k for k = 1..deg, computed from traces in Q[t]/qlast.
std::vector<Rational> point_power_sums(const RationalParametrization& p, const std::vector<Rational>& lambda) {
  std::vector<Rational> out;
  if (p.is_empty()) return out;
  const int d = p.degree();
  const auto g = p.coordinates();
  UniPoly mu;
  for (int i = 0; i < p.n; ++i) mu = mu + lambda[i] * g[i];
  mu = mu % p.qlast;
  const auto s = root_power_sums(p.qlast, d - 1);
  UniPoly power = UniPoly::constant(1);
  for (int k = 1; k <= d; ++k) {
    power = (power * mu) % p.qlast;
    Rational tr = 0;
    for (int j = 0; j <= power.degree(); ++j) tr += power.coeff(j) * s[j];
    out.push_back(tr);
  }
  return out;
}

// Equal finite sets, tested by cardinality and power sums along two linear forms.
bool same_points(const RationalParametrization& a, const RationalParametrization& b, Rng& rng) {
  if (a.n != b.n || a.degree() != b.degree()) return false;
  for (int trial = 0; trial < 2; ++trial) {
    std::vector<Rational> lambda(a.n);
    for (auto& x : lambda) x = rng.uniform(-1000, 1000);
    if (point_power_sums(a, lambda) != point_power_sums(b, lambda)) return false;
  }
  return true;
}

RationalParametrization random_parametrization(Rng& rng, int n) {
  for (;;) {
    const int d = static_cast<int>(rng.uniform(1, 6));
    std::vector<Rational> c(d + 1);
    for (auto& x : c) x = make_rational(rng.uniform(-30, 30), rng.uniform(1, 5));
    c.back() = 1;
    UniPoly h(c);
    if (!is_squarefree(h)) continue;
    std::vector<UniPoly> g;
    for (int i = 0; i < n; ++i) {
      std::vector<Rational> gc(d);
      for (auto& x : gc) x = rng.uniform(-9, 9);
      // The first coordinate separates the roots.
      if (i == 0 && d > 1) gc[1] = rng.uniform(1, 9);
      if (i == 0 && d > 2) std::fill(gc.begin() + 2, gc.end(), Rational(0));
      g.push_back(UniPoly(gc));
    }
    return RationalParametrization::from_shape(h, g);
  }
}

LinearMatrix random_instance(int m, int n, std::uint64_t seed) {
  Rng rng(seed);
  return random_linear_matrix(m, n, 99, rng);
}

// The critical-point parametrization of the top recursion level, rebuilt from the trace.
RationalParametrization first_level(const LinearMatrix& a, int r, const SolveTrace& trace) {
  const LevelRecord& top = trace.levels.front();
  const LinearMatrix am = a.compose(*top.M);
  const ReducedIncidence inc = eliminate_kernel_rows(am, r, *trace.U, *trace.S);
  const ReducedLagrange lag = build_reduced_lagrange(inc, top.v);
  std::vector<int> keep(a.n);
  for (int i = 0; i < a.n; ++i) keep[i] = i;
  Rng rng(trace.seed ^ 0x5bd1e995u);
  return image(rat_par(lag.polys, keep, rng), *top.M->inverse());
}

// ---------------------------------------------------------------------------

Report cayley_rank_one() {
  Report rep;
  const auto a = load_problem(data_path("cayley.json")).matrix;
  const auto t0 = Clock::now();
  const auto res = low_rank(a, 1, config(1));
  const auto pts = real_points(res.parametrization, kWidth);
  const double elapsed = seconds_since(t0);
  const auto& p = res.parametrization;
  rep.check(p.degree() == 4, "degree " + std::to_string(p.degree()) + " (want 4)");
  rep.check(pts.size() == 4, "real points " + std::to_string(pts.size()) + " (want 4)");
  auto u = make_universe({"x1", "x2", "x3"});
  PolySystem exact{MultiPoly::parse(u, "x1^2 - 1"), MultiPoly::parse(u, "x2^2 - 1"), MultiPoly::parse(u, "x3 - x1*x2")};
  rep.check(vanishes_on(exact, p), "points are exactly {(1,1,1), (1,-1,-1), (-1,1,-1), (-1,-1,1)}");
  bool boxes = true;
  for (const auto& b : pts)
    for (int i = 0; i < 3; ++i) {
      const int k = b.lo[i] > 0 ? 1 : -1;
      boxes = boxes && b.hi[i] - b.lo[i] <= kWidth && b.lo[i] <= k && k <= b.hi[i];
    }
  rep.check(boxes, "boxes of width <= 2^-60 around the integer points");
  rep.check(minors_vanish(a, 1, p), "2x2 minors vanish on the output");
  rep.check(elapsed < 10, "runtime " + fmt(elapsed) + " (limit 10 s)");
  return rep;
}

Report cayley_rank_two() {
  Report rep;
  const auto a = load_problem(data_path("cayley.json")).matrix;
  auto u = make_universe({"x1", "x2", "x3"});
  PolySystem rank_one{MultiPoly::parse(u, "x1^2 - 1"), MultiPoly::parse(u, "x2^2 - 1"),
                      MultiPoly::parse(u, "x3 - x1*x2")};
  Rng rng(77);
  const RationalParametrization corners = rat_par(Ideal(rank_one), rng);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto t0 = Clock::now();
    const auto res = low_rank(a, 2, config(seed));
    const double elapsed = seconds_since(t0);
    const auto& p = res.parametrization;
    const auto partial = res.trace.partial_degrees();
    const int real = count_real(p);
    const std::string tag = "seed " + std::to_string(seed) + ": ";
    rep.check(p.degree() == 14, tag + "degree " + std::to_string(p.degree()) + " (want 14)");
    rep.check(partial == std::vector<int>{5, 6, 3}, tag + "partial degrees " + str(partial) + " (want [5 6 3])");
    rep.check(real == 12, tag + "real solutions " + std::to_string(real) + " (want 12)");
    const auto top = first_level(a, 2, res.trace);
    rep.check(top.degree() == 5 && unite(top, corners, rng).degree() == top.degree(),
              tag + "the 4 rank-one points are among the first-level solutions");
    rep.check(minors_vanish(a, 2, p), tag + "3x3 minors vanish on the output");
    rep.check(elapsed < 60, tag + "runtime " + fmt(elapsed) + " (limit 60 s)");
  }
  return rep;
}

Report pillow() {
  Report rep;
  const auto a = load_problem(data_path("pillow.json")).matrix;
  struct Row {
    int r;
    std::vector<int> partial;
    int total;
    int real;
  };
  for (const Row& row : {Row{3, {6, 8, 4}, 18, 14}, Row{2, {4, 0, 0}, 4, 4}, Row{1, {0, 0, 0}, 0, 0}}) {
    const auto t0 = Clock::now();
    const auto res = low_rank(a, row.r, config(1));
    const auto& p = res.parametrization;
    const auto pts = real_points(p, kWidth);
    const double elapsed = seconds_since(t0);
    const std::string tag = "r=" + std::to_string(row.r) + ": ";
    const auto partial = res.trace.partial_degrees();
    rep.check(partial == row.partial, tag + "partial degrees " + str(partial) + " (want " + str(row.partial) + ")");
    rep.check(p.degree() == row.total,
              tag + "total degree " + std::to_string(p.degree()) + " (want " + std::to_string(row.total) + ")");
    rep.check(static_cast<int>(pts.size()) == row.real,
              tag + "real solutions " + std::to_string(pts.size()) + " (want " + std::to_string(row.real) + ")");
    rep.check(minors_vanish(a, row.r, p), tag + "minors vanish on the output");
    if (row.r == 2) {
      // Interval enclosures of 2 x1^2 - 1 and x2 + x3 over each box; 8 w bounds both
      // for coordinates of size < 1 and boxes of width w.
      bool ok = !pts.empty();
      for (const auto& b : pts) {
        const Interval x1{b.lo[0], b.hi[0]}, x2{b.lo[1], b.hi[1]}, x3{b.lo[2], b.hi[2]};
        const Interval f = Rational(2) * (x1 * x1) + Interval{-1, -1};
        const Interval g = x2 + x3;
        ok = ok && magnitude(f) <= 8 * kWidth && magnitude(g) <= 8 * kWidth;
      }
      rep.check(ok, tag + "every box has |2 x1^2 - 1| and |x2 + x3| below 8 * 2^-60");
    }
    rep.check(elapsed < 120, tag + "runtime " + fmt(elapsed) + " (limit 120 s)");
  }
  return rep;
}

Report table_rows() {
  Report rep;
  struct Row {
    int m, r, n, total, maxdeg;
  };
  const std::vector<Row> rows{{3, 2, 2, 9, 12},  {3, 2, 3, 21, 12}, {3, 2, 4, 33, 12}, {3, 2, 5, 39, 12},
                              {4, 2, 3, 0, -1},  {5, 2, 6, 0, -1},  {4, 2, 4, 20, -1}};
  for (const Row& row : rows)
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const auto a = random_instance(row.m, row.n, seed);
      const auto t0 = Clock::now();
      const auto res = low_rank(a, row.r, config(seed));
      const double elapsed = seconds_since(t0);
      const auto partial = res.trace.partial_degrees();
      const int maxdeg = partial.empty() ? 0 : *std::max_element(partial.begin(), partial.end());
      std::ostringstream tag;
      tag << "(" << row.m << "," << row.r << "," << row.n << ") seed " << seed << ": ";
      bool ok = res.parametrization.degree() == row.total && (row.maxdeg < 0 || maxdeg <= row.maxdeg);
      ok = ok && minors_vanish(a, row.r, res.parametrization);
      rep.check(ok, tag.str() + "degree " + std::to_string(res.parametrization.degree()) + " (want " +
                        std::to_string(row.total) + "), partial " + str(partial) + ", " + fmt(elapsed));
    }
  return rep;
}

Report berk() {
  Report rep;
  const auto ones = load_problem(data_path("berk_ones.json")).matrix;
  for (int r : {2, 3}) {
    bool raised = false;
    try {
      low_rank(ones, r, config(1));
    } catch (const GenericityError&) {
      raised = true;
    }
    rep.check(raised, "a = (1,1,1,1), r=" + std::to_string(r) + ": GenericityError");
  }
  const auto r1 = low_rank(ones, 1, config(1));
  rep.check(r1.parametrization.degree() == 4 && count_real(r1.parametrization) == 4,
            "a = (1,1,1,1), r=1: degree " + std::to_string(r1.parametrization.degree()) + ", " +
                std::to_string(count_real(r1.parametrization)) + " real (want 4, 4)");

  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    Rng rng(1000 + seed);
    std::map<std::string, Rational> values;
    std::ostringstream tag;
    tag << "a = (";
    for (int i = 1; i <= 4; ++i) {
      Rational v = make_rational(rng.uniform(-99, 99), rng.uniform(1, 99));
      if (v == 0) v = 1;
      values["a" + std::to_string(i)] = v;
      tag << (i > 1 ? ", " : "") << to_string(v);
    }
    tag << "), r=2: ";
    const auto a = load_problem(data_path("berk.json"), values).matrix;
    const auto t0 = Clock::now();
    try {
      const auto res = low_rank(a, 2, config(seed));
      const auto partial = res.trace.partial_degrees();
      rep.check(partial == std::vector<int>{12, 20, 8, 0, 0} && res.parametrization.degree() == 40,
                tag.str() + "partial degrees " + str(partial) + " (want [12 20 8 0 0]), " + fmt(seconds_since(t0)));
    } catch (const GenericityError& e) {
      std::string detail = tag.str() + "GenericityError (" + e.what() + ", g2 " + to_string(e.report.g2);
      for (const auto& d : e.report.dims)
        if (!d.ok)
          detail += ", dim D_" + std::to_string(d.p) + " = " + std::to_string(d.dimension) + " vs " +
                    std::to_string(d.expected);
      rep.check(false, detail + ")");
    } catch (const BudgetExceeded& e) {
      rep.check(false, tag.str() + "budget exceeded (" + e.what() + ")");
    }
  }
  rep.note("r=3 (total 76) is not attempted: expected-slow");
  return rep;
}

Report bounds_grid() {
  Report rep;
  const auto t0 = Clock::now();
  int mismatches = 0, cube = 0, unstable = 0, points = 0;
  for (int m = 1; m <= 6; ++m)
    for (int r = 0; r < m; ++r) {
      const int c = (m - r) * (m - r);
      for (int n = c; n <= 12; ++n) {
        ++points;
        const Integer d = delta(m, n, r);
        if (d != delta_oracle(m, n, r)) ++mismatches;
        const BezoutProfile prof = profile(m, n, r);
        if (d > prof.cube_bound) ++cube;
        if (n > m * m - r * r && prof.total != profile(m, m * m - r * r, r).total) ++unstable;
      }
    }
  const double elapsed = seconds_since(t0);
  rep.check(mismatches == 0, "delta = coefficient oracle on " + std::to_string(points) + " grid points (" +
                                 std::to_string(mismatches) + " mismatches)");
  rep.check(cube == 0, "delta <= binomial(n + m(m-r), n)^3 on the grid (" + std::to_string(cube) + " violations)");
  rep.check(unstable == 0, "profile totals constant for n >= m^2 - r^2 (" + std::to_string(unstable) + " violations)");
  rep.check(elapsed < 5, "runtime " + fmt(elapsed) + " (limit 5 s)");
  return rep;
}

Report properties() {
  Report rep;
  constexpr int kCases = 100;
  Rng rng(2024);

  int invariants = 0, membership = 0, determinism = 0;
  const std::vector<std::array<int, 3>> shapes{{2, 1, 1}, {2, 1, 2}, {2, 1, 3}, {3, 2, 1}, {3, 2, 2}, {2, 0, 4}};
  for (int i = 0; i < kCases; ++i) {
    const auto [m, r, n] = shapes[i % shapes.size()];
    const std::uint64_t seed = 500 + i;
    const auto a = random_instance(m, n, seed);
    const auto x = low_rank(a, r, config(seed));
    const auto y = low_rank(a, r, config(seed));
    try {
      x.parametrization.validate();
      ++invariants;
    } catch (const std::invalid_argument&) {
    }
    if (minors_vanish(a, r, x.parametrization)) ++membership;
    if (to_json(x.parametrization).dump() == to_json(y.parametrization).dump() &&
        to_json(x.trace).dump() == to_json(y.trace).dump())
      ++determinism;
  }
  rep.check(invariants == kCases, "parametrization invariants on solve outputs: " + std::to_string(invariants) + "/100");
  rep.check(membership == kCases, "minors vanish on solve outputs: " + std::to_string(membership) + "/100");
  rep.check(determinism == kCases, "fixed seed reproduces output and trace: " + std::to_string(determinism) + "/100");

  int lifts = 0, images = 0, idem = 0, comm = 0;
  for (int i = 0; i < kCases; ++i) {
    const int n = static_cast<int>(rng.uniform(1, 4));
    const auto p = random_parametrization(rng, n);
    const auto q = random_parametrization(rng, n);
    std::vector<int> tail(n);
    for (int j = 0; j < n; ++j) tail[j] = j + 1;
    const Rational t = make_rational(rng.uniform(-50, 50), rng.uniform(1, 7));
    if (same_points(project(lift(p, t), tail, rng), p, rng)) ++lifts;

    RationalMatrix M(n, n);
    do {
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) M(r, c) = rng.uniform(-9, 9);
    } while (M.rank() < n);
    if (same_points(image(image(p, M), *M.inverse()), p, rng)) ++images;

    if (same_points(unite(p, p, rng), p, rng)) ++idem;
    const auto pq = unite(p, q, rng), qp = unite(q, p, rng);
    if (same_points(pq, qp, rng) && pq.degree() <= p.degree() + q.degree()) ++comm;
  }
  rep.check(lifts == kCases, "project(lift(p, t)) = p: " + std::to_string(lifts) + "/100");
  rep.check(images == kCases, "image(image(p, M), M^-1) = p: " + std::to_string(images) + "/100");
  rep.check(idem == kCases, "p u p = p: " + std::to_string(idem) + "/100");
  rep.check(comm == kCases, "p u q = q u p: " + std::to_string(comm) + "/100");

  int agree = 0;
  for (int i = 0; i < kCases; ++i) {
    const int deg = static_cast<int>(rng.uniform(1, 12));
    std::vector<Rational> c(deg + 1);
    for (auto& x : c) x = rng.uniform(-40, 40);
    c.back() = rng.uniform(1, 5);
    UniPoly h = squarefree_part(UniPoly(c));
    if (i % 4 == 0) {
      std::vector<Rational> roots{Rational(1, 3), Rational(-2), Rational(5, 4)};
      h = squarefree_part(h * UniPoly::from_roots(roots));
    }
    if (h.degree() <= 0) {
      ++agree;
      continue;
    }
    const auto iso = isolate_roots(h);
    bool ok = static_cast<int>(iso.size()) == sturm_count(h);
    for (const auto& root : iso)
      if (!root.exact())
        ok = ok && h.sign_at(root.lo) * h.sign_at(root.hi) < 0 &&
             sturm_count(h, root.lo, root.hi) == 1;
    if (ok) ++agree;
  }
  rep.check(agree == kCases, "Sturm count = Descartes isolation: " + std::to_string(agree) + "/100");
  return rep;
}

}  // namespace

int main(int argc, char** argv) {
  bool strict = false;
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--strict") == 0) strict = true;
    else only.push_back(std::atoi(argv[i]));
  }
  const std::vector<std::pair<std::string, std::function<Report()>>> criteria{
      {"cayley r=1", cayley_rank_one},  {"cayley r=2", cayley_rank_two}, {"pillow", pillow},
      {"random dense rows", table_rows}, {"parametrized symmetric 4x4", berk}, {"degree bounds", bounds_grid},
      {"property suite", properties}};
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    const auto t0 = Clock::now();
    Report rep;
    try {
      rep = criteria[k].second();
    } catch (const std::exception& e) {
      rep.check(false, std::string("unexpected exception: ") + e.what());
    }
    if (!rep.ok) ++failed;
    std::cout << "criterion " << id << " (" << criteria[k].first << "): " << (rep.ok ? "PASS" : "FAIL") << "  ["
              << fmt(seconds_since(t0)) << "]\n";
    for (const auto& line : rep.lines) std::cout << "    " << line << "\n";
    std::cout.flush();
  }
  std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria fail") << "\n";
  return strict && failed > 0 ? 1 : 0;
}
