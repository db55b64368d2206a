#include <doctest.h>

#include <set>

#include "lowrank/problem.hpp"
#include "lowrank/ratpar.hpp"
#include "lowrank/realroots.hpp"

using namespace lowrank;

namespace {

PolySystem parse_all(const Universe& u, std::initializer_list<const char*> texts) {
  PolySystem out;
  for (auto t : texts) out.push_back(MultiPoly::parse(u, t));
  return out;
}

RationalParametrization of(const Universe& u, std::initializer_list<const char*> texts, std::uint64_t seed = 1) {
  Rng rng(seed);
  return rat_par(Ideal(parse_all(u, texts)), rng);
}

// p encodes exactly V(gens) when gens is radical with `count` points.
bool encodes(const RationalParametrization& p, const PolySystem& gens, int count) {
  p.validate();
  return p.degree() == count && vanishes_on(gens, p);
}

}  // namespace

TEST_CASE("rat_par of x1^2 - 2") {
  auto u = make_universe({"x1"});
  auto p = of(u, {"x1^2 - 2"});
  REQUIRE(p.degree() == 2);
  // Up to the choice of separating form t = c x1, check the encoded set directly.
  CHECK(encodes(p, parse_all(u, {"x1^2 - 2"}), 2));
  CHECK(p.q0 == p.qlast.derivative());

  auto s = RationalParametrization::from_shape(UniPoly({-2, 0, 1}), {UniPoly::t()});
  CHECK(s.q0 == UniPoly({0, 2}));
  CHECK(s.q[0] == UniPoly::constant(4));
  CHECK(s.qlast == UniPoly({-2, 0, 1}));
}

TEST_CASE("rat_par of the unit ideal and of a single point") {
  auto u = make_universe({"x1", "x2"});
  auto e = of(u, {"1"});
  CHECK(e.is_empty());
  CHECK(e == RationalParametrization::empty(2));

  Rng rng(1);
  Ideal I(parse_all(u, {"x1 - 1", "x2 + 1"}));
  std::vector<Rational> lambda{1, 0};
  std::vector<int> vars{0, 1};
  auto sb = shape_position_basis(I, vars, rng, lambda);
  CHECK(sb.h.monic() == UniPoly({-1, 1}));
  auto p = rat_par(I, rng);
  CHECK(encodes(p, I.generators(), 1));
}

TEST_CASE("shape position of a four point grid") {
  auto u = make_universe({"x1", "x2"});
  Ideal I(parse_all(u, {"x1^2 - 1", "x2^2 - 1"}));
  Rng rng(1);
  std::vector<Rational> lambda{1, 2};
  std::vector<int> vars{0, 1};
  auto sb = shape_position_basis(I, vars, rng, lambda);
  // t = x1 + 2 x2 takes the values -3, -1, 1, 3.
  std::vector<Rational> roots{-3, -1, 1, 3};
  CHECK(sb.h.monic() == UniPoly::from_roots(roots));
  for (const auto& t : roots) {
    const Rational x1 = sb.coords[0].eval(t), x2 = sb.coords[1].eval(t);
    CHECK(x1 + 2 * x2 == t);
    CHECK(x1 * x1 == 1);
    CHECK(x2 * x2 == 1);
  }
}

TEST_CASE("rat_par works modulo the radical") {
  auto u = make_universe({"x1", "x2"});
  auto p = of(u, {"x1^2", "x2 - x1 - 3"});
  CHECK(encodes(p, parse_all(u, {"x1", "x2 - 3"}), 1));
}

TEST_CASE("rat_par rejects positive dimension without elimination") {
  auto u = make_universe({"x1", "x2"});
  Rng rng(1);
  RatParOptions o;
  o.allow_elimination = false;
  CHECK_THROWS(rat_par(Ideal(parse_all(u, {"x1*x2"})), rng, o));
}

TEST_CASE("modular and rational routes agree") {
  auto u = make_universe({"x1", "x2", "x3"});
  auto gens = parse_all(u, {"x1^2 + x2^2 - 5", "x1*x2 - 2", "x3 - x1 - x2"});
  Rng r1(5), r2(5);
  RatParOptions exact;
  exact.modular = false;
  auto a = rat_par(Ideal(gens), r1);
  auto b = rat_par(Ideal(gens), r2, exact);
  CHECK(encodes(a, gens, 4));
  CHECK(encodes(b, gens, 4));
}

TEST_CASE("project") {
  auto u = make_universe({"x1", "x2"});
  auto p = of(u, {"(x1 - 1)*(x1 - 2)", "x2 - 5"});
  REQUIRE(p.degree() == 2);
  Rng rng(2);
  std::vector<int> second{1};
  auto q = project(p, second, rng);
  CHECK(q.n == 1);
  CHECK(q.degree() == 1);
  CHECK(encodes(q, parse_all(make_universe({"x2"}), {"x2 - 5"}), 1));

  std::vector<int> all{0, 1};
  auto same = project(p, all, rng);
  CHECK(encodes(same, parse_all(u, {"(x1 - 1)*(x1 - 2)", "x2 - 5"}), 2));
}

TEST_CASE("lift") {
  auto u1 = make_universe({"x1"});
  auto p = of(u1, {"x1 - 3"});
  auto l = lift(p, 7);
  CHECK(l.n == 2);
  CHECK(encodes(l, parse_all(make_universe({"x1", "x2"}), {"x1 - 7", "x2 - 3"}), 1));
  CHECK(lift(RationalParametrization::empty(1), 7).is_empty());

  auto u2 = make_universe({"x1", "x2"});
  auto q = of(u2, {"x1^2 - 2", "x2 - x1 + 1"});
  Rng rng(3);
  std::vector<int> tail{1, 2};
  auto back = project(lift(q, Rational(1, 3)), tail, rng);
  CHECK(encodes(back, parse_all(u2, {"x1^2 - 2", "x2 - x1 + 1"}), 2));
}

TEST_CASE("image") {
  auto u = make_universe({"x1", "x2"});
  auto p = of(u, {"x1 - 4", "x2 - 6"});
  auto two = 2 * RationalMatrix::identity(2);
  CHECK(encodes(image(p, two), parse_all(u, {"x1 - 2", "x2 - 3"}), 1));
  CHECK(image(p, RationalMatrix::identity(2)) == p);

  auto q = of(u, {"x1^2 - 3", "x2^2 - x1"});
  auto M = RationalMatrix::from_rows({{1, 2}, {-1, 3}});
  auto back = image(image(q, M), *M.inverse());
  CHECK(encodes(back, parse_all(u, {"x1^2 - 3", "x2^2 - x1"}), 4));
  CHECK_THROWS_AS(image(q, RationalMatrix::from_rows({{1, 2}, {2, 4}})), std::invalid_argument);
}

TEST_CASE("unite") {
  auto u = make_universe({"x1"});
  auto one = of(u, {"x1 - 1"});
  auto two = of(u, {"x1 - 2"});
  Rng rng(4);
  auto both = unite(one, two, rng);
  CHECK(encodes(both, parse_all(u, {"(x1 - 1)*(x1 - 2)"}), 2));
  CHECK(unite(one, one, rng).degree() == 1);
  CHECK(encodes(unite(one, RationalParametrization::empty(1), rng), parse_all(u, {"x1 - 1"}), 1));

  auto u2 = make_universe({"x1", "x2"});
  auto a = of(u2, {"x1^2 - 2", "x2 - 1"});
  auto b = of(u2, {"x1^2 - 2", "x2 - x1"});
  auto c = of(u2, {"x1 + 5", "x2^2 + 1"});
  auto ab = unite(a, b, rng), ba = unite(b, a, rng);
  // (sqrt2, 1), (-sqrt2, 1), (sqrt2, sqrt2), (-sqrt2, -sqrt2)
  auto ab_gens = parse_all(u2, {"x1^2 - 2", "(x2 - 1)*(x2 - x1)"});
  CHECK(encodes(ab, ab_gens, 4));
  CHECK(encodes(ba, ab_gens, 4));
  auto left = unite(ab, c, rng), right = unite(a, unite(b, c, rng), rng);
  auto all = parse_all(u2, {"(x1^2 - 2)*(x1 + 5)", "(x2 - 1)*(x2 - x1)*(x2^2 + 1)"});
  CHECK(encodes(left, all, 6));
  CHECK(encodes(right, all, 6));
  CHECK(unite(ab, a, rng).degree() == 4);
}

TEST_CASE("json round trip") {
  auto u = make_universe({"x1", "x2"});
  auto p = of(u, {"x1^2 - 1/3", "x2 - 2*x1"});
  auto j = to_json(p);
  CHECK(j["n"] == 2);
  CHECK(parametrization_from_json(j) == p);
}

TEST_CASE("validate catches broken invariants") {
  RationalParametrization p = RationalParametrization::from_shape(UniPoly({-2, 0, 1}), {UniPoly::t()});
  p.qlast = UniPoly({1, 2, 1});  // (t + 1)^2
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("minors_vanish") {
  // diag(x1, x1, 1) drops to rank 1 exactly at x1 = 0.
  LinearMatrix a(3, 1,
                 {RationalMatrix::from_rows({{0, 0, 0}, {0, 0, 0}, {0, 0, 1}}),
                  RationalMatrix::from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 0}})});
  auto u = make_universe({"x1"});
  CHECK(minors_vanish(a, 1, of(u, {"x1"})));
  CHECK_FALSE(minors_vanish(a, 1, of(u, {"x1 - 1"})));
  CHECK(minors_vanish(a, 2, of(u, {"x1"})));
  CHECK_FALSE(minors_vanish(a, 2, of(u, {"x1^2 - 7"})));
}

TEST_CASE("isolate_roots") {
  auto r = isolate_roots(UniPoly({-2, 0, 1}));
  REQUIRE(r.size() == 2);
  for (auto& i : r) refine(UniPoly({-2, 0, 1}), i, 1);
  CHECK(r[0].lo >= -2);
  CHECK(r[0].hi <= -1);
  CHECK(r[1].lo >= 1);
  CHECK(r[1].hi <= 2);
  for (const auto& i : r) CHECK(UniPoly({-2, 0, 1}).sign_at(i.lo) * UniPoly({-2, 0, 1}).sign_at(i.hi) < 0);
  CHECK(isolate_roots(UniPoly({1, 0, 1})).empty());
  CHECK_THROWS_AS(isolate_roots(UniPoly({1, 2, 1})), std::invalid_argument);
}

TEST_CASE("count_real") {
  CHECK(count_real(RationalParametrization::from_shape(UniPoly({-2, 0, 1}), {UniPoly::t()})) == 2);
  CHECK(count_real(RationalParametrization::from_shape(UniPoly({1, 0, 1}), {UniPoly::t()})) == 0);
  CHECK(count_real(RationalParametrization::empty(3)) == 0);
}

TEST_CASE("sturm and descartes agree") {
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const int deg = static_cast<int>(rng.uniform(1, 9));
    std::vector<Rational> c(deg + 1);
    for (auto& x : c) x = rng.uniform(-20, 20);
    if (c.back() == 0) c.back() = 1;
    // Some products of rational linear factors to get exact and clustered roots.
    UniPoly h(c);
    if (trial % 3 == 0) {
      std::vector<Rational> roots{Rational(1, 2), 0, Rational(-7, 3)};
      h = h * UniPoly::from_roots(roots);
    }
    h = squarefree_part(h);
    if (h.degree() <= 0) continue;
    auto iso = isolate_roots(h);
    REQUIRE(static_cast<int>(iso.size()) == sturm_count(h));
    for (std::size_t i = 0; i < iso.size(); ++i) {
      if (iso[i].exact()) {
        CHECK(h.eval(iso[i].lo) == 0);
      } else {
        const int at_hi = h.sign_at(iso[i].hi) == 0 ? 1 : 0;
        CHECK(sturm_count(h, iso[i].lo, iso[i].hi) - at_hi == 1);
      }
      if (i + 1 < iso.size()) {
        CAPTURE(h.to_string());
        CHECK(iso[i].hi <= iso[i + 1].lo);
      }
    }
  }
}

TEST_CASE("evaluate_box") {
  auto p = RationalParametrization::from_shape(UniPoly({-2, 0, 1}), {UniPoly::t()});
  auto roots = isolate_roots(p.qlast);
  const Rational w(1, 1000);
  auto box = evaluate_box(p, roots[1], w);
  CHECK(box.hi[0] - box.lo[0] <= w);
  CHECK(box.lo[0] * box.lo[0] <= 2);
  CHECK(box.hi[0] * box.hi[0] >= 2);
  CHECK(box.lo[0] > Rational(141, 100));

  // Narrower root intervals give nested boxes.
  auto coarse = evaluate_box(p, roots[1], Rational(1, 10));
  auto fine = evaluate_box(p, coarse.root, Rational(1, 100000));
  CHECK(fine.lo[0] >= coarse.lo[0]);
  CHECK(fine.hi[0] <= coarse.hi[0]);
}

TEST_CASE("cayley rank one boxes") {
  auto a = load_problem(LOWRANK_DATA_DIR "/cayley.json").matrix;
  Rng rng(1);
  auto [U, S] = draw_incidence_data(3, 1, 9, rng);
  auto sys = build_incidence(a, 1, U, S);
  std::vector<int> keep{0, 1, 2};
  auto p = rat_par(sys.polys, keep, rng);
  REQUIRE(p.degree() == 4);
  const Rational w = Rational(1) / Rational(Integer(1) << 60);
  auto pts = real_points(p, w);
  REQUIRE(pts.size() == 4);
  std::set<std::vector<int>> signs;
  for (const auto& b : pts) {
    std::vector<int> s;
    for (int i = 0; i < 3; ++i) {
      CHECK(b.hi[i] - b.lo[i] <= w);
      const int k = b.lo[i] > 0 ? 1 : -1;
      CHECK(b.lo[i] <= k);
      CHECK(b.hi[i] >= k);
      s.push_back(k);
    }
    signs.insert(s);
  }
  std::set<std::vector<int>> expect{{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
  CHECK(signs == expect);
}
