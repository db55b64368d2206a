#include <doctest.h>

#include "lowrank/groebner.hpp"
#include "lowrank/lagrange.hpp"
#include "lowrank/problem.hpp"
#include "lowrank/ratpar.hpp"

using namespace lowrank;

namespace {

RationalMatrix mat(const std::vector<std::vector<Rational>>& rows) { return RationalMatrix::from_rows(rows); }

LinearMatrix cayley() { return load_problem(LOWRANK_DATA_DIR "/cayley.json").matrix; }

}  // namespace

TEST_CASE("incidence shape for m=2, r=1, n=1") {
  Rng rng(3);
  auto a = random_linear_matrix(2, 1, 9, rng);
  auto [U, S] = draw_incidence_data(2, 1, 9, rng);
  auto sys = build_incidence(a, 1, U, S);
  CHECK(sys.polys.size() == 3);
  CHECK(sys.universe->size() == 3);
}

TEST_CASE("incidence of diag(x1, 1)") {
  LinearMatrix a(2, 1, {mat({{0, 0}, {0, 1}}), mat({{1, 0}, {0, 0}})});
  auto sys = build_incidence(a, 1, mat({{1, 0}}), mat({{1}}));
  const auto& u = sys.universe;
  REQUIRE(sys.polys.size() == 3);
  CHECK(sys.polys[0] == MultiPoly::parse(u, "x1*y1_1"));
  CHECK(sys.polys[1] == MultiPoly::parse(u, "y2_1"));
  CHECK(sys.polys[2] == MultiPoly::parse(u, "y1_1 - 1"));
  std::vector<Rational> pt{0, 1, 0};
  for (const auto& f : sys.polys) CHECK(f.eval(pt) == 0);

  // Eliminating the y block leaves x1 = 0.
  GroebnerOptions lex;
  lex.order = MonomialOrder::lex();
  auto g = groebner_basis(Ideal(sys.polys), lex);
  CHECK(std::find(g.begin(), g.end(), MultiPoly::parse(u, "x1")) != g.end());
  CHECK(std::find(g.begin(), g.end(), MultiPoly::parse(u, "y2_1")) != g.end());
}

TEST_CASE("cayley rank two incidence") {
  auto a = cayley();
  Rng rng(1);
  auto [U, S] = draw_incidence_data(3, 2, 9, rng);
  auto sys = build_incidence(a, 2, U, S);
  CHECK(sys.polys.size() == 4);
  CHECK(sys.universe->size() == 6);

  auto red = eliminate_kernel_rows(sys);
  CHECK(red.polys.size() == 3);
  CHECK(static_cast<int>(red.universe->size()) == 3 + 2);
}

TEST_CASE("incidence rejects bad data") {
  auto a = cayley();
  CHECK_THROWS_AS(build_incidence(a, 3, mat({{1, 0, 0}}), mat({{1}})), std::invalid_argument);
  CHECK_THROWS_AS(build_incidence(a, 2, mat({{0, 0, 0}}), mat({{1}})), std::invalid_argument);
  CHECK_THROWS_AS(build_incidence(a, 2, mat({{1, 0, 0}}), mat({{0}})), std::invalid_argument);
}

TEST_CASE("incidence points lie on the rank locus") {
  // Solutions of the reduced incidence system have rank A(x) <= r.
  auto a = cayley();
  Rng rng(5);
  auto [U, S] = draw_incidence_data(3, 1, 9, rng);
  auto sys = build_incidence(a, 1, U, S);
  std::vector<int> keep{0, 1, 2};
  auto p = rat_par(sys.polys, keep, rng);
  CHECK(p.degree() == 4);
  CHECK(minors_vanish(a, 1, p));
}

TEST_CASE("lagrange system sizes") {
  Rng rng(11);
  for (auto [m, r, n, expect] : {std::tuple{3, 2, 3, 10}, std::tuple{2, 1, 2, 7}}) {
    auto a = random_linear_matrix(m, n, 9, rng);
    auto [U, S] = draw_incidence_data(m, r, 9, rng);
    std::vector<Rational> v(static_cast<std::size_t>((2 * m - r) * (m - r)));
    for (auto& x : v) x = rng.uniform(-9, 9);
    v[0] = 1;
    auto L = build_lagrange(a, r, RationalMatrix::identity(n), U, S, v);
    CHECK(static_cast<int>(L.polys.size()) == expect);
    CHECK(static_cast<int>(L.universe->size()) == expect);
  }
}

TEST_CASE("lagrange normalization with v = e1") {
  Rng rng(2);
  auto a = random_linear_matrix(2, 2, 9, rng);
  auto [U, S] = draw_incidence_data(2, 1, 9, rng);
  std::vector<Rational> v{1, 0, 0};
  auto L = build_lagrange(a, 1, RationalMatrix::identity(2), U, S, v);
  CHECK(L.polys.back() == MultiPoly::parse(L.universe, "z1 - 1"));
}

TEST_CASE("jacobian of x1*y1") {
  auto u = make_universe({"x1", "y1"});
  PolySystem f{MultiPoly::parse(u, "x1*y1")};
  std::vector<int> vars{0, 1};
  auto J = jacobian(f, vars);
  REQUIRE(J.size() == 1);
  CHECK(J[0][0] == MultiPoly::parse(u, "y1"));
  CHECK(J[0][1] == MultiPoly::parse(u, "x1"));
}

TEST_CASE("jacobian matches a finite difference on a cubic") {
  auto u = make_universe({"x1", "x2"});
  PolySystem f{MultiPoly::parse(u, "x1^3*x2 - 2*x2^2 + x1")};
  std::vector<int> vars{0, 1};
  auto J = jacobian(f, vars);
  std::vector<Rational> p{Rational(3, 2), -2};
  auto d = [&](int i, const Rational& h) -> Rational {
    auto q = p;
    q[i] += h;
    return (f[0].eval(q) - f[0].eval(p)) / h;
  };
  for (int i = 0; i < 2; ++i) {
    // 2 D(h) - D(2h) cancels the O(h) error.
    const Rational h(1, 1000000);
    const Rational est = 2 * d(i, h) - d(i, 2 * h);
    CHECK(abs(est - J[0][i].eval(p)) < Rational(1, 100000));
  }
}

TEST_CASE("lagrange system is empty beyond m^2 - r^2 variables") {
  Rng rng(7);
  auto a = random_linear_matrix(3, 6, 9, rng);
  auto [U, S] = draw_incidence_data(3, 2, 9, rng);
  auto red = eliminate_kernel_rows(a, 2, U, S);
  std::vector<Rational> v(3);
  for (auto& x : v) x = rng.uniform(-9, 9);
  v[0] = 1;
  auto L = build_reduced_lagrange(red, v);
  CHECK(ideal_dimension_multimodular(Ideal(L.universe, L.polys)) == -1);
}

TEST_CASE("reduced lagrange solutions project to rank deficient points") {
  auto a = cayley();
  Rng rng(4);
  auto [U, S] = draw_incidence_data(3, 2, 99, rng);
  auto M = RationalMatrix::from_rows({{3, -1, 2}, {1, 4, -5}, {-2, 7, 1}});
  auto red = eliminate_kernel_rows(a.compose(M), 2, U, S);
  std::vector<Rational> v(3);
  for (auto& x : v) x = rng.uniform(-99, 99);
  v[0] = 1;
  auto L = build_reduced_lagrange(red, v);
  std::vector<int> keep{0, 1, 2};
  auto p = image(rat_par(L.polys, keep, rng), *M.inverse());
  CHECK(p.degree() == 5);
  CHECK(minors_vanish(a, 2, p));
}
