#include <doctest.h>

#include "lowrank/driver.hpp"
#include "lowrank/problem.hpp"

using namespace lowrank;

namespace {

LinearMatrix data(const char* name) { return load_problem(std::string(LOWRANK_DATA_DIR "/") + name).matrix; }

RationalMatrix mat(const std::vector<std::vector<Rational>>& rows) { return RationalMatrix::from_rows(rows); }

}  // namespace

TEST_CASE("G2 on the examples") {
  Rng rng(1);
  auto cayley = data("cayley.json");
  auto [U, S] = draw_incidence_data(3, 2, 99, rng);
  CHECK(check_G2(build_incidence(cayley, 2, U, S), rng) == Verdict::kPass);

  auto pillow = data("pillow.json");
  auto [U4, S4] = draw_incidence_data(4, 2, 99, rng);
  CHECK(check_G2(build_incidence(pillow, 2, U4, S4), rng) == Verdict::kPass);

  auto berk = data("berk_ones.json");
  auto [Ub, Sb] = draw_incidence_data(4, 2, 99, rng);
  CHECK(check_G2(build_incidence(berk, 2, Ub, Sb), rng) == Verdict::kFail);
}

TEST_CASE("kernel and minors forms of G2 agree") {
  Rng rng(8);
  for (int trial = 0; trial < 4; ++trial) {
    auto a = random_linear_matrix(2, 2, 9, rng);
    auto [U, S] = draw_incidence_data(2, 1, 9, rng);
    auto sys = build_incidence(a, 1, U, S);
    CHECK(check_G2(sys, rng) == check_G2_minors(sys));
  }
  // A singular example: det diag(x1, x1) = x1^2.
  LinearMatrix a(2, 1, {mat({{0, 0}, {0, 0}}), mat({{1, 0}, {0, 1}})});
  auto sys = build_incidence(a, 1, mat({{1, 2}}), mat({{1}}));
  CHECK(check_G2(sys, rng) == check_G2_minors(sys));
}

TEST_CASE("G2 agrees across incidence draws") {
  Rng rng(21);
  auto a = random_linear_matrix(3, 2, 9, rng);
  for (int i = 0; i < 5; ++i) {
    auto [U, S] = draw_incidence_data(3, 2, 99, rng);
    CHECK(check_G2(build_incidence(a, 2, U, S), rng) == Verdict::kPass);
  }
}

TEST_CASE("dimension checks") {
  auto cayley = data("cayley.json");
  auto d = check_dimensions(cayley, 2);
  REQUIRE(d.size() == 3);
  CHECK(d[2].dimension == 2);
  CHECK(d[2].ok);
  CHECK(d[1].dimension == 0);
  CHECK_FALSE(d[1].ok);

  Rng rng(3);
  auto dense = random_linear_matrix(3, 3, 9, rng);
  auto e = check_dimensions(dense, 2);
  CHECK(e[2].dimension == 2);
  CHECK(e[1].dimension == -1);

  auto small = random_linear_matrix(4, 3, 9, rng);
  CHECK(check_dimensions(small, 2)[2].dimension == -1);
}

TEST_CASE("G1") {
  CHECK(check_G1(data("cayley.json"), 2) == Verdict::kPass);
  LinearMatrix a(3, 1, {mat({{0, 0, 0}, {0, 0, 0}, {0, 0, 1}}), mat({{1, 0, 0}, {0, 1, 0}, {0, 0, 0}})});
  CHECK(check_G1(a, 2) == Verdict::kFail);
}

TEST_CASE("is_reg levels") {
  Rng rng(1);
  auto cayley = data("cayley.json");
  auto [U, S] = draw_incidence_data(3, 2, 99, rng);
  auto none = is_reg(cayley, 2, U, S, CheckLevel::kNone, rng);
  CHECK(none.g1 == Verdict::kSkipped);
  CHECK(none.g2 == Verdict::kSkipped);
  CHECK(none.overall);
  auto standard = is_reg(cayley, 2, U, S, CheckLevel::kStandard, rng);
  CHECK(standard.g1 == Verdict::kSkipped);
  CHECK(standard.g2 == Verdict::kPass);
  CHECK(standard.overall);
  auto full = is_reg(cayley, 2, U, S, CheckLevel::kFull, rng);
  CHECK(full.g1 == Verdict::kPass);
  CHECK(full.overall);
  CHECK(to_json(full)["g1"] == "pass");
  CHECK(parse_check_level("full") == CheckLevel::kFull);
  CHECK_FALSE(parse_check_level("bogus").has_value());
}

TEST_CASE("substitute_first_variable") {
  Rng rng(5);
  auto a = random_linear_matrix(3, 3, 9, rng);
  auto zero = a.substitute_first_variable(0);
  CHECK(zero.n == 2);
  CHECK(zero.mats[0] == a.mats[0]);
  CHECK(zero.mats[1] == a.mats[2]);
  const Rational t(3, 7);
  auto s = a.substitute_first_variable(t);
  std::vector<Rational> p{Rational(-1, 2), 5};
  std::vector<Rational> full{t, p[0], p[1]};
  CHECK(s.eval(p) == a.eval(full));

  LinearMatrix one(2, 1, {mat({{1, 2}, {3, 4}}), mat({{1, 0}, {0, 1}})});
  auto c = one.substitute_first_variable(1);
  CHECK(c.n == 0);
  CHECK(c.mats[0] == mat({{2, 2}, {3, 5}}));
}

TEST_CASE("solve cayley") {
  auto a = data("cayley.json");
  SolveConfig cfg;
  cfg.seed = 1;
  auto r1 = low_rank(a, 1, cfg);
  CHECK(r1.parametrization.degree() == 4);
  CHECK(minors_vanish(a, 1, r1.parametrization));

  auto r2 = low_rank(a, 2, cfg);
  CHECK(r2.parametrization.degree() == 14);
  CHECK(r2.trace.partial_degrees() == std::vector<int>{5, 6, 3});
  CHECK(minors_vanish(a, 2, r2.parametrization));
  CHECK(r2.trace.levels.size() == 3);
}

TEST_CASE("solve is deterministic") {
  auto a = data("cayley.json");
  SolveConfig cfg;
  cfg.seed = 42;
  auto x = low_rank(a, 2, cfg);
  auto y = low_rank(a, 2, cfg);
  CHECK(to_json(x.parametrization).dump() == to_json(y.parametrization).dump());
  CHECK(to_json(x.trace).dump() == to_json(y.trace).dump());
  cfg.threads = 2;
  auto z = low_rank(a, 2, cfg);
  CHECK(to_json(x.parametrization).dump() == to_json(z.parametrization).dump());
}

TEST_CASE("solve small ranks") {
  SolveConfig cfg;
  cfg.seed = 2;
  Rng rng(9);
  // n = (m - r)^2: the incidence system alone, at most 3 points.
  auto a = random_linear_matrix(3, 1, 9, rng);
  auto res = low_rank(a, 2, cfg);
  CHECK(res.parametrization.degree() == 3);
  CHECK(minors_vanish(a, 2, res.parametrization));

  // n < (m - r)^2
  auto b = random_linear_matrix(4, 3, 9, rng);
  CHECK(low_rank(b, 2, cfg).parametrization.is_empty());
  cfg.empty_policy = EmptyPolicy::kBox;
  CHECK(low_rank(b, 2, cfg).parametrization.is_empty());
}

TEST_CASE("genericity failure") {
  SolveConfig cfg;
  cfg.seed = 1;
  CHECK_THROWS_AS(low_rank(data("berk_ones.json"), 3, cfg), GenericityError);
  auto r1 = low_rank(data("berk_ones.json"), 1, cfg);
  CHECK(r1.parametrization.degree() == 4);
}

TEST_CASE("problem parsing") {
  auto j = nlohmann::json::parse(R"({"m": 2, "n": 1, "r": 1,
    "matrices": [[[1, "1/2"], [0, "a"]], [[1, 0], [0, -1]]],
    "parameters": {"a": "3"}})");
  auto p = parse_problem(j);
  CHECK(p.r == 1);
  CHECK(p.matrix.mats[0](0, 1) == Rational(1, 2));
  CHECK(p.matrix.mats[0](1, 1) == 3);
  auto q = parse_problem(j, {{"a", Rational(-5, 3)}});
  CHECK(q.matrix.mats[0](1, 1) == Rational(-5, 3));

  auto k = parse_problem(to_json(q.matrix, 1));
  CHECK(k.matrix.mats == q.matrix.mats);

  CHECK_THROWS_AS(parse_problem(nlohmann::json::parse(R"({"m": 2, "n": 1, "matrices": [[[1]]]})")), ProblemError);
  auto berk = nlohmann::json::parse(R"({"m": 1, "n": 0, "matrices": [[["b"]]], "parameters": {"b": null}})");
  CHECK_THROWS_AS(parse_problem(berk), ProblemError);
  CHECK(parse_problem(berk, {{"b", Rational(2)}}).matrix.mats[0](0, 0) == 2);
  CHECK_THROWS_AS(load_problem("/nonexistent/file.json"), ProblemError);
}
