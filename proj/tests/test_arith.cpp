#include <doctest.h>

#include <random>

#include "lowrank/matrix.hpp"
#include "lowrank/multipoly.hpp"
#include "lowrank/unipoly.hpp"

using namespace lowrank;

namespace {

Universe xyz() { return make_universe({"x1", "x2", "x3"}); }

MultiPoly random_poly(const Universe& u, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coef(-9, 9), ex(0, 2), den(1, 4), count(1, 5);
  std::vector<MultiPoly::Term> terms;
  const int k = count(rng);
  for (int i = 0; i < k; ++i) {
    std::vector<int> e(u->size());
    for (auto& v : e) v = ex(rng);
    terms.push_back({Monomial::from_exponents(e), Rational(coef(rng), den(rng))});
    terms.back().coef.canonicalize();
  }
  return MultiPoly::from_terms(u, std::move(terms));
}

}  // namespace

TEST_CASE("rational parsing") {
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(parse_rational("-7") == Rational(-7));
  CHECK(to_string(parse_rational("10/-4")) == "-5/2");
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("abc"));
  CHECK(is_canonical(parse_rational("0/5")));
}

TEST_CASE("multipoly ring operations") {
  auto u = xyz();
  auto x1 = MultiPoly::variable(u, 0);
  auto x2 = MultiPoly::variable(u, 1);
  auto one = MultiPoly::constant(u, 1);
  CHECK((x1 + one) * (x1 - one) == x1 * x1 - one);
  std::vector<Rational> pt{2, Rational(3, 2), 0};
  CHECK((x1 * x2).eval(pt) == 3);
  CHECK(MultiPoly::parse(u, "3/2*x1^2*x2 - x2 + 7").to_string() == "3/2*x1^2*x2 - x2 + 7");

  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    auto a = random_poly(u, rng), b = random_poly(u, rng), c = random_poly(u, rng);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a + (-a)).is_zero());
    const auto ab = a * b;
    for (const auto& t : ab.terms()) CHECK(is_canonical(t.coef));
  }
}

TEST_CASE("universe mismatch is rejected") {
  auto a = MultiPoly::variable(xyz(), 0);
  auto b = MultiPoly::variable(make_universe({"y"}), 0);
  CHECK_THROWS(a + b);
}

TEST_CASE("apply_linear_change") {
  auto u = xyz();
  std::vector<int> block{0};
  auto x1 = MultiPoly::variable(u, 0);
  CHECK(apply_linear_change(x1, RationalMatrix::from_rows({{2}}), block) == Rational(2) * x1);
  CHECK_THROWS(apply_linear_change(x1, RationalMatrix::from_rows({{0}}), block));

  std::vector<int> b2{0, 1};
  auto swap = RationalMatrix::from_rows({{0, 1}, {1, 0}});
  auto x1x2 = x1 * MultiPoly::variable(u, 1);
  CHECK(apply_linear_change(x1x2, swap, b2) == x1x2);

  std::mt19937_64 rng(5);
  std::vector<int> b3{0, 1, 2};
  auto m = RationalMatrix::from_rows({{1, 2, 0}, {0, 1, 3}, {Rational(1, 2), 0, 1}});
  auto mi = *m.inverse();
  for (int i = 0; i < 20; ++i) {
    auto p = random_poly(u, rng);
    CHECK(apply_linear_change(apply_linear_change(p, m, b3), mi, b3) == p);
  }
}

TEST_CASE("univariate gcd, squarefree part, derivative") {
  auto t = UniPoly::t();
  auto one = UniPoly::constant(1);
  auto two = UniPoly::constant(2);
  auto p = (t - one) * (t - one) * (t + two);
  CHECK(squarefree_part(p) == (t - one) * (t + two));
  CHECK(derivative(t * t - two) == Rational(2) * t);
  CHECK(univariate_gcd(t * t - one, t - one) == t - one);
  CHECK(is_squarefree(t * t - two));
  CHECK_FALSE(is_squarefree(p));
  CHECK(inverse_mod(t, t * t - two) * t % (t * t - two) == one);
}
