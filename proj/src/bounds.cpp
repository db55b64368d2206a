#include "lowrank/bounds.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>

namespace lowrank {

namespace {

void check(int m, int n, int r) {
  if (m < 1 || r < 0 || r > m - 1 || n < 0) throw std::invalid_argument("bounds: need 0 <= r <= m - 1 and n >= 0");
}

using Tri = std::map<std::tuple<int, int, int>, Integer>;

// Multiplies by (s_a + s_b) `times` times, a and b among {0,1,2}.
Tri times_binomial(Tri p, int a, int b, int times) {
  for (int t = 0; t < times; ++t) {
    Tri next;
    for (const auto& [e, c] : p) {
      auto ea = e, eb = e;
      ++(a == 0 ? std::get<0>(ea) : a == 1 ? std::get<1>(ea) : std::get<2>(ea));
      ++(b == 0 ? std::get<0>(eb) : b == 1 ? std::get<1>(eb) : std::get<2>(eb));
      next[ea] += c;
      next[eb] += c;
    }
    p = std::move(next);
  }
  return p;
}

}  // namespace

Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

Integer delta(int m, int n, int r) {
  check(m, n, r);
  const int c = m - r;
  const int base = c * c;
  if (n < base) return 0;
  if (n == base) return binomial(m * c, base);
  Integer sum = 0;
  const int lo = std::max(0, n - m * c);
  const int hi = std::min(n - base, r * c);
  for (int k = lo; k <= hi; ++k) sum += binomial(m * c, n - k) * binomial(n - 1, k + base - 1) * binomial(r * c, k);
  return sum;
}

Integer delta_oracle(int m, int n, int r) {
  check(m, n, r);
  const int c = m - r;
  if (n < c * c) return 0;
  Tri p{{{0, 0, 0}, Integer(1)}};
  p = times_binomial(std::move(p), 0, 1, m * c);
  if (n == c * c) {
    auto it = p.find({n, r * c, 0});
    return it == p.end() ? Integer(0) : it->second;
  }
  p = times_binomial(std::move(p), 1, 2, n - 1);
  p = times_binomial(std::move(p), 0, 2, r * c);
  auto it = p.find({n, r * c, m * c - 1});
  return it == p.end() ? Integer(0) : it->second;
}

BezoutProfile profile(int m, int n, int r) {
  check(m, n, r);
  BezoutProfile out;
  out.m = m;
  out.n = n;
  out.r = r;
  const int c = m - r;
  for (int j = n; j >= c * c; --j) out.per_step.push_back(delta(m, j, r));
  out.total = 0;
  if (n >= c * c) {
    out.total = binomial(m * c, c * c);
    for (int j = c * c + 1; j <= std::min(n, m * m - r * r); ++j) out.total += delta(m, j, r);
  }
  const Integer b = binomial(n + m * c, n);
  out.cube_bound = b * b * b;
  return out;
}

nlohmann::json to_json(const BezoutProfile& p) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : p.per_step) steps.push_back(s.get_str());
  return {{"m", p.m},
          {"n", p.n},
          {"r", p.r},
          {"per_step", steps},
          {"total", p.total.get_str()},
          {"cube_bound", p.cube_bound.get_str()}};
}

}  // namespace lowrank
