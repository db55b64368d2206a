#pragma once

#include <vector>

#include <json.hpp>

#include "lowrank/rational.hpp"

namespace lowrank {

Integer binomial(long n, long k);

/// Multilinear Bézout bound on the number of solutions of the Lagrange system
/// with n variables. 0 when n < (m-r)^2. Throws std::invalid_argument unless
/// 0 <= r <= m-1 and n >= 0.
Integer delta(int m, int n, int r);

/// The same quantity read off the expansion of
/// (sx+sy)^{m(m-r)} (sy+sz)^{n-1} (sx+sz)^{r(m-r)} as the coefficient of
/// sx^n sy^{r(m-r)} sz^{m(m-r)-1} (sx^n sy^{r(m-r)} in (sx+sy)^{m(m-r)} when n = (m-r)^2).
Integer delta_oracle(int m, int n, int r);

struct BezoutProfile {
  int m = 0;
  int n = 0;
  int r = 0;
  std::vector<Integer> per_step;  // delta(m, j, r) for j = n, n-1, ..., (m-r)^2
  Integer total;                  // base term plus delta(m, j, r) for (m-r)^2 < j <= min(n, m^2 - r^2)
  Integer cube_bound;             // binomial(n + m(m-r), n)^3
};

BezoutProfile profile(int m, int n, int r);

/// Integers are written as decimal strings.
nlohmann::json to_json(const BezoutProfile& p);

}  // namespace lowrank
