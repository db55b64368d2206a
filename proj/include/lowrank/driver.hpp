#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "lowrank/genericity.hpp"
#include "lowrank/incidence.hpp"
#include "lowrank/ratpar.hpp"

namespace lowrank {

/// What to do when n < (m - r)^2.
enum class EmptyPolicy {
  kEnumerate,  // parametrize D_r when it is finite
  kBox,        // return the empty set
};

struct SolveConfig {
  std::uint64_t seed = 0;
  CheckLevel level = CheckLevel::kStandard;
  int coeff_range = 99;
  std::size_t gb_budget = 2'000'000;
  Rational width = Rational(1, 1) / Rational(Integer(1) << 60);
  /// Reject n < (m - r)^2 inputs whose D_r is not empty.
  bool verify_empty = false;
  EmptyPolicy empty_policy = EmptyPolicy::kEnumerate;
  int fiber_attempts = 8;
  int threads = 1;
};

struct LevelRecord {
  int n = 0;
  std::string kind;  // "lagrange", "incidence", "enumerate" or "empty"
  std::optional<RationalMatrix> M;
  std::optional<Rational> t;
  std::vector<Rational> v;
  int degree = 0;
  int real_count = 0;
};

struct SolveTrace {
  int m = 0;
  int n = 0;
  int r = 0;
  std::uint64_t seed = 0;
  std::optional<RationalMatrix> U;
  std::optional<RationalMatrix> S;
  std::vector<LevelRecord> levels;  // decreasing n
  GenericityReport genericity;

  /// Degree per number of variables n, n-1, ..., 1; levels never reached count 0.
  std::vector<int> partial_degrees() const;
};

struct SolveResult {
  RationalParametrization parametrization;
  SolveTrace trace;
};

class GenericityError : public std::runtime_error {
 public:
  GenericityError(const std::string& what, GenericityReport report, int n)
      : std::runtime_error(what), report(std::move(report)), n(n) {}
  GenericityReport report;
  int n;  // variable count of the failing level
};

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, SolveTrace trace) : std::runtime_error(what), trace(std::move(trace)) {}
  SolveTrace trace;
};

SolveResult low_rank(const LinearMatrix& a, int r, const SolveConfig& cfg);

/// One recursion on A with the incidence data fixed. Appends to trace.levels.
RationalParametrization low_rank_rec(const LinearMatrix& a, int r, const RationalMatrix& U, const RationalMatrix& S,
                                     const SolveConfig& cfg, Rng& rng, SolveTrace& trace);

nlohmann::json to_json(const SolveTrace& trace);
/// Parametrization, degree, real count, partial degrees, genericity, bounds and trace;
/// real_points too when a box width is given.
nlohmann::json to_json(const SolveResult& result, const std::optional<Rational>& width = std::nullopt);
nlohmann::json to_json(const RationalMatrix& M);

}  // namespace lowrank
