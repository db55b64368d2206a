#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lowrank/bounds.hpp"

#include "lowrank/incidence.hpp"
#include "lowrank/rng.hpp"

namespace lowrank {

enum class Verdict { kPass, kFail, kSkipped, kUndetermined };
enum class CheckLevel { kNone, kStandard, kFull };

std::string to_string(Verdict v);
std::string to_string(CheckLevel level);
std::optional<CheckLevel> parse_check_level(const std::string& text);

struct DimensionCheck {
  int p = 0;
  int dimension = 0;  // -1 when D_p is empty
  int expected = 0;   // n - (m - p)^2
  bool ok = false;    // empty, or of the expected dimension
  bool determined = true;
};

struct GenericityReport {
  CheckLevel level = CheckLevel::kStandard;
  Verdict g1 = Verdict::kSkipped;
  Verdict g2 = Verdict::kSkipped;
  std::vector<DimensionCheck> dims;
  /// G2, plus G1 at the full level. Dimension mismatches are reported but do not gate.
  bool overall = false;
  bool undetermined() const { return g1 == Verdict::kUndetermined || g2 == Verdict::kUndetermined; }
};

/// Jacobian criterion on the incidence system at codimension min(#equations, #variables),
/// through the kernel of the Jacobian: pass iff {f, z' Df, v' z - 1} (or {f, Df w, v' w - 1}
/// when there are fewer variables than equations) has no complex solution.
Verdict check_G2(const IncidenceSystem& sys, Rng& rng, std::size_t max_steps = 2'000'000);

/// Same criterion with the maximal minors of Df written out. Only sensible for tiny systems.
Verdict check_G2_minors(const IncidenceSystem& sys, std::size_t max_steps = 2'000'000);

/// Dimension of D_p for p = 0..r against n - (m - p)^2.
std::vector<DimensionCheck> check_dimensions(const LinearMatrix& a, int r, std::size_t max_steps = 2'000'000);

/// sing D_r = D_{r-1} as sets, by radical membership both ways.
Verdict check_G1(const LinearMatrix& a, int r, std::size_t max_steps = 2'000'000);

GenericityReport is_reg(const LinearMatrix& a, int r, const RationalMatrix& U, const RationalMatrix& S, CheckLevel level,
                        Rng& rng, std::size_t max_steps = 2'000'000);

nlohmann::json to_json(const GenericityReport& report);

}  // namespace lowrank
