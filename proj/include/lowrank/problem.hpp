#pragma once

#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "lowrank/incidence.hpp"

namespace lowrank {

/// Problem file: {"m", "n", "r"?, "matrices": [A0, ..., An], "parameters"?}.
///
/// Entries are integers or "p/q" strings. A string entry may also name a
/// parameter; "parameters" maps each name to a default value or null.
struct Problem {
  LinearMatrix matrix;
  std::optional<int> r;
  std::map<std::string, std::optional<Rational>> parameters;
};

class ProblemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// `values` overrides parameter defaults. Throws ProblemError on a malformed
/// document or an unset parameter.
Problem parse_problem(const nlohmann::json& j, const std::map<std::string, Rational>& values = {});
Problem load_problem(const std::string& path, const std::map<std::string, Rational>& values = {});

/// Plain problem file for an instantiated matrix.
nlohmann::json to_json(const LinearMatrix& a, std::optional<int> r = std::nullopt);

}  // namespace lowrank
