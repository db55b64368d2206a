#include "lowrank/problem.hpp"

#include <fstream>

namespace lowrank {

namespace {

Rational entry(const nlohmann::json& e, const std::map<std::string, Rational>& env) {
  if (e.is_number_integer()) return Rational(e.get<long>());
  if (!e.is_string()) throw ProblemError("matrix entries must be integers or strings");
  const std::string text = e.get<std::string>();
  if (auto it = env.find(text); it != env.end()) return it->second;
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument&) {
    throw ProblemError("bad matrix entry '" + text + "'");
  }
}

int field_int(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer()) throw ProblemError(std::string("missing integer field '") + key + "'");
  return j[key].get<int>();
}

}  // namespace

Problem parse_problem(const nlohmann::json& j, const std::map<std::string, Rational>& values) {
  if (!j.is_object()) throw ProblemError("problem must be a JSON object");
  Problem out;
  const int m = field_int(j, "m");
  const int n = field_int(j, "n");
  if (m < 1 || n < 0) throw ProblemError("need m >= 1 and n >= 0");
  if (j.contains("r")) out.r = field_int(j, "r");

  std::map<std::string, Rational> env;
  if (j.contains("parameters")) {
    if (!j["parameters"].is_object()) throw ProblemError("'parameters' must be an object");
    for (const auto& [name, def] : j["parameters"].items()) {
      std::optional<Rational> value;
      if (!def.is_null()) value = entry(def, {});
      out.parameters[name] = value;
      if (value) env[name] = *value;
    }
  }
  for (const auto& [name, value] : values) {
    if (!out.parameters.count(name)) throw ProblemError("unknown parameter '" + name + "'");
    env[name] = value;
  }
  for (const auto& [name, def] : out.parameters)
    if (!env.count(name)) throw ProblemError("parameter '" + name + "' has no value");

  const auto& mats = j.contains("matrices") ? j["matrices"] : nlohmann::json();
  if (!mats.is_array() || static_cast<int>(mats.size()) != n + 1)
    throw ProblemError("'matrices' must hold n + 1 matrices");
  std::vector<RationalMatrix> parsed;
  for (const auto& a : mats) {
    if (!a.is_array() || static_cast<int>(a.size()) != m) throw ProblemError("matrix with wrong number of rows");
    RationalMatrix M(m, m);
    for (int i = 0; i < m; ++i) {
      if (!a[i].is_array() || static_cast<int>(a[i].size()) != m) throw ProblemError("matrix row with wrong length");
      for (int k = 0; k < m; ++k) M(i, k) = entry(a[i][k], env);
    }
    parsed.push_back(std::move(M));
  }
  out.matrix = LinearMatrix(m, n, std::move(parsed));
  return out;
}

Problem load_problem(const std::string& path, const std::map<std::string, Rational>& values) {
  std::ifstream in(path);
  if (!in) throw ProblemError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ProblemError(path + ": " + e.what());
  }
  return parse_problem(j, values);
}

nlohmann::json to_json(const LinearMatrix& a, std::optional<int> r) {
  nlohmann::json mats = nlohmann::json::array();
  for (const auto& M : a.mats) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : M.to_rows()) {
      nlohmann::json out = nlohmann::json::array();
      for (const auto& x : row) out.push_back(to_string(x));
      rows.push_back(std::move(out));
    }
    mats.push_back(std::move(rows));
  }
  nlohmann::json out = {{"m", a.m}, {"n", a.n}};
  if (r) out["r"] = *r;
  out["matrices"] = std::move(mats);
  return out;
}

}  // namespace lowrank
