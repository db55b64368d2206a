#include <map>
#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "lowrank/bounds.hpp"
#include "lowrank/driver.hpp"
#include "lowrank/groebner_engine.hpp"
#include "lowrank/problem.hpp"
#include "lowrank/realroots.hpp"

namespace py = pybind11;
using namespace lowrank;
using nlohmann::json;

namespace {

std::map<std::string, Rational> to_values(const std::map<std::string, std::string>& values) {
  std::map<std::string, Rational> out;
  for (const auto& [k, v] : values) out[k] = parse_rational(v);
  return out;
}

int resolve_rank(const Problem& prob, std::optional<int> rank) {
  const int r = rank ? *rank : prob.r ? *prob.r : -1;
  if (r < 0 || r >= prob.matrix.m) throw ProblemError("need 0 <= r < m");
  return r;
}

std::string solve(const std::string& problem, std::optional<int> rank, std::uint64_t seed, const std::string& check,
                  bool isolate, const std::string& width, int coeff_range, std::size_t gb_budget, int threads,
                  const std::map<std::string, std::string>& values) {
  const Problem prob = parse_problem(json::parse(problem), to_values(values));
  const int r = resolve_rank(prob, rank);
  const auto level = parse_check_level(check);
  if (!level) throw ProblemError("unknown check level '" + check + "'");
  SolveConfig cfg;
  cfg.seed = seed;
  cfg.level = *level;
  cfg.coeff_range = coeff_range;
  cfg.gb_budget = gb_budget;
  cfg.width = parse_rational(width);
  if (sgn(cfg.width) <= 0) throw ProblemError("width must be positive");
  cfg.threads = threads;
  SolveResult res;
  {
    py::gil_scoped_release release;
    res = low_rank(prob.matrix, r, cfg);
  }
  return to_json(res, isolate ? std::optional<Rational>(cfg.width) : std::nullopt).dump();
}

std::string check(const std::string& problem, std::optional<int> rank, std::uint64_t seed, const std::string& level,
                  const std::map<std::string, std::string>& values) {
  const Problem prob = parse_problem(json::parse(problem), to_values(values));
  const int r = resolve_rank(prob, rank);
  const auto lvl = parse_check_level(level);
  if (!lvl) throw ProblemError("unknown check level '" + level + "'");
  Rng rng(seed);
  auto [U, S] = draw_incidence_data(prob.matrix.m, r, 99, rng);
  py::gil_scoped_release release;
  return to_json(is_reg(prob.matrix, r, U, S, *lvl, rng)).dump();
}

std::string isolate(const std::vector<std::string>& coeffs, const std::string& width) {
  std::vector<Rational> c;
  for (const auto& s : coeffs) c.push_back(parse_rational(s));
  const UniPoly h(c);
  const Rational w = parse_rational(width);
  json out = json::array();
  for (auto root : isolate_roots(h)) {
    refine(h, root, w);
    out.push_back({to_string(root.lo), to_string(root.hi)});
  }
  return out.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact real points on determinantal varieties of linear matrices";

  py::register_exception<ProblemError>(m, "ProblemError", PyExc_ValueError);
  py::register_exception<GenericityError>(m, "GenericityError", PyExc_RuntimeError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
  py::register_exception<GroebnerBudgetExceeded>(m, "GroebnerBudgetExceeded", PyExc_RuntimeError);

  m.def("solve", &solve, py::arg("problem"), py::arg("rank") = py::none(), py::arg("seed") = 0,
        py::arg("check") = "standard", py::arg("isolate") = false, py::arg("width") = "1/1152921504606846976",
        py::arg("coeff_range") = 99, py::arg("gb_budget") = 2'000'000, py::arg("threads") = 1,
        py::arg("values") = std::map<std::string, std::string>{});
  m.def("check", &check, py::arg("problem"), py::arg("rank") = py::none(), py::arg("seed") = 0,
        py::arg("level") = "standard", py::arg("values") = std::map<std::string, std::string>{});
  m.def("bound", [](int mm, int n, int r) { return to_json(profile(mm, n, r)).dump(); }, py::arg("m"), py::arg("n"),
        py::arg("r"));
  m.def("delta", [](int mm, int n, int r) { return delta(mm, n, r).get_str(); }, py::arg("m"), py::arg("n"),
        py::arg("r"));
  m.def("isolate_roots", &isolate, py::arg("coeffs"), py::arg("width") = "1/1024");
  m.def(
      "generate",
      [](int mm, int n, int r, std::uint64_t seed, int coeff_range) {
        Rng rng(seed);
        return to_json(random_linear_matrix(mm, n, coeff_range, rng), r).dump();
      },
      py::arg("m"), py::arg("n"), py::arg("r"), py::arg("seed") = 0, py::arg("coeff_range") = 99);
}
