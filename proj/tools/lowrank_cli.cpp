#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lowrank/bounds.hpp"
#include "lowrank/driver.hpp"
#include "lowrank/groebner.hpp"
#include "lowrank/problem.hpp"
#include "lowrank/realroots.hpp"
#include "lowrank/zerodim.hpp"

using namespace lowrank;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kParse = 1, kGenericity = 2, kBudget = 3, kFailure = 4 };

std::map<std::string, Rational> parse_assignments(const std::vector<std::string>& items) {
  std::map<std::string, Rational> out;
  for (const auto& s : items) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ProblemError("--set expects name=value, got '" + s + "'");
    out[s.substr(0, eq)] = parse_rational(s.substr(eq + 1));
  }
  return out;
}

void emit(const json& j, const std::string& path) {
  if (path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

int rank_or_default(const Problem& prob, int cli_rank) {
  if (cli_rank >= 0) return cli_rank;
  if (prob.r) return *prob.r;
  throw ProblemError("no rank given: pass --rank or set \"r\" in the problem file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Points on every real component of {x : rank A(x) <= r}"};
  app.require_subcommand(1);

  std::string path, output, trace_file, check = "standard", width_text = "1/1152921504606846976", policy = "enumerate";
  std::vector<std::string> sets;
  int rank = -1, coeff_range = 99, threads = 1;
  std::uint64_t seed = 0;
  std::size_t budget = 2'000'000;
  bool isolate = false, verify_empty = false;

  auto* solve = app.add_subcommand("solve", "Run the solver on a problem file");
  solve->add_option("file", path, "Problem file (JSON)")->required()->check(CLI::ExistingFile);
  solve->add_option("--rank", rank, "Target rank r");
  solve->add_option("--seed", seed, "Random seed");
  solve->add_option("--check", check, "Genericity checks")->check(CLI::IsMember({"none", "standard", "full"}));
  solve->add_flag("--isolate", isolate, "Isolate the real points in rational boxes");
  solve->add_option("--width", width_text, "Box width for --isolate");
  solve->add_option("--coeff-range", coeff_range, "Random integers are drawn from [-B, B]")->check(CLI::PositiveNumber);
  solve->add_option("--gb-budget", budget, "Cap on Groebner reduction steps");
  solve->add_flag("--verify-empty", verify_empty, "Fail when n < (m-r)^2 and the rank locus is not empty");
  solve->add_option("--empty-policy", policy, "Behaviour when n < (m-r)^2")->check(CLI::IsMember({"enumerate", "box"}));
  solve->add_option("--output", output, "Write the result here instead of stdout");
  solve->add_option("--trace-file", trace_file, "Write the solve trace here");
  solve->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  solve->add_option("--set", sets, "Parameter value, name=p/q");

  int bm = 0, bn = 0, br = 0;
  auto* bound = app.add_subcommand("bound", "Degree bounds for (m, n, r)");
  bound->add_option("m", bm)->required();
  bound->add_option("n", bn)->required();
  bound->add_option("r", br)->required();

  auto* chk = app.add_subcommand("check", "Genericity report for a problem file");
  chk->add_option("file", path, "Problem file (JSON)")->required()->check(CLI::ExistingFile);
  chk->add_option("--rank", rank, "Target rank r");
  chk->add_option("--seed", seed, "Random seed");
  chk->add_option("--check", check, "Level")->check(CLI::IsMember({"standard", "full"}));
  chk->add_option("--gb-budget", budget, "Cap on Groebner reduction steps");
  chk->add_option("--set", sets, "Parameter value, name=p/q");

  int gm = 0, gn = 0, gr = -1;
  auto* gen = app.add_subcommand("gen", "Random dense problem file");
  gen->add_option("m", gm)->required()->check(CLI::PositiveNumber);
  gen->add_option("n", gn)->required()->check(CLI::NonNegativeNumber);
  gen->add_option("r", gr)->required()->check(CLI::NonNegativeNumber);
  gen->add_option("--seed", seed, "Random seed");
  gen->add_option("--coeff-range", coeff_range, "Entries are drawn from [-B, B]")->check(CLI::PositiveNumber);
  gen->add_option("--output", output, "Write here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (*bound) {
      emit(to_json(profile(bm, bn, br)), "");
      return kOk;
    }
    if (*gen) {
      if (gr >= gm) throw ProblemError("need r < m");
      Rng rng(seed);
      emit(to_json(random_linear_matrix(gm, gn, coeff_range, rng), gr), output);
      return kOk;
    }

    Problem prob;
    Rational width;
    try {
      prob = load_problem(path, parse_assignments(sets));
      rank = rank_or_default(prob, rank);
      if (rank < 0 || rank >= prob.matrix.m) throw ProblemError("need 0 <= r < m");
      width = parse_rational(width_text);
      if (sgn(width) <= 0) throw ProblemError("--width must be positive");
    } catch (const std::invalid_argument& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kParse;
    } catch (const ProblemError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kParse;
    }

    if (*chk) {
      Rng rng(seed);
      auto [U, S] = draw_incidence_data(prob.matrix.m, rank, 99, rng);
      const auto rep = is_reg(prob.matrix, rank, U, S, *parse_check_level(check), rng, budget);
      emit(to_json(rep), "");
      if (rep.undetermined()) return kBudget;
      return rep.overall ? kOk : kGenericity;
    }

    SolveConfig cfg;
    cfg.seed = seed;
    cfg.level = *parse_check_level(check);
    cfg.coeff_range = coeff_range;
    cfg.gb_budget = budget;
    cfg.width = width;
    cfg.verify_empty = verify_empty;
    cfg.empty_policy = policy == "box" ? EmptyPolicy::kBox : EmptyPolicy::kEnumerate;
    cfg.threads = threads;
    try {
      const SolveResult res = low_rank(prob.matrix, rank, cfg);
      const json out = to_json(res, isolate ? std::optional<Rational>(width) : std::nullopt);
      if (!trace_file.empty()) emit(to_json(res.trace), trace_file);
      emit(out, output);
      return kOk;
    } catch (const GenericityError& e) {
      std::cerr << "genericity failure: " << e.what() << "\n";
      if (!trace_file.empty()) emit(to_json(e.report), trace_file);
      return kGenericity;
    } catch (const BudgetExceeded& e) {
      std::cerr << "budget exceeded: " << e.what() << "\n";
      if (!trace_file.empty()) emit(to_json(e.trace), trace_file);
      return kBudget;
    }
  } catch (const GroebnerBudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
}
