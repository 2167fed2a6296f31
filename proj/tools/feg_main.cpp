#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "feg/adversary.hpp"
#include "feg/expected_utility.hpp"
#include "feg/free_energy.hpp"
#include "feg/io.hpp"
#include "feg/oracle.hpp"
#include "feg/sampler.hpp"
#include "feg/svg.hpp"
#include "feg/tree_eval.hpp"

namespace {

using namespace feg;

// FEG_LOG=quiet|info|debug; diagnostics go to stderr so stdout stays a
// clean machine-readable payload.
int log_level() {
  static const int level = [] {
    const char* env = std::getenv("FEG_LOG");
    if (env == nullptr) return 1;
    const std::string v(env);
    if (v == "quiet") return 0;
    if (v == "debug") return 2;
    return 1;
  }();
  return level;
}

void log_info(const std::string& msg) {
  if (log_level() >= 1) std::cerr << "[feg] " << msg << "\n";
}

void log_debug(const std::string& msg) {
  if (log_level() >= 2) std::cerr << "[feg] " << msg << "\n";
}

std::vector<double> parse_double_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  size_t pos = 0;
  while (pos <= text.size()) {
    const size_t comma = text.find(',', pos);
    const std::string token =
        text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    try {
      size_t used = 0;
      const double v = std::stod(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ParseError(what + ": cannot parse \"" + token + "\" as a number");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw ParseError(what + ": empty list");
  return out;
}

// lo:hi:steps, log-spaced inclusive range; lo and hi must be positive.
std::vector<double> parse_log_range(const std::string& text) {
  const size_t c1 = text.find(':');
  const size_t c2 = c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw ParseError("--log-range: expected lo:hi:steps");
  const double lo = parse_double_list(text.substr(0, c1), "--log-range lo")[0];
  const double hi = parse_double_list(text.substr(c1 + 1, c2 - c1 - 1), "--log-range hi")[0];
  const double steps_d = parse_double_list(text.substr(c2 + 1), "--log-range steps")[0];
  const long steps = std::lround(steps_d);
  if (!(lo > 0.0) || !(hi > lo)) throw ParseError("--log-range: need 0 < lo < hi");
  if (steps < 2 || static_cast<double>(steps) != steps_d)
    throw ParseError("--log-range: steps must be an integer >= 2");
  std::vector<double> betas(static_cast<size_t>(steps));
  const double log_lo = std::log(lo), log_hi = std::log(hi);
  for (long i = 0; i < steps; ++i)
    betas[static_cast<size_t>(i)] =
        std::exp(log_lo + (log_hi - log_lo) * static_cast<double>(i) /
                              static_cast<double>(steps - 1));
  betas.front() = lo;
  betas.back() = hi;
  return betas;
}

Eigen::MatrixXd parse_matrix_arg(const std::string& text, Eigen::Index n) {
  std::vector<std::vector<double>> rows;
  size_t pos = 0;
  while (pos <= text.size()) {
    const size_t semi = text.find(';', pos);
    const std::string row =
        text.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos);
    rows.push_back(parse_double_list(row, "--sigma row"));
    if (semi == std::string::npos) break;
    pos = semi + 1;
  }
  if (static_cast<Eigen::Index>(rows.size()) != n)
    throw ParseError("--sigma: expected " + std::to_string(n) + " rows");
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    if (static_cast<Eigen::Index>(rows[static_cast<size_t>(r)].size()) != n)
      throw ParseError("--sigma: expected " + std::to_string(n) + " entries per row");
    for (Eigen::Index c = 0; c < n; ++c)
      m(r, c) = rows[static_cast<size_t>(r)][static_cast<size_t>(c)];
  }
  return m;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError(path + ": cannot open for writing");
  out << content;
  if (!out) throw ParseError(path + ": write failed");
}

void print_kv(const std::string& key, double value) {
  std::cout << key << " " << render_number(value) << "\n";
}

void print_policy(const std::vector<std::string>& labels, const Policy& p) {
  for (Eigen::Index i = 0; i < p.size(); ++i)
    print_kv("p_" + labels[static_cast<size_t>(i)], p[i]);
}

std::string delta_label(const std::vector<std::string>& labels, const Policy& p) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < p.size(); ++i)
    if (p[i] > p[best]) best = i;
  return labels[static_cast<size_t>(best)];
}

int cmd_solve(const std::string& path, const std::optional<double>& beta_override,
              bool echo_canonical) {
  ProblemFile file = load_problem_file(path);
  if (beta_override) file.beta = *beta_override;
  if (echo_canonical) {
    std::cout << canonical_problem_json(file);
    return 0;
  }
  const DecisionProblem problem = file.to_decision_problem();
  log_info("solving " + std::to_string(problem.num_actions()) + "-action problem at beta " +
           render_number(problem.beta()));
  const FreeEnergyReport report = solve(problem);
  print_policy(file.actions, report.policy);
  print_kv("certainty_equivalent", report.certainty_equivalent);
  print_kv("expected_utility", report.expected_utility);
  print_kv("information_cost", report.information_cost);
  print_kv("free_energy", report.free_energy);
  return 0;
}

int cmd_dual(const std::string& path, const std::string& reg_name, double alpha, double scale,
             double lambda, const std::string& sigma_arg, double tol, long max_iter) {
  const ProblemFile file = load_problem_file(path);
  const DecisionProblem problem = file.to_decision_problem();

  std::optional<RegularizerSpec> reg;
  if (reg_name == "kl") {
    reg = RegularizerSpec::kl(problem.beta());
  } else if (reg_name == "null") {
    reg = RegularizerSpec::null();
  } else if (reg_name == "power") {
    reg = RegularizerSpec::power(alpha, scale);
  } else if (reg_name == "quadratic") {
    const Eigen::MatrixXd sigma =
        sigma_arg.empty()
            ? Eigen::MatrixXd(Eigen::MatrixXd::Identity(problem.num_actions(),
                                                        problem.num_actions()))
            : parse_matrix_arg(sigma_arg, problem.num_actions());
    reg = RegularizerSpec::quadratic(lambda, sigma);
  } else {
    throw ParseError("--reg: expected one of kl, null, power, quadratic");
  }

  const SaddleSolution sol = saddle_solve(problem, *reg, tol, max_iter);
  log_debug("saddle solver stopped after " + std::to_string(sol.iterations) + " iterations");
  std::cout << "regularizer " << reg->kind() << "\n";
  std::cout << "converged " << (sol.converged ? "true" : "false") << "\n";
  std::cout << "iterations " << sol.iterations << "\n";
  print_kv("residual", sol.indifference_residual);
  print_kv("objective", sol.objective);
  print_policy(file.actions, sol.policy);
  for (Eigen::Index i = 0; i < sol.costs.size(); ++i)
    print_kv("cost_" + file.actions[static_cast<size_t>(i)], sol.costs[i]);
  if (!sol.converged) {
    std::cerr << "dual: no convergence within " << max_iter << " iterations (residual "
              << render_number(sol.indifference_residual) << ")\n";
    return 3;
  }
  return 0;
}

int cmd_attack(const std::string& path, const std::string& policy_arg,
               const std::string& svg_path) {
  const ProblemFile file = load_problem_file(path);
  const DecisionProblem problem = file.to_decision_problem();

  Policy p = [&] {
    if (policy_arg == "equilibrium") return equilibrium(problem);
    if (policy_arg == "prior") return problem.prior().as_policy();
    const std::vector<double> entries = parse_double_list(policy_arg, "--policy");
    if (static_cast<Eigen::Index>(entries.size()) != problem.num_actions())
      throw ParseError("--policy: expected " + std::to_string(problem.num_actions()) +
                       " entries");
    return Policy(Eigen::Map<const Eigen::VectorXd>(entries.data(),
                                                    static_cast<Eigen::Index>(entries.size())));
  }();

  const CostVector costs = worst_case_costs(problem, p);
  const Eigen::VectorXd net = net_utilities(problem, costs);
  std::cout << "action p cost net\n";
  for (Eigen::Index i = 0; i < p.size(); ++i)
    std::cout << file.actions[static_cast<size_t>(i)] << " " << render_number(p[i]) << " "
              << render_number(costs[i]) << " " << render_number(net[i]) << "\n";
  if (!svg_path.empty()) {
    write_text_file(svg_path, attack_svg(file.actions, p, costs, net));
    log_info("wrote figure " + svg_path);
  }
  return 0;
}

int cmd_sweep(const std::string& path, const std::string& betas_arg,
              const std::string& log_range_arg, const std::string& svg_path) {
  const ProblemFile file = load_problem_file(path);
  const DecisionProblem problem = file.to_decision_problem();
  if (betas_arg.empty() == log_range_arg.empty())
    throw ParseError("sweep: give exactly one of --betas and --log-range");
  const std::vector<double> betas =
      betas_arg.empty() ? parse_log_range(log_range_arg) : parse_double_list(betas_arg, "--betas");
  log_info("sweeping " + std::to_string(betas.size()) + " beta values");
  const std::vector<SweepRow> rows = beta_sweep(problem, betas);
  std::cout << sweep_csv(file.actions, rows);
  if (!svg_path.empty()) {
    write_text_file(svg_path, sweep_svg(rows));
    log_info("wrote figure " + svg_path);
  }
  return 0;
}

int cmd_sample(const std::string& path, long count, std::uint64_t seed,
               const std::optional<double>& bound, long max_attempts) {
  const ProblemFile file = load_problem_file(path);
  const DecisionProblem problem = file.to_decision_problem();
  SamplerConfig cfg;
  cfg.utility_bound = bound ? *bound : problem.utilities().maxCoeff();
  cfg.seed = seed;
  cfg.max_attempts_per_sample = max_attempts;
  const SampleResult result = sample_equilibrium(problem, cfg, count);
  for (Eigen::Index idx : result.indices)
    std::cout << file.actions[static_cast<size_t>(idx)] << "\n";
  std::cout << "# proposals=" << result.stats.proposals
            << " acceptances=" << result.stats.acceptances
            << " rate=" << render_number(result.stats.acceptance_rate()) << "\n";
  return 0;
}

int cmd_tree(const std::string& path) {
  const TreeNode tree = load_tree_file(path);
  log_info("evaluating depth-" + std::to_string(tree.depth()) + " tree");
  print_kv("value", evaluate(tree));
  return 0;
}

int cmd_game(const std::string& path) {
  const ProblemFile file = load_problem_file(path);
  const MatrixGame game = file.to_matrix_game();
  const auto [minmax_policy, minmax_value] = minmax_rule(game);
  const auto [maxmax_policy, maxmax_value] = maxmax_rule(game);
  std::cout << "minmax_action " << delta_label(game.actions(), minmax_policy) << "\n";
  print_kv("minmax_value", minmax_value);
  std::cout << "maxmax_action " << delta_label(game.actions(), maxmax_policy) << "\n";
  print_kv("maxmax_value", maxmax_value);
  return 0;
}

int cmd_verify(const std::string& path, double resolution, bool tamper) {
  const ProblemFile file = load_problem_file(path);
  const DecisionProblem problem = file.to_decision_problem();

  OracleReport grid = grid_max_free_energy(problem, resolution);
  OracleReport minimax = minimax_grid(problem, resolution, cost_grid());
  ExchangeReport exchange = saddle_exchange_check(problem, resolution, cost_grid());
  double residual = indifference_residual(problem, equilibrium(problem));
  if (tamper) {
    // Negative-control hook: pretend the closed forms sit 0.1 utiles away
    // so every certificate must trip.
    grid.gap_to_closed_form += 0.1;
    minimax.gap_to_closed_form += 0.1;
    exchange.gap += 0.1;
    residual += 0.1;
  }
  const double residual_tolerance = 1e-10;
  const bool residual_pass = residual <= residual_tolerance;

  std::cout << "grid_max_free_energy gap=" << render_number(grid.gap_to_closed_form)
            << " certificate=" << render_number(grid.certificate) << " "
            << (grid.passes() ? "pass" : "FAIL") << "\n";
  std::cout << "minimax_grid gap=" << render_number(minimax.gap_to_closed_form)
            << " certificate=" << render_number(minimax.certificate) << " "
            << (minimax.passes() ? "pass" : "FAIL") << "\n";
  std::cout << "saddle_exchange gap=" << render_number(exchange.gap)
            << " bound=" << render_number(exchange.bound) << " "
            << (exchange.passes() ? "pass" : "FAIL") << "\n";
  std::cout << "indifference_residual residual=" << render_number(residual)
            << " tolerance=" << render_number(residual_tolerance) << " "
            << (residual_pass ? "pass" : "FAIL") << "\n";

  if (grid.passes() && minimax.passes() && exchange.passes() && residual_pass) {
    std::cout << "verify: all checks passed\n";
    return 0;
  }
  std::cout << "verify: FAILED\n";
  return 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"single-step decision problems under a free-energy objective, "
               "with their adversarial dual game"};
  app.require_subcommand(1);

  std::string path;
  std::optional<double> beta_override;
  bool echo_canonical = false;
  auto* solve_cmd = app.add_subcommand("solve", "equilibrium policy and value decomposition");
  solve_cmd->add_option("problem", path, "problem file (JSON)")->required();
  solve_cmd->add_option("--beta", beta_override, "override the file's beta");
  solve_cmd->add_flag("--echo-canonical", echo_canonical,
                      "print the canonical form of the problem file and exit");

  std::string reg_name = "kl";
  double alpha = 2.0, scale = 1.0, lambda = 1.0;
  std::string sigma_arg;
  double tol = 1e-8;
  long max_iter = 100000;
  auto* dual_cmd = app.add_subcommand("dual", "saddle point of the adversarial game");
  dual_cmd->add_option("problem", path, "problem file (JSON)")->required();
  dual_cmd->add_option("--reg", reg_name, "regularizer: kl, null, power, quadratic");
  dual_cmd->add_option("--alpha", alpha, "power regularizer exponent (> 1)");
  dual_cmd->add_option("--scale", scale, "power regularizer scale (> 0)");
  dual_cmd->add_option("--lambda", lambda, "quadratic regularizer weight (> 0)");
  dual_cmd->add_option("--sigma", sigma_arg, "quadratic Sigma, rows 'a,b;c,d' (default identity)");
  dual_cmd->add_option("--tol", tol, "residual tolerance");
  dual_cmd->add_option("--max-iter", max_iter, "iteration cap");

  std::string policy_arg = "equilibrium";
  std::string svg_path;
  auto* attack_cmd =
      app.add_subcommand("attack", "best-response costs and net utilities for a policy");
  attack_cmd->add_option("problem", path, "problem file (JSON)")->required();
  attack_cmd->add_option("--policy", policy_arg,
                         "equilibrium, prior, or comma-separated weights");
  attack_cmd->add_option("--svg", svg_path, "write a grouped bar figure here");

  std::string betas_arg, log_range_arg;
  auto* sweep_cmd = app.add_subcommand("sweep", "certainty-equivalent table across beta");
  sweep_cmd->add_option("problem", path, "problem file (JSON)")->required();
  sweep_cmd->add_option("--betas", betas_arg, "comma-separated beta list");
  sweep_cmd->add_option("--log-range", log_range_arg, "lo:hi:steps log-spaced betas");
  sweep_cmd->add_option("--svg", svg_path, "write a line figure here");

  long count = 10;
  std::uint64_t seed = 0;
  std::optional<double> bound;
  long max_attempts = 1000000;
  auto* sample_cmd = app.add_subcommand("sample", "exact equilibrium samples by rejection");
  sample_cmd->add_option("problem", path, "problem file (JSON)")->required();
  sample_cmd->add_option("--count", count, "number of samples");
  sample_cmd->add_option("--seed", seed, "RNG seed");
  sample_cmd->add_option("--bound", bound, "utility upper bound (default: max utility)");
  sample_cmd->add_option("--max-attempts", max_attempts, "attempt cap per sample");

  auto* tree_cmd = app.add_subcommand("tree", "nested certainty-equivalent tree value");
  tree_cmd->add_option("tree", path, "tree file (JSON)")->required();

  auto* game_cmd = app.add_subcommand("game", "minmax and maxmax rules for a matrix game");
  game_cmd->add_option("problem", path, "game-form problem file (JSON)")->required();

  double resolution = 0.01;
  bool tamper = false;
  auto* verify_cmd =
      app.add_subcommand("verify", "brute-force certificates for the closed forms");
  verify_cmd->add_option("problem", path, "problem file (JSON)")->required();
  verify_cmd->add_option("--resolution", resolution, "policy grid resolution");
  verify_cmd->add_flag("--tamper", tamper)->group("");  // negative-control hook

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (solve_cmd->parsed()) return cmd_solve(path, beta_override, echo_canonical);
    if (dual_cmd->parsed())
      return cmd_dual(path, reg_name, alpha, scale, lambda, sigma_arg, tol, max_iter);
    if (attack_cmd->parsed()) return cmd_attack(path, policy_arg, svg_path);
    if (sweep_cmd->parsed()) return cmd_sweep(path, betas_arg, log_range_arg, svg_path);
    if (sample_cmd->parsed()) return cmd_sample(path, count, seed, bound, max_attempts);
    if (tree_cmd->parsed()) return cmd_tree(path);
    if (game_cmd->parsed()) return cmd_game(path);
    if (verify_cmd->parsed()) return cmd_verify(path, resolution, tamper);
  } catch (const SamplerStalled& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
