#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "feg/expected_utility.hpp"
#include "feg/free_energy.hpp"
#include "feg/tree_eval.hpp"

namespace feg {

/// Parsed problem document. Exactly one of `utilities` (per-action vector
/// form) or `utility_matrix` (game form) is present; `prior` defaults to
/// uniform when absent. Field names and shapes are strict: unknown keys
/// are rejected so typos cannot silently change a problem.
struct ProblemFile {
  std::vector<std::string> actions;
  std::optional<Eigen::VectorXd> utilities;
  std::optional<std::vector<std::string>> observations;
  std::optional<Eigen::MatrixXd> utility_matrix;
  std::optional<Eigen::MatrixXd> channel;
  std::optional<Eigen::VectorXd> prior;
  double beta = 0.0;

  bool is_vector_form() const { return utilities.has_value(); }

  /// Uniform prior when none was given.
  Prior effective_prior() const;

  /// Vector-form files only; ParseError otherwise.
  DecisionProblem to_decision_problem() const;

  /// Game-form files only; ParseError otherwise.
  MatrixGame to_matrix_game() const;
};

ProblemFile parse_problem_json(const std::string& text);
ProblemFile load_problem_file(const std::string& path);

/// Canonical serialization: keys sorted, two-space indent, numbers at
/// round-trip precision. Reparsing yields an identical in-memory problem.
std::string canonical_problem_json(const ProblemFile& file);

TreeNode parse_tree_json(const std::string& text);
TreeNode load_tree_file(const std::string& path);

/// Full-precision scientific rendering (round-trip exact); infinities
/// render as the literal tokens "-inf" / "+inf". Locale-independent.
std::string render_number(double value);

/// beta,certainty_equivalent,p_<label>...,entropy,kl_to_prior with one
/// newline-terminated row per sweep entry, full scientific precision.
std::string sweep_csv(const std::vector<std::string>& action_labels,
                      const std::vector<SweepRow>& rows);

}  // namespace feg
