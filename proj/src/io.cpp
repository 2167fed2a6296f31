#include "feg/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

namespace feg {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what);
}

void check_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
  for (const auto& item : obj.items())
    if (allowed.find(item.key()) == allowed.end())
      fail(where, "unknown field \"" + item.key() + "\"");
}

double read_number(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(where, "expected a finite number");
  return d;
}

std::vector<std::string> read_labels(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) fail(where, "expected a nonempty array of labels");
  std::vector<std::string> labels;
  std::set<std::string> seen;
  for (size_t i = 0; i < v.size(); ++i) {
    const std::string idx = where + "[" + std::to_string(i) + "]";
    if (!v[i].is_string()) fail(idx, "expected a string label");
    const std::string label = v[i].get<std::string>();
    if (label.empty()) fail(idx, "labels must be nonempty");
    if (label.find_first_of(",\"\n\r") != std::string::npos)
      fail(idx, "labels must not contain commas, quotes or newlines");
    if (!seen.insert(label).second) fail(idx, "duplicate label \"" + label + "\"");
    labels.push_back(label);
  }
  return labels;
}

Eigen::VectorXd read_vector(const json& v, const std::string& where, size_t expected) {
  if (!v.is_array()) fail(where, "expected an array of numbers");
  if (v.size() != expected)
    fail(where, "expected " + std::to_string(expected) + " entries, got " +
                    std::to_string(v.size()));
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (size_t i = 0; i < v.size(); ++i)
    out[static_cast<Eigen::Index>(i)] = read_number(v[i], where + "[" + std::to_string(i) + "]");
  return out;
}

Eigen::MatrixXd read_matrix(const json& v, const std::string& where, size_t rows, size_t cols) {
  if (!v.is_array()) fail(where, "expected an array of rows");
  if (v.size() != rows)
    fail(where, "expected " + std::to_string(rows) + " rows, got " + std::to_string(v.size()));
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (size_t r = 0; r < rows; ++r) {
    const Eigen::VectorXd row = read_vector(v[r], where + "[" + std::to_string(r) + "]", cols);
    out.row(static_cast<Eigen::Index>(r)) = row.transpose();
  }
  return out;
}

json to_json(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

json to_json(const Eigen::MatrixXd& m) {
  json arr = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    arr.push_back(to_json(Eigen::VectorXd(m.row(r).transpose())));
  return arr;
}

TreeNode parse_tree_node(const json& node, const std::string& where) {
  if (!node.is_object()) fail(where, "expected a node object");
  if (node.contains("utility")) {
    check_keys(node, where, {"utility"});
    return TreeNode::leaf(read_number(node["utility"], where + ".utility"));
  }
  check_keys(node, where, {"beta", "prior", "children"});
  if (!node.contains("beta")) fail(where, "internal node needs \"beta\"");
  if (!node.contains("children")) fail(where, "internal node needs \"children\"");
  const double beta = read_number(node["beta"], where + ".beta");
  const json& children_json = node["children"];
  if (!children_json.is_array() || children_json.empty())
    fail(where + ".children", "expected a nonempty array of nodes");

  std::vector<TreeNode> children;
  for (size_t i = 0; i < children_json.size(); ++i)
    children.push_back(
        parse_tree_node(children_json[i], where + ".children[" + std::to_string(i) + "]"));

  Eigen::VectorXd prior_weights;
  if (node.contains("prior")) {
    prior_weights = read_vector(node["prior"], where + ".prior", children.size());
  } else {
    prior_weights = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(children.size()),
                                              1.0 / static_cast<double>(children.size()));
  }
  return TreeNode::internal(beta, Prior(std::move(prior_weights)), std::move(children));
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

Prior ProblemFile::effective_prior() const {
  if (prior) return Prior(*prior);
  const Eigen::Index n = static_cast<Eigen::Index>(actions.size());
  return Prior(Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n)));
}

DecisionProblem ProblemFile::to_decision_problem() const {
  if (!is_vector_form())
    throw ParseError("this command needs a vector-form problem (\"utilities\"), "
                     "got a game-form file (\"utility_matrix\")");
  return DecisionProblem(actions, *utilities, effective_prior(), beta);
}

MatrixGame ProblemFile::to_matrix_game() const {
  if (is_vector_form())
    throw ParseError("this command needs a game-form problem (\"utility_matrix\"), "
                     "got a vector-form file (\"utilities\")");
  std::optional<Eigen::MatrixXd> chan = channel;
  return MatrixGame(actions, *observations, *utility_matrix, std::move(chan));
}

ProblemFile parse_problem_json(const std::string& text) {
  const json doc = parse_text(text);
  if (!doc.is_object()) fail("problem", "top level must be an object");
  if (!doc.contains("actions")) fail("problem", "missing \"actions\"");
  if (!doc.contains("beta")) fail("problem", "missing \"beta\"");

  ProblemFile file;
  file.actions = read_labels(doc["actions"], "actions");
  file.beta = read_number(doc["beta"], "beta");

  const bool has_vec = doc.contains("utilities");
  const bool has_mat = doc.contains("utility_matrix");
  if (has_vec == has_mat)
    fail("problem", "exactly one of \"utilities\" and \"utility_matrix\" must be present");

  if (has_vec) {
    check_keys(doc, "problem", {"actions", "beta", "utilities", "prior"});
    file.utilities = read_vector(doc["utilities"], "utilities", file.actions.size());
    if (doc.contains("prior"))
      file.prior = read_vector(doc["prior"], "prior", file.actions.size());
  } else {
    check_keys(doc, "problem", {"actions", "beta", "utility_matrix", "observations", "channel"});
    if (!doc.contains("observations"))
      fail("problem", "game-form files need \"observations\"");
    file.observations = read_labels(doc["observations"], "observations");
    file.utility_matrix = read_matrix(doc["utility_matrix"], "utility_matrix",
                                      file.actions.size(), file.observations->size());
    if (doc.contains("channel"))
      file.channel = read_matrix(doc["channel"], "channel", file.actions.size(),
                                 file.observations->size());
  }
  return file;
}

ProblemFile load_problem_file(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return parse_problem_json(text);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string canonical_problem_json(const ProblemFile& file) {
  json doc;
  doc["actions"] = file.actions;
  doc["beta"] = file.beta;
  if (file.channel) doc["channel"] = to_json(*file.channel);
  if (file.observations) doc["observations"] = *file.observations;
  if (file.prior) doc["prior"] = to_json(*file.prior);
  if (file.utilities) doc["utilities"] = to_json(*file.utilities);
  if (file.utility_matrix) doc["utility_matrix"] = to_json(*file.utility_matrix);
  return doc.dump(2) + "\n";
}

TreeNode parse_tree_json(const std::string& text) {
  return parse_tree_node(parse_text(text), "root");
}

TreeNode load_tree_file(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return parse_tree_json(text);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string render_number(double value) {
  if (std::isnan(value)) return "nan";
  if (value == std::numeric_limits<double>::infinity()) return "+inf";
  if (value == -std::numeric_limits<double>::infinity()) return "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value,
                                 std::chars_format::scientific, 16);
  return std::string(buf, res.ptr);
}

std::string sweep_csv(const std::vector<std::string>& action_labels,
                      const std::vector<SweepRow>& rows) {
  std::string out = "beta,certainty_equivalent";
  for (const std::string& label : action_labels) out += ",p_" + label;
  out += ",entropy,kl_to_prior\n";
  for (const SweepRow& row : rows) {
    out += render_number(row.beta);
    out += ',';
    out += render_number(row.certainty_equivalent);
    for (Eigen::Index i = 0; i < row.policy.size(); ++i) {
      out += ',';
      out += render_number(row.policy[i]);
    }
    out += ',';
    out += render_number(row.entropy);
    out += ',';
    out += render_number(row.kl_to_prior);
    out += '\n';
  }
  return out;
}

}  // namespace feg
