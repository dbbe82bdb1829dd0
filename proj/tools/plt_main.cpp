#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "plt/builders.hpp"
#include "plt/cost.hpp"
#include "plt/label_matrix.hpp"
#include "plt/matryoshka.hpp"
#include "plt/oracle.hpp"
#include "plt/predictor.hpp"
#include "plt/scenario.hpp"
#include "plt/tree.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitStructure = 2;

struct StructureMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

plt::LabelMatrix load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset: " + path);
  return plt::parse_dataset(in);
}

plt::LabelTree load_tree(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open tree: " + path);
  return plt::read_tree_tsv(in);
}

plt::Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario: " + path);
  return plt::parse_scenario(in);
}

void require_kind(const plt::LabelMatrix& Y, plt::StructureKind want,
                  const std::string& method) {
  auto info = plt::detect_structure(Y);
  bool ok = info.kind == want;
  // A multi-class chain is also nested, and m == 1 is trivially both.
  if (want == plt::StructureKind::Nested && Y.m == 1) ok = true;
  if (!ok)
    throw StructureMismatch("method " + method + " needs a " +
                            plt::structure_name(want) + " instance, detected " +
                            plt::structure_name(info.kind));
}

plt::LabelTree build_method(const std::string& method, const plt::LabelMatrix& Y) {
  if (method == "ternary-complete") return plt::build_complete_ternary(Y.m);
  if (method == "ternary-huffman") {
    require_kind(Y, plt::StructureKind::MultiClass, method);
    return plt::build_ternary_huffman(plt::make_weight_profile(Y));
  }
  if (method == "ternary-shannon") {
    require_kind(Y, plt::StructureKind::MultiClass, method);
    return plt::build_ternary_shannon(plt::make_weight_profile(Y));
  }
  if (method == "binary-merge") return plt::build_binary_merge(Y);
  if (method == "matryoshka") {
    require_kind(Y, plt::StructureKind::Nested, method);
    auto inst = plt::make_nested_instance(Y);
    auto part = plt::solve_nested(inst, plt::NestedMode::DpQuadratic);
    return plt::partition_to_tree(part, inst);
  }
  if (method == "oracle") return plt::optimal_tree(Y).first;
  throw std::runtime_error("unknown method: " + method);
}

int cmd_build(const std::string& input, const std::string& method,
              const std::string& output) {
  auto Y = load_dataset(input);
  auto T = build_method(method, Y);
  plt::require_valid(T, Y.m);
  std::ofstream out(output);
  if (!out) throw std::runtime_error("cannot write tree: " + output);
  plt::write_tree_tsv(T, out);
  std::cout << "method\tnodes\tdepth\tmax_degree\ttotal_cost\n";
  std::cout << method << '\t' << T.num_nodes() << '\t' << plt::tree_depth(T) << '\t'
            << plt::tree_max_degree(T) << '\t' << plt::dataset_cost(T, Y).total << '\n';
  return kExitOk;
}

int cmd_cost(const std::string& input, const std::string& tree_path, bool per_node,
             bool per_row) {
  auto Y = load_dataset(input);
  auto T = load_tree(tree_path);
  plt::require_valid(T, Y.m);
  auto report = plt::dataset_cost(T, Y);
  std::cout << "n\tm\tnodes\ttotal_cost\n";
  std::cout << Y.n << '\t' << Y.m << '\t' << T.num_nodes() << '\t' << report.total
            << '\n';
  if (per_node) {
    std::cout << "node\tdegree\tz_weight\tnode_cost\n";
    auto stats = plt::compute_node_weights(T, Y);
    for (int v = 0; v < T.num_nodes(); ++v)
      std::cout << v << '\t' << T.degree(v) << '\t' << stats.z_weight[v] << '\t'
                << report.per_node[v] << '\n';
  }
  if (per_row) {
    std::cout << "row\tcost\tupper_bound\n";
    for (int i = 0; i < Y.n; ++i)
      std::cout << i << '\t' << report.per_row[i] << '\t' << report.upper_bound[i]
                << '\n';
  }
  return kExitOk;
}

int cmd_assign(const std::string& input, const std::string& tree_path, int row) {
  auto Y = load_dataset(input);
  auto T = load_tree(tree_path);
  plt::require_valid(T, Y.m);
  if (row < 0 || row >= Y.n) throw std::runtime_error("row index out of range");
  auto a = plt::assign_to_nodes(T, Y.m, Y.rows[row]);
  std::cout << "set\tnode_ids\n";
  auto print = [](const char* name, const std::vector<int>& ids) {
    std::cout << name << '\t';
    for (size_t i = 0; i < ids.size(); ++i) std::cout << (i ? " " : "") << ids[i];
    std::cout << '\n';
  };
  print("P", a.positives);
  print("N", a.negatives);
  return kExitOk;
}

int cmd_predict(const std::string& tree_path, const std::string& scenario_path,
                double tau, double epsilon, unsigned seed) {
  auto T = load_tree(tree_path);
  auto s = load_scenario(scenario_path);
  auto p = plt::scenario_node_probabilities(T, s);
  auto e = plt::perturb_and_normalize(T, p, epsilon, tau, seed);
  auto r = plt::predict(T, e);
  auto b = plt::prediction_cost_bounds(T, s, p, e);
  std::cout << "predicted\tcalls\tcall_bound\n";
  std::cout << '[';
  for (size_t i = 0; i < r.predicted.size(); ++i)
    std::cout << (i ? " " : "") << r.predicted[i];
  std::cout << "]\t" << r.calls << '\t' << r.call_bound << '\n';
  std::cout << "p_true\tp_hat\tp_hat_bound\texpected_training_cost\texpected_call_bound\n";
  std::cout << b.p_true << '\t' << b.p_hat << '\t' << b.p_hat_bound << '\t'
            << b.expected_training_cost << '\t' << b.expected_call_bound << '\n';
  return kExitOk;
}

int cmd_verify(const std::string& input, const std::string& tree_path) {
  auto Y = load_dataset(input);
  auto T = load_tree(tree_path);
  auto issues = plt::validate_tree(T, Y.m);
  auto report_fail = [&](const std::string& what) {
    std::cout << "FAIL\t" << what << '\n';
  };
  if (!issues.empty()) {
    for (const auto& is : issues) report_fail(is);
    return kExitIo;
  }
  bool ok = true;
  auto report = plt::dataset_cost(T, Y);
  for (int i = 0; i < Y.n; ++i) {
    if (report.per_row[i] > report.upper_bound[i]) {
      report_fail("row " + std::to_string(i) + " cost exceeds bound");
      ok = false;
    }
    auto a = plt::assign_to_nodes(T, Y.m, Y.rows[i]);
    long long pn = static_cast<long long>(a.positives.size() + a.negatives.size());
    if (pn != report.per_row[i]) {
      report_fail("row " + std::to_string(i) + " assignment size mismatch");
      ok = false;
    }
  }
  if (!ok) return kExitIo;
  std::cout << "OK\tnodes=" << T.num_nodes() << "\ttotal_cost=" << report.total << '\n';
  return kExitOk;
}

int cmd_bench(const std::string& input, std::vector<std::string> methods) {
  auto Y = load_dataset(input);
  if (Y.m <= 8) {
    bool has = false;
    for (const auto& s : methods) has = has || s == "oracle";
    if (!has) methods.push_back("oracle");
  }
  std::cout << "method\tnodes\tdepth\tmax_degree\ttotal_cost\n";
  for (const auto& method : methods) {
    try {
      auto T = build_method(method, Y);
      std::cout << method << '\t' << T.num_nodes() << '\t' << plt::tree_depth(T) << '\t'
                << plt::tree_max_degree(T) << '\t' << plt::dataset_cost(T, Y).total
                << '\n';
    } catch (const StructureMismatch&) {
      std::cout << method << "\t-\t-\t-\tskipped (structure mismatch)\n";
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"label-tree construction and training/prediction cost toolkit"};
  app.require_subcommand(1);

  std::string input, tree_path, output, method, scenario_path;
  std::vector<std::string> methods;
  bool per_node = false, per_row = false;
  int row = 0;
  double tau = 0.5, epsilon = 0.0;
  unsigned seed = 1;

  auto* build = app.add_subcommand("build", "build a tree from a dataset");
  build->add_option("--input", input)->required();
  build->add_option("--method", method)
      ->required()
      ->check(CLI::IsMember({"ternary-complete", "ternary-huffman", "ternary-shannon",
                             "binary-merge", "matryoshka", "oracle"}));
  build->add_option("--output", output)->required();

  auto* cost = app.add_subcommand("cost", "evaluate dataset training cost");
  cost->add_option("--input", input)->required();
  cost->add_option("--tree", tree_path)->required();
  cost->add_flag("--per-node", per_node);
  cost->add_flag("--per-row", per_row);

  auto* assign = app.add_subcommand("assign", "positive/negative nodes for one row");
  assign->add_option("--input", input)->required();
  assign->add_option("--tree", tree_path)->required();
  assign->add_option("--row", row)->required();

  auto* predict = app.add_subcommand("predict", "threshold traversal on a scenario");
  predict->add_option("--tree", tree_path)->required();
  predict->add_option("--scenario", scenario_path)->required();
  predict->add_option("--tau", tau)->required();
  predict->add_option("--epsilon", epsilon);
  predict->add_option("--seed", seed);

  auto* verify = app.add_subcommand("verify", "check tree invariants and cost bounds");
  verify->add_option("--input", input)->required();
  verify->add_option("--tree", tree_path)->required();

  auto* bench = app.add_subcommand("bench", "compare construction methods");
  bench->add_option("--input", input)->required();
  bench->add_option("--methods", methods)->required()->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? kExitIo : kExitOk;
  }

  try {
    if (build->parsed()) return cmd_build(input, method, output);
    if (cost->parsed()) return cmd_cost(input, tree_path, per_node, per_row);
    if (assign->parsed()) return cmd_assign(input, tree_path, row);
    if (predict->parsed())
      return cmd_predict(tree_path, scenario_path, tau, epsilon, seed);
    if (verify->parsed()) return cmd_verify(input, tree_path);
    if (bench->parsed()) return cmd_bench(input, methods);
  } catch (const StructureMismatch& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitStructure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitIo;
}
