#include "plt/cost.hpp"

#include <algorithm>
#include <stdexcept>

namespace plt {

namespace {

std::vector<int> checked_label_set(int m, std::vector<int> y) {
  std::sort(y.begin(), y.end());
  y.erase(std::unique(y.begin(), y.end()), y.end());
  for (int j : y)
    if (j < 0 || j >= m) throw std::runtime_error("unknown label id " + std::to_string(j));
  return y;
}

// z_v indicator for a single label set.
std::vector<char> positive_nodes(const LabelTree& T, const std::vector<int>& leaf,
                                 const std::vector<int>& y) {
  std::vector<char> z(T.num_nodes(), 0);
  for (int j : y)
    for (int v = leaf[j]; v != -1 && !z[v]; v = T.parent[v]) z[v] = 1;
  return z;
}

}  // namespace

std::vector<std::vector<int>> node_row_sets(const LabelTree& T, const LabelMatrix& Y) {
  require_valid(T, Y.m);
  std::vector<std::vector<int>> sets(T.num_nodes());
  auto order = topo_order(T);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int v = *it;
    if (T.is_leaf(v)) {
      sets[v] = Y.cols[T.leaf_label[v]];
    } else {
      std::vector<int> acc;
      for (int c : T.children[v]) {
        std::vector<int> merged;
        merged.reserve(acc.size() + sets[c].size());
        std::set_union(acc.begin(), acc.end(), sets[c].begin(), sets[c].end(),
                       std::back_inserter(merged));
        acc = std::move(merged);
      }
      sets[v] = std::move(acc);
    }
  }
  return sets;
}

NodeStats compute_node_weights(const LabelTree& T, const LabelMatrix& Y) {
  auto sets = node_row_sets(T, Y);
  NodeStats s;
  s.z_weight.resize(T.num_nodes());
  s.z_fraction.resize(T.num_nodes());
  s.node_cost.resize(T.num_nodes());
  for (int v = 0; v < T.num_nodes(); ++v) {
    s.z_weight[v] = static_cast<long long>(sets[v].size());
    s.z_fraction[v] = Y.n > 0 ? static_cast<double>(s.z_weight[v]) / Y.n : 0.0;
    s.node_cost[v] = s.z_weight[v] * T.degree(v);
  }
  return s;
}

Assignment assign_to_nodes(const LabelTree& T, int m, const std::vector<int>& y_in) {
  auto y = checked_label_set(m, y_in);
  auto leaf = leaf_of_label(T, m);
  std::vector<char> in_p(T.num_nodes(), 0), in_n(T.num_nodes(), 0);
  in_n[T.root] = 1;
  for (int j : y) {
    for (int v = leaf[j]; v != -1 && !in_p[v]; v = T.parent[v]) {
      in_p[v] = 1;
      in_n[v] = 0;
      for (int c : T.children[v])
        if (!in_p[c]) in_n[c] = 1;
    }
  }
  Assignment a;
  for (int v = 0; v < T.num_nodes(); ++v) {
    if (in_p[v]) a.positives.push_back(v);
    if (in_n[v]) a.negatives.push_back(v);
  }
  return a;
}

long long example_cost(const LabelTree& T, int m, const std::vector<int>& y_in) {
  auto y = checked_label_set(m, y_in);
  auto leaf = leaf_of_label(T, m);
  auto z = positive_nodes(T, leaf, y);
  long long cost = 1;
  for (int v = 0; v < T.num_nodes(); ++v)
    if (z[v]) cost += T.degree(v);
  return cost;
}

CostReport dataset_cost(const LabelTree& T, const LabelMatrix& Y) {
  auto stats = compute_node_weights(T, Y);
  CostReport r;
  r.per_node = stats.node_cost;
  r.total = Y.n;
  for (long long c : r.per_node) r.total += c;

  long long depth = tree_depth(T);
  long long max_deg = tree_max_degree(T);
  long long row_total = 0;
  auto leaf = leaf_of_label(T, Y.m);
  for (int i = 0; i < Y.n; ++i) {
    auto z = positive_nodes(T, leaf, Y.rows[i]);
    long long cost = 1;
    for (int v = 0; v < T.num_nodes(); ++v)
      if (z[v]) cost += T.degree(v);
    r.per_row.push_back(cost);
    r.upper_bound.push_back(1 + static_cast<long long>(Y.rows[i].size()) * depth * max_deg);
    row_total += cost;
  }
  if (row_total != r.total)
    throw std::logic_error("cost decomposition mismatch: rows " + std::to_string(row_total) +
                           " vs nodes " + std::to_string(r.total));
  return r;
}

double expected_cost(const LabelTree& T, const Scenario& s) {
  validate_scenario(s);
  require_valid(T, s.m);
  auto leaf = leaf_of_label(T, s.m);
  std::vector<double> p_z(T.num_nodes(), 0.0);
  for (const auto& [subset, p] : s.support) {
    auto z = positive_nodes(T, leaf, subset);
    for (int v = 0; v < T.num_nodes(); ++v)
      if (z[v]) p_z[v] += p;
  }
  double cost = 1.0;
  for (int v = 0; v < T.num_nodes(); ++v) cost += p_z[v] * T.degree(v);
  return cost;
}

long long sensitivity(const LabelTree& T, int m, int label) {
  if (label < 0 || label >= m) throw std::runtime_error("unknown label id");
  auto leaf = leaf_of_label(T, m);
  long long d = 0;
  for (int v : path_to_root(T, leaf[label]))
    if (T.parent[v] != -1) d += T.degree(T.parent[v]);
  return d;
}

namespace {

int binarize_rec(const LabelTree& T, const std::vector<std::vector<int>>& sets, int v,
                 TreeBuilder& b) {
  if (T.is_leaf(v)) return b.add_leaf(T.leaf_label[v]);
  const auto& ch = T.children[v];
  if (ch.size() == 1) return binarize_rec(T, sets, ch[0], b);  // contract

  // Heaviest child attaches shallowest.
  std::vector<int> order(ch.size());
  for (size_t i = 0; i < ch.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int c) {
    return sets[ch[a]].size() > sets[ch[c]].size();
  });
  std::vector<int> ids(ch.size());
  for (size_t i = 0; i < ch.size(); ++i) ids[i] = binarize_rec(T, sets, ch[order[i]], b);

  int cur = ids.back();
  for (int i = static_cast<int>(ids.size()) - 2; i >= 0; --i)
    cur = b.add_internal({ids[i], cur});
  return cur;
}

}  // namespace

LabelTree binarize(const LabelTree& T, const LabelMatrix& Y) {
  require_valid(T, Y.m);
  if (Y.m == 1) return T;  // root with a single leaf stays as-is
  auto sets = node_row_sets(T, Y);
  TreeBuilder b;
  int root = binarize_rec(T, sets, T.root, b);
  return b.finish(root);
}

}  // namespace plt
