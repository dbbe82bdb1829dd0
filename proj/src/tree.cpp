#include "plt/tree.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace plt {

int TreeBuilder::add_leaf(int label) {
  int id = t_.num_nodes();
  t_.parent.push_back(-1);
  t_.children.emplace_back();
  t_.leaf_label.push_back(label);
  return id;
}

int TreeBuilder::add_internal(const std::vector<int>& child_ids) {
  int id = t_.num_nodes();
  t_.parent.push_back(-1);
  t_.children.push_back(child_ids);
  t_.leaf_label.push_back(-1);
  for (int c : child_ids) t_.parent[c] = id;
  return id;
}

LabelTree TreeBuilder::finish(int root_id) {
  t_.root = root_id;
  t_.parent[root_id] = -1;
  return std::move(t_);
}

LabelTree tree_from_parents(std::vector<int> parent, std::vector<int> leaf_label) {
  LabelTree t;
  int n = static_cast<int>(parent.size());
  t.parent = std::move(parent);
  t.leaf_label = std::move(leaf_label);
  t.children.resize(n);
  t.root = -1;
  for (int v = 0; v < n; ++v) {
    if (t.parent[v] == -1) {
      t.root = v;
    } else if (t.parent[v] >= 0 && t.parent[v] < n) {
      t.children[t.parent[v]].push_back(v);
    }
  }
  return t;
}

std::vector<std::string> validate_tree(const LabelTree& T, int m) {
  std::vector<std::string> errs;
  int n = T.num_nodes();
  if (n == 0) {
    errs.push_back("empty tree");
    return errs;
  }
  int roots = 0;
  for (int v = 0; v < n; ++v) {
    if (T.parent[v] == -1) ++roots;
    else if (T.parent[v] < 0 || T.parent[v] >= n)
      errs.push_back("node " + std::to_string(v) + ": parent id out of range");
    else if (T.parent[v] == v)
      errs.push_back("node " + std::to_string(v) + ": is its own parent (cycle)");
  }
  if (roots == 0) errs.push_back("no root");
  if (roots > 1) errs.push_back("multiple roots");
  if (T.root < 0 || T.root >= n || T.parent[T.root] != -1)
    errs.push_back("root field inconsistent");
  if (!errs.empty()) return errs;

  // Parent/children consistency.
  for (int v = 0; v < n; ++v)
    for (int c : T.children[v])
      if (c < 0 || c >= n || T.parent[c] != v) {
        errs.push_back("node " + std::to_string(v) + ": children/parent mismatch");
        return errs;
      }

  // Reachability from the root detects cycles and disconnected parts.
  std::vector<char> seen(n, 0);
  std::vector<int> stack{T.root};
  seen[T.root] = 1;
  int visited = 0;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    ++visited;
    for (int c : T.children[v]) {
      if (seen[c]) {
        errs.push_back("node " + std::to_string(c) + ": visited twice (cycle)");
        return errs;
      }
      seen[c] = 1;
      stack.push_back(c);
    }
  }
  if (visited != n) errs.push_back("tree not connected (cycle or orphan nodes)");

  std::vector<int> label_count(m, 0);
  for (int v = 0; v < n; ++v) {
    int lab = T.leaf_label[v];
    if (T.is_leaf(v)) {
      if (lab < 0 || lab >= m)
        errs.push_back("leaf " + std::to_string(v) + ": label out of range");
      else
        ++label_count[lab];
    } else if (lab != -1) {
      errs.push_back("node " + std::to_string(v) + ": labeled internal node");
    }
  }
  for (int j = 0; j < m; ++j) {
    if (label_count[j] == 0) errs.push_back("missing label " + std::to_string(j));
    if (label_count[j] > 1) errs.push_back("duplicate label " + std::to_string(j));
  }
  return errs;
}

void require_valid(const LabelTree& T, int m) {
  auto errs = validate_tree(T, m);
  if (!errs.empty()) {
    std::string msg = "invalid tree:";
    for (const auto& e : errs) msg += " " + e + ";";
    throw std::runtime_error(msg);
  }
}

std::vector<int> topo_order(const LabelTree& T) {
  std::vector<int> order;
  order.reserve(T.num_nodes());
  std::vector<int> stack{T.root};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (auto it = T.children[v].rbegin(); it != T.children[v].rend(); ++it)
      stack.push_back(*it);
  }
  return order;
}

int tree_depth(const LabelTree& T) {
  std::vector<int> len(T.num_nodes(), 0);
  int depth = 0;
  for (int v : topo_order(T)) {
    len[v] = (v == T.root) ? 1 : len[T.parent[v]] + 1;
    if (T.is_leaf(v)) depth = std::max(depth, len[v] - 1);
  }
  return depth;
}

int tree_max_degree(const LabelTree& T) {
  int d = 0;
  for (int v = 0; v < T.num_nodes(); ++v) d = std::max(d, T.degree(v));
  return d;
}

int num_leaves(const LabelTree& T) {
  int k = 0;
  for (int v = 0; v < T.num_nodes(); ++v)
    if (T.is_leaf(v)) ++k;
  return k;
}

std::vector<int> path_to_root(const LabelTree& T, int v) {
  std::vector<int> path;
  for (int u = v; u != -1; u = T.parent[u]) path.push_back(u);
  return path;
}

std::vector<int> leaf_of_label(const LabelTree& T, int m) {
  std::vector<int> leaf(m, -1);
  for (int v = 0; v < T.num_nodes(); ++v)
    if (T.is_leaf(v)) {
      int lab = T.leaf_label[v];
      if (lab >= 0 && lab < m) leaf[lab] = v;
    }
  return leaf;
}

void write_tree_tsv(const LabelTree& T, std::ostream& out) {
  for (int v = 0; v < T.num_nodes(); ++v)
    out << v << '\t' << T.parent[v] << '\t' << T.leaf_label[v] << '\n';
}

std::string tree_to_tsv(const LabelTree& T) {
  std::ostringstream out;
  write_tree_tsv(T, out);
  return out.str();
}

LabelTree read_tree_tsv(std::istream& in) {
  std::vector<int> parent, label;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    long long id, pa, lab;
    if (!(ls >> id >> pa >> lab)) throw std::runtime_error("malformed tree line: " + line);
    if (id != static_cast<long long>(parent.size()))
      throw std::runtime_error("tree node ids must be dense and in order");
    parent.push_back(static_cast<int>(pa));
    label.push_back(static_cast<int>(lab));
  }
  if (parent.empty()) throw std::runtime_error("empty tree file");
  return tree_from_parents(std::move(parent), std::move(label));
}

LabelTree read_tree_tsv(const std::string& text) {
  std::istringstream in(text);
  return read_tree_tsv(in);
}

}  // namespace plt
