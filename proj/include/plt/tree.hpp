#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace plt {

// Rooted leaf-labeled tree. Node ids are dense in [0, num_nodes()).
// parent[v] == -1 only at the root; leaf_label[v] == -1 for internal nodes.
struct LabelTree {
  std::vector<int> parent;
  std::vector<std::vector<int>> children;
  std::vector<int> leaf_label;
  int root = -1;

  int num_nodes() const { return static_cast<int>(parent.size()); }
  bool is_leaf(int v) const { return children[v].empty(); }
  int degree(int v) const { return static_cast<int>(children[v].size()); }
};

// Incremental construction helper; ids are assigned in creation order.
class TreeBuilder {
 public:
  int add_leaf(int label);
  int add_internal(const std::vector<int>& child_ids);
  LabelTree finish(int root_id);

 private:
  LabelTree t_;
};

// Builds children lists (in ascending node-id order) and locates the root.
LabelTree tree_from_parents(std::vector<int> parent, std::vector<int> leaf_label);

// Checks all structural invariants plus leaf-label bijection with [0, m).
// Returns an empty list when the tree is valid.
std::vector<std::string> validate_tree(const LabelTree& T, int m);
void require_valid(const LabelTree& T, int m);  // throws on violations

int tree_depth(const LabelTree& T);       // max over leaves of len_v - 1
int tree_max_degree(const LabelTree& T);
int num_leaves(const LabelTree& T);

// Path from v to the root, v first, root last.
std::vector<int> path_to_root(const LabelTree& T, int v);

// label id -> leaf node id.
std::vector<int> leaf_of_label(const LabelTree& T, int m);

// Node ids in an order where every parent precedes its children.
std::vector<int> topo_order(const LabelTree& T);

// TSV: one line per node, "node_id<TAB>parent_id<TAB>label", parent_id -1 at
// the root and label -1 on internal nodes.
void write_tree_tsv(const LabelTree& T, std::ostream& out);
std::string tree_to_tsv(const LabelTree& T);
LabelTree read_tree_tsv(std::istream& in);
LabelTree read_tree_tsv(const std::string& text);

}  // namespace plt
