#include "plt/oracle.hpp"

#include <bit>
#include <cstdint>
#include <stdexcept>

#include "plt/cost.hpp"

namespace plt {

namespace {

struct Shape {
  int label = -1;  // >= 0 for leaves
  std::vector<Shape> kids;
};

using ShapeVisitor = std::function<void(Shape&)>;

void enumerate_shapes(const std::vector<int>& leaves, const ShapeVisitor& yield);

// All partitions of `rest` prefixed with a block containing `first`; blocks
// are ordered by smallest element, so each partition appears exactly once.
void enumerate_partitions(int first, const std::vector<int>& rest, bool must_split,
                          const std::function<void(std::vector<std::vector<int>>&)>& yield) {
  int r = static_cast<int>(rest.size());
  for (std::uint32_t mask = 0; mask < (1u << r); ++mask) {
    std::vector<int> block{first}, remain;
    for (int i = 0; i < r; ++i)
      ((mask >> i) & 1u ? block : remain).push_back(rest[i]);
    if (remain.empty()) {
      if (must_split) continue;
      std::vector<std::vector<int>> part{block};
      yield(part);
    } else {
      std::vector<int> rest2(remain.begin() + 1, remain.end());
      enumerate_partitions(remain[0], rest2, false,
                           [&](std::vector<std::vector<int>>& tail) {
                             std::vector<std::vector<int>> part;
                             part.push_back(block);
                             for (auto& b : tail) part.push_back(std::move(b));
                             yield(part);
                           });
    }
  }
}

void product_over_blocks(const std::vector<std::vector<int>>& blocks, size_t idx,
                         std::vector<Shape>& kids, const ShapeVisitor& yield_all) {
  if (idx == blocks.size()) {
    Shape node;
    node.kids = kids;
    yield_all(node);
    return;
  }
  enumerate_shapes(blocks[idx], [&](Shape& sub) {
    kids.push_back(std::move(sub));
    product_over_blocks(blocks, idx + 1, kids, yield_all);
    kids.pop_back();
  });
}

void enumerate_shapes(const std::vector<int>& leaves, const ShapeVisitor& yield) {
  if (leaves.size() == 1) {
    Shape leaf;
    leaf.label = leaves[0];
    yield(leaf);
    return;
  }
  std::vector<int> rest(leaves.begin() + 1, leaves.end());
  enumerate_partitions(leaves[0], rest, /*must_split=*/true,
                       [&](std::vector<std::vector<int>>& blocks) {
                         std::vector<Shape> kids;
                         product_over_blocks(blocks, 0, kids, yield);
                       });
}

int shape_to_builder(const Shape& s, TreeBuilder& b) {
  if (s.label >= 0) return b.add_leaf(s.label);
  std::vector<int> ids;
  ids.reserve(s.kids.size());
  for (const auto& k : s.kids) ids.push_back(shape_to_builder(k, b));
  return b.add_internal(ids);
}

LabelTree shape_to_tree(const Shape& s) {
  TreeBuilder b;
  int root = shape_to_builder(s, b);
  if (s.label >= 0) root = b.add_internal({root});  // m == 1 convention
  return b.finish(root);
}

// Fast total cost when n <= 64: node supports as bitmasks.
long long total_cost_masks(const LabelTree& T, const std::vector<std::uint64_t>& col_mask,
                           int n) {
  std::vector<std::uint64_t> z(T.num_nodes(), 0);
  auto order = topo_order(T);
  long long total = n;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int v = *it;
    if (T.is_leaf(v)) {
      z[v] = col_mask[T.leaf_label[v]];
    } else {
      for (int c : T.children[v]) z[v] |= z[c];
      total += static_cast<long long>(std::popcount(z[v])) * T.degree(v);
    }
  }
  return total;
}

void check_m(int m) {
  if (m < 1 || m > 8)
    throw std::runtime_error("oracle supports 1 <= m <= 8, got " + std::to_string(m));
}

}  // namespace

void enumerate_trees(int m, const std::function<void(const LabelTree&)>& visit) {
  check_m(m);
  std::vector<int> leaves(m);
  for (int i = 0; i < m; ++i) leaves[i] = i;
  enumerate_shapes(leaves, [&](Shape& s) { visit(shape_to_tree(s)); });
}

long long count_trees(int m) {
  long long count = 0;
  enumerate_trees(m, [&](const LabelTree&) { ++count; });
  return count;
}

std::pair<LabelTree, long long> optimal_tree_filtered(
    const LabelMatrix& Y, const std::function<bool(const LabelTree&)>& keep) {
  check_m(Y.m);
  bool use_masks = Y.n <= 64;
  std::vector<std::uint64_t> col_mask;
  if (use_masks) {
    col_mask.resize(Y.m, 0);
    for (int j = 0; j < Y.m; ++j)
      for (int i : Y.cols[j]) col_mask[j] |= std::uint64_t{1} << i;
  }
  LabelTree best;
  long long best_cost = -1;
  enumerate_trees(Y.m, [&](const LabelTree& T) {
    if (keep && !keep(T)) return;
    long long c = use_masks ? total_cost_masks(T, col_mask, Y.n) : dataset_cost(T, Y).total;
    if (best_cost < 0 || c < best_cost) {
      best_cost = c;
      best = T;
    }
  });
  if (best_cost < 0) throw std::runtime_error("no tree passed the filter");
  return {best, best_cost};
}

std::pair<LabelTree, long long> optimal_tree(const LabelMatrix& Y) {
  return optimal_tree_filtered(Y, nullptr);
}

}  // namespace plt
