#pragma once

#include <vector>

#include "plt/label_matrix.hpp"
#include "plt/scenario.hpp"
#include "plt/tree.hpp"

namespace plt {

struct NodeStats {
  std::vector<long long> z_weight;   // per-node Hamming weight
  std::vector<double> z_fraction;    // z_weight / n
  std::vector<long long> node_cost;  // z_weight * degree
};

// Positive and negative node ids for one training example.
struct Assignment {
  std::vector<int> positives;
  std::vector<int> negatives;
};

struct CostReport {
  long long total = 0;                  // n + sum of node costs
  std::vector<long long> per_row;       // per-example cost
  std::vector<long long> per_node;      // z_weight * degree per node
  std::vector<long long> upper_bound;   // 1 + |y_i| * depth * max_degree
};

// Per-node support sets: example ids with at least one label under the node,
// computed bottom-up by sorted-set union.
std::vector<std::vector<int>> node_row_sets(const LabelTree& T, const LabelMatrix& Y);

NodeStats compute_node_weights(const LabelTree& T, const LabelMatrix& Y);

// Positive nodes are the paths from positive leaves to the root; negative
// nodes are their unvisited children (the root alone when y is empty).
Assignment assign_to_nodes(const LabelTree& T, int m, const std::vector<int>& y);

// 1 + number of non-root nodes whose parent covers a positive label.
long long example_cost(const LabelTree& T, int m, const std::vector<int>& y);

// Total cost computed both by node decomposition and by row summation; the
// two must agree.
CostReport dataset_cost(const LabelTree& T, const LabelMatrix& Y);

// Expected cost 1 + sum over nodes of P(z_v = 1) * degree.
double expected_cost(const LabelTree& T, const Scenario& s);

// Bounded-difference sensitivity of the cost to flipping one label:
// sum of parent degrees along the leaf's path (root parent contributes 0).
long long sensitivity(const LabelTree& T, int m, int label);

// Replaces every node of degree > 2 by a two-child comb, heaviest child
// shallowest; degree-1 chains are contracted. Cost at most doubles.
LabelTree binarize(const LabelTree& T, const LabelMatrix& Y);

}  // namespace plt
