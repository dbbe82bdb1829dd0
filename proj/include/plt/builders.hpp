#pragma once

#include <vector>

#include "plt/label_matrix.hpp"
#include "plt/tree.hpp"

namespace plt {

// Per-label Hamming weights of a multi-class instance, sorted ascending
// (ties broken by label id); labels[i] is the original id of weights[i].
struct WeightProfile {
  std::vector<long long> weights;
  std::vector<int> labels;
  long long n = 0;
};

struct EntropyBound {
  double entropy = 0.0;      // H(p_1,...,p_m) in bits
  double lower_bound = 0.0;  // n + (3n / log 3) * H
};

// Throws unless every row has exactly one label and every column weight >= 1.
WeightProfile make_weight_profile(const LabelMatrix& Y);

// Complete ternary tree of depth ceil(log3 m) pruned to exactly m leaves,
// labels assigned in id order.
LabelTree build_complete_ternary(int m);

// Bottom-up merging of the three smallest weights; the first merge takes two
// when (m - 1) is odd. Ties break toward the smallest creation id.
LabelTree build_ternary_huffman(const WeightProfile& w);

// Leaf for weight w_i placed at depth ceil(log3(n / w_i)), slots assigned
// level by level, heaviest labels shallowest.
LabelTree build_ternary_shannon(const WeightProfile& w);

// Greedy binary agglomeration for general multi-label instances: repeatedly
// merge the two roots whose union has minimum Hamming weight. Heuristic, no
// approximation guarantee.
LabelTree build_binary_merge(const LabelMatrix& Y);

EntropyBound entropy_lower_bound(const WeightProfile& w);

}  // namespace plt
