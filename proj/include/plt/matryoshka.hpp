#pragma once

#include <vector>

#include "plt/label_matrix.hpp"
#include "plt/tree.hpp"

namespace plt {

// Nested (Matryoshka) instance: nondecreasing column weights a_1 <= ... <= a_m
// with perm[i] the original label id at position i.
struct NestedInstance {
  std::vector<long long> a;
  std::vector<int> perm;
  long long n = 0;
};

// Contiguous partition 0 = l_0 < l_1 < ... < l_k = m of the weight sequence;
// structure_cost is the tree cost minus n.
struct Partition {
  std::vector<int> boundaries;
  long long structure_cost = 0;
};

enum class NestedMode { DpQuadratic, LwsFast };

NestedInstance make_nested_instance(const LabelMatrix& Y);
NestedInstance nested_from_weights(std::vector<long long> a, long long n);

// Block weight for the segment (i, j]: (j - i + 1) * a_j, or j * a_j for the
// first block (i == 0). Indices are 1-based into the sequence.
long long lws_weight(int i, int j, const NestedInstance& inst);

// Minimum-cost contiguous partition. DpQuadratic is the O(m^2) reference;
// LwsFast exploits concavity of the block weights in O(m log m). Both modes
// return the same structure_cost.
Partition solve_nested(const NestedInstance& inst, NestedMode mode);

// Chain-shaped tree realizing a partition: one internal node per block, each
// holding the previous internal node plus its block's leaves.
LabelTree partition_to_tree(const Partition& p, const NestedInstance& inst);

}  // namespace plt
