#pragma once

#include <functional>
#include <utility>

#include "plt/label_matrix.hpp"
#include "plt/tree.hpp"

namespace plt {

// Visits every rooted tree with m labeled leaves and all internal degrees
// >= 2 exactly once (for m == 1, the single root-with-one-leaf tree).
// Supported range: 1 <= m <= 8.
void enumerate_trees(int m, const std::function<void(const LabelTree&)>& visit);

long long count_trees(int m);

// Exhaustive minimum of the dataset cost; ties break toward the first tree
// in enumeration order.
std::pair<LabelTree, long long> optimal_tree(const LabelMatrix& Y);

// Same search restricted to trees accepted by the predicate.
std::pair<LabelTree, long long> optimal_tree_filtered(
    const LabelMatrix& Y, const std::function<bool(const LabelTree&)>& keep);

}  // namespace plt
