#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "plt/cost.hpp"
#include "test_util.hpp"

using namespace plt;

namespace {

LabelTree star(int m) {
  TreeBuilder b;
  std::vector<int> leaves;
  for (int j = 0; j < m; ++j) leaves.push_back(b.add_leaf(j));
  return b.finish(b.add_internal(leaves));
}

// root(A(0,1), B(2,3))
LabelTree balanced4() {
  TreeBuilder b;
  int a = b.add_internal({b.add_leaf(0), b.add_leaf(1)});
  int c = b.add_internal({b.add_leaf(2), b.add_leaf(3)});
  return b.finish(b.add_internal({a, c}));
}

}  // namespace

TEST_CASE("node supports and weights") {
  auto T = balanced4();
  auto Y = matrix_from_rows(3, 4, {{0, 3}, {1}, {}});
  auto sets = node_row_sets(T, Y);
  CHECK(sets[T.root] == std::vector<int>{0, 1});
  auto s = compute_node_weights(T, Y);
  CHECK(s.z_weight[T.root] == 2);
  CHECK(s.node_cost[T.root] == 4);
  CHECK(s.z_fraction[T.root] == doctest::Approx(2.0 / 3));
}

TEST_CASE("assignment on the balanced binary tree") {
  auto T = balanced4();
  auto a = assign_to_nodes(T, 4, {0, 3});
  CHECK(a.positives.size() == 5);  // both leaves, both inner nodes, root
  CHECK(a.negatives.size() == 2);  // the sibling leaves
  CHECK(example_cost(T, 4, {0, 3}) == 7);
  CHECK(example_cost(T, 4, {0, 3}) ==
        static_cast<long long>(a.positives.size() + a.negatives.size()));

  // empty label set: the root alone is a negative example
  auto e = assign_to_nodes(T, 4, {});
  CHECK(e.positives.empty());
  CHECK(e.negatives == std::vector<int>{T.root});
  CHECK(example_cost(T, 4, {}) == 1);
}

TEST_CASE("dataset cost on a star") {
  auto T = star(3);
  auto Y = matrix_from_rows(3, 3, {{0, 2}, {1}, {}});
  auto r = dataset_cost(T, Y);
  CHECK(r.total == 9);
  CHECK(r.per_row == std::vector<long long>{4, 4, 1});
  CHECK(r.per_node[T.root] == 6);
  // flat tree: depth 1, max degree 3
  CHECK(r.upper_bound == std::vector<long long>{7, 4, 1});
}

TEST_CASE("assignment sizes equal the per-example cost exhaustively") {
  std::mt19937 rng(23);
  for (int t = 0; t < 40; ++t) {
    int m = 1 + static_cast<int>(rng() % 5);
    auto T = testutil::random_tree(m, rng);
    for (int mask = 0; mask < (1 << m); ++mask) {
      std::vector<int> y;
      for (int j = 0; j < m; ++j)
        if (mask & (1 << j)) y.push_back(j);
      auto a = assign_to_nodes(T, m, y);
      CHECK(example_cost(T, m, y) ==
            static_cast<long long>(a.positives.size() + a.negatives.size()));
    }
  }
}

TEST_CASE("row-sum and node-decomposition totals agree on random instances") {
  std::mt19937 rng(29);
  for (int t = 0; t < 50; ++t) {
    int m = 1 + static_cast<int>(rng() % 8);
    int n = 1 + static_cast<int>(rng() % 20);
    auto T = testutil::random_tree(m, rng);
    auto Y = testutil::random_multilabel(n, m, 0.3, rng);
    auto r = dataset_cost(T, Y);  // throws std::logic_error on mismatch
    long long rows = Y.n;
    for (int i = 0; i < Y.n; ++i) {
      rows += r.per_row[i] - 1;
      CHECK(r.per_row[i] <= r.upper_bound[i]);
    }
    CHECK(r.total == rows);
  }
}

TEST_CASE("expected cost matches the weighted average over the support") {
  std::mt19937 rng(31);
  for (int t = 0; t < 30; ++t) {
    int m = 2 + static_cast<int>(rng() % 5);
    auto T = testutil::random_tree(m, rng);
    auto s = testutil::random_scenario(m, rng);
    double avg = 0.0;
    for (const auto& [subset, p] : s.support) avg += p * example_cost(T, m, subset);
    CHECK(expected_cost(T, s) == doctest::Approx(avg).epsilon(1e-12));
  }
}

TEST_CASE("sensitivity values on reference shapes") {
  CHECK(sensitivity(star(5), 5, 2) == 5);
  auto T = balanced4();
  for (int j = 0; j < 4; ++j) CHECK(sensitivity(T, 4, j) == 4);
}

TEST_CASE("single label flips never change the cost by more than the sensitivity") {
  std::mt19937 rng(37);
  for (int t = 0; t < 30; ++t) {
    int m = 1 + static_cast<int>(rng() % 6);
    auto T = testutil::random_tree(m, rng);
    for (int mask = 0; mask < (1 << m); ++mask) {
      std::vector<int> y;
      for (int j = 0; j < m; ++j)
        if (mask & (1 << j)) y.push_back(j);
      long long base = example_cost(T, m, y);
      for (int j = 0; j < m; ++j) {
        std::vector<int> flipped;
        for (int k = 0; k < m; ++k)
          if ((mask ^ (1 << j)) & (1 << k)) flipped.push_back(k);
        long long delta = example_cost(T, m, flipped) - base;
        CHECK(std::abs(delta) <= sensitivity(T, m, j));
      }
    }
  }
}

TEST_CASE("binarize: star becomes a comb at no more than twice the cost") {
  auto T = star(4);
  auto Y = matrix_from_rows(4, 4, {{0}, {1}, {2}, {3}});
  CHECK(dataset_cost(T, Y).total == 20);
  auto B = binarize(T, Y);
  require_valid(B, 4);
  CHECK(tree_max_degree(B) == 2);
  CHECK(dataset_cost(B, Y).total == 22);
}

TEST_CASE("binarize: random trees, cost at most doubles") {
  std::mt19937 rng(41);
  for (int t = 0; t < 60; ++t) {
    int m = 1 + static_cast<int>(rng() % 12);
    int n = 1 + static_cast<int>(rng() % 15);
    auto T = testutil::random_tree(m, rng);
    auto Y = testutil::random_multilabel(n, m, 0.4, rng);
    auto B = binarize(T, Y);
    require_valid(B, m);
    CHECK(tree_max_degree(B) <= 2);
    CHECK(dataset_cost(B, Y).total <= 2 * dataset_cost(T, Y).total);
  }
}
