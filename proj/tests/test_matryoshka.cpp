#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <limits>
#include <random>

#include "doctest.h"
#include "plt/cost.hpp"
#include "plt/matryoshka.hpp"
#include "test_util.hpp"

using namespace plt;

namespace {

std::vector<long long> random_weights(int m, long long max_w, std::mt19937& rng) {
  std::vector<long long> a(m);
  for (auto& x : a) x = 1 + static_cast<long long>(rng() % max_w);
  std::sort(a.begin(), a.end());
  return a;
}

long long partition_cost(const std::vector<int>& bd, const NestedInstance& inst) {
  long long c = 0;
  for (size_t k = 1; k < bd.size(); ++k) c += lws_weight(bd[k - 1], bd[k], inst);
  return c;
}

// All contiguous partitions via a bitmask over the inner boundaries 1..m-1.
template <class F>
void for_each_partition(int m, F f) {
  for (unsigned mask = 0; mask < (1u << (m - 1)); ++mask) {
    std::vector<int> bd{0};
    for (int i = 1; i < m; ++i)
      if (mask & (1u << (i - 1))) bd.push_back(i);
    bd.push_back(m);
    f(bd);
  }
}

}  // namespace

TEST_CASE("instance construction from matrices and raw weights") {
  std::mt19937 rng(3);
  auto Y = testutil::random_nested_matrix(8, 4, rng);
  auto inst = make_nested_instance(Y);
  CHECK(std::is_sorted(inst.a.begin(), inst.a.end()));
  CHECK(inst.a.size() == 4);
  for (size_t k = 0; k < inst.a.size(); ++k)
    CHECK(inst.a[k] == static_cast<long long>(Y.cols[inst.perm[k]].size()));

  auto general = matrix_from_rows(3, 3, {{0, 1}, {1, 2}, {0, 2}});
  CHECK_THROWS_AS(make_nested_instance(general), std::runtime_error);
  CHECK_THROWS_AS(nested_from_weights({3, 2, 1}, 3), std::runtime_error);
  CHECK_THROWS_AS(nested_from_weights({}, 0), std::runtime_error);
}

TEST_CASE("block weights and their concavity (quadrangle inequality)") {
  auto inst = nested_from_weights({1, 1, 2, 4}, 4);
  CHECK(lws_weight(0, 2, inst) == 2);   // first block: j * a_j
  CHECK(lws_weight(2, 3, inst) == 4);   // (j - i + 1) * a_j
  CHECK(lws_weight(3, 4, inst) == 8);
  CHECK_THROWS_AS(lws_weight(2, 2, inst), std::runtime_error);

  std::mt19937 rng(17);
  for (int t = 0; t < 20; ++t) {
    int m = 4 + static_cast<int>(rng() % 27);
    auto w = nested_from_weights(random_weights(m, 50, rng), 100);
    for (int i = 0; i < m; ++i)
      for (int i2 = i + 1; i2 < m; ++i2)
        for (int j = i2 + 1; j <= m; ++j)
          for (int j2 = j + 1; j2 <= m; ++j2)
            CHECK(lws_weight(i, j, w) + lws_weight(i2, j2, w) <=
                  lws_weight(i2, j, w) + lws_weight(i, j2, w));
  }
}

TEST_CASE("frozen optima") {
  {
    auto inst = nested_from_weights({1, 1, 2, 4}, 4);
    auto p = solve_nested(inst, NestedMode::DpQuadratic);
    CHECK(p.structure_cost == 14);
    // ties at cost 14 include {0,2,4}, {0,3,4} and {0,2,3,4}; the canonical
    // pick has the fewest blocks and then the smallest boundary vector
    CHECK(p.boundaries == std::vector<int>{0, 2, 4});
    CHECK(solve_nested(inst, NestedMode::LwsFast).structure_cost == 14);
  }
  {
    auto inst = nested_from_weights({2, 2}, 2);
    auto p = solve_nested(inst, NestedMode::DpQuadratic);
    CHECK(p.structure_cost == 4);
    CHECK(p.boundaries == std::vector<int>{0, 2});
  }
  {
    auto inst = nested_from_weights({5}, 5);
    auto p = solve_nested(inst, NestedMode::DpQuadratic);
    CHECK(p.structure_cost == 5);
    CHECK(p.boundaries == std::vector<int>{0, 1});
  }
}

TEST_CASE("dp equals the exhaustive minimum with canonical tie-breaks") {
  std::mt19937 rng(19);
  for (int t = 0; t < 200; ++t) {
    int m = 1 + static_cast<int>(rng() % 10);
    auto inst = nested_from_weights(random_weights(m, 6, rng), 20);
    auto p = solve_nested(inst, NestedMode::DpQuadratic);

    long long best = std::numeric_limits<long long>::max();
    for_each_partition(m, [&](const std::vector<int>& bd) {
      best = std::min(best, partition_cost(bd, inst));
    });
    REQUIRE(p.structure_cost == best);
    CHECK(partition_cost(p.boundaries, inst) == best);

    // canonical: fewest blocks, then lexicographically smallest boundaries
    std::vector<int> canon;
    for_each_partition(m, [&](const std::vector<int>& bd) {
      if (partition_cost(bd, inst) != best) return;
      if (canon.empty() || bd.size() < canon.size() ||
          (bd.size() == canon.size() && bd < canon))
        canon = bd;
    });
    CHECK(p.boundaries == canon);
  }
}

TEST_CASE("fast mode agrees with the quadratic reference on cost") {
  std::mt19937 rng(21);
  for (int t = 0; t < 150; ++t) {
    int m = 1 + static_cast<int>(rng() % 60);
    auto inst = nested_from_weights(random_weights(m, 1 + rng() % 100, rng), 1000);
    auto a = solve_nested(inst, NestedMode::DpQuadratic);
    auto b = solve_nested(inst, NestedMode::LwsFast);
    REQUIRE(a.structure_cost == b.structure_cost);
    CHECK(partition_cost(b.boundaries, inst) == b.structure_cost);
  }
}

TEST_CASE("large instances: envelope DP and candidate list agree") {
  std::mt19937 rng(25);
  for (int t = 0; t < 5; ++t) {
    int m = 5000 + static_cast<int>(rng() % 3000);
    std::vector<long long> a(m);
    long long cur = 1 + static_cast<long long>(rng() % 5);
    for (int i = 0; i < m; ++i) {
      cur += static_cast<long long>(rng() % 4);
      a[i] = cur;
    }
    auto inst = nested_from_weights(std::move(a), cur + 1);
    auto dp = solve_nested(inst, NestedMode::DpQuadratic);
    auto fast = solve_nested(inst, NestedMode::LwsFast);
    REQUIRE(dp.structure_cost == fast.structure_cost);
    CHECK(partition_cost(dp.boundaries, inst) == dp.structure_cost);
    CHECK(partition_cost(fast.boundaries, inst) == fast.structure_cost);
  }
}

TEST_CASE("moving a label into the adjacent later block never helps") {
  // the basic exchange step behind chain optimality: growing a block by one
  // element from the left (i.e. shifting a boundary) cannot beat the optimum
  std::mt19937 rng(27);
  for (int t = 0; t < 100; ++t) {
    int m = 2 + static_cast<int>(rng() % 12);
    auto inst = nested_from_weights(random_weights(m, 9, rng), 50);
    auto p = solve_nested(inst, NestedMode::DpQuadratic);
    for (size_t k = 1; k + 1 < p.boundaries.size(); ++k) {
      for (int delta : {-1, 1}) {
        auto bd = p.boundaries;
        bd[k] += delta;
        if (bd[k] <= bd[k - 1] || bd[k] >= bd[k + 1]) continue;
        CHECK(partition_cost(bd, inst) >= p.structure_cost);
      }
    }
  }
}

TEST_CASE("partition_to_tree realizes the structure cost exactly") {
  std::mt19937 rng(33);
  for (int t = 0; t < 80; ++t) {
    int n = 2 + static_cast<int>(rng() % 12);
    int m = 1 + static_cast<int>(rng() % 6);
    auto Y = testutil::random_nested_matrix(n, m, rng);
    auto inst = make_nested_instance(Y);
    auto p = solve_nested(inst, NestedMode::DpQuadratic);
    auto T = partition_to_tree(p, inst);
    require_valid(T, m);
    CHECK(dataset_cost(T, Y).total == Y.n + p.structure_cost);
  }
}

TEST_CASE("partition_to_tree rejects malformed boundary vectors") {
  auto inst = nested_from_weights({1, 2, 3}, 3);
  Partition bad;
  bad.boundaries = {0, 2};  // does not end at m
  CHECK_THROWS_AS(partition_to_tree(bad, inst), std::runtime_error);
  bad.boundaries = {0, 2, 2, 3};
  CHECK_THROWS_AS(partition_to_tree(bad, inst), std::runtime_error);
}
