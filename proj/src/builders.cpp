#include "plt/builders.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace plt {

namespace {

int ceil_log3(long long k) {
  int d = 0;
  long long c = 1;
  while (c < k) {
    c *= 3;
    ++d;
  }
  return d;
}

long long pow3(int d) {
  long long c = 1;
  while (d-- > 0) c *= 3;
  return c;
}

LabelTree single_label_tree(int label) {
  TreeBuilder b;
  int leaf = b.add_leaf(label);
  int root = b.add_internal({leaf});
  return b.finish(root);
}

}  // namespace

WeightProfile make_weight_profile(const LabelMatrix& Y) {
  for (const auto& r : Y.rows)
    if (r.size() != 1)
      throw std::runtime_error("weight profile requires a multi-class instance");
  WeightProfile w;
  w.n = Y.n;
  w.labels.resize(Y.m);
  std::iota(w.labels.begin(), w.labels.end(), 0);
  std::sort(w.labels.begin(), w.labels.end(), [&](int a, int b) {
    if (Y.cols[a].size() != Y.cols[b].size()) return Y.cols[a].size() < Y.cols[b].size();
    return a < b;
  });
  for (int j : w.labels) {
    if (Y.cols[j].empty())
      throw std::runtime_error("zero-weight column " + std::to_string(j) +
                               " not allowed in multi-class builders");
    w.weights.push_back(static_cast<long long>(Y.cols[j].size()));
  }
  return w;
}

namespace {

int complete_ternary_rec(const std::vector<int>& labels, int lo, int hi, TreeBuilder& b) {
  int k = hi - lo;
  if (k == 1) return b.add_leaf(labels[lo]);
  long long cap = pow3(ceil_log3(k) - 1);
  std::vector<int> children;
  while (lo < hi) {
    int take = static_cast<int>(std::min<long long>(cap, hi - lo));
    children.push_back(complete_ternary_rec(labels, lo, lo + take, b));
    lo += take;
  }
  return b.add_internal(children);
}

}  // namespace

LabelTree build_complete_ternary(int m) {
  if (m < 1) throw std::runtime_error("need at least one label");
  if (m == 1) return single_label_tree(0);
  std::vector<int> labels(m);
  std::iota(labels.begin(), labels.end(), 0);
  TreeBuilder b;
  int root = complete_ternary_rec(labels, 0, m, b);
  return b.finish(root);
}

LabelTree build_ternary_huffman(const WeightProfile& w) {
  int m = static_cast<int>(w.weights.size());
  if (m < 1) throw std::runtime_error("empty weight profile");
  for (long long x : w.weights)
    if (x < 1) throw std::runtime_error("zero weight in profile");
  if (m == 1) return single_label_tree(w.labels[0]);

  TreeBuilder b;
  std::vector<long long> weight(m);
  for (int i = 0; i < m; ++i) {
    b.add_leaf(w.labels[i]);  // creation id i, ascending weight
    weight[i] = w.weights[i];
  }
  size_t leaf_front = 0;
  std::deque<int> merged;  // FIFO; merged weights are nondecreasing

  auto take = [&]() {
    // Smallest weight wins; ties go to the smallest creation id, and leaf
    // ids always precede merged ids.
    if (leaf_front < static_cast<size_t>(m) &&
        (merged.empty() || weight[leaf_front] <= weight[merged.front()]))
      return static_cast<int>(leaf_front++);
    int id = merged.front();
    merged.pop_front();
    return id;
  };

  int active = m;
  int root = -1;
  bool first = true;
  while (active > 1) {
    int arity = first ? (m % 2 == 0 ? 2 : 3) : 3;
    first = false;
    std::vector<int> picked;
    long long sum = 0;
    for (int i = 0; i < arity && active - i > 0; ++i) {
      int id = take();
      picked.push_back(id);
      sum += weight[id];
    }
    root = b.add_internal(picked);
    weight.push_back(sum);  // multi-class: merged weight is the sum
    merged.push_back(root);
    active -= static_cast<int>(picked.size()) - 1;
  }
  return b.finish(root);
}

namespace {

struct Slot {
  int label = -1;
  std::vector<int> children;
};

// Drops subtrees without leaves and contracts single-child chains.
int compress_slots(const std::vector<Slot>& slots, int v, TreeBuilder& b) {
  if (slots[v].label >= 0) return b.add_leaf(slots[v].label);
  std::vector<int> kept;
  for (int c : slots[v].children) {
    int id = compress_slots(slots, c, b);
    if (id >= 0) kept.push_back(id);
  }
  if (kept.empty()) return -1;
  if (kept.size() == 1) return kept[0];
  return b.add_internal(kept);
}

}  // namespace

LabelTree build_ternary_shannon(const WeightProfile& w) {
  int m = static_cast<int>(w.weights.size());
  if (m < 1) throw std::runtime_error("empty weight profile");
  for (long long x : w.weights)
    if (x < 1) throw std::runtime_error("zero weight in profile");
  if (m == 1) return single_label_tree(w.labels[0]);

  // depth_i = ceil(log3(n / p_i)); the profile is ascending in weight so
  // depths are nonincreasing along it.
  std::vector<int> depth(m);
  int max_depth = 0;
  for (int i = 0; i < m; ++i) {
    int d = 0;
    long long cap = w.weights[i];
    while (cap < w.n) {
      cap *= 3;
      ++d;
    }
    depth[i] = d;
    max_depth = std::max(max_depth, d);
  }

  std::vector<Slot> slots(1);
  std::vector<int> level{0};
  int next = m - 1;  // heaviest label first
  for (int d = 0; d <= max_depth && next >= 0; ++d) {
    size_t filled = 0;
    while (next >= 0 && depth[next] == d) {
      if (filled >= level.size()) throw std::logic_error("Kraft feasibility violated");
      slots[level[filled++]].label = w.labels[next--];
    }
    std::vector<int> next_level;
    for (size_t s = filled; s < level.size(); ++s) {
      for (int c = 0; c < 3; ++c) {
        slots[level[s]].children.push_back(static_cast<int>(slots.size()));
        next_level.push_back(static_cast<int>(slots.size()));
        slots.emplace_back();
      }
    }
    level = std::move(next_level);
  }

  TreeBuilder b;
  int root = compress_slots(slots, 0, b);
  return b.finish(root);
}

LabelTree build_binary_merge(const LabelMatrix& Y) {
  if (Y.m < 1) throw std::runtime_error("need at least one label");
  if (Y.m == 1) return single_label_tree(0);

  struct Root {
    int created;
    int node;
    std::vector<int> support;
  };
  TreeBuilder b;
  std::vector<Root> roots;
  for (int j = 0; j < Y.m; ++j) roots.push_back({j, b.add_leaf(j), Y.cols[j]});
  int next_created = Y.m;

  constexpr size_t kCandidates = 32;
  while (roots.size() > 1) {
    std::vector<size_t> idx(roots.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t c) {
      if (roots[a].support.size() != roots[c].support.size())
        return roots[a].support.size() < roots[c].support.size();
      return roots[a].created < roots[c].created;
    });
    size_t k = std::min(kCandidates, idx.size());

    long long best_w = -1;
    size_t best_a = 0, best_b = 1;
    for (size_t a = 0; a < k; ++a) {
      for (size_t c = a + 1; c < k; ++c) {
        const auto& sa = roots[idx[a]].support;
        const auto& sc = roots[idx[c]].support;
        long long inter = 0;
        for (size_t pa = 0, pc = 0; pa < sa.size() && pc < sc.size();) {
          if (sa[pa] < sc[pc]) ++pa;
          else if (sa[pa] > sc[pc]) ++pc;
          else { ++inter; ++pa; ++pc; }
        }
        long long uw = static_cast<long long>(sa.size() + sc.size()) - inter;
        int id_lo = std::min(roots[idx[a]].created, roots[idx[c]].created);
        int id_hi = std::max(roots[idx[a]].created, roots[idx[c]].created);
        int cur_lo = std::min(roots[idx[best_a]].created, roots[idx[best_b]].created);
        int cur_hi = std::max(roots[idx[best_a]].created, roots[idx[best_b]].created);
        if (best_w < 0 || uw < best_w ||
            (uw == best_w && (id_lo < cur_lo || (id_lo == cur_lo && id_hi < cur_hi)))) {
          best_w = uw;
          best_a = a;
          best_b = c;
        }
      }
    }

    size_t ia = idx[best_a], ic = idx[best_b];
    if (roots[ic].created < roots[ia].created) std::swap(ia, ic);
    std::vector<int> uni;
    std::set_union(roots[ia].support.begin(), roots[ia].support.end(),
                   roots[ic].support.begin(), roots[ic].support.end(),
                   std::back_inserter(uni));
    Root merged{next_created++, b.add_internal({roots[ia].node, roots[ic].node}),
                std::move(uni)};
    if (ia > ic) std::swap(ia, ic);
    roots.erase(roots.begin() + ic);
    roots.erase(roots.begin() + ia);
    roots.push_back(std::move(merged));
  }
  return b.finish(roots[0].node);
}

EntropyBound entropy_lower_bound(const WeightProfile& w) {
  for (long long x : w.weights)
    if (x < 1) throw std::runtime_error("zero weight in profile");
  EntropyBound e;
  for (long long x : w.weights) {
    double p = static_cast<double>(x) / w.n;
    e.entropy += p * std::log2(1.0 / p);
  }
  e.lower_bound = w.n + 3.0 * w.n / std::log2(3.0) * e.entropy;
  return e;
}

}  // namespace plt
