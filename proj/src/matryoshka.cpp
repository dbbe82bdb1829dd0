#include "plt/matryoshka.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

namespace plt {

NestedInstance make_nested_instance(const LabelMatrix& Y) {
  if (Y.m < 1) throw std::runtime_error("need at least one label");
  auto info = detect_structure(Y);
  NestedInstance inst;
  inst.n = Y.n;
  if (info.kind == StructureKind::Nested) {
    inst.perm = info.nested_order;
  } else if (Y.m == 1) {
    inst.perm = {0};  // a single column is trivially a chain
  } else {
    throw std::runtime_error("not a nested instance");
  }
  for (int j : inst.perm) {
    long long w = static_cast<long long>(Y.cols[j].size());
    if (w < 1) throw std::runtime_error("nested instance requires every column weight >= 1");
    inst.a.push_back(w);
  }
  return inst;
}

NestedInstance nested_from_weights(std::vector<long long> a, long long n) {
  if (a.empty()) throw std::runtime_error("empty weight sequence");
  if (!std::is_sorted(a.begin(), a.end()))
    throw std::runtime_error("weight sequence must be nondecreasing");
  if (a.front() < 1) throw std::runtime_error("weights must be >= 1");
  NestedInstance inst;
  inst.n = n;
  inst.perm.resize(a.size());
  for (size_t i = 0; i < a.size(); ++i) inst.perm[i] = static_cast<int>(i);
  inst.a = std::move(a);
  return inst;
}

long long lws_weight(int i, int j, const NestedInstance& inst) {
  int m = static_cast<int>(inst.a.size());
  if (i < 0 || j <= i || j > m) throw std::runtime_error("lws_weight index out of range");
  long long aj = inst.a[j - 1];
  return i > 0 ? static_cast<long long>(j - i + 1) * aj : static_cast<long long>(j) * aj;
}

namespace {

// Exact tie-broken reference: suffix DP over (cost, block count), then greedy
// left-to-right reconstruction picking the smallest feasible boundary, which
// yields the fewest blocks and then the lexicographically smallest vector.
Partition dp_canonical(const NestedInstance& inst) {
  int m = static_cast<int>(inst.a.size());
  const long long inf = std::numeric_limits<long long>::max() / 4;
  std::vector<long long> hc(m + 1, inf);  // cost of suffix (i, m]
  std::vector<int> hb(m + 1, 0);          // blocks among cost-optimal suffixes
  hc[m] = 0;
  for (int i = m - 1; i >= 1; --i) {
    for (int j = i + 1; j <= m; ++j) {
      long long c = static_cast<long long>(j - i + 1) * inst.a[j - 1] + hc[j];
      int bcnt = 1 + hb[j];
      if (c < hc[i] || (c == hc[i] && bcnt < hb[i])) {
        hc[i] = c;
        hb[i] = bcnt;
      }
    }
  }
  long long best = inf;
  int best_b = 0;
  for (int l1 = 1; l1 <= m; ++l1) {
    long long c = lws_weight(0, l1, inst) + hc[l1];
    int bcnt = 1 + hb[l1];
    if (c < best || (c == best && bcnt < best_b)) {
      best = c;
      best_b = bcnt;
    }
  }

  Partition p;
  p.structure_cost = best;
  p.boundaries.push_back(0);
  int first = 0;
  for (int l1 = 1; l1 <= m; ++l1)
    if (lws_weight(0, l1, inst) + hc[l1] == best && 1 + hb[l1] == best_b) {
      first = l1;
      break;
    }
  p.boundaries.push_back(first);
  int i = first;
  while (i < m) {
    for (int j = i + 1; j <= m; ++j) {
      if (static_cast<long long>(j - i + 1) * inst.a[j - 1] + hc[j] == hc[i] &&
          1 + hb[j] == hb[i]) {
        p.boundaries.push_back(j);
        i = j;
        break;
      }
    }
  }
  return p;
}

// Same recurrence for large m: cost(i, j) for i >= 1 is f[i] - i*a_j plus a
// term that only depends on j, so the inner minimum is the lower envelope of
// the lines x -> f[i] - i*x queried at the nondecreasing points x = a_j.
// Exact 64-bit arithmetic; intersections compared in 128 bits.
Partition dp_large(const NestedInstance& inst) {
  int m = static_cast<int>(inst.a.size());
  struct Line {
    long long b;  // f[i]
    long long k;  // slope magnitude i; value at x is b - k*x
    int id;
  };
  auto value = [](const Line& l, long long x) { return l.b - l.k * x; };
  // with la older than lb, lb stops winning once lc catches la no later
  auto drops = [](const Line& la, const Line& lb, const Line& lc) {
    return static_cast<__int128>(lc.b - la.b) * (lb.k - la.k) <=
           static_cast<__int128>(lb.b - la.b) * (lc.k - la.k);
  };

  std::vector<long long> f(m + 1, 0);
  std::vector<int> parent(m + 1, 0);
  std::vector<Line> hull;
  size_t ptr = 0;
  for (int j = 1; j <= m; ++j) {
    if (j >= 2) {  // line for i = j - 1 becomes available
      Line l{f[j - 1], j - 1, j - 1};
      while (hull.size() >= 2 && drops(hull[hull.size() - 2], hull.back(), l))
        hull.pop_back();
      hull.push_back(l);
      ptr = std::min(ptr, hull.size() - 1);
    }
    long long aj = inst.a[j - 1];
    long long best = static_cast<long long>(j) * aj;  // i = 0 block
    int pick = 0;
    if (!hull.empty()) {
      while (ptr + 1 < hull.size() && value(hull[ptr + 1], aj) <= value(hull[ptr], aj))
        ++ptr;
      long long c = value(hull[ptr], aj) + (static_cast<long long>(j) + 1) * aj;
      if (c < best) {
        best = c;
        pick = hull[ptr].id;
      }
    }
    f[j] = best;
    parent[j] = pick;
  }

  Partition p;
  p.structure_cost = f[m];
  std::vector<int> rev;
  for (int j = m; j > 0; j = parent[j]) rev.push_back(j);
  rev.push_back(0);
  p.boundaries.assign(rev.rbegin(), rev.rend());
  return p;
}

// Galil-Giancarlo style candidate list for concave least-weight sequence:
// each candidate owns a monotone interval of future positions; crossovers
// are located by binary search. O(m log m).
Partition lws_fast(const NestedInstance& inst) {
  int m = static_cast<int>(inst.a.size());
  std::vector<long long> e(m + 1, 0);
  std::vector<int> par(m + 1, 0);
  struct Cand {
    int idx;
    int start;
  };
  std::deque<Cand> q{{0, 1}};
  auto cost = [&](int i, int j) { return e[i] + lws_weight(i, j, inst); };

  for (int j = 1; j <= m; ++j) {
    while (q.size() >= 2 && q[1].start <= j) q.pop_front();
    par[j] = q.front().idx;
    e[j] = cost(par[j], j);
    if (j == m) break;

    while (!q.empty()) {
      int s = std::max(q.back().start, j + 1);
      if (s > m) {
        q.pop_back();
        continue;
      }
      if (cost(j, s) <= cost(q.back().idx, s)) q.pop_back();
      else break;
    }
    if (q.empty()) {
      q.push_back({j, j + 1});
    } else {
      int bi = q.back().idx;
      int lo = std::max(q.back().start, j + 1), hi = m + 1;
      // smallest t with cost(j, t) <= cost(bi, t); none if hi stays m+1
      while (lo < hi) {
        int mid = lo + (hi - lo) / 2;
        if (cost(j, mid) <= cost(bi, mid)) hi = mid;
        else lo = mid + 1;
      }
      if (hi <= m) q.push_back({j, hi});
    }
  }

  Partition p;
  p.structure_cost = e[m];
  std::vector<int> rev;
  for (int j = m; j > 0; j = par[j]) rev.push_back(j);
  rev.push_back(0);
  p.boundaries.assign(rev.rbegin(), rev.rend());
  return p;
}

}  // namespace

Partition solve_nested(const NestedInstance& inst, NestedMode mode) {
  if (!std::is_sorted(inst.a.begin(), inst.a.end()))
    throw std::runtime_error("weight sequence must be nondecreasing");
  if (mode == NestedMode::LwsFast) return lws_fast(inst);
  // The O(m^2) canonical-tie-break reference is kept up to a size where it is
  // instant; beyond that the same recurrence runs on the line envelope, which
  // returns an optimal partition but not necessarily the canonical one.
  if (inst.a.size() <= 4096) return dp_canonical(inst);
  return dp_large(inst);
}

LabelTree partition_to_tree(const Partition& p, const NestedInstance& inst) {
  int m = static_cast<int>(inst.a.size());
  const auto& bd = p.boundaries;
  if (bd.size() < 2 || bd.front() != 0 || bd.back() != m ||
      !std::is_sorted(bd.begin(), bd.end()) ||
      std::adjacent_find(bd.begin(), bd.end()) != bd.end())
    throw std::runtime_error("malformed partition");

  TreeBuilder b;
  int prev = -1;
  for (size_t blk = 1; blk < bd.size(); ++blk) {
    std::vector<int> children;
    if (prev != -1) children.push_back(prev);
    for (int pos = bd[blk - 1] + 1; pos <= bd[blk]; ++pos)
      children.push_back(b.add_leaf(inst.perm[pos - 1]));
    prev = b.add_internal(children);
  }
  return b.finish(prev);
}

}  // namespace plt
