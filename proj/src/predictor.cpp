#include "plt/predictor.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace plt {

namespace {

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

}  // namespace

NodeProbabilities scenario_node_probabilities(const LabelTree& T, const Scenario& s) {
  validate_scenario(s);
  require_valid(T, s.m);
  auto leaf = leaf_of_label(T, s.m);
  NodeProbabilities p;
  p.marginal.assign(T.num_nodes(), 0.0);
  for (const auto& [subset, prob] : s.support) {
    std::vector<char> z(T.num_nodes(), 0);
    for (int j : subset)
      for (int v = leaf[j]; v != -1 && !z[v]; v = T.parent[v]) z[v] = 1;
    for (int v = 0; v < T.num_nodes(); ++v)
      if (z[v]) p.marginal[v] += prob;
  }
  p.conditional.resize(T.num_nodes());
  for (int v = 0; v < T.num_nodes(); ++v) {
    if (v == T.root) {
      p.conditional[v] = p.marginal[v];
    } else {
      double pa = p.marginal[T.parent[v]];
      p.conditional[v] = pa > 0.0 ? p.marginal[v] / pa : 0.0;
    }
  }
  return p;
}

void normalize_marginals(const LabelTree& T, std::vector<double>& marginal) {
  for (int v : topo_order(T)) {
    if (T.is_leaf(v)) continue;
    double sum = 0.0;
    for (int c : T.children[v]) {
      marginal[c] = std::min(marginal[c], marginal[v]);
      sum += marginal[c];
    }
    if (marginal[v] > sum) {
      if (sum > 0.0) {
        double f = marginal[v] / sum;
        for (int c : T.children[v]) marginal[c] *= f;
      } else {
        double share = marginal[v] / T.degree(v);
        for (int c : T.children[v]) marginal[c] = share;
      }
    }
  }
}

NodeEstimates perturb_and_normalize(const LabelTree& T, const NodeProbabilities& p,
                                    const std::vector<double>& magnitudes, double tau,
                                    unsigned seed) {
  int n = T.num_nodes();
  if (static_cast<int>(magnitudes.size()) != n)
    throw std::runtime_error("need one error magnitude per node");
  for (double m : magnitudes)
    if (m < 0.0 || m > 1.0) throw std::runtime_error("error magnitude out of [0,1]");
  if (tau <= 0.0 || tau > 1.0) throw std::runtime_error("tau out of (0,1]");

  std::mt19937 rng(seed);
  NodeEstimates e;
  e.tau = tau;
  e.conditional.resize(n);
  for (int v = 0; v < n; ++v) {
    double sign = (rng() & 1u) ? 1.0 : -1.0;
    e.conditional[v] = clamp01(p.conditional[v] + sign * magnitudes[v]);
  }

  e.marginal.assign(n, 0.0);
  for (int v : topo_order(T))
    e.marginal[v] = (v == T.root) ? e.conditional[v]
                                  : e.marginal[T.parent[v]] * e.conditional[v];
  normalize_marginals(T, e.marginal);

  e.eps.resize(n);
  for (int v = 0; v < n; ++v) {
    if (v == T.root) {
      e.conditional[v] = e.marginal[v];
    } else {
      double pa = e.marginal[T.parent[v]];
      e.conditional[v] = pa > 0.0 ? e.marginal[v] / pa : 0.0;
    }
    e.eps[v] = std::abs(p.conditional[v] - e.conditional[v]);
  }
  return e;
}

NodeEstimates perturb_and_normalize(const LabelTree& T, const NodeProbabilities& p,
                                    double magnitude, double tau, unsigned seed) {
  return perturb_and_normalize(T, p, std::vector<double>(T.num_nodes(), magnitude), tau,
                               seed);
}

PredictionResult predict(const LabelTree& T, const NodeEstimates& e) {
  PredictionResult r;
  std::vector<std::pair<int, double>> stack{{T.root, e.marginal[T.root]}};
  r.calls = 1;
  while (!stack.empty()) {
    auto [v, eta] = stack.back();
    stack.pop_back();
    if (eta < e.tau) continue;
    if (T.is_leaf(v)) {
      r.predicted.push_back(T.leaf_label[v]);
    } else {
      for (int c : T.children[v]) {
        stack.emplace_back(c, eta * e.conditional[c]);
        ++r.calls;
      }
    }
  }
  std::sort(r.predicted.begin(), r.predicted.end());

  double p_hat = 0.0;
  for (int v = 0; v < T.num_nodes(); ++v)
    if (T.is_leaf(v)) p_hat += e.marginal[v];
  r.call_bound =
      1.0 + std::floor(p_hat / e.tau) * tree_depth(T) * tree_max_degree(T);
  return r;
}

BoundReport prediction_cost_bounds(const LabelTree& T, const Scenario& s,
                                   const NodeProbabilities& p, const NodeEstimates& e) {
  validate_scenario(s);
  int n = T.num_nodes();
  BoundReport r;

  std::vector<long long> leaf_count(n, 0), inner_count(n, 0);
  auto order = topo_order(T);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int v = *it;
    if (T.is_leaf(v)) {
      leaf_count[v] = 1;
    } else {
      inner_count[v] = 1;
      for (int c : T.children[v]) {
        leaf_count[v] += leaf_count[c];
        inner_count[v] += inner_count[c];
      }
    }
  }
  auto eta_pa = [&](int v) {
    return v == T.root ? 1.0 : p.marginal[T.parent[v]];
  };

  for (int v = 0; v < n; ++v) {
    if (T.is_leaf(v)) {
      r.p_true += p.marginal[v];
      r.p_hat += e.marginal[v];
    }
  }
  r.p_hat_bound = r.p_true;
  for (int v = 0; v < n; ++v)
    r.p_hat_bound += leaf_count[v] * eta_pa(v) * e.eps[v];

  r.residual.resize(n);
  r.residual_bound.resize(n);
  for (int v = 0; v < n; ++v) {
    r.residual[v] = std::abs(p.marginal[v] - e.marginal[v]);
    double b = 0.0;
    for (int u : path_to_root(T, v)) b += eta_pa(u) * e.eps[u];
    r.residual_bound[v] = b;
  }

  r.expected_training_cost = 1.0;
  for (int v = 0; v < n; ++v) r.expected_training_cost += p.marginal[v] * T.degree(v);

  double err_term = 0.0;
  for (int v = 0; v < n; ++v)
    err_term += eta_pa(v) * e.eps[v] * inner_count[v] * T.degree(v);
  r.expected_call_bound = (r.expected_training_cost + err_term) / e.tau - (1.0 - e.tau) / e.tau;
  return r;
}

}  // namespace plt
