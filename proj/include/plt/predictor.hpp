#pragma once

#include <vector>

#include "plt/scenario.hpp"
#include "plt/tree.hpp"

namespace plt {

// Exact node probabilities for one scenario: marginal[v] = P(z_v = 1) and
// conditional[v] = marginal[v] / marginal[parent] (root conditional equals
// the root marginal; 0/0 is defined as 0).
struct NodeProbabilities {
  std::vector<double> marginal;
  std::vector<double> conditional;
};

// Perturbed, normalized per-node estimates together with the realized
// per-node error and the prediction threshold.
struct NodeEstimates {
  std::vector<double> marginal;
  std::vector<double> conditional;
  std::vector<double> eps;  // |conditional true - estimate| after normalization
  double tau = 0.5;
};

struct PredictionResult {
  std::vector<int> predicted;  // labels with estimated marginal >= tau
  long long calls = 0;         // node-classifier calls during traversal
  double call_bound = 0.0;     // 1 + floor(P_hat / tau) * depth * max_degree
};

struct BoundReport {
  double p_true = 0.0;              // sum of true leaf marginals
  double p_hat = 0.0;               // sum of estimated leaf marginals
  double p_hat_bound = 0.0;         // p_true + sum |L(v)| eta_pa(v) eps_v
  std::vector<double> residual;     // |eta_v - eta_hat_v| per node
  std::vector<double> residual_bound;  // sum over Path(v) of eta_pa eps
  double expected_training_cost = 0.0;
  double expected_call_bound = 0.0;
};

NodeProbabilities scenario_node_probabilities(const LabelTree& T, const Scenario& s);

// Top-down normalization: child marginals clamped to the parent, then scaled
// up proportionally (equal split when their sum is zero) whenever the parent
// marginal exceeds their sum.
void normalize_marginals(const LabelTree& T, std::vector<double>& marginal);

// Perturbs each conditional by +/- magnitude (sign from the seeded
// generator), clamps to [0,1], propagates marginals, normalizes, and records
// the realized per-node errors.
NodeEstimates perturb_and_normalize(const LabelTree& T, const NodeProbabilities& p,
                                    const std::vector<double>& magnitudes, double tau,
                                    unsigned seed);
NodeEstimates perturb_and_normalize(const LabelTree& T, const NodeProbabilities& p,
                                    double magnitude, double tau, unsigned seed);

// Threshold traversal with a stack; calls are counted for the root plus
// every pushed child.
PredictionResult predict(const LabelTree& T, const NodeEstimates& e);

BoundReport prediction_cost_bounds(const LabelTree& T, const Scenario& s,
                                   const NodeProbabilities& p, const NodeEstimates& e);

}  // namespace plt
