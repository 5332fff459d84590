#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "labelrec/decomp.hpp"
#include "labelrec/graph.hpp"
#include "labelrec/measure.hpp"

// The tree-decomposition decoder: stage 1 computes, for each extended
// component, the labeling minimizing disagreement with the probed edge
// observations (exact, by enumeration); stage 2 scores each component sign
// against the vertex observations and assigns agreement signs to the
// decomposition tree edges from the shared vertices; the signs are then
// stitched with the budgeted tree decoder and each vertex takes its label
// from the lowest-index component containing it.

namespace labelrec {

struct ComponentEstimate {
  int component = -1;
  Labels labels_star;  // over W*, ordered like td.extended[component]
  Labels labels;       // restriction to W, ordered like td.components[component]
  long long objective = 0;
};

// Exact edge-ML labeling of one extended component; |wstar| <= 24. Of the
// two sign-symmetric optima the one labeling the lowest-index vertex of W*
// with +1 is returned.
ComponentEstimate component_mle(const std::vector<int>& wstar, const ProbedGraph& gp,
                                const EdgeObservations& x);

struct StitchInputs {
  std::vector<std::array<int, 2>> cost;  // per component: [+1 cost, -1 cost]
  std::vector<int8_t> agree;             // per td.tree_edges entry
};

StitchInputs stitch_costs(const std::vector<ComponentEstimate>& estimates,
                          const TreeDecomposition& td, const VertexObservations& z);

struct StitchBudget {
  double delta = 0.0;
  double a_const = 0.0;  // 6 * deg*_E(T) * max_W |E'(W*)|
  double kn_raw = 0.0;   // 2^{wid*+2} sum_W p^{ceil(mincut*_W/2)} + A ln(2/delta)
  double ln_raw = 0.0;   // deg(T) * kn_raw
  long long kn = 0;      // ceil(kn_raw)
  long long ln = 0;      // ceil(ln_raw)
};

StitchBudget compute_stitch_budget(const DecompositionProperties& props, double p,
                                   double delta);

struct DecodeDiagnostics {
  StitchBudget budget;
  // Budget the stitch solve actually ran with: the expectation-scale
  // counterpart of the formula constant (see decode), never larger than ln.
  long long effective_budget = 0;
  bool budget_vacuous = false;          // effective budget >= |F|
  bool formula_budget_vacuous = false;  // ln >= |F|
  int stitch_violations = 0;
  Labels component_signs;  // per component, the stitched sign
};

struct DecodeResult {
  Labels yhat;
  std::vector<ComponentEstimate> estimates;
  DecodeDiagnostics diag;
};

// End-to-end decode. `props` must come from compute_properties(td, gp).
DecodeResult decode(const ProbedGraph& gp, const TreeDecomposition& td,
                    const DecompositionProperties& props, const EdgeObservations& x,
                    const VertexObservations& z, double p, double delta);

// Convenience overload computing the properties internally.
DecodeResult decode(const ProbedGraph& gp, const TreeDecomposition& td,
                    const EdgeObservations& x, const VertexObservations& z, double p,
                    double delta);

}  // namespace labelrec
