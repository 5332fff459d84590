#pragma once

#include <map>
#include <string>
#include <vector>

#include "labelrec/graph.hpp"
#include "labelrec/measure.hpp"

// Baselines and closed-form bound calculators: the spanning-tree reduction,
// the neighbor-majority decoder, the genie-aided per-vertex MAP predictor
// with its exact error formula, and the degree-profile / disjoint-system
// lower-bound expressions (order-level: the suppressed constants of the
// asymptotic statements are not invented).

namespace labelrec {

// Run tree inference on a spanning tree of g (per component when g is
// disconnected), reading only that tree's edge observations.
Labels spanning_tree_decode(const Graph& g, const EdgeObservations& x,
                            const VertexObservations& z, double p, double delta);

// Per-vertex majority over neighbor votes Z_u * X_{uv}; ties (including
// isolated vertices) fall back to Z_v.
Labels majority_decode(const Graph& g, const EdgeObservations& x,
                       const VertexObservations& z);

// Exact error probability of the genie-aided MAP predictor at a degree-d
// vertex: odd d, the binomial upper tail from ceil(d/2); even d, the strict
// tail from d/2+1 plus q times the tie probability.
double genie_map_vertex_error(int d, double p, double q);

// The genie predictor itself (consumes ground truth; diagnostic only):
// majority over neighbor suggestions Y_u * X_{uv}, ties broken by Z_v.
Labels genie_map_decode(const Graph& g, const EdgeObservations& x,
                        const VertexObservations& z, const GroundTruth& truth);

struct BoundReport {
  std::string formula;
  double value = 0.0;
  bool order_level = true;  // asymptotic constants suppressed
  std::map<std::string, double> inputs;
};

// sum_v p^{ceil(deg(v)/2)}
BoundReport lb_degree_profile(const Graph& g, double p);

// sum_W p^{ceil(|cut(W)|/2)} over pairwise-disjoint vertex subsets.
BoundReport lb_system(const Graph& g, const std::vector<std::vector<int>>& subsets,
                      double p);

}  // namespace labelrec
