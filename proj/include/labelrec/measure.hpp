#pragma once

#include <cstdint>
#include <vector>

#include "labelrec/graph.hpp"

// Generative noise model and evaluation metrics: hidden +-1 vertex labels,
// edge observations of Y_u*Y_v flipped with probability p, vertex side
// information flipped with probability q, Hamming error, and the
// sign-minimized component failure count.

namespace labelrec {

using Labels = std::vector<int8_t>;  // entries in {-1,+1}

struct GroundTruth {
  Labels y;
};

struct EdgeObservations {
  Labels x;  // indexed by edge
};

struct VertexObservations {
  Labels z;
};

// Experiment-level parameter validation: 0 <= p < q < 1/2.
// Individual samplers accept any probability in [0,1] for boundary tests.
struct NoiseParams {
  double p;
  double q;
  double eps() const { return 0.5 - q; }
  static NoiseParams checked(double p, double q);
};

GroundTruth uniform_ground_truth(int n, uint64_t seed);

EdgeObservations sample_edge_observations(const Graph& g, const GroundTruth& truth,
                                          double p, uint64_t seed);
VertexObservations sample_vertex_observations(const GroundTruth& truth, double q,
                                              uint64_t seed);

long hamming_error(const Labels& yhat, const Labels& y);

// Number of components whose estimate matches the ground-truth restriction
// under neither sign. component_vertices[i] lists the vertices the i-th
// estimate covers, in the same order as estimates[i].
int signed_component_failures(const std::vector<std::vector<int>>& component_vertices,
                              const std::vector<Labels>& estimates, const Labels& y);

}  // namespace labelrec
