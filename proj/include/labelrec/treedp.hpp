#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "labelrec/graph.hpp"
#include "labelrec/measure.hpp"

// Budgeted tree decoding: minimize summed per-vertex label costs over
// +-1 labelings of a tree subject to at most K violated tree edges, where
// edge (u,v) with agreement sign S is violated when s_u != s_v * S.
//
// tree_decode runs the exact dynamic program (child tables merged with a
// budget-indexed prefix scan; budgets clamped by subtree sizes, so total
// work is O(n*K)). path_decode is the single-successor specialization.
// brute_force_tree_decode is the exhaustive oracle used by tests.

namespace labelrec {

struct TreeDecodeProblem {
  Graph tree;
  std::vector<std::array<int, 2>> cost;  // cost[v][0]: label +1, cost[v][1]: label -1
  std::vector<int8_t> agree;             // per tree edge, in {-1,+1}
  long long budget = 0;                  // K >= 0
};

struct TreeDecodeResult {
  Labels labels;
  long long objective = 0;
  int violated = 0;  // violated edges under `labels`, always <= budget
};

// Exact optimum. Ties prefer label +1 at each decision point, scanned in
// fixed (BFS from vertex 0) order.
TreeDecodeResult tree_decode(const TreeDecodeProblem& prob);

// Same contract, but requires the tree to be a path; O(n*K) time via a
// linear scan along the path.
TreeDecodeResult path_decode(const TreeDecodeProblem& prob);

// Exhaustive minimum over all 2^n labelings within budget; n <= 20.
TreeDecodeResult brute_force_tree_decode(const TreeDecodeProblem& prob);

// Tree inference with side information: minimize disagreement with Z
// subject to at most ceil(2*p*n + 2*ln(2/delta)) violated edges under
// agreement signs X. Returns the recovered labeling.
Labels tree_inference(const Graph& tree, const EdgeObservations& x,
                      const VertexObservations& z, double p, double delta);

// The budget constant used by tree_inference.
long long tree_inference_budget(int n, double p, double delta);

}  // namespace labelrec
