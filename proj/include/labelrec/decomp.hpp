#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "labelrec/graph.hpp"

// Tree decompositions of probed graphs: the data type, validity checking
// (vertex inclusion, edge inclusion, coherence, non-redundancy, shared
// vertices on tree edges), admissibility checking, quantitative properties
// (widths, edge multiplicities, minimum cuts), and per-family constructors.
//
// Two min-cut readings are computed for extended components, because the
// source material uses both:
//   mincut_star          cuts counted among probed edges induced on the
//                        stored extension W*; this is the quantity the
//                        failure bounds and stitch budgets use.
//   mincut_star_ambient  S ranges over W ∪ N_G(W) (full-graph neighborhood)
//                        and |cut(S)| counts every base-graph edge leaving
//                        S, including edges to vertices outside the set
//                        (the whole-graph cut-set); lattice families whose
//                        construction probes out edges keep their nominal
//                        cut value only under this reading.
// Both are exact; which one a family's documented constant refers to is
// noted at its constructor.

namespace labelrec {

struct TreeDecomposition {
  std::vector<std::vector<int>> components;    // W, sorted vertex ids
  std::vector<std::pair<int, int>> tree_edges; // F, over component indices
  std::vector<std::vector<int>> extended;      // W*, sorted, W subset of W*
  std::vector<int> probed;                     // E' edge indices, sorted

  int count() const { return static_cast<int>(components.size()); }
};

enum class ComponentKind { kInterior, kBoundary, kOther };

// A constructed instance: the probed graph, the decomposition, and a
// structural classification of each component used by the catalogue tests.
struct FamilyDecomposition {
  ProbedGraph graph;
  TreeDecomposition td;
  std::vector<ComponentKind> kinds;
};

std::vector<int> extend_identity(const std::vector<int>& w);
// W plus all G'-neighbors of W.
std::vector<int> extend_neighborhood(const std::vector<int>& w, const ProbedGraph& gp);

// Empty result means the decomposition is valid; otherwise one line per
// violated invariant.
std::vector<std::string> validate(const TreeDecomposition& td, const ProbedGraph& gp);

// Sentinel cut value for components that admit no separating cut
// (single-vertex components); p^ceil(kNoCut/2) underflows to 0, matching
// the fact that a singleton estimate cannot fail up to sign.
constexpr int kNoCut = 1 << 20;

struct ComponentProperties {
  int size = 0;
  int size_star = 0;
  int mincut = kNoCut;
  int mincut_star = kNoCut;
  int mincut_star_ambient = kNoCut;
  int probed_edges_star = 0;  // |E'(W*)|
  // cut_profile[c] counts the distinct (unordered) valid cuts of size c in
  // E'(W*); filled only when |W*| is within the enumeration gate.
  std::vector<long long> cut_profile;
};

struct DecompositionProperties {
  int deg_tree = 0;      // max tree degree
  int wid = 0;           // max |W| - 1
  int wid_star = 0;      // max |W*| - 1
  int deg_edge = 0;      // max over probed e of #{W : e in E'(W)}
  int deg_edge_star = 0; // max over probed e of #{W : e in E'(W*)}
  int max_probed_edges_star = 0;
  std::vector<ComponentProperties> components;

  // Sum over components of min(1, 2^{|W*|} p^{ceil(mincut*/2)}): the
  // coarse bound that charges every subset of W* as a potential cut.
  double coarse_failure_bound(double p) const;
  // Sum over components of the exact union-bound failure weight
  // min(1, sum_cuts p^{ceil(|cut|/2)}); falls back to the coarse term
  // where no cut profile is available.
  double failure_weight(double p) const;
};

// Exact property computation. Cut values use subset enumeration up to the
// gate and pairwise max-flow above it (both exact; cross-checked in tests).
// Components larger than `hard_limit` raise.
DecompositionProperties compute_properties(const TreeDecomposition& td,
                                           const ProbedGraph& gp,
                                           int profile_gate = 22,
                                           int hard_limit = 128);

struct AdmissibilityThresholds {
  int deg_tree = 32;
  int deg_edge_star = 32;
  int probed_edges_star = 32;
  int wid_star = 32;
};

struct AdmissibilityReport {
  bool ok = false;
  std::vector<std::string> issues;
  // measured values
  int deg_tree = 0;
  int deg_edge_star = 0;
  int max_probed_edges_star = 0;
  int wid_star = 0;
};

AdmissibilityReport check_admissible(const TreeDecomposition& td, const ProbedGraph& gp,
                                     const AdmissibilityThresholds& thresholds = {});

// Text format: per component a "C <ids...>" line followed by "X <ids...>",
// then "T i j" per tree edge and a single "P <edge ids...>" line.
void save_decomposition(const TreeDecomposition& td, std::ostream& out);
TreeDecomposition load_decomposition(std::istream& in);
void save_decomposition_file(const TreeDecomposition& td, const std::string& path);
TreeDecomposition load_decomposition_file(const std::string& path);

// ---- Family constructors -------------------------------------------------
// Every constructor returns a decomposition that passes validate() and
// check_admissible() at its documented thresholds; kinds classify which
// components carry the family's nominal interior cut value.

// Trivial path decomposition: edges as components, identity extension.
FamilyDecomposition decomp_path(int n);

// Height-c grid covered by overlapping c x 2 column-pair blocks chained as
// a path; E' = E, neighborhood extension. Interior blocks have
// mincut_star = 3 for c = 3.
FamilyDecomposition decomp_constant_height_grid(int c, int width);

// side x side grid probed by the zig-zag cut (every third inter-row band
// removed except three connector columns at alternating ends), unrolled
// into a snake of overlapping 3x3 blocks with 3x3 straddle blocks across
// each connector. Interior blocks: mincut_star = 3; band-end blocks:
// mincut_star = 2. Side not divisible by 3 puts the remainder in the last
// band (height 4 or 2), classified kOther.
FamilyDecomposition decomp_square_grid_zigzag(int side);

// Ring lattice R_{n,k} covered by radius-k balls with centers spaced k+1
// (the final ball absorbs the remainder); E' drops the k(k+1)/2 edges
// wrapping across the seam so the cover chains as a path. Interior
// components: mincut_star = 2k.
FamilyDecomposition decomp_ring_lattice(int n, int k);

// Newman-Watts graph decoded by discarding shortcut edges and reusing the
// ring decomposition.
FamilyDecomposition decomp_newman_watts(const Graph& g, int n, int k);

// Three-dimensional lattice probed into a snake of tubes with overlapping
// 3x3x3 blocks and straddle blocks across connectors. Interior blocks have
// mincut_star_ambient = 6 (the probing removes two of a block corner's six
// incident edges, so the probed-cut reading gives 4; see module comment).
FamilyDecomposition decomp_hypergrid(const std::vector<int>& dims);

// c x c x length tube covered by overlapping 2 x c x c slabs, identity
// extension, E' = E. Slab mincut >= 3 for c >= 3.
FamilyDecomposition decomp_hypertube(int c, int length);

// Triangular / hexagonal lattice patches, banded and probed like the
// square zig-zag. Interior blocks: mincut_star_ambient = 6 (triangular)
// and 3 (hexagonal).
FamilyDecomposition decomp_triangular(int side);
FamilyDecomposition decomp_hexagonal(int side);

}  // namespace labelrec
