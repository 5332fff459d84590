#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Undirected graph type plus the deterministic generators for every graph
// family used by the decoders: paths, grid lattices, hypergrids, ring
// lattices, Newman-Watts small worlds, triangular and hexagonal meshes,
// and the 3-regular chain-of-cliques lower-bound construction.
//
// All generators are pure functions of their parameters (and seed); vertex
// indexing is row-major / lexicographic in coordinates so decomposition
// constructors can address blocks arithmetically.

namespace labelrec {

using Edge = std::pair<int, int>;  // normalized u < v

struct Graph {
  int n = 0;
  std::vector<Edge> edges;                 // sorted lexicographically
  std::vector<std::vector<int>> adj;       // ascending neighbor lists
  std::vector<std::vector<int>> adj_edge;  // parallel: edge index per neighbor

  int edge_count() const { return static_cast<int>(edges.size()); }
  int degree(int v) const { return static_cast<int>(adj[v].size()); }
  // Index into edges for (u,v), or -1 if absent.
  int edge_index(int u, int v) const;
};

// Validates (no self-loops, no duplicates, indices in range), normalizes
// edge order, and builds adjacency. Throws std::invalid_argument.
Graph make_graph(int n, std::vector<Edge> edges);

Graph build_path(int n);
Graph build_grid(int height, int width);
Graph build_hypergrid(const std::vector<int>& dims);
Graph build_ring_lattice(int n, int k);
Graph build_newman_watts(int n, int k, double alpha, uint64_t seed);
Graph build_triangular(int side);
Graph build_hexagonal(int side);
Graph build_3regular_chain(int blocks, int d = 3);

// BFS tree from vertex 0, neighbors scanned in index order.
// Throws GraphDisconnected if the input is not connected.
Graph spanning_tree(const Graph& g);

struct GraphDisconnected : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

bool is_connected(const Graph& g);
bool is_tree(const Graph& g);
bool is_path(const Graph& g);
// Component id per vertex, ids dense in discovery order from vertex 0.
std::vector<int> connected_components(const Graph& g);

// A graph together with the probed edge subset E' the decoder may read.
struct ProbedGraph {
  Graph base;
  std::vector<int> probed;                    // sorted edge indices into base
  std::vector<char> probed_mask;              // per-edge membership
  std::vector<std::vector<int>> adj_probed;   // neighbors via probed edges
  std::vector<std::vector<int>> adj_probed_edge;

  int probed_count() const { return static_cast<int>(probed.size()); }
};

ProbedGraph make_probed(Graph base, std::vector<int> probed_edges);
ProbedGraph probe_all(Graph base);

// Edge-list text format: first line "n m", then "u v" per edge, 0-indexed.
void save_edge_list(const Graph& g, std::ostream& out);
Graph load_edge_list(std::istream& in);
void save_edge_list_file(const Graph& g, const std::string& path);
Graph load_edge_list_file(const std::string& path);

}  // namespace labelrec
