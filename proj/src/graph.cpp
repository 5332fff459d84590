#include "labelrec/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "labelrec/rng.hpp"

namespace labelrec {

int Graph::edge_index(int u, int v) const {
  if (u > v) std::swap(u, v);
  auto it = std::lower_bound(edges.begin(), edges.end(), Edge{u, v});
  if (it == edges.end() || *it != Edge{u, v}) return -1;
  return static_cast<int>(it - edges.begin());
}

Graph make_graph(int n, std::vector<Edge> edges) {
  if (n < 0) throw std::invalid_argument("graph: negative vertex count");
  for (auto& [u, v] : edges) {
    if (u == v) throw std::invalid_argument("graph: self-loop");
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw std::invalid_argument("graph: vertex index out of range");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw std::invalid_argument("graph: duplicate edge");

  Graph g;
  g.n = n;
  g.edges = std::move(edges);
  g.adj.assign(n, {});
  g.adj_edge.assign(n, {});
  for (int e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.edges[e];
    g.adj[u].push_back(v);
    g.adj_edge[u].push_back(e);
    g.adj[v].push_back(u);
    g.adj_edge[v].push_back(e);
  }
  for (int v = 0; v < n; ++v) {
    // Keep neighbor lists ascending; sort the parallel edge-index list with it.
    std::vector<int> order(g.adj[v].size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return g.adj[v][a] < g.adj[v][b]; });
    std::vector<int> na(order.size()), ne(order.size());
    for (size_t i = 0; i < order.size(); ++i) {
      na[i] = g.adj[v][order[i]];
      ne[i] = g.adj_edge[v][order[i]];
    }
    g.adj[v] = std::move(na);
    g.adj_edge[v] = std::move(ne);
  }
  return g;
}

Graph build_path(int n) {
  if (n < 1) throw std::invalid_argument("build_path: n >= 1 required");
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  return make_graph(n, std::move(edges));
}

Graph build_grid(int height, int width) {
  return build_hypergrid({height, width});
}

Graph build_hypergrid(const std::vector<int>& dims) {
  if (dims.empty()) throw std::invalid_argument("build_hypergrid: empty dims");
  long long total = 1;
  for (int d : dims) {
    if (d < 1) throw std::invalid_argument("build_hypergrid: extent >= 1 required");
    total *= d;
    if (total > (1LL << 30)) throw std::invalid_argument("build_hypergrid: too large");
  }
  int n = static_cast<int>(total);
  // Row-major: last axis varies fastest.
  std::vector<long long> stride(dims.size());
  long long s = 1;
  for (int a = static_cast<int>(dims.size()) - 1; a >= 0; --a) {
    stride[a] = s;
    s *= dims[a];
  }
  std::vector<Edge> edges;
  std::vector<int> coord(dims.size(), 0);
  for (int v = 0; v < n; ++v) {
    for (size_t a = 0; a < dims.size(); ++a) {
      if (coord[a] + 1 < dims[a])
        edges.push_back({v, v + static_cast<int>(stride[a])});
    }
    for (int a = static_cast<int>(dims.size()) - 1; a >= 0; --a) {
      if (++coord[a] < dims[a]) break;
      coord[a] = 0;
    }
  }
  return make_graph(n, std::move(edges));
}

Graph build_ring_lattice(int n, int k) {
  if (k < 1) throw std::invalid_argument("build_ring_lattice: k >= 1 required");
  // n = 2k would duplicate the antipodal edge; n = 2k+1 is the complete
  // graph, where the ring structure degenerates.
  if (n <= 2 * k + 1)
    throw std::invalid_argument("build_ring_lattice: n > 2k+1 required");
  std::vector<Edge> edges;
  edges.reserve(static_cast<size_t>(n) * k);
  for (int i = 0; i < n; ++i)
    for (int j = 1; j <= k; ++j) edges.push_back({i, (i + j) % n});
  return make_graph(n, std::move(edges));
}

Graph build_newman_watts(int n, int k, double alpha, uint64_t seed) {
  if (alpha < 0.0 || alpha >= 1.0)
    throw std::invalid_argument("build_newman_watts: 0 <= alpha < 1 required");
  Graph ring = build_ring_lattice(n, k);
  std::vector<Edge> edges = ring.edges;
  double prob = alpha / n;
  // One RNG key per ordered non-edge candidate: order-independent determinism.
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      int fwd = j - i, bwd = n - (j - i);
      if (fwd <= k || bwd <= k) continue;  // ring edge
      if (rng::bernoulli(prob, {seed, rng::kShortcut, static_cast<uint64_t>(i),
                                static_cast<uint64_t>(j)}))
        edges.push_back({i, j});
    }
  }
  return make_graph(n, std::move(edges));
}

// Parallelogram patch of the triangular lattice: vertex (r,c) -> r*side + c,
// neighbors (r,c+-1), (r+-1,c), and the "/" diagonals (r+1,c-1), (r-1,c+1).
Graph build_triangular(int side) {
  if (side < 2) throw std::invalid_argument("build_triangular: side >= 2 required");
  int n = side * side;
  std::vector<Edge> edges;
  auto id = [side](int r, int c) { return r * side + c; };
  for (int r = 0; r < side; ++r) {
    for (int c = 0; c < side; ++c) {
      if (c + 1 < side) edges.push_back({id(r, c), id(r, c + 1)});
      if (r + 1 < side) edges.push_back({id(r, c), id(r + 1, c)});
      if (r + 1 < side && c > 0) edges.push_back({id(r, c), id(r + 1, c - 1)});
    }
  }
  return make_graph(n, std::move(edges));
}

// Brick-wall patch of the hexagonal lattice: all horizontal edges, vertical
// edges (r,c)-(r+1,c) only where r+c is even. Interior degree 3.
Graph build_hexagonal(int side) {
  if (side < 2) throw std::invalid_argument("build_hexagonal: side >= 2 required");
  int n = side * side;
  std::vector<Edge> edges;
  auto id = [side](int r, int c) { return r * side + c; };
  for (int r = 0; r < side; ++r) {
    for (int c = 0; c < side; ++c) {
      if (c + 1 < side) edges.push_back({id(r, c), id(r, c + 1)});
      if (r + 1 < side && (r + c) % 2 == 0) edges.push_back({id(r, c), id(r + 1, c)});
    }
  }
  return make_graph(n, std::move(edges));
}

// Cyclic chain of K_{d+1}-minus-an-edge blocks. Block b occupies vertices
// [b(d+1), (b+1)(d+1)); the edge (u_b, v_b) = (base, base+1) is removed and
// v_b is chained to u_{b+1}. Result is d-regular with exactly two edges
// leaving each block.
Graph build_3regular_chain(int blocks, int d) {
  if (d < 3) throw std::invalid_argument("build_3regular_chain: d >= 3 required");
  if (blocks < 2)
    throw std::invalid_argument("build_3regular_chain: blocks >= 2 required");
  int per = d + 1;
  int n = per * blocks;
  std::vector<Edge> edges;
  for (int b = 0; b < blocks; ++b) {
    int base = b * per;
    for (int i = 0; i < per; ++i)
      for (int j = i + 1; j < per; ++j) {
        if (i == 0 && j == 1) continue;  // removed edge (u_b, v_b)
        edges.push_back({base + i, base + j});
      }
    int next = ((b + 1) % blocks) * per;
    edges.push_back({base + 1, next});  // chain v_b -> u_{b+1}
  }
  return make_graph(n, std::move(edges));
}

std::vector<int> connected_components(const Graph& g) {
  std::vector<int> comp(g.n, -1);
  int next = 0;
  for (int s = 0; s < g.n; ++s) {
    if (comp[s] != -1) continue;
    comp[s] = next;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : g.adj[u]) {
        if (comp[v] == -1) {
          comp[v] = next;
          q.push(v);
        }
      }
    }
    ++next;
  }
  return comp;
}

bool is_connected(const Graph& g) {
  if (g.n == 0) return true;
  auto comp = connected_components(g);
  return *std::max_element(comp.begin(), comp.end()) == 0;
}

bool is_tree(const Graph& g) {
  return g.edge_count() == g.n - 1 && is_connected(g);
}

bool is_path(const Graph& g) {
  if (!is_tree(g)) return false;
  for (int v = 0; v < g.n; ++v)
    if (g.degree(v) > 2) return false;
  return true;
}

Graph spanning_tree(const Graph& g) {
  if (g.n == 0) throw std::invalid_argument("spanning_tree: empty graph");
  std::vector<char> seen(g.n, 0);
  std::vector<Edge> tree_edges;
  std::queue<int> q;
  seen[0] = 1;
  q.push(0);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v : g.adj[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        tree_edges.push_back({u, v});
        q.push(v);
      }
    }
  }
  if (static_cast<int>(tree_edges.size()) != g.n - 1)
    throw GraphDisconnected("spanning_tree: graph is disconnected");
  return make_graph(g.n, std::move(tree_edges));
}

ProbedGraph make_probed(Graph base, std::vector<int> probed_edges) {
  std::sort(probed_edges.begin(), probed_edges.end());
  if (std::adjacent_find(probed_edges.begin(), probed_edges.end()) !=
      probed_edges.end())
    throw std::invalid_argument("probed: duplicate edge index");
  ProbedGraph p;
  p.probed_mask.assign(base.edge_count(), 0);
  for (int e : probed_edges) {
    if (e < 0 || e >= base.edge_count())
      throw std::invalid_argument("probed: edge index out of range");
    p.probed_mask[e] = 1;
  }
  p.adj_probed.assign(base.n, {});
  p.adj_probed_edge.assign(base.n, {});
  for (int e : probed_edges) {
    auto [u, v] = base.edges[e];
    p.adj_probed[u].push_back(v);
    p.adj_probed_edge[u].push_back(e);
    p.adj_probed[v].push_back(u);
    p.adj_probed_edge[v].push_back(e);
  }
  p.base = std::move(base);
  p.probed = std::move(probed_edges);
  return p;
}

ProbedGraph probe_all(Graph base) {
  std::vector<int> all(base.edge_count());
  std::iota(all.begin(), all.end(), 0);
  return make_probed(std::move(base), std::move(all));
}

void save_edge_list(const Graph& g, std::ostream& out) {
  out << g.n << ' ' << g.edge_count() << '\n';
  for (const auto& [u, v] : g.edges) out << u << ' ' << v << '\n';
}

Graph load_edge_list(std::istream& in) {
  int n = -1, m = -1;
  if (!(in >> n >> m)) throw std::invalid_argument("edge list: bad header");
  if (n < 0 || m < 0) throw std::invalid_argument("edge list: bad header");
  std::vector<Edge> edges(m);
  for (auto& [u, v] : edges)
    if (!(in >> u >> v)) throw std::invalid_argument("edge list: truncated");
  return make_graph(n, std::move(edges));
}

void save_edge_list_file(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  save_edge_list(g, out);
}

Graph load_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return load_edge_list(in);
}

}  // namespace labelrec
