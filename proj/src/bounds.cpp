#include "labelrec/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "labelrec/treedp.hpp"

namespace labelrec {

Labels spanning_tree_decode(const Graph& g, const EdgeObservations& x,
                            const VertexObservations& z, double p, double delta) {
  auto comp = connected_components(g);
  int ncomp = *std::max_element(comp.begin(), comp.end()) + 1;
  Labels out(g.n, 0);
  for (int c = 0; c < ncomp; ++c) {
    std::vector<int> verts;
    for (int v = 0; v < g.n; ++v)
      if (comp[v] == c) verts.push_back(v);
    std::vector<int> local(g.n, -1);
    for (size_t i = 0; i < verts.size(); ++i) local[verts[i]] = static_cast<int>(i);
    std::vector<Edge> sub_edges;
    for (const auto& [u, v] : g.edges)
      if (comp[u] == c && comp[v] == c) sub_edges.push_back({local[u], local[v]});
    Graph sub = make_graph(static_cast<int>(verts.size()), std::move(sub_edges));
    Graph tree = spanning_tree(sub);
    EdgeObservations tx;
    tx.x.resize(tree.edge_count());
    for (int e = 0; e < tree.edge_count(); ++e) {
      auto [lu, lv] = tree.edges[e];
      tx.x[e] = x.x[g.edge_index(verts[lu], verts[lv])];
    }
    VertexObservations tz;
    tz.z.resize(verts.size());
    for (size_t i = 0; i < verts.size(); ++i) tz.z[i] = z.z[verts[i]];
    Labels sub_labels = tree_inference(tree, tx, tz, p, delta);
    for (size_t i = 0; i < verts.size(); ++i) out[verts[i]] = sub_labels[i];
  }
  return out;
}

Labels majority_decode(const Graph& g, const EdgeObservations& x,
                       const VertexObservations& z) {
  Labels out(g.n, 0);
  for (int v = 0; v < g.n; ++v) {
    int votes = 0;
    for (size_t j = 0; j < g.adj[v].size(); ++j)
      votes += z.z[g.adj[v][j]] * x.x[g.adj_edge[v][j]];
    out[v] = votes > 0 ? 1 : votes < 0 ? -1 : z.z[v];
  }
  return out;
}

double genie_map_vertex_error(int d, double p, double q) {
  if (d < 0) throw std::invalid_argument("genie_map_vertex_error: d >= 0 required");
  if (p < 0 || p > 0.5 || q < 0 || q > 0.5)
    throw std::invalid_argument("genie_map_vertex_error: p, q in [0, 1/2] required");
  // binomial pmf over number of flipped incident edges
  std::vector<double> pmf(d + 1);
  for (int k = 0; k <= d; ++k) {
    double log_choose = std::lgamma(d + 1) - std::lgamma(k + 1) - std::lgamma(d - k + 1);
    double log_term = log_choose;
    if (k > 0) log_term += k * std::log(p);
    if (d - k > 0) log_term += (d - k) * std::log(1.0 - p);
    if ((k > 0 && p == 0.0) || (d - k > 0 && p == 1.0))
      pmf[k] = 0.0;
    else
      pmf[k] = std::exp(log_term);
  }
  double err = 0.0;
  if (d % 2 == 1) {
    for (int k = (d + 1) / 2; k <= d; ++k) err += pmf[k];
  } else {
    for (int k = d / 2 + 1; k <= d; ++k) err += pmf[k];
    err += q * pmf[d / 2];
  }
  return err;
}

Labels genie_map_decode(const Graph& g, const EdgeObservations& x,
                        const VertexObservations& z, const GroundTruth& truth) {
  Labels out(g.n, 0);
  for (int v = 0; v < g.n; ++v) {
    int votes = 0;
    for (size_t j = 0; j < g.adj[v].size(); ++j)
      votes += truth.y[g.adj[v][j]] * x.x[g.adj_edge[v][j]];
    out[v] = votes > 0 ? 1 : votes < 0 ? -1 : z.z[v];
  }
  return out;
}

BoundReport lb_degree_profile(const Graph& g, double p) {
  BoundReport rep;
  rep.formula = "sum_v p^ceil(deg(v)/2)";
  rep.inputs = {{"n", static_cast<double>(g.n)}, {"p", p}};
  double total = 0.0;
  for (int v = 0; v < g.n; ++v)
    total += std::pow(p, std::ceil(g.degree(v) / 2.0));
  rep.value = total;
  return rep;
}

BoundReport lb_system(const Graph& g, const std::vector<std::vector<int>>& subsets,
                      double p) {
  std::vector<char> used(g.n, 0);
  for (const auto& w : subsets)
    for (int v : w) {
      if (v < 0 || v >= g.n) throw std::invalid_argument("lb_system: vertex out of range");
      if (used[v]) throw std::invalid_argument("lb_system: subsets overlap");
      used[v] = 1;
    }
  BoundReport rep;
  rep.formula = "sum_W p^ceil(|cut(W)|/2)";
  rep.inputs = {{"n", static_cast<double>(g.n)},
                {"p", p},
                {"subsets", static_cast<double>(subsets.size())}};
  double total = 0.0;
  for (const auto& w : subsets) {
    std::vector<char> in_w(g.n, 0);
    for (int v : w) in_w[v] = 1;
    int cut = 0;
    for (const auto& [u, v] : g.edges) cut += in_w[u] != in_w[v];
    total += std::pow(p, std::ceil(cut / 2.0));
  }
  rep.value = total;
  return rep;
}

}  // namespace labelrec
