#include "labelrec/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace labelrec {

namespace {

bool sorted_unique(const std::vector<int>& v) {
  for (size_t i = 1; i < v.size(); ++i)
    if (v[i] <= v[i - 1]) return false;
  return true;
}

bool subset_of(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool intersects(const std::vector<int>& a, const std::vector<int>& b) {
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return true;
    a[i] < b[j] ? ++i : ++j;
  }
  return false;
}

// Local induced subgraph: vertices of `verts`, edges drawn from the given
// adjacency restricted to `verts`, as local-index pairs.
std::vector<std::pair<int, int>> induced_edges(const std::vector<int>& verts,
                                               const Graph& base,
                                               const std::vector<char>& edge_mask) {
  std::vector<std::pair<int, int>> out;
  std::vector<int> local(base.n, -1);
  for (size_t i = 0; i < verts.size(); ++i) local[verts[i]] = static_cast<int>(i);
  for (size_t i = 0; i < verts.size(); ++i) {
    int u = verts[i];
    for (size_t j = 0; j < base.adj[u].size(); ++j) {
      int v = base.adj[u][j];
      int e = base.adj_edge[u][j];
      if (v <= u) continue;
      if (!edge_mask.empty() && !edge_mask[e]) continue;
      if (local[v] >= 0) out.push_back({static_cast<int>(i), local[v]});
    }
  }
  return out;
}

// Minimum cut among subsets S with S ∩ core ≠ ∅ and core \ S ≠ ∅, counting
// internal crossing edges plus (when ext_deg is given) the edges from S to
// vertices outside the set; subset enumeration. core_mask is over local
// indices. Fills profile (indexed by cut size) when profile != nullptr.
int mincut_enumerate(int m, uint32_t core_mask,
                     const std::vector<std::pair<int, int>>& edges,
                     const std::vector<int>* ext_deg,
                     std::vector<long long>* profile) {
  int best = kNoCut;
  long long profile_cap = static_cast<long long>(edges.size());
  if (ext_deg)
    for (int d : *ext_deg) profile_cap += d;
  if (profile) profile->assign(profile_cap + 1, 0);
  // Without external charging the cut is symmetric in S and its
  // complement; skipping masks containing local vertex 0 counts each
  // unordered cut exactly once (the profile is a cut census, not a
  // subset census).
  uint32_t skip_bit = ext_deg ? 0 : 1;
  for (uint32_t mask = 1; mask + 1 < (1u << m); ++mask) {
    if (mask & skip_bit) continue;
    uint32_t hit = mask & core_mask;
    if (hit == 0 || hit == core_mask) continue;
    int cut = 0;
    for (const auto& [a, b] : edges) cut += ((mask >> a) ^ (mask >> b)) & 1;
    if (ext_deg) {
      for (uint32_t rest = mask; rest;) {
        int v = __builtin_ctz(rest);
        cut += (*ext_deg)[v];
        rest &= rest - 1;
      }
    }
    if (cut < best) best = cut;
    if (profile) ++(*profile)[cut];
  }
  return best;
}

// Max-flow (Edmonds-Karp) between local vertices s and t; arcs carry the
// given capacities.
int capped_max_flow(int m, const std::vector<std::pair<int, int>>& edges,
                    std::vector<int> cap2, int s, int t) {
  int ne = static_cast<int>(edges.size());
  std::vector<std::vector<int>> inc(m);
  for (int e = 0; e < ne; ++e) {
    inc[edges[e].first].push_back(2 * e);
    inc[edges[e].second].push_back(2 * e + 1);
  }
  auto head = [&](int arc) { return arc & 1 ? edges[arc >> 1].first : edges[arc >> 1].second; };
  int flow = 0;
  std::vector<int> pred_arc(m);
  while (flow < kNoCut) {
    std::fill(pred_arc.begin(), pred_arc.end(), -1);
    std::queue<int> q;
    q.push(s);
    pred_arc[s] = -2;
    while (!q.empty() && pred_arc[t] == -1) {
      int u = q.front();
      q.pop();
      for (int arc : inc[u]) {
        if (cap2[arc] == 0) continue;
        int v = head(arc);
        if (pred_arc[v] != -1) continue;
        pred_arc[v] = arc;
        q.push(v);
      }
    }
    if (pred_arc[t] == -1) break;
    int aug = kNoCut;
    for (int v = t; v != s;) {
      int arc = pred_arc[v];
      aug = std::min(aug, cap2[arc]);
      v = arc & 1 ? edges[arc >> 1].second : edges[arc >> 1].first;
    }
    for (int v = t; v != s;) {
      int arc = pred_arc[v];
      cap2[arc] -= aug;
      cap2[arc ^ 1] += aug;
      v = arc & 1 ? edges[arc >> 1].second : edges[arc >> 1].first;
    }
    flow += aug;
  }
  return flow;
}

// Minimum over separations of core pairs via max-flow: exact value of the
// quantity mincut_enumerate computes, usable for any component size. When
// ext_deg is given, a phantom outside vertex joins the sink side and edges
// to it are charged against S.
int mincut_pairwise_flow(int m, const std::vector<int>& core_local,
                         std::vector<std::pair<int, int>> edges,
                         const std::vector<int>* ext_deg) {
  int outside = m;
  std::vector<int> cap2(2 * edges.size(), 1);
  if (ext_deg) {
    for (int v = 0; v < m; ++v) {
      if ((*ext_deg)[v] > 0) {
        edges.push_back({v, outside});
        cap2.push_back((*ext_deg)[v]);  // v -> outside, charged when v in S
        cap2.push_back(kNoCut);         // outside -> v, never the bottleneck
      }
    }
  }
  int best = kNoCut;
  int nodes = ext_deg ? m + 1 : m;
  for (size_t i = 0; i < core_local.size(); ++i) {
    for (size_t j = 0; j < core_local.size(); ++j) {
      if (i == j || (!ext_deg && j < i)) continue;
      int s = core_local[i], t = core_local[j];
      std::vector<int> cap = cap2;
      if (ext_deg) {
        // tie t to the outside node so both sit on the sink side
        edges.push_back({t, outside});
        cap.push_back(kNoCut);
        cap.push_back(kNoCut);
        best = std::min(best, capped_max_flow(nodes, edges, std::move(cap), s, outside));
        edges.pop_back();
      } else {
        best = std::min(best, capped_max_flow(nodes, edges, std::move(cap), s, t));
      }
    }
  }
  return best;
}

constexpr int kEnumGate = 16;

// Dispatching cut solver. `verts` lists the vertex set, `core` the subset
// cuts must separate; edge_mask empty means all base edges. When
// count_external is set, edges from S to vertices outside `verts` count
// toward the cut as well (the whole-graph cut-set reading).
int solve_mincut(const std::vector<int>& verts, const std::vector<int>& core,
                 const Graph& base, const std::vector<char>& edge_mask,
                 bool count_external, int profile_gate,
                 std::vector<long long>* profile) {
  if (core.size() < 2) return kNoCut;
  auto edges = induced_edges(verts, base, edge_mask);
  int m = static_cast<int>(verts.size());
  std::vector<int> core_local;
  std::vector<int> ext_deg;
  {
    std::vector<int> local(base.n, -1);
    for (size_t i = 0; i < verts.size(); ++i) local[verts[i]] = static_cast<int>(i);
    for (int v : core) core_local.push_back(local[v]);
    if (count_external) {
      ext_deg.assign(m, 0);
      for (int i = 0; i < m; ++i) {
        int u = verts[i];
        for (size_t j = 0; j < base.adj[u].size(); ++j) {
          int e = base.adj_edge[u][j];
          if (!edge_mask.empty() && !edge_mask[e]) continue;
          if (local[base.adj[u][j]] < 0) ++ext_deg[i];
        }
      }
    }
  }
  const std::vector<int>* ext = count_external ? &ext_deg : nullptr;
  bool want_profile = profile != nullptr && m <= profile_gate;
  if (m <= kEnumGate || want_profile) {
    uint32_t core_mask = 0;
    for (int c : core_local) core_mask |= 1u << c;
    return mincut_enumerate(m, core_mask, edges, ext, want_profile ? profile : nullptr);
  }
  return mincut_pairwise_flow(m, core_local, std::move(edges), ext);
}

}  // namespace

std::vector<int> extend_identity(const std::vector<int>& w) { return w; }

std::vector<int> extend_neighborhood(const std::vector<int>& w, const ProbedGraph& gp) {
  std::vector<int> out = w;
  for (int v : w)
    for (int u : gp.adj_probed[v]) out.push_back(u);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::string> validate(const TreeDecomposition& td, const ProbedGraph& gp) {
  std::vector<std::string> bad;
  const Graph& base = gp.base;
  const int nc = td.count();
  auto complain = [&](const std::string& s) { bad.push_back(s); };

  if (td.extended.size() != td.components.size())
    complain("extension list size differs from component list size");
  for (int i = 0; i < nc; ++i) {
    const auto& w = td.components[i];
    if (w.empty()) complain("component " + std::to_string(i) + " is empty");
    if (!sorted_unique(w))
      complain("component " + std::to_string(i) + " not sorted/unique");
    for (int v : w)
      if (v < 0 || v >= base.n) {
        complain("component " + std::to_string(i) + " has out-of-range vertex");
        break;
      }
    if (i < static_cast<int>(td.extended.size())) {
      const auto& ws = td.extended[i];
      if (!sorted_unique(ws))
        complain("extension " + std::to_string(i) + " not sorted/unique");
      else if (!subset_of(w, ws))
        complain("component " + std::to_string(i) + " not contained in its extension");
    }
  }
  if (!bad.empty()) return bad;  // structural problems make later checks noisy

  // probed set matches the graph it is checked against
  if (td.probed != gp.probed) complain("probed edge set differs from graph's probed set");

  // (W, F) is a tree
  if (static_cast<int>(td.tree_edges.size()) != nc - 1)
    complain("tree edge count is not |W| - 1");
  {
    std::vector<std::vector<int>> tadj(nc);
    bool edges_ok = true;
    for (const auto& [a, b] : td.tree_edges) {
      if (a < 0 || b < 0 || a >= nc || b >= nc || a == b) {
        complain("tree edge with bad endpoints");
        edges_ok = false;
        break;
      }
      tadj[a].push_back(b);
      tadj[b].push_back(a);
    }
    if (edges_ok && nc > 0) {
      std::vector<char> seen(nc, 0);
      std::queue<int> q;
      q.push(0);
      seen[0] = 1;
      int reached = 1;
      while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v : tadj[u])
          if (!seen[v]) {
            seen[v] = 1;
            ++reached;
            q.push(v);
          }
      }
      if (reached != nc) complain("decomposition tree is disconnected");
    }
  }

  // vertex inclusion
  {
    std::vector<char> covered(base.n, 0);
    for (const auto& w : td.components)
      for (int v : w) covered[v] = 1;
    for (int v = 0; v < base.n; ++v)
      if (!covered[v]) {
        complain("vertex " + std::to_string(v) + " not in any component");
        break;
      }
  }

  // membership index for edge inclusion and coherence
  std::vector<std::vector<int>> comps_of(base.n);
  for (int i = 0; i < nc; ++i)
    for (int v : td.components[i]) comps_of[v].push_back(i);

  // edge inclusion over probed edges
  for (int e : gp.probed) {
    auto [u, v] = base.edges[e];
    if (!intersects(comps_of[u], comps_of[v])) {
      complain("probed edge (" + std::to_string(u) + "," + std::to_string(v) +
               ") not inside any component");
      break;
    }
  }

  // coherence: the components containing each vertex induce a connected
  // subtree of (W, F)
  {
    std::vector<std::vector<int>> tadj(nc);
    for (const auto& [a, b] : td.tree_edges) {
      tadj[a].push_back(b);
      tadj[b].push_back(a);
    }
    std::vector<int> mark(nc, -1);
    for (int v = 0; v < base.n; ++v) {
      const auto& cs = comps_of[v];
      if (cs.size() <= 1) continue;
      for (int c : cs) mark[c] = v;
      std::queue<int> q;
      q.push(cs[0]);
      int seen_count = 1;
      mark[cs[0]] = ~v;  // visited
      while (!q.empty()) {
        int a = q.front();
        q.pop();
        for (int b : tadj[a])
          if (mark[b] == v) {
            mark[b] = ~v;
            ++seen_count;
            q.push(b);
          }
      }
      if (seen_count != static_cast<int>(cs.size())) {
        complain("vertex " + std::to_string(v) + " has a disconnected component set");
        break;
      }
    }
  }

  // non-redundancy and shared vertices on tree edges
  for (const auto& [a, b] : td.tree_edges) {
    if (subset_of(td.components[a], td.components[b]) ||
        subset_of(td.components[b], td.components[a]))
      complain("tree edge (" + std::to_string(a) + "," + std::to_string(b) +
               ") joins nested components");
    if (!intersects(td.components[a], td.components[b]))
      complain("tree edge (" + std::to_string(a) + "," + std::to_string(b) +
               ") has empty intersection");
  }

  return bad;
}

double DecompositionProperties::coarse_failure_bound(double p) const {
  double total = 0.0;
  for (const auto& c : components) {
    double exponent = std::ceil(c.mincut_star / 2.0);
    double term = std::ldexp(1.0, std::min(c.size_star, 900)) * std::pow(p, exponent);
    total += std::min(1.0, term);
  }
  return total;
}

double DecompositionProperties::failure_weight(double p) const {
  double total = 0.0;
  for (const auto& c : components) {
    double w;
    if (!c.cut_profile.empty()) {
      w = 0.0;
      for (size_t s = 0; s < c.cut_profile.size(); ++s) {
        if (c.cut_profile[s] == 0) continue;
        w += static_cast<double>(c.cut_profile[s]) * std::pow(p, std::ceil(s / 2.0));
      }
    } else {
      double exponent = std::ceil(c.mincut_star / 2.0);
      w = std::ldexp(1.0, std::min(c.size_star, 900)) * std::pow(p, exponent);
    }
    total += std::min(1.0, w);
  }
  return total;
}

DecompositionProperties compute_properties(const TreeDecomposition& td,
                                           const ProbedGraph& gp, int profile_gate,
                                           int hard_limit) {
  auto bad = validate(td, gp);
  if (!bad.empty())
    throw std::invalid_argument("compute_properties: invalid decomposition: " + bad[0]);
  const Graph& base = gp.base;
  DecompositionProperties props;
  const int nc = td.count();
  props.components.resize(nc);

  std::vector<std::vector<int>> tdeg(nc);
  for (const auto& [a, b] : td.tree_edges) {
    tdeg[a].push_back(b);
    tdeg[b].push_back(a);
  }
  for (int i = 0; i < nc; ++i)
    props.deg_tree = std::max(props.deg_tree, static_cast<int>(tdeg[i].size()));

  // edge multiplicities over probed edges
  {
    std::vector<int> count_w(base.edge_count(), 0), count_ws(base.edge_count(), 0);
    std::vector<char> in_set(base.n, 0);
    auto tally = [&](const std::vector<int>& verts, std::vector<int>& counter) {
      for (int v : verts) in_set[v] = 1;
      for (int v : verts)
        for (size_t j = 0; j < gp.adj_probed[v].size(); ++j) {
          int u = gp.adj_probed[v][j];
          if (u > v && in_set[u]) ++counter[gp.adj_probed_edge[v][j]];
        }
      for (int v : verts) in_set[v] = 0;
    };
    for (int i = 0; i < nc; ++i) {
      tally(td.components[i], count_w);
      tally(td.extended[i], count_ws);
    }
    for (int e : gp.probed) {
      props.deg_edge = std::max(props.deg_edge, count_w[e]);
      props.deg_edge_star = std::max(props.deg_edge_star, count_ws[e]);
    }
  }

  for (int i = 0; i < nc; ++i) {
    const auto& w = td.components[i];
    const auto& ws = td.extended[i];
    ComponentProperties& cp = props.components[i];
    cp.size = static_cast<int>(w.size());
    cp.size_star = static_cast<int>(ws.size());
    props.wid = std::max(props.wid, cp.size - 1);
    props.wid_star = std::max(props.wid_star, cp.size_star - 1);
    if (cp.size_star > hard_limit)
      throw std::invalid_argument("compute_properties: component too large");

    cp.probed_edges_star =
        static_cast<int>(induced_edges(ws, base, gp.probed_mask).size());
    props.max_probed_edges_star =
        std::max(props.max_probed_edges_star, cp.probed_edges_star);

    cp.mincut = solve_mincut(w, w, base, gp.probed_mask, false, 0, nullptr);
    cp.mincut_star = solve_mincut(ws, w, base, gp.probed_mask, false, profile_gate,
                                  &cp.cut_profile);
    if (cp.size_star > profile_gate) cp.cut_profile.clear();

    // ambient reading: full-graph neighborhood of W, cut-sets with respect
    // to the whole edge set
    std::vector<int> ambient = w;
    for (int v : w)
      for (int u : base.adj[v]) ambient.push_back(u);
    std::sort(ambient.begin(), ambient.end());
    ambient.erase(std::unique(ambient.begin(), ambient.end()), ambient.end());
    if (static_cast<int>(ambient.size()) > hard_limit)
      throw std::invalid_argument("compute_properties: ambient set too large");
    cp.mincut_star_ambient = solve_mincut(ambient, w, base, {}, true, 0, nullptr);
  }
  return props;
}

AdmissibilityReport check_admissible(const TreeDecomposition& td, const ProbedGraph& gp,
                                     const AdmissibilityThresholds& thresholds) {
  AdmissibilityReport rep;
  auto bad = validate(td, gp);
  if (!bad.empty()) {
    rep.ok = false;
    rep.issues = std::move(bad);
    return rep;
  }
  const Graph& base = gp.base;
  const int nc = td.count();

  std::vector<int> tdeg(nc, 0);
  for (const auto& [a, b] : td.tree_edges) {
    ++tdeg[a];
    ++tdeg[b];
  }
  for (int d : tdeg) rep.deg_tree = std::max(rep.deg_tree, d);

  {
    std::vector<int> count_ws(base.edge_count(), 0);
    std::vector<char> in_set(base.n, 0);
    for (int i = 0; i < nc; ++i) {
      const auto& ws = td.extended[i];
      for (int v : ws) in_set[v] = 1;
      int edge_count = 0;
      for (int v : ws)
        for (size_t j = 0; j < gp.adj_probed[v].size(); ++j) {
          int u = gp.adj_probed[v][j];
          if (u > v && in_set[u]) {
            ++count_ws[gp.adj_probed_edge[v][j]];
            ++edge_count;
          }
        }
      rep.max_probed_edges_star = std::max(rep.max_probed_edges_star, edge_count);
      rep.wid_star = std::max(rep.wid_star, static_cast<int>(ws.size()) - 1);

      // connectivity of G'(W*)
      std::vector<int> local(base.n, -1);
      for (size_t x = 0; x < ws.size(); ++x) local[ws[x]] = static_cast<int>(x);
      std::vector<char> seen(ws.size(), 0);
      std::queue<int> q;
      q.push(0);
      seen[0] = 1;
      size_t reached = 1;
      while (!q.empty()) {
        int x = q.front();
        q.pop();
        for (int u : gp.adj_probed[ws[x]]) {
          int lu = local[u];
          if (lu >= 0 && !seen[lu]) {
            seen[lu] = 1;
            ++reached;
            q.push(lu);
          }
        }
      }
      for (int v : ws) local[v] = -1;
      if (reached != ws.size())
        rep.issues.push_back("component " + std::to_string(i) +
                             ": disconnected extension");
      for (int v : ws) in_set[v] = 0;
    }
    for (int e : gp.probed) rep.deg_edge_star = std::max(rep.deg_edge_star, count_ws[e]);
  }

  if (rep.deg_tree > thresholds.deg_tree)
    rep.issues.push_back("tree degree " + std::to_string(rep.deg_tree) +
                         " exceeds threshold " + std::to_string(thresholds.deg_tree));
  if (rep.deg_edge_star > thresholds.deg_edge_star)
    rep.issues.push_back("edge multiplicity " + std::to_string(rep.deg_edge_star) +
                         " exceeds threshold " +
                         std::to_string(thresholds.deg_edge_star));
  if (rep.max_probed_edges_star > thresholds.probed_edges_star)
    rep.issues.push_back("extension edge count " +
                         std::to_string(rep.max_probed_edges_star) +
                         " exceeds threshold " +
                         std::to_string(thresholds.probed_edges_star));
  if (rep.wid_star > thresholds.wid_star)
    rep.issues.push_back("extended width " + std::to_string(rep.wid_star) +
                         " exceeds threshold " + std::to_string(thresholds.wid_star));
  rep.ok = rep.issues.empty();
  return rep;
}

void save_decomposition(const TreeDecomposition& td, std::ostream& out) {
  for (int i = 0; i < td.count(); ++i) {
    out << 'C';
    for (int v : td.components[i]) out << ' ' << v;
    out << '\n';
    out << 'X';
    for (int v : td.extended[i]) out << ' ' << v;
    out << '\n';
  }
  for (const auto& [a, b] : td.tree_edges) out << "T " << a << ' ' << b << '\n';
  out << 'P';
  for (int e : td.probed) out << ' ' << e;
  out << '\n';
}

TreeDecomposition load_decomposition(std::istream& in) {
  TreeDecomposition td;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    char tag;
    ss >> tag;
    if (tag == 'C') {
      std::vector<int> ids;
      for (int v; ss >> v;) ids.push_back(v);
      td.components.push_back(std::move(ids));
    } else if (tag == 'X') {
      std::vector<int> ids;
      for (int v; ss >> v;) ids.push_back(v);
      td.extended.push_back(std::move(ids));
    } else if (tag == 'T') {
      int a, b;
      if (!(ss >> a >> b)) throw std::invalid_argument("decomposition: bad T line");
      td.tree_edges.push_back({a, b});
    } else if (tag == 'P') {
      for (int e; ss >> e;) td.probed.push_back(e);
    } else {
      throw std::invalid_argument("decomposition: unknown line tag");
    }
  }
  if (td.extended.size() != td.components.size())
    throw std::invalid_argument("decomposition: C/X line mismatch");
  return td;
}

void save_decomposition_file(const TreeDecomposition& td, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  save_decomposition(td, out);
}

TreeDecomposition load_decomposition_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return load_decomposition(in);
}

}  // namespace labelrec
