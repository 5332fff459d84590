#include "labelrec/treedp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace labelrec {

namespace {

constexpr long long kInf = std::numeric_limits<long long>::max() / 4;

// Label index convention: 0 maps to +1, 1 maps to -1.
inline int8_t label_of(int idx) { return idx == 0 ? 1 : -1; }

// 1 if the edge between child labeled `sc` and parent labeled `sp` with
// agreement sign `sign` is violated.
inline int violated(int sc_idx, int sp_idx, int8_t sign) {
  return label_of(sc_idx) != label_of(sp_idx) * sign ? 1 : 0;
}

struct RootedTree {
  std::vector<int> order;  // BFS order, order[0] == root
  std::vector<std::vector<int>> children;
  std::vector<std::vector<int>> child_edge;  // tree-edge index per child
  std::vector<int> subtree;                  // vertex counts
};

RootedTree root_at_zero(const Graph& tree) {
  RootedTree rt;
  int n = tree.n;
  rt.children.assign(n, {});
  rt.child_edge.assign(n, {});
  rt.subtree.assign(n, 1);
  std::vector<int> parent(n, -1);
  std::vector<char> seen(n, 0);
  rt.order.reserve(n);
  rt.order.push_back(0);
  seen[0] = 1;
  for (size_t head = 0; head < rt.order.size(); ++head) {
    int u = rt.order[head];
    for (size_t i = 0; i < tree.adj[u].size(); ++i) {
      int v = tree.adj[u][i];
      if (seen[v]) continue;
      seen[v] = 1;
      parent[v] = u;
      rt.children[u].push_back(v);
      rt.child_edge[u].push_back(tree.adj_edge[u][i]);
      rt.order.push_back(v);
    }
  }
  for (int i = n - 1; i > 0; --i) rt.subtree[parent[rt.order[i]]] += rt.subtree[rt.order[i]];
  return rt;
}

void validate_problem(const TreeDecodeProblem& prob) {
  if (!is_tree(prob.tree)) throw std::invalid_argument("tree_decode: input is not a tree");
  if (static_cast<int>(prob.cost.size()) != prob.tree.n)
    throw std::invalid_argument("tree_decode: cost size mismatch");
  if (static_cast<int>(prob.agree.size()) != prob.tree.edge_count())
    throw std::invalid_argument("tree_decode: agree size mismatch");
  for (const auto& c : prob.cost)
    if (c[0] < 0 || c[1] < 0) throw std::invalid_argument("tree_decode: negative cost");
  for (int8_t s : prob.agree)
    if (s != 1 && s != -1) throw std::invalid_argument("tree_decode: agree sign not +-1");
  if (prob.budget < 0) throw std::invalid_argument("tree_decode: negative budget");
}

int count_violations(const TreeDecodeProblem& prob, const Labels& labels) {
  int count = 0;
  for (int e = 0; e < prob.tree.edge_count(); ++e) {
    auto [u, v] = prob.tree.edges[e];
    if (labels[u] != labels[v] * prob.agree[e]) ++count;
  }
  return count;
}

long long label_cost(const TreeDecodeProblem& prob, const Labels& labels) {
  long long total = 0;
  for (int v = 0; v < prob.tree.n; ++v) total += prob.cost[v][labels[v] == 1 ? 0 : 1];
  return total;
}

// Per-vertex DP table: G[s][b] is the minimal cost of the subtree with the
// vertex labeled s and at most b violated edges inside the subtree,
// b clamped to min(K, subtree_size - 1).
using NodeTable = std::array<std::vector<long long>, 2>;

inline long long read_clamped(const std::vector<long long>& t, long long b) {
  if (b < 0) return kInf;
  size_t i = static_cast<size_t>(std::min<long long>(b, static_cast<long long>(t.size()) - 1));
  return t[i];
}

// min over child labels of G_child at remaining budget, given parent label.
void child_option_table(const NodeTable& gc, int sp_idx, int8_t sign, int cap,
                        std::vector<long long>& out) {
  out.assign(cap + 1, kInf);
  for (int bc = 0; bc <= cap; ++bc) {
    long long best = kInf;
    for (int sc = 0; sc < 2; ++sc) {
      long long v = read_clamped(gc[sc], bc - violated(sc, sp_idx, sign));
      best = std::min(best, v);
    }
    out[bc] = best;
  }
}

// Merge one child option table into the running prefix table.
void merge_child(const std::vector<long long>& prefix, int prefix_cap,
                 const std::vector<long long>& opt, int opt_cap, long long budget,
                 std::vector<long long>& out) {
  int new_cap = static_cast<int>(std::min<long long>(budget, prefix_cap + opt_cap));
  out.assign(new_cap + 1, kInf);
  for (int b = 0; b <= new_cap; ++b) {
    long long best = kInf;
    int lo = std::max(0, b - prefix_cap);
    int hi = std::min(b, opt_cap);
    for (int bc = lo; bc <= hi; ++bc) {
      long long v = prefix[b - bc];
      if (v >= kInf || opt[bc] >= kInf) continue;
      best = std::min(best, v + opt[bc]);
    }
    out[b] = best;
  }
}

}  // namespace

TreeDecodeResult tree_decode(const TreeDecodeProblem& prob) {
  validate_problem(prob);
  const int n = prob.tree.n;
  const long long K = std::min<long long>(prob.budget, n - 1);
  RootedTree rt = root_at_zero(prob.tree);

  std::vector<NodeTable> table(n);
  std::vector<long long> opt, merged;
  for (int i = n - 1; i >= 0; --i) {
    int v = rt.order[i];
    int cap_v = static_cast<int>(std::min<long long>(K, rt.subtree[v] - 1));
    for (int s = 0; s < 2; ++s) {
      std::vector<long long> prefix(1, 0);  // no children merged yet
      int prefix_cap = 0;
      for (size_t j = 0; j < rt.children[v].size(); ++j) {
        int c = rt.children[v][j];
        int8_t sign = prob.agree[rt.child_edge[v][j]];
        int c_cap = static_cast<int>(std::min<long long>(K, rt.subtree[c]));
        child_option_table(table[c], s, sign, c_cap, opt);
        merge_child(prefix, prefix_cap, opt, c_cap, K, merged);
        prefix.swap(merged);
        prefix_cap = static_cast<int>(prefix.size()) - 1;
      }
      table[v][s].assign(cap_v + 1, kInf);
      for (int b = 0; b <= cap_v; ++b) {
        long long m = read_clamped(prefix, b);
        table[v][s][b] = m >= kInf ? kInf : m + prob.cost[v][s];
      }
    }
  }

  const int root = rt.order[0];
  int root_cap = static_cast<int>(table[root][0].size()) - 1;
  // Both root labels are considered with the full budget; this matches
  // attaching a virtual parent with agreement sign +1 and then -1 and
  // taking the better of the two solves.
  int s_root = table[root][0][root_cap] <= table[root][1][root_cap] ? 0 : 1;
  long long objective = table[root][s_root][root_cap];

  // Backtrack top-down, re-deriving each node's merge prefixes for its
  // chosen label only.
  Labels labels(n, 0);
  std::vector<std::pair<int, int>> stack;  // (vertex, internal budget)
  std::vector<int> chosen(n, -1);
  chosen[root] = s_root;
  stack.push_back({root, root_cap});
  std::vector<std::vector<long long>> prefixes;
  std::vector<std::vector<long long>> opts;
  while (!stack.empty()) {
    auto [v, bv] = stack.back();
    stack.pop_back();
    int s = chosen[v];
    labels[v] = label_of(s);
    size_t kids = rt.children[v].size();
    if (kids == 0) continue;

    prefixes.assign(kids + 1, {});
    opts.assign(kids, {});
    prefixes[0] = {0};
    int prefix_cap = 0;
    for (size_t j = 0; j < kids; ++j) {
      int c = rt.children[v][j];
      int8_t sign = prob.agree[rt.child_edge[v][j]];
      int c_cap = static_cast<int>(std::min<long long>(K, rt.subtree[c]));
      child_option_table(table[c], s, sign, c_cap, opts[j]);
      merge_child(prefixes[j], prefix_cap, opts[j], c_cap, K, prefixes[j + 1]);
      prefix_cap = static_cast<int>(prefixes[j + 1].size()) - 1;
    }

    long long b_rem = std::min<long long>(bv, prefix_cap);
    for (size_t j = kids; j-- > 0;) {
      int c = rt.children[v][j];
      int8_t sign = prob.agree[rt.child_edge[v][j]];
      int c_cap = static_cast<int>(opts[j].size()) - 1;
      int prev_cap = static_cast<int>(prefixes[j].size()) - 1;
      long long target = read_clamped(prefixes[j + 1], b_rem);
      int pick = -1;
      int lo = static_cast<int>(std::max<long long>(0, b_rem - prev_cap));
      int hi = static_cast<int>(std::min<long long>(b_rem, c_cap));
      for (int bc = lo; bc <= hi; ++bc) {
        if (prefixes[j][b_rem - bc] < kInf && opts[j][bc] < kInf &&
            prefixes[j][b_rem - bc] + opts[j][bc] == target) {
          pick = bc;
          break;
        }
      }
      // A consistent split always exists; pick stays -1 only on logic error.
      if (pick < 0) throw std::logic_error("tree_decode: backtrack split not found");
      int sc_pick = -1;
      for (int sc = 0; sc < 2; ++sc) {
        long long t = read_clamped(table[c][sc], pick - violated(sc, s, sign));
        if (t == opts[j][pick]) {
          sc_pick = sc;
          break;
        }
      }
      if (sc_pick < 0) throw std::logic_error("tree_decode: backtrack label not found");
      chosen[c] = sc_pick;
      long long c_budget = std::min<long long>(pick - violated(sc_pick, s, sign),
                                               static_cast<long long>(table[c][0].size()) - 1);
      stack.push_back({c, static_cast<int>(c_budget)});
      b_rem = std::min<long long>(b_rem - pick, prefixes[j].size() - 1);
    }
  }

  TreeDecodeResult res;
  res.labels = std::move(labels);
  res.objective = objective;
  res.violated = count_violations(prob, res.labels);
  if (label_cost(prob, res.labels) != objective)
    throw std::logic_error("tree_decode: backtracked labeling does not attain objective");
  return res;
}

TreeDecodeResult path_decode(const TreeDecodeProblem& prob) {
  validate_problem(prob);
  if (!is_path(prob.tree)) throw std::invalid_argument("path_decode: input is not a path");
  const int n = prob.tree.n;
  if (n == 1) {
    TreeDecodeResult res;
    int s = prob.cost[0][0] <= prob.cost[0][1] ? 0 : 1;
    res.labels = {label_of(s)};
    res.objective = prob.cost[0][s];
    res.violated = 0;
    return res;
  }
  // Path order starting from the lower-index endpoint.
  int start = -1;
  for (int v = 0; v < n; ++v)
    if (prob.tree.degree(v) == 1) {
      start = v;
      break;
    }
  std::vector<int> pos(n);       // vertex at each position
  std::vector<int8_t> sign(n);   // sign of edge (pos[i-1], pos[i])
  pos[0] = start;
  int prev = -1, cur = start;
  for (int i = 1; i < n; ++i) {
    int nxt = -1;
    for (size_t j = 0; j < prob.tree.adj[cur].size(); ++j) {
      if (prob.tree.adj[cur][j] != prev) {
        nxt = prob.tree.adj[cur][j];
        sign[i] = prob.agree[prob.tree.adj_edge[cur][j]];
        break;
      }
    }
    pos[i] = nxt;
    prev = cur;
    cur = nxt;
  }

  const int K = static_cast<int>(std::min<long long>(prob.budget, n - 1));
  const int width = K + 1;
  std::vector<long long> prev_row(2 * width, kInf), cur_row(2 * width, kInf);
  std::vector<uint8_t> back(static_cast<size_t>(n) * 2 * width, 2);
  auto idx = [width](int s, int b) { return s * width + b; };

  prev_row[idx(0, 0)] = prob.cost[pos[0]][0];
  prev_row[idx(1, 0)] = prob.cost[pos[0]][1];
  for (int i = 1; i < n; ++i) {
    std::fill(cur_row.begin(), cur_row.end(), kInf);
    int bmax = std::min(i, K);
    uint8_t* bp = back.data() + static_cast<size_t>(i) * 2 * width;
    for (int s = 0; s < 2; ++s) {
      for (int b = 0; b <= bmax; ++b) {
        long long best = kInf;
        uint8_t pick = 2;
        for (int sp = 0; sp < 2; ++sp) {
          int t = violated(s, sp, sign[i]);
          if (b - t < 0 || b - t > std::min(i - 1, K)) continue;
          long long v = prev_row[idx(sp, b - t)];
          if (v < best) {
            best = v;
            pick = static_cast<uint8_t>(sp);
          }
        }
        if (best < kInf) {
          cur_row[idx(s, b)] = best + prob.cost[pos[i]][s];
          bp[idx(s, b)] = pick;
        }
      }
    }
    prev_row.swap(cur_row);
  }

  long long objective = kInf;
  int s_end = 0, b_end = 0;
  for (int s = 0; s < 2; ++s)
    for (int b = 0; b <= std::min(n - 1, K); ++b)
      if (prev_row[idx(s, b)] < objective) {
        objective = prev_row[idx(s, b)];
        s_end = s;
        b_end = b;
      }

  Labels labels(n, 0);
  int s = s_end, b = b_end;
  for (int i = n - 1; i >= 1; --i) {
    labels[pos[i]] = label_of(s);
    int sp = back[static_cast<size_t>(i) * 2 * width + idx(s, b)];
    b -= violated(s, sp, sign[i]);
    s = sp;
  }
  labels[pos[0]] = label_of(s);

  TreeDecodeResult res;
  res.labels = std::move(labels);
  res.objective = objective;
  res.violated = count_violations(prob, res.labels);
  return res;
}

TreeDecodeResult brute_force_tree_decode(const TreeDecodeProblem& prob) {
  validate_problem(prob);
  const int n = prob.tree.n;
  if (n > 20) throw std::invalid_argument("brute_force_tree_decode: n <= 20 required");
  TreeDecodeResult best;
  best.objective = kInf;
  Labels labels(n);
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    for (int v = 0; v < n; ++v) labels[v] = (mask >> v) & 1 ? -1 : 1;
    int viol = count_violations(prob, labels);
    if (viol > prob.budget) continue;
    long long obj = label_cost(prob, labels);
    if (obj < best.objective) {
      best.objective = obj;
      best.labels = labels;
      best.violated = viol;
    }
  }
  return best;
}

long long tree_inference_budget(int n, double p, double delta) {
  if (p < 0.0 || p > 1.0 || delta <= 0.0 || delta >= 1.0)
    throw std::invalid_argument("tree_inference: need p in [0,1], delta in (0,1)");
  return static_cast<long long>(std::ceil(2.0 * p * n + 2.0 * std::log(2.0 / delta)));
}

Labels tree_inference(const Graph& tree, const EdgeObservations& x,
                      const VertexObservations& z, double p, double delta) {
  TreeDecodeProblem prob;
  prob.budget = tree_inference_budget(tree.n, p, delta);
  prob.cost.resize(tree.n);
  for (int v = 0; v < tree.n; ++v)
    prob.cost[v] = {z.z[v] == 1 ? 0 : 1, z.z[v] == -1 ? 0 : 1};
  prob.agree = x.x;
  prob.tree = tree;
  return tree_decode(prob).labels;
}

}  // namespace labelrec
