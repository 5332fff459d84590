// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Tolerances and thresholds are pinned in code; runtime is
// a few minutes on two cores.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "labelrec/bounds.hpp"
#include "labelrec/decoder.hpp"
#include "labelrec/decomp.hpp"
#include "labelrec/harness.hpp"
#include "labelrec/measure.hpp"
#include "labelrec/rng.hpp"
#include "labelrec/treedp.hpp"

using namespace labelrec;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s — %s\n", pass ? "PASS" : "FAIL", criterion,
              name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

Graph random_tree(int n, uint64_t seed) {
  std::vector<Edge> edges;
  for (int v = 1; v < n; ++v)
    edges.push_back({static_cast<int>(rng::mix({seed, static_cast<uint64_t>(v)}) % v), v});
  return make_graph(n, edges);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

// ---- criterion 1: DP optimality ------------------------------------------
void criterion1() {
  auto t0 = std::chrono::steady_clock::now();
  int instances = 0, agreements = 0;
  for (uint64_t seed = 1000; instances < 500; ++seed) {
    int n = 1 + static_cast<int>(rng::mix({seed, 99}) % 12);
    Graph tree = random_tree(n, seed);
    TreeDecodeProblem prob;
    prob.tree = tree;
    prob.cost.resize(n);
    for (int v = 0; v < n; ++v)
      prob.cost[v] = {
          static_cast<int>(rng::mix({seed, 10, static_cast<uint64_t>(v)}) % 10),
          static_cast<int>(rng::mix({seed, 11, static_cast<uint64_t>(v)}) % 10)};
    prob.agree.resize(tree.edge_count());
    for (int e = 0; e < tree.edge_count(); ++e)
      prob.agree[e] = rng::mix({seed, 12, static_cast<uint64_t>(e)}) & 1 ? 1 : -1;
    for (int k = 0; k <= n && instances < 500; ++k, ++instances) {
      prob.budget = k;
      if (tree_decode(prob).objective == brute_force_tree_decode(prob).objective)
        ++agreements;
    }
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report(1, "DP optimality",
         agreements == 500 && secs < 60.0,
         std::to_string(agreements) + "/500 instances agree with the exhaustive oracle in " +
             fmt(secs) + "s");
}

// ---- criterion 2: component MLE exactness --------------------------------
void criterion2() {
  int done = 0, agreements = 0;
  for (uint64_t seed = 5000; done < 200; ++seed) {
    int m = 2 + static_cast<int>(rng::mix({seed, 1}) % 11);
    std::vector<Edge> edges;
    std::set<Edge> have;
    for (int v = 1; v < m; ++v) {
      int u = static_cast<int>(rng::mix({seed, 2, static_cast<uint64_t>(v)}) % v);
      edges.push_back({u, v});
      have.insert(edges.back());
    }
    for (int t = 0; t < m; ++t) {
      int u = static_cast<int>(rng::mix({seed, 3, static_cast<uint64_t>(t)}) % m);
      int v = static_cast<int>(rng::mix({seed, 4, static_cast<uint64_t>(t)}) % m);
      if (u == v) continue;
      Edge e{std::min(u, v), std::max(u, v)};
      if (have.insert(e).second) edges.push_back(e);
    }
    Graph g = make_graph(m, edges);
    ProbedGraph gp = probe_all(g);
    EdgeObservations x;
    x.x.resize(g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e)
      x.x[e] = rng::mix({seed, 5, static_cast<uint64_t>(e)}) & 1 ? 1 : -1;
    std::vector<int> all(m);
    for (int i = 0; i < m; ++i) all[i] = i;
    ComponentEstimate est = component_mle(all, gp, x);
    // exhaustive check
    long long best = 1LL << 60;
    for (uint32_t mask = 0; mask < (1u << m); ++mask) {
      long long obj = 0;
      for (int e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.edges[e];
        int diff = ((mask >> u) ^ (mask >> v)) & 1;
        obj += diff != (x.x[e] == -1 ? 1 : 0);
      }
      best = std::min(best, obj);
    }
    if (est.objective == best) ++agreements;
    ++done;
  }
  report(2, "component MLE exactness", agreements == 200,
         std::to_string(agreements) + "/200 subgraphs match the exhaustive minimum");
}

// ---- criterion 3: tree rate ----------------------------------------------
void criterion3() {
  const int n = 20000, trials = 20;
  const double q = 0.25, delta = 0.01, eps = 0.25;
  const std::vector<double> ps = {0.005, 0.01, 0.02};
  ExperimentConfig cfg;
  cfg.family = "path";
  cfg.n = n;
  cfg.p_values = ps;
  cfg.q = q;
  cfg.delta = delta;
  cfg.trials = trials;
  cfg.seed = 7;
  cfg.decoder = "tree";
  cfg.threads = 2;
  ExperimentResult res = run_experiment(cfg);
  int within = 0, total = 0;
  for (const auto& tr : res.trials) {
    double p = ps[tr.p_index];
    double bound = (2 * p * n + 2 * std::log(2 / delta) + 1) *
                   std::log(2 * std::exp(1.0) / (p * delta)) / (eps * eps);
    ++total;
    if (tr.hamming <= bound) ++within;
  }
  double frac = static_cast<double>(within) / total;
  double slope = res.fit ? res.fit->slope : 0.0;
  bool pass = frac >= 0.99 && slope >= 0.8 && slope <= 1.2;
  report(3, "tree rate (path n=20000)", pass,
         "bound satisfied in " + fmt(100 * frac) + "% of trials, fitted slope " +
             fmt(slope) + " (window [0.8, 1.2]); means " + fmt(res.per_p[0].mean) +
             "/" + fmt(res.per_p[1].mean) + "/" + fmt(res.per_p[2].mean) +
             (pass ? "" : "; see decisions ledger: exact ERM under the pinned budget "
                          "2pn+2ln(2/delta) responds concavely in p"));
}

// ---- criterion 4: grid rate ----------------------------------------------
void criterion4() {
  ExperimentConfig cfg;
  cfg.family = "grid3";
  cfg.n = 9000;
  cfg.p_values = {0.02, 0.04, 0.08};
  cfg.q = 0.25;
  cfg.trials = 20;
  cfg.seed = 7;
  cfg.decoder = "decomp";
  cfg.threads = 2;
  ExperimentResult dec = run_experiment(cfg);
  ExperimentConfig scfg = cfg;
  scfg.p_values = {0.02};
  scfg.decoder = "spanning";
  ExperimentResult span = run_experiment(scfg);
  double slope = dec.fit ? dec.fit->slope : 0.0;
  bool slope_ok = slope >= 1.6 && slope <= 2.4;
  bool base_ok = dec.per_p[0].mean < span.per_p[0].mean;
  report(4, "grid rate (height-3, n=9000)", slope_ok && base_ok,
         "fitted slope " + fmt(slope) + " (window [1.6, 2.4]); decomp mean at p=0.02 " +
             fmt(dec.per_p[0].mean) + " vs spanning-tree " + fmt(span.per_p[0].mean) +
             (slope_ok ? ""
                       : "; see decisions ledger: a budget oracle with access to the "
                         "ground truth reaches only ~1.64 at these parameters"));
}

// ---- criterion 5: ring and Newman-Watts rates ----------------------------
void criterion5() {
  ExperimentConfig cfg;
  cfg.family = "ring";
  cfg.n = 10005;
  cfg.k = 2;
  cfg.p_values = {0.02, 0.04, 0.08};
  cfg.q = 0.25;
  cfg.trials = 20;
  cfg.seed = 7;
  cfg.decoder = "decomp";
  cfg.threads = 2;
  ExperimentResult ring = run_experiment(cfg);
  cfg.family = "nw";
  cfg.alpha = 0.5;
  ExperimentResult nw = run_experiment(cfg);
  double rs = ring.fit ? ring.fit->slope : 0.0;
  double ns = nw.fit ? nw.fit->slope : 0.0;
  bool pass = rs >= 1.6 && rs <= 2.4 && ns >= 1.6 && ns <= 2.4;
  report(5, "ring and Newman-Watts rates (n=10005, k=2)", pass,
         "ring slope " + fmt(rs) + ", Newman-Watts slope " + fmt(ns) +
             " (window [1.6, 2.4])");
}

// ---- criterion 6: component failure bound --------------------------------
void criterion6() {
  // height-3 grid at p = 0.05 over 100 seeds (n = 3000 keeps this quick;
  // the bound scales with the component count on both sides)
  FamilyDecomposition fam = decomp_constant_height_grid(3, 1000);
  DecompositionProperties props = compute_properties(fam.td, fam.graph);
  const double p = 0.05;
  double bound = props.coarse_failure_bound(p);
  double total = 0;
  const int seeds = 100;
  for (int s = 0; s < seeds; ++s) {
    GroundTruth truth = uniform_ground_truth(fam.graph.base.n, rng::mix({(uint64_t)s, 1}));
    EdgeObservations x =
        sample_edge_observations(fam.graph.base, truth, p, rng::mix({(uint64_t)s, 2}));
    std::vector<Labels> est(fam.td.count());
    for (int i = 0; i < fam.td.count(); ++i) {
      ComponentEstimate ce = component_mle(fam.td.extended[i], fam.graph, x);
      const auto& w = fam.td.components[i];
      const auto& ws = fam.td.extended[i];
      est[i].resize(w.size());
      for (size_t j = 0, k2 = 0; j < w.size(); ++j) {
        while (ws[k2] != w[j]) ++k2;
        est[i][j] = ce.labels_star[k2];
      }
    }
    total += signed_component_failures(fam.td.components, est, truth.y);
  }
  double mean = total / seeds;
  report(6, "component failure bound (coarse cut-count sum)", mean <= bound,
         "mean failures " + fmt(mean) + " <= bound " + fmt(bound) + " over 100 seeds");
}

// ---- criterion 7: genie formula ------------------------------------------
void criterion7() {
  const int n = 5000, trials = 20;
  const double p = 0.1, q = 0.3;
  // derived by exhaustive flip-pattern enumeration (d=2): p^2 + q*2p(1-p)
  const double target = p * p + q * 2 * p * (1 - p);
  Graph g = build_ring_lattice(n, 1);
  long wrong = 0;
  for (int t = 0; t < trials; ++t) {
    GroundTruth truth = uniform_ground_truth(n, rng::mix({(uint64_t)t, 11}));
    EdgeObservations x = sample_edge_observations(g, truth, p, rng::mix({(uint64_t)t, 12}));
    VertexObservations z = sample_vertex_observations(truth, q, rng::mix({(uint64_t)t, 13}));
    wrong += hamming_error(genie_map_decode(g, x, z, truth), truth.y);
  }
  double total = static_cast<double>(n) * trials;
  double rate = wrong / total;
  double sigma = std::sqrt(target * (1 - target) / total);
  bool pass = std::abs(rate - target) <= 4 * sigma &&
              std::abs(genie_map_vertex_error(2, p, q) - target) < 1e-12;
  report(7, "genie MAP formula (d=2, p=0.1, q=0.3)", pass,
         "empirical rate " + fmt(rate) + " vs " + fmt(target) + " +- " + fmt(4 * sigma) +
             " over " + fmt(total) + " vertex-trials");
}

// ---- criterion 8: decomposition catalogue --------------------------------
void criterion8() {
  std::vector<std::string> issues;
  auto check = [&](const std::string& name, const FamilyDecomposition& fam,
                   const AdmissibilityThresholds& thr) -> DecompositionProperties {
    auto bad = validate(fam.td, fam.graph);
    if (!bad.empty()) issues.push_back(name + ": " + bad[0]);
    auto rep = check_admissible(fam.td, fam.graph, thr);
    if (!rep.ok) issues.push_back(name + ": " + rep.issues[0]);
    return compute_properties(fam.td, fam.graph);
  };
  auto expect_kind = [&](const std::string& name, const FamilyDecomposition& fam,
                         const DecompositionProperties& props, ComponentKind kind,
                         int ComponentProperties::*field, int want) {
    bool any = false;
    for (int i = 0; i < fam.td.count(); ++i) {
      if (fam.kinds[i] != kind) continue;
      any = true;
      int got = props.components[i].*field;
      if (got != want) {
        issues.push_back(name + ": component " + std::to_string(i) + " value " +
                         std::to_string(got) + " != " + std::to_string(want));
        return;
      }
    }
    if (!any) issues.push_back(name + ": no components of the asserted class");
  };
  AdmissibilityThresholds small{64, 64, 64, 64};
  AdmissibilityThresholds cube{64, 64, 256, 128};

  // constant-height grid: interior blocks mincut* = 3 (probed == ambient here)
  for (int width : {2, 4, 9, 16, 30}) {
    FamilyDecomposition fam = decomp_constant_height_grid(3, width);
    DecompositionProperties props = check("grid3 w=" + std::to_string(width), fam, small);
    if (width >= 4)
      expect_kind("grid3 w=" + std::to_string(width), fam, props, ComponentKind::kInterior,
                  &ComponentProperties::mincut_star, 3);
  }
  // zig-zag: interior 3 / boundary 2 under the probed reading
  for (int side : {6, 7, 8, 9, 12, 15, 21, 30}) {
    FamilyDecomposition fam = decomp_square_grid_zigzag(side);
    DecompositionProperties props = check("zigzag s=" + std::to_string(side), fam, small);
    if (side >= 9)
      expect_kind("zigzag s=" + std::to_string(side), fam, props, ComponentKind::kInterior,
                  &ComponentProperties::mincut_star, 3);
    expect_kind("zigzag s=" + std::to_string(side), fam, props, ComponentKind::kBoundary,
                &ComponentProperties::mincut_star, 2);
  }
  // ring: interior 2k under the whole-graph cut-set reading
  for (int k : {1, 2, 3}) {
    int n = (2 * k + 1) * 8;
    FamilyDecomposition fam = decomp_ring_lattice(n, k);
    DecompositionProperties props = check("ring k=" + std::to_string(k), fam, small);
    expect_kind("ring k=" + std::to_string(k), fam, props, ComponentKind::kInterior,
                &ComponentProperties::mincut_star_ambient, 2 * k);
  }
  // cube: interior 6 (ambient); tube as the validity sweep companion
  {
    FamilyDecomposition fam = decomp_hypergrid({9, 9, 9});
    DecompositionProperties props = check("cube 9x9x9", fam, cube);
    expect_kind("cube 9x9x9", fam, props, ComponentKind::kInterior,
                &ComponentProperties::mincut_star_ambient, 6);
    check("tube 3x3x12", decomp_hypertube(3, 12), cube);
  }
  // triangular 6 and hexagonal 3 (ambient)
  for (int side : {9, 12}) {
    FamilyDecomposition tri = decomp_triangular(side);
    DecompositionProperties tp = check("triangular s=" + std::to_string(side), tri, small);
    expect_kind("triangular s=" + std::to_string(side), tri, tp, ComponentKind::kInterior,
                &ComponentProperties::mincut_star_ambient, 6);
    FamilyDecomposition hex = decomp_hexagonal(side);
    DecompositionProperties hp = check("hexagonal s=" + std::to_string(side), hex, small);
    expect_kind("hexagonal s=" + std::to_string(side), hex, hp, ComponentKind::kInterior,
                &ComponentProperties::mincut_star_ambient, 3);
  }
  report(8, "decomposition catalogue", issues.empty(),
         issues.empty()
             ? "validate + admissible + cut constants match on every family sweep "
               "(grid3 3, zigzag 3/2 probed; ring 2k, cube 6, triangular 6, hexagonal 3 "
               "ambient)"
             : issues[0] + " (+" + std::to_string(issues.size() - 1) + " more)");
}

// ---- criterion 9: determinism --------------------------------------------
void criterion9() {
  ExperimentConfig cfg;
  cfg.family = "ring";
  cfg.n = 504;
  cfg.k = 2;
  cfg.p_values = {0.01, 0.02, 0.04};
  cfg.q = 0.25;
  cfg.trials = 6;
  cfg.seed = 2024;
  cfg.decoder = "decomp";
  cfg.threads = 1;
  std::string csv1 = results_csv(run_experiment(cfg));
  cfg.threads = 8;
  std::string csv8 = results_csv(run_experiment(cfg));
  cfg.threads = 1;
  std::string csv1b = results_csv(run_experiment(cfg));
  bool pass = csv1 == csv8 && csv1 == csv1b;
  report(9, "determinism across worker threads", pass,
         pass ? "byte-identical CSV under 1 and 8 threads (and on rerun)"
              : "CSV outputs differ");
}

}  // namespace

int main() {
  auto t0 = std::chrono::steady_clock::now();
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%d of 9 criteria passed in %.1fs\n", 9 - g_failures, secs);
  return g_failures == 0 ? 0 : 1;
}
