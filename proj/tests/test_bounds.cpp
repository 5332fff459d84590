#include <doctest.h>

#include <cmath>
#include <map>

#include "labelrec/bounds.hpp"
#include "labelrec/decoder.hpp"
#include "labelrec/rng.hpp"
#include "labelrec/treedp.hpp"

using namespace labelrec;

namespace {

// independent oracle for the genie error: enumerate all flip patterns of
// the d incident edges and apply the tie rule
double genie_error_by_enumeration(int d, double p, double q) {
  double err = 0.0;
  for (uint32_t mask = 0; mask < (1u << d); ++mask) {
    int flips = __builtin_popcount(mask);
    double prob = std::pow(p, flips) * std::pow(1 - p, d - flips);
    int votes = (d - flips) - flips;  // correct minus incorrect suggestions
    if (votes < 0)
      err += prob;
    else if (votes == 0)
      err += prob * q;  // tie resolved by Z
  }
  return err;
}

}  // namespace

TEST_CASE("genie vertex error formula") {
  CHECK(genie_map_vertex_error(2, 0.1, 0.3) == doctest::Approx(0.064));
  CHECK(genie_map_vertex_error(3, 0.0, 0.3) == doctest::Approx(0.0));
  CHECK(genie_map_vertex_error(1, 0.07, 0.4) == doctest::Approx(0.07));
  CHECK(genie_map_vertex_error(0, 0.1, 0.35) == doctest::Approx(0.35));
  for (int d = 0; d <= 8; ++d) {
    for (uint64_t s = 0; s < 4; ++s) {
      double p = 0.5 * rng::unit({s, 1, static_cast<uint64_t>(d)});
      double q = 0.5 * rng::unit({s, 2, static_cast<uint64_t>(d)});
      CHECK(genie_map_vertex_error(d, p, q) ==
            doctest::Approx(genie_error_by_enumeration(d, p, q)).epsilon(1e-9));
    }
  }
}

TEST_CASE("genie decode matches its error formula empirically") {
  // d = 2 ring, p = 0.1, q = 0.3: error rate 0.064 within 4 sigma
  const int n = 20000, trials = 5;
  const double p = 0.1, q = 0.3, target = 0.064;
  Graph g = build_ring_lattice(n, 1);
  long wrong = 0;
  for (int t = 0; t < trials; ++t) {
    GroundTruth truth = uniform_ground_truth(n, 500 + t);
    EdgeObservations x = sample_edge_observations(g, truth, p, 600 + t);
    VertexObservations z = sample_vertex_observations(truth, q, 700 + t);
    wrong += hamming_error(genie_map_decode(g, x, z, truth), truth.y);
  }
  double total = static_cast<double>(n) * trials;
  double sigma = std::sqrt(target * (1 - target) / total);
  CHECK(std::abs(wrong / total - target) <= 4 * sigma);

  // p = 0 recovers exactly
  GroundTruth truth = uniform_ground_truth(500, 1);
  Graph small = build_ring_lattice(500, 2);
  EdgeObservations clean = sample_edge_observations(small, truth, 0.0, 2);
  VertexObservations z = sample_vertex_observations(truth, 0.3, 3);
  CHECK(hamming_error(genie_map_decode(small, clean, z, truth), truth.y) == 0);
}

TEST_CASE("majority decode") {
  // p = q = 0 recovers exactly
  Graph g = build_ring_lattice(200, 3);
  GroundTruth truth = uniform_ground_truth(200, 9);
  EdgeObservations x = sample_edge_observations(g, truth, 0.0, 1);
  VertexObservations z{truth.y};
  CHECK(hamming_error(majority_decode(g, x, z), truth.y) == 0);

  // isolated vertex falls back to Z
  Graph iso = make_graph(3, {{0, 1}});
  GroundTruth t2;
  t2.y = {1, 1, 1};
  EdgeObservations x2;
  x2.x = {1};
  VertexObservations z2;
  z2.z = {1, 1, -1};
  Labels got = majority_decode(iso, x2, z2);
  CHECK(got[2] == -1);
}

TEST_CASE("majority decode error decays with degree on log-degree rings") {
  const int n = 5000;
  const double p = 0.05, q = 0.25;
  // k = ceil(3 ln n) gives degree about 6 ln n; error fraction under 1%
  int k = static_cast<int>(std::ceil(3 * std::log(n)));
  Graph g = build_ring_lattice(n, k);
  long wrong = 0;
  const int trials = 3;
  for (int t = 0; t < trials; ++t) {
    GroundTruth truth = uniform_ground_truth(n, 40 + t);
    EdgeObservations x = sample_edge_observations(g, truth, p, 50 + t);
    VertexObservations z = sample_vertex_observations(truth, q, 60 + t);
    wrong += hamming_error(majority_decode(g, x, z), truth.y);
  }
  CHECK(static_cast<double>(wrong) / (n * trials) < 0.01);

  // monotone improvement in k
  double prev = 1.0;
  for (int kk : {2, 4, 8, 16}) {
    Graph ring = build_ring_lattice(n, kk);
    long w = 0;
    for (int t = 0; t < trials; ++t) {
      GroundTruth truth = uniform_ground_truth(n, 70 + t);
      EdgeObservations x = sample_edge_observations(ring, truth, p, 80 + t);
      VertexObservations z = sample_vertex_observations(truth, q, 90 + t);
      w += hamming_error(majority_decode(ring, x, z), truth.y);
    }
    double rate = static_cast<double>(w) / (n * trials);
    CHECK(rate <= prev + 0.01);
    prev = rate;
  }
}

TEST_CASE("spanning tree decode") {
  // on a tree it is identical to tree inference
  Graph tree = build_path(60);
  GroundTruth truth = uniform_ground_truth(60, 8);
  EdgeObservations x = sample_edge_observations(tree, truth, 0.05, 2);
  VertexObservations z = sample_vertex_observations(truth, 0.25, 3);
  CHECK(spanning_tree_decode(tree, x, z, 0.05, 0.1) ==
        tree_inference(tree, x, z, 0.05, 0.1));

  // 4-cycle with clean data recovers exactly
  Graph cyc = build_grid(2, 2);
  GroundTruth t4 = uniform_ground_truth(4, 5);
  EdgeObservations x4 = sample_edge_observations(cyc, t4, 0.0, 6);
  VertexObservations z4{t4.y};
  CHECK(hamming_error(spanning_tree_decode(cyc, x4, z4, 0.0, 0.1), t4.y) == 0);

  // disconnected input: per-component trees
  Graph two = make_graph(6, {{0, 1}, {1, 2}, {3, 4}, {4, 5}});
  GroundTruth t6 = uniform_ground_truth(6, 7);
  EdgeObservations x6 = sample_edge_observations(two, t6, 0.0, 8);
  VertexObservations z6{t6.y};
  CHECK(hamming_error(spanning_tree_decode(two, x6, z6, 0.0, 0.1), t6.y) == 0);
}

TEST_CASE("spanning tree baseline is worse than the decomposition decoder on grids") {
  // 50x50 grid: the spanning-tree reduction pays the tree rate (linear in
  // p) while the zig-zag decomposition decoder pays the quadratic rate
  FamilyDecomposition fam = decomp_square_grid_zigzag(50);
  DecompositionProperties props = compute_properties(fam.td, fam.graph);
  const int n = 2500, seeds = 5;
  const double q = 0.25;
  std::map<double, std::pair<double, double>> means;  // p -> (spanning, decomp)
  for (double p : {0.01, 0.04}) {
    double span_total = 0, dec_total = 0;
    for (int s = 0; s < seeds; ++s) {
      GroundTruth truth = uniform_ground_truth(n, rng::mix({(uint64_t)s, 21}));
      EdgeObservations x =
          sample_edge_observations(fam.graph.base, truth, p, rng::mix({(uint64_t)s, 22}));
      VertexObservations z =
          sample_vertex_observations(truth, q, rng::mix({(uint64_t)s, 23}));
      span_total += hamming_error(
          spanning_tree_decode(fam.graph.base, x, z, p, 1.0 / n), truth.y);
      dec_total += hamming_error(
          decode(fam.graph, fam.td, props, x, z, p, 1.0 / n).yhat, truth.y);
    }
    means[p] = {span_total / seeds, dec_total / seeds};
  }
  // strictly better at both p, and the decomposition decoder's errors grow
  // faster in p (steeper slope: rate 2 versus 1)
  for (auto& [p, m] : means) CHECK(m.second < m.first);
  CHECK(means[0.04].second / means[0.01].second >
        means[0.04].first / means[0.01].first);
}

TEST_CASE("degree profile lower bound") {
  // path: two endpoints of degree 1, the rest degree 2: n * p
  Graph path = build_path(50);
  BoundReport rep = lb_degree_profile(path, 0.1);
  CHECK(rep.value == doctest::Approx(50 * 0.1));
  CHECK(rep.order_level);

  CHECK(lb_degree_profile(path, 0.0).value == doctest::Approx(0.0));

  // ring R_{n,2} is 4-regular: n p^2
  Graph ring = build_ring_lattice(1000, 2);
  CHECK(lb_degree_profile(ring, 0.05).value == doctest::Approx(1000 * 0.05 * 0.05));
}

TEST_CASE("system lower bound") {
  Graph chain = build_3regular_chain(6);
  std::vector<std::vector<int>> blocks;
  for (int b = 0; b < 6; ++b) {
    std::vector<int> w;
    for (int i = 0; i < 4; ++i) w.push_back(4 * b + i);
    blocks.push_back(w);
  }
  BoundReport rep = lb_system(chain, blocks, 0.1);
  CHECK(rep.value == doctest::Approx(6 * 0.1));  // two edges leave each block

  // overlapping subsets are rejected
  std::vector<std::vector<int>> overlap = {{0, 1}, {1, 2}};
  CHECK_THROWS(lb_system(chain, overlap, 0.1));
}
