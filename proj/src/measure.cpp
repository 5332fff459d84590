#include "labelrec/measure.hpp"

#include <stdexcept>

#include "labelrec/rng.hpp"

namespace labelrec {

NoiseParams NoiseParams::checked(double p, double q) {
  if (!(p >= 0.0) || !(q > 0.0) || !(p < q) || !(q < 0.5))
    throw std::invalid_argument("noise params: need 0 <= p < q < 1/2");
  return NoiseParams{p, q};
}

GroundTruth uniform_ground_truth(int n, uint64_t seed) {
  GroundTruth t;
  t.y.resize(n);
  for (int v = 0; v < n; ++v)
    t.y[v] = static_cast<int8_t>(
        rng::pm_one({seed, rng::kGroundTruth, static_cast<uint64_t>(v)}));
  return t;
}

EdgeObservations sample_edge_observations(const Graph& g, const GroundTruth& truth,
                                          double p, uint64_t seed) {
  if (static_cast<int>(truth.y.size()) != g.n)
    throw std::invalid_argument("sample_edge_observations: label length mismatch");
  if (p < 0.0 || p > 1.0)
    throw std::invalid_argument("sample_edge_observations: p outside [0,1]");
  EdgeObservations obs;
  obs.x.resize(g.edge_count());
  for (int e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.edges[e];
    int product = truth.y[u] * truth.y[v];
    bool flip = rng::bernoulli(p, {seed, rng::kEdgeObs, static_cast<uint64_t>(e)});
    obs.x[e] = static_cast<int8_t>(flip ? -product : product);
  }
  return obs;
}

VertexObservations sample_vertex_observations(const GroundTruth& truth, double q,
                                              uint64_t seed) {
  if (q < 0.0 || q > 1.0)
    throw std::invalid_argument("sample_vertex_observations: q outside [0,1]");
  VertexObservations obs;
  obs.z.resize(truth.y.size());
  for (size_t v = 0; v < truth.y.size(); ++v) {
    bool flip = rng::bernoulli(q, {seed, rng::kVertexObs, static_cast<uint64_t>(v)});
    obs.z[v] = static_cast<int8_t>(flip ? -truth.y[v] : truth.y[v]);
  }
  return obs;
}

long hamming_error(const Labels& yhat, const Labels& y) {
  if (yhat.size() != y.size())
    throw std::invalid_argument("hamming_error: length mismatch");
  long count = 0;
  for (size_t i = 0; i < y.size(); ++i)
    if (yhat[i] != y[i]) ++count;
  return count;
}

int signed_component_failures(const std::vector<std::vector<int>>& component_vertices,
                              const std::vector<Labels>& estimates, const Labels& y) {
  if (component_vertices.size() != estimates.size())
    throw std::invalid_argument("signed_component_failures: size mismatch");
  int failures = 0;
  for (size_t c = 0; c < estimates.size(); ++c) {
    const auto& verts = component_vertices[c];
    const auto& est = estimates[c];
    if (verts.size() != est.size())
      throw std::invalid_argument("signed_component_failures: estimate does not cover component");
    bool plus_ok = true, minus_ok = true;
    for (size_t i = 0; i < verts.size(); ++i) {
      if (est[i] != y[verts[i]]) plus_ok = false;
      if (est[i] != -y[verts[i]]) minus_ok = false;
      if (!plus_ok && !minus_ok) break;
    }
    if (!plus_ok && !minus_ok) ++failures;
  }
  return failures;
}

}  // namespace labelrec
