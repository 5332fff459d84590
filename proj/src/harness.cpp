#include "labelrec/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "labelrec/bounds.hpp"
#include "labelrec/decoder.hpp"
#include "labelrec/rng.hpp"
#include "labelrec/treedp.hpp"

namespace labelrec {

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

int isqrt_exact(int n, const char* what) {
  int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
  if (side * side != n)
    throw std::invalid_argument(std::string(what) + ": n must be a perfect square");
  return side;
}

}  // namespace

double ExperimentConfig::effective_delta() const {
  if (delta > 0.0) return delta;
  return n > 1 ? 1.0 / n : 0.5;
}

void ExperimentConfig::validate() const {
  if (n < 1) throw std::invalid_argument("config: n >= 1 required");
  if (trials < 1) throw std::invalid_argument("config: trials >= 1 required");
  if (p_values.empty()) throw std::invalid_argument("config: empty p grid");
  for (double p : p_values) NoiseParams::checked(p, q);
  if (threads < 1) throw std::invalid_argument("config: threads >= 1 required");
  double d = effective_delta();
  if (d <= 0.0 || d >= 1.0) throw std::invalid_argument("config: delta in (0,1) required");
  static const std::vector<std::string> kDecoders = {
      "tree", "decomp", "spanning-tree", "spanning", "majority", "genie"};
  if (std::find(kDecoders.begin(), kDecoders.end(), decoder) == kDecoders.end())
    throw std::invalid_argument("config: unknown decoder '" + decoder + "'");
}

FamilyInstance build_family(const ExperimentConfig& cfg) {
  FamilyInstance inst;
  auto adopt = [&](FamilyDecomposition fam) {
    inst.graph = std::move(fam.graph);
    inst.td = std::move(fam.td);
    inst.kinds = std::move(fam.kinds);
  };
  if (cfg.family == "path") {
    if (cfg.n >= 2)
      adopt(decomp_path(cfg.n));
    else
      inst.graph = probe_all(build_path(cfg.n));
  } else if (cfg.family == "grid" || cfg.family == "grid3") {
    int c = cfg.family == "grid3" ? 3 : cfg.c;
    if (cfg.n % c != 0)
      throw std::invalid_argument("config: grid requires c | n");
    adopt(decomp_constant_height_grid(c, cfg.n / c));
  } else if (cfg.family == "zigzag") {
    adopt(decomp_square_grid_zigzag(isqrt_exact(cfg.n, "zigzag")));
  } else if (cfg.family == "ring") {
    adopt(decomp_ring_lattice(cfg.n, cfg.k));
  } else if (cfg.family == "nw") {
    Graph g = build_newman_watts(cfg.n, cfg.k, cfg.alpha,
                                 rng::mix({cfg.seed, rng::kTrial, 0xf00d}));
    adopt(decomp_newman_watts(g, cfg.n, cfg.k));
  } else if (cfg.family == "tri") {
    adopt(decomp_triangular(isqrt_exact(cfg.n, "tri")));
  } else if (cfg.family == "hex") {
    adopt(decomp_hexagonal(isqrt_exact(cfg.n, "hex")));
  } else if (cfg.family == "cube") {
    int side = static_cast<int>(std::lround(std::cbrt(static_cast<double>(cfg.n))));
    if (side * side * side != cfg.n)
      throw std::invalid_argument("config: cube requires n to be a perfect cube");
    adopt(decomp_hypergrid({side, side, side}));
  } else if (cfg.family == "tube") {
    if (cfg.n % (cfg.c * cfg.c) != 0)
      throw std::invalid_argument("config: tube requires c^2 | n");
    adopt(decomp_hypertube(cfg.c, cfg.n / (cfg.c * cfg.c)));
  } else if (cfg.family == "chain3") {
    if (cfg.n % 4 != 0) throw std::invalid_argument("config: chain3 requires 4 | n");
    inst.graph = probe_all(build_3regular_chain(cfg.n / 4, 3));
  } else {
    throw std::invalid_argument("config: unknown family '" + cfg.family + "'");
  }
  if (inst.td) inst.props = compute_properties(*inst.td, inst.graph);
  return inst;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  FamilyInstance inst = build_family(cfg);
  const Graph& g = inst.graph.base;
  const double delta = cfg.effective_delta();
  if (cfg.decoder == "tree" && !is_tree(g))
    throw std::invalid_argument("config: tree decoder requires a tree family");
  if (cfg.decoder == "decomp" && !inst.td)
    throw std::invalid_argument("config: family has no decomposition");

  ExperimentResult res;
  res.config = cfg;
  const int np = static_cast<int>(cfg.p_values.size());
  res.trials.resize(static_cast<size_t>(np) * cfg.trials);

  auto run_one = [&](int pi, int t) {
    double p = cfg.p_values[pi];
    uint64_t upi = static_cast<uint64_t>(pi), ut = static_cast<uint64_t>(t);
    uint64_t trial_seed = rng::mix({cfg.seed, upi, ut, 0});
    GroundTruth truth = uniform_ground_truth(g.n, rng::mix({cfg.seed, upi, ut, 1}));
    EdgeObservations x =
        sample_edge_observations(g, truth, p, rng::mix({cfg.seed, upi, ut, 2}));
    VertexObservations z =
        sample_vertex_observations(truth, cfg.q, rng::mix({cfg.seed, upi, ut, 3}));

    TrialResult tr;
    tr.p_index = pi;
    tr.trial = t;
    tr.seed = trial_seed;
    auto t0 = std::chrono::steady_clock::now();
    // decoder errors are recorded on the trial, never fatal
    try {
      Labels yhat;
      if (cfg.decoder == "tree") {
        yhat = tree_inference(g, x, z, p, delta);
      } else if (cfg.decoder == "spanning-tree" || cfg.decoder == "spanning") {
        yhat = spanning_tree_decode(g, x, z, p, delta);
      } else if (cfg.decoder == "majority") {
        yhat = majority_decode(g, x, z);
      } else if (cfg.decoder == "genie") {
        yhat = genie_map_decode(g, x, z, truth);
      } else {  // decomp
        DecodeResult dec = decode(inst.graph, *inst.td, *inst.props, x, z, p, delta);
        yhat = std::move(dec.yhat);
        std::vector<Labels> est(dec.estimates.size());
        for (size_t i = 0; i < est.size(); ++i) est[i] = dec.estimates[i].labels;
        tr.comp_failures = signed_component_failures(inst.td->components, est, truth.y);
        tr.stitch_violations = dec.diag.stitch_violations;
      }
      tr.hamming = hamming_error(yhat, truth.y);
      tr.frac = static_cast<double>(tr.hamming) / g.n;
    } catch (const std::exception& ex) {
      tr.error = ex.what();
      tr.hamming = -1;
      tr.frac = -1.0;
    }
    auto t1 = std::chrono::steady_clock::now();
    if (cfg.record_timing)
      tr.ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    res.trials[static_cast<size_t>(pi) * cfg.trials + t] = tr;
  };

  const int jobs = np * cfg.trials;
  if (cfg.threads == 1) {
    for (int j = 0; j < jobs; ++j) run_one(j / cfg.trials, j % cfg.trials);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < cfg.threads; ++w)
      pool.emplace_back([&] {
        for (int j = next.fetch_add(1); j < jobs; j = next.fetch_add(1))
          run_one(j / cfg.trials, j % cfg.trials);
      });
    for (auto& th : pool) th.join();
  }

  res.per_p.resize(np);
  for (int pi = 0; pi < np; ++pi) {
    PStats& s = res.per_p[pi];
    s.p = cfg.p_values[pi];
    double sum = 0.0, sum2 = 0.0;
    int ok = 0;
    for (int t = 0; t < cfg.trials; ++t) {
      const TrialResult& tr = res.trials[static_cast<size_t>(pi) * cfg.trials + t];
      if (!tr.error.empty()) continue;
      double h = static_cast<double>(tr.hamming);
      sum += h;
      sum2 += h * h;
      ++ok;
    }
    s.trials = ok;
    s.mean = ok > 0 ? sum / ok : 0.0;
    double var = ok > 1 ? (sum2 - sum * sum / ok) / (ok - 1) : 0.0;
    s.stddev = std::sqrt(std::max(0.0, var));
  }
  if (np >= 3) {
    ScalingFit fit = fit_scaling(res.per_p);
    if (fit.points_used >= 3) res.fit = fit;
  }
  return res;
}

ScalingFit fit_scaling(const std::vector<PStats>& stats) {
  if (stats.size() < 3)
    throw std::invalid_argument("fit_scaling: at least 3 p-values required");
  ScalingFit fit;
  std::vector<std::pair<double, double>> pts;
  for (const auto& s : stats) {
    if (s.mean <= 0.0) {
      fit.warnings.push_back("dropping p=" + fmt_double(s.p) + ": zero mean error");
      continue;
    }
    if (s.p <= 0.0) {
      fit.warnings.push_back("dropping p=0 point");
      continue;
    }
    pts.push_back({std::log(s.p), std::log(s.mean)});
  }
  fit.points_used = static_cast<int>(pts.size());
  if (pts.size() < 2) return fit;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double m = static_cast<double>(pts.size());
  fit.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / m;
  return fit;
}

std::string results_csv(const ExperimentResult& res) {
  const ExperimentConfig& cfg = res.config;
  std::string out =
      "family,n,p,q,delta,decoder,trial,seed,hamming,frac,comp_failures,"
      "stitch_violations,ms\n";
  for (const auto& tr : res.trials) {
    out += cfg.family;
    out += ',' + std::to_string(cfg.n);
    out += ',' + fmt_double(cfg.p_values[tr.p_index]);
    out += ',' + fmt_double(cfg.q);
    out += ',' + fmt_double(cfg.effective_delta());
    out += ',' + cfg.decoder;
    out += ',' + std::to_string(tr.trial);
    out += ',' + std::to_string(tr.seed);
    out += ',' + std::to_string(tr.hamming);
    out += ',' + fmt_double(tr.frac);
    out += ',' + std::to_string(tr.comp_failures);
    out += ',' + std::to_string(tr.stitch_violations);
    out += ',' + fmt_double(tr.ms);
    out += '\n';
  }
  return out;
}

std::string results_summary_json(const ExperimentResult& res) {
  nlohmann::json j;
  const ExperimentConfig& cfg = res.config;
  j["config"] = {{"family", cfg.family}, {"n", cfg.n},
                 {"c", cfg.c},           {"k", cfg.k},
                 {"alpha", cfg.alpha},   {"p_values", cfg.p_values},
                 {"q", cfg.q},           {"delta", cfg.effective_delta()},
                 {"trials", cfg.trials}, {"seed", cfg.seed},
                 {"decoder", cfg.decoder}};
  j["per_p"] = nlohmann::json::array();
  for (const auto& s : res.per_p)
    j["per_p"].push_back({{"p", s.p},
                          {"mean_hamming", s.mean},
                          {"stddev", s.stddev},
                          {"trials", s.trials}});
  if (res.fit) {
    j["fit"] = {{"slope", res.fit->slope},
                {"intercept", res.fit->intercept},
                {"points_used", res.fit->points_used},
                {"warnings", res.fit->warnings}};
  }
  return j.dump(2);
}

}  // namespace labelrec
