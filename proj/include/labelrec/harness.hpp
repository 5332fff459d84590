#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "labelrec/decomp.hpp"
#include "labelrec/graph.hpp"
#include "labelrec/measure.hpp"

// Seeded Monte-Carlo experiment runner: configure a (family, decoder,
// p-grid, q, trials) sweep, execute it reproducibly (per-trial sub-seeds;
// output order independent of scheduling), aggregate, and fit the
// log-log scaling exponent of mean error versus p.

namespace labelrec {

struct ExperimentConfig {
  std::string family = "path";  // path|grid|grid3|zigzag|ring|nw|tri|hex|cube|tube|chain3
  int n = 0;
  int c = 3;           // grid height / tube cross-section
  int k = 2;           // ring half-degree
  double alpha = 0.0;  // Newman-Watts shortcut intensity
  std::vector<double> p_values;
  double q = 0.25;
  double delta = 0.0;  // 0 means default 1/n
  int trials = 1;
  uint64_t seed = 0;
  std::string decoder = "decomp";  // tree|decomp|spanning|majority|genie
  std::string out;                 // CSV path; empty writes no file
  int threads = 1;
  bool record_timing = false;  // keep the ms column zero so output is byte-stable

  double effective_delta() const;
  void validate() const;
};

// A family instance shared by all trials of an experiment.
struct FamilyInstance {
  ProbedGraph graph;
  std::optional<TreeDecomposition> td;
  std::vector<ComponentKind> kinds;
  std::optional<DecompositionProperties> props;
};

FamilyInstance build_family(const ExperimentConfig& cfg);

struct TrialResult {
  int p_index = 0;
  int trial = 0;
  uint64_t seed = 0;
  long hamming = 0;  // -1 when the trial's decoder raised an error
  double frac = 0.0;
  int comp_failures = -1;      // -1 where not applicable
  int stitch_violations = -1;  // -1 where not applicable
  double ms = 0.0;
  std::string error;  // decoder error, recorded per trial rather than fatal
};

struct PStats {
  double p = 0.0;
  double mean = 0.0;
  double stddev = 0.0;
  int trials = 0;
};

struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  int points_used = 0;
  std::vector<std::string> warnings;
};

// Ordinary least squares of log(mean error) against log(p); zero means are
// dropped with a warning. Requires >= 3 usable p-values.
ScalingFit fit_scaling(const std::vector<PStats>& stats);

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<TrialResult> trials;  // ordered by (p_index, trial)
  std::vector<PStats> per_p;
  std::optional<ScalingFit> fit;  // present when >= 3 p-values have positive mean
};

ExperimentResult run_experiment(const ExperimentConfig& cfg);

// CSV schema: header
// family,n,p,q,delta,decoder,trial,seed,hamming,frac,comp_failures,stitch_violations,ms
std::string results_csv(const ExperimentResult& res);
// JSON summary: config echo, per-p stats, fit.
std::string results_summary_json(const ExperimentResult& res);

}  // namespace labelrec
