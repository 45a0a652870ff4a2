#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "regseed/graph.hpp"
#include "regseed/schedule.hpp"
#include "regseed/statistics.hpp"

namespace regseed {

// One regularization experiment: draw maps, regularize, score.  The default
// mode sweeps every schedule entry with `trials` draws each; faithful mode
// instead draws (n, phi) jointly per trial, n uniform, matching the
// randomized statement being tested.
struct ExperimentConfig {
  PracticalSchedule schedule;
  int h = 1;
  BigRat eps;
  int probe_budget = 16;
  int trials = 10;
  SamplingPlan plan;
  std::uint64_t seed = 0;
  bool faithful = false;
  int threads = 1;
  std::optional<std::int64_t> practical_M = 1;
  std::string graph_description;
};

struct TrialResult {
  int index = 0;
  int n = 0;
  std::int64_t m = 0;
  std::uint64_t trial_seed = 0;
  double score = 0.0;
  int max_vertex_palette = 0;
  std::vector<ProbeRecord> probes;
};

struct LevelAggregate {
  int n = 0;
  std::int64_t m = 0;
  int trials = 0;
  double mean_score = 0.0;
  double stderr_ = 0.0;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<TrialResult> trials;
  std::vector<LevelAggregate> per_level;
  double mean_score = 0.0;
  double stderr_ = 0.0;
  // Tail check: fraction of trials with score > sqrt(mean) must stay below
  // sqrt(mean) + 3 * binomial stderr.
  double markov_fraction = 0.0;
  double markov_bound = 0.0;
  bool markov_ok = false;

  nlohmann::json to_json() const;
  std::string to_csv() const;
};

// Deterministic for a fixed (config, seed) regardless of thread count: every
// trial runs on its own derived seed and lands in its own slot.
ExperimentResult run_experiment(const ColoredGraph& g, const ExperimentConfig& config);

}  // namespace regseed
