#include "regseed/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <thread>

#include "regseed/densities.hpp"
#include "regseed/errors.hpp"
#include "regseed/regularize.hpp"

namespace regseed {

namespace {

constexpr std::uint64_t kPlanStream = 0x914a;

std::string rat_string(const BigRat& x) {
  BigInt den = rat_den(x);
  if (den == 1) return rat_num(x).str();
  return rat_num(x).str() + "/" + den.str();
}

nlohmann::json plan_json(const SamplingPlan& plan) {
  nlohmann::json j;
  j["mode"] = plan.mode == SamplingPlan::Mode::exhaustive ? "exhaustive" : "monte_carlo";
  j["samples"] = plan.sample_count;
  j["eta_samples"] = plan.eta_sample_count;
  j["work_cap"] = plan.work_cap;
  j["seed"] = plan.seed;
  return j;
}

double sample_stderr(const std::vector<double>& xs, double mean) {
  if (xs.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / (static_cast<double>(xs.size() - 1) * xs.size()));
}

}  // namespace

ExperimentResult run_experiment(const ColoredGraph& g, const ExperimentConfig& config) {
  require_valid(g);
  if (config.schedule.m.empty()) throw ValidationError("experiment needs a schedule");
  if (config.h < 1) throw ValidationError("experiment needs h >= 1");
  if (config.eps <= 0) throw ValidationError("experiment needs eps > 0");
  if (config.trials < 1) throw ValidationError("experiment needs at least one trial");
  if (config.probe_budget < 0) throw ValidationError("probe budget must be non-negative");
  if (config.threads < 1) throw ValidationError("thread count must be positive");

  int levels = static_cast<int>(config.schedule.m.size());
  int total = config.faithful ? config.trials : levels * config.trials;

  ExperimentResult out;
  out.config = config;
  out.trials.resize(total);

  auto run_trial = [&](int t) {
    std::uint64_t trial_seed = mix_seed(config.seed, static_cast<std::uint64_t>(t));
    Rng tr(trial_seed);
    int n;
    PartitionwiseMap phi;
    if (config.faithful) {
      std::tie(n, phi) = choose_n_and_sample(config.schedule, g.part_sizes, tr);
    } else {
      n = t / config.trials;
      phi = random_partitionwise_map(g.part_sizes,
                                     static_cast<int>(config.schedule.m[n]), tr);
    }
    ColoredGraph gstar = regularize(g, phi);
    DensityTable dens = density_table(gstar);
    std::vector<Complex> probes =
        default_probes(gstar, config.h, config.probe_budget, dens, tr);
    SamplingPlan plan = config.plan.with_seed(mix_seed(trial_seed, kPlanStream));
    RegularityReport rep =
        regularity_report(gstar, config.h, config.eps, probes, plan, config.practical_M);
    TrialResult& res = out.trials[t];
    res.index = t;
    res.n = n;
    res.m = config.schedule.m[n];
    res.trial_seed = trial_seed;
    res.score = rep.score;
    res.max_vertex_palette = gstar.max_vertex_palette();
    res.probes = rep.probes;
  };

  int workers = std::min(config.threads, total);
  if (workers <= 1) {
    for (int t = 0; t < total; ++t) run_trial(t);
  } else {
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(total);
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (;;) {
          int t = next.fetch_add(1);
          if (t >= total) return;
          try {
            run_trial(t);
          } catch (...) {
            errors[t] = std::current_exception();
          }
        }
      });
    for (auto& th : pool) th.join();
    for (int t = 0; t < total; ++t)
      if (errors[t]) std::rethrow_exception(errors[t]);
  }

  std::vector<double> scores;
  scores.reserve(total);
  for (const TrialResult& t : out.trials) scores.push_back(t.score);
  double sum = 0.0;
  for (double s : scores) sum += s;
  out.mean_score = sum / total;
  out.stderr_ = sample_stderr(scores, out.mean_score);

  for (int n = 0; n < levels; ++n) {
    std::vector<double> level_scores;
    for (const TrialResult& t : out.trials)
      if (t.n == n) level_scores.push_back(t.score);
    if (level_scores.empty()) continue;
    LevelAggregate agg;
    agg.n = n;
    agg.m = config.schedule.m[n];
    agg.trials = static_cast<int>(level_scores.size());
    double lsum = 0.0;
    for (double s : level_scores) lsum += s;
    agg.mean_score = lsum / agg.trials;
    agg.stderr_ = sample_stderr(level_scores, agg.mean_score);
    out.per_level.push_back(agg);
  }

  double tau = out.mean_score > 0.0 ? std::sqrt(out.mean_score) : 0.0;
  int over = 0;
  for (double s : scores)
    if (s > tau) ++over;
  out.markov_fraction = static_cast<double>(over) / total;
  double se = std::sqrt(
      std::max(0.0, out.markov_fraction * (1.0 - out.markov_fraction) / total));
  out.markov_bound = tau + 3.0 * se;
  out.markov_ok = out.markov_fraction <= out.markov_bound;
  return out;
}

nlohmann::json ExperimentResult::to_json() const {
  nlohmann::json j;
  nlohmann::json cfg;
  cfg["eps"] = rat_string(config.eps);
  cfg["faithful"] = config.faithful;
  cfg["graph"] = config.graph_description;
  cfg["h"] = config.h;
  cfg["plan"] = plan_json(config.plan);
  if (config.practical_M)
    cfg["practical_m"] = *config.practical_M;
  else
    cfg["practical_m"] = nullptr;
  cfg["probe_budget"] = config.probe_budget;
  cfg["schedule"] = config.schedule.m;
  cfg["seed"] = config.seed;
  cfg["trials"] = config.trials;
  j["config"] = std::move(cfg);

  nlohmann::json lvls = nlohmann::json::array();
  for (const LevelAggregate& a : per_level) {
    nlohmann::json l;
    l["m"] = a.m;
    l["mean_score"] = a.mean_score;
    l["n"] = a.n;
    l["stderr"] = a.stderr_;
    l["trials"] = a.trials;
    lvls.push_back(std::move(l));
  }
  j["levels"] = std::move(lvls);

  nlohmann::json mk;
  mk["bound"] = markov_bound;
  mk["fraction"] = markov_fraction;
  mk["ok"] = markov_ok;
  j["markov"] = std::move(mk);

  j["mean_score"] = mean_score;
  j["stderr"] = stderr_;

  nlohmann::json ts = nlohmann::json::array();
  for (const TrialResult& t : trials) {
    nlohmann::json tj;
    tj["index"] = t.index;
    tj["m"] = t.m;
    tj["max_vertex_palette"] = t.max_vertex_palette;
    tj["n"] = t.n;
    nlohmann::json ps = nlohmann::json::array();
    for (const ProbeRecord& p : t.probes) {
      nlohmann::json pj;
      pj["label"] = p.label;
      pj["lower"] = p.lower;
      pj["margin"] = p.margin;
      pj["p"] = p.p;
      pj["stderr"] = p.p_stderr;
      pj["upper"] = p.upper;
      ps.push_back(std::move(pj));
    }
    tj["probes"] = std::move(ps);
    tj["score"] = t.score;
    tj["seed"] = t.trial_seed;
    ts.push_back(std::move(tj));
  }
  j["trials"] = std::move(ts);
  return j;
}

std::string ExperimentResult::to_csv() const {
  std::string csv = "trial,n,m,score,max_vertex_palette,seed\n";
  char buf[160];
  for (const TrialResult& t : trials) {
    std::snprintf(buf, sizeof(buf), "%d,%d,%lld,%.17g,%d,%llu\n", t.index, t.n,
                  static_cast<long long>(t.m), t.score, t.max_vertex_palette,
                  static_cast<unsigned long long>(t.trial_seed));
    csv += buf;
  }
  return csv;
}

}  // namespace regseed
