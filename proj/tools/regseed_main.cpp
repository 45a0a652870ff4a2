#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "regseed/densities.hpp"
#include "regseed/errors.hpp"
#include "regseed/experiment.hpp"
#include "regseed/generators.hpp"
#include "regseed/graph_io.hpp"
#include "regseed/oracle.hpp"
#include "regseed/regularize.hpp"
#include "regseed/schedule.hpp"
#include "regseed/statistics.hpp"

namespace {

using nlohmann::json;
using namespace regseed;

std::string rat_string(const BigRat& x) {
  BigInt den = rat_den(x);
  if (den == 1) return rat_num(x).str();
  return rat_num(x).str() + "/" + den.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::cout << text;
  else
    write_file(out_path, text);
}

json plan_to_json(const SamplingPlan& plan) {
  json j;
  j["mode"] = plan.mode == SamplingPlan::Mode::exhaustive ? "exhaustive" : "monte_carlo";
  j["samples"] = plan.sample_count;
  j["eta_samples"] = plan.eta_sample_count;
  j["work_cap"] = plan.work_cap;
  j["seed"] = plan.seed;
  return j;
}

struct PlanOptions {
  std::string mode = "monte_carlo";
  std::int64_t samples = 10'000;
  std::int64_t eta_samples = 2'000;
  std::uint64_t work_cap = 10'000'000;
  std::uint64_t seed = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--mode", mode, "evaluation mode: monte_carlo or exhaustive")
        ->check(CLI::IsMember({"monte_carlo", "exhaustive"}));
    cmd->add_option("--samples", samples, "Monte Carlo samples per probability estimate");
    cmd->add_option("--eta-samples", eta_samples, "Monte Carlo samples for each eta estimate");
    cmd->add_option("--work-cap", work_cap, "largest enumeration accepted in exhaustive mode");
    cmd->add_option("--seed", seed, "random seed");
  }

  SamplingPlan plan() const {
    SamplingPlan p;
    p.mode = mode == "exhaustive" ? SamplingPlan::Mode::exhaustive
                                  : SamplingPlan::Mode::monte_carlo;
    p.sample_count = samples;
    p.eta_sample_count = eta_samples;
    p.work_cap = work_cap;
    p.seed = seed;
    return p;
  }
};

std::optional<std::int64_t> practical_m_option(std::int64_t eta_m) {
  if (eta_m < 0) throw ValidationError("--eta-m must be >= 0 (0 uses the full budget)");
  if (eta_m == 0) return std::nullopt;
  return eta_m;
}

int run_gen(const std::string& spec_text, std::uint64_t seed, const std::string& out) {
  GeneratorSpec spec = parse_generator_spec(spec_text, seed);
  emit(write_graph_json(generate(spec)), out);
  return 0;
}

int run_regularize(const std::string& in, std::int64_t m, std::uint64_t seed,
                   const std::string& out, const std::string& palette_out) {
  if (m < 0) throw ValidationError("--m must be non-negative");
  if (m > (1 << 20)) throw ValidationError("--m is implausibly large");
  ColoredGraph g = load_graph(in);
  Rng rng(seed);
  PartitionwiseMap phi = random_partitionwise_map(g.part_sizes, static_cast<int>(m), rng);
  std::vector<std::vector<Signature>> palettes;
  ColoredGraph gstar = regularize(g, phi, palette_out.empty() ? nullptr : &palettes);
  emit(write_graph_json(gstar), out);
  if (!palette_out.empty()) write_file(palette_out, write_signature_sidecar(palettes));
  return 0;
}

int run_measure(const std::string& in, int h, const std::string& eps_text, int probes,
                std::int64_t eta_m, const PlanOptions& popt, const std::string& out) {
  ColoredGraph g = load_graph(in);
  BigRat eps = parse_rational(eps_text);
  SamplingPlan plan = popt.plan();
  DensityTable dens = density_table(g);
  Rng probe_rng(mix_seed(plan.seed, 0x9b0b));
  std::vector<Complex> probe_set = default_probes(g, h, probes, dens, probe_rng);
  RegularityReport rep =
      regularity_report(g, h, eps, probe_set, plan, practical_m_option(eta_m));

  json j;
  j["c"] = rep.C;
  j["coverage_note"] = rep.coverage_note;
  j["eps"] = rat_string(rep.eps);
  j["eps1"] = rat_string(rep.eps1);
  j["m"] = rep.M.str();
  json pairs = json::array();
  for (const PairReport& p : rep.pairs) {
    json pj;
    pj["bad_fraction"] = p.bad_fraction;
    pj["i"] = p.i;
    pj["j"] = p.j;
    pj["mean_delta"] = p.mean_delta;
    pj["palette"] = p.palette;
    pairs.push_back(std::move(pj));
  }
  j["pairs"] = std::move(pairs);
  j["plan"] = plan_to_json(plan);
  json probes_j = json::array();
  for (const ProbeRecord& p : rep.probes) {
    json pj;
    pj["label"] = p.label;
    pj["lower"] = p.lower;
    pj["margin"] = p.margin;
    pj["p"] = p.p;
    pj["stderr"] = p.p_stderr;
    pj["upper"] = p.upper;
    probes_j.push_back(std::move(pj));
  }
  j["probes"] = std::move(probes_j);
  j["samples_per_part"] = rep.samples_per_part;
  j["score"] = rep.score;
  emit(j.dump(2) + "\n", out);
  return 0;
}

int run_schedule(int r, int h, int b1, int b2, const std::string& eps_text, int levels,
                 std::int64_t digit_cap, std::int64_t check_n, const std::string& out) {
  BigRat eps = parse_rational(eps_text);
  TheoreticalSchedule sched(r, h, b1, b2, eps, digit_cap);
  json j;
  j["b1"] = b1;
  j["b2"] = b2;
  j["c"] = rational_decimal((sched.C().lo + sched.C().hi) / 2, 12);
  j["c_squared"] = rat_string(sched.C_squared());
  j["digit_cap"] = digit_cap;
  j["eps"] = rat_string(eps);
  j["eps1"] = rat_string(sched.eps1());
  j["h"] = h;
  json lv = json::array();
  for (int n = 0; n <= levels; ++n) {
    const ScheduleValue& v = sched.m_of(n);
    json e;
    e["n"] = n;
    if (v.overflow) {
      e["overflow"] = true;
      e["lower_bound_log2"] = v.lower_bound_log2.str();
    } else {
      e["overflow"] = false;
      e["value"] = v.value.str();
    }
    lv.push_back(std::move(e));
  }
  j["levels"] = std::move(lv);
  j["m_recursion"] = "equality";
  j["n_tilde"] = sched.ntilde().str();
  if (check_n >= 0) j["n_tilde_holds_at"] = n_tilde_inequality_holds(r, h, b2, eps, check_n);
  j["r"] = r;
  j["sqrt_eps1"] = rat_string(sched.sqrt_eps1());
  emit(j.dump(2) + "\n", out);
  return 0;
}

int run_verify(const std::string& lemma, int instances, std::uint64_t seed,
               std::uint64_t work_cap) {
  if (instances < 1) throw ValidationError("--instances must be positive");
  std::vector<oracle::SuiteReport> reports;
  if (lemma == "counting" || lemma == "all")
    reports.push_back(oracle::counting_suite(instances, seed, work_cap));
  if (lemma == "meansquare" || lemma == "all")
    reports.push_back(oracle::meansquare_suite(lemma == "all" ? instances / 2 : instances,
                                               seed, work_cap));
  if (lemma == "cauchy" || lemma == "all")
    reports.push_back(oracle::cauchy_suite(instances, seed));
  if (lemma == "energy") reports.push_back(oracle::energy_suite(instances, seed, work_cap));
  if (reports.empty())
    throw ValidationError("unknown lemma '" + lemma +
                          "' (expected counting, meansquare, cauchy, energy, or all)");
  int violations = 0;
  for (const auto& rep : reports) {
    std::cout << rep.name << ": " << rep.instances << " instances, " << rep.results.size()
              << " checks, " << rep.violations << " violations\n";
    for (const auto& res : rep.results)
      if (!res.holds)
        std::cout << "  VIOLATION " << res.instance << " lhs=" << res.lhs
                  << " rhs=" << res.rhs << "\n";
    violations += rep.violations;
  }
  if (violations > 0)
    throw VerificationError(std::to_string(violations) + " checks failed");
  return 0;
}

int run_experiment_cmd(const std::string& in, const std::string& gen_spec,
                       const std::string& schedule_text, int h, const std::string& eps_text,
                       int trials, int probes, std::int64_t eta_m, bool faithful, int threads,
                       bool csv, const PlanOptions& popt, const std::string& out) {
  if (in.empty() == gen_spec.empty())
    throw ValidationError("pass exactly one of --in or --gen");
  ExperimentConfig cfg;
  ColoredGraph g;
  if (!in.empty()) {
    g = load_graph(in);
    cfg.graph_description = in;
  } else {
    GeneratorSpec spec = parse_generator_spec(gen_spec, mix_seed(popt.seed, 0x6e6e));
    g = generate(spec);
    cfg.graph_description = gen_spec;
  }
  cfg.schedule = parse_schedule(schedule_text);
  cfg.h = h;
  cfg.eps = parse_rational(eps_text);
  cfg.probe_budget = probes;
  cfg.trials = trials;
  cfg.plan = popt.plan();
  cfg.seed = popt.seed;
  cfg.faithful = faithful;
  cfg.threads = threads;
  cfg.practical_M = practical_m_option(eta_m);
  ExperimentResult res = run_experiment(g, cfg);
  emit(csv ? res.to_csv() : res.to_json().dump(2) + "\n", out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"randomized regularization toolkit for colored multipartite graphs"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print help and exit");

  // gen
  auto* gen = app.add_subcommand("gen", "generate a test graph");
  std::string gen_spec;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("--spec", gen_spec,
                  "generator: mono:<sizes> | uniform:<b1>,<b2>:<sizes> | half:<n> | "
                  "planted:<k>,<noise>:<sizes>")
      ->required();
  gen->add_option("--seed", gen_seed, "random seed");
  gen->add_option("--out", gen_out, "output path (stdout when omitted)");

  // regularize
  auto* reg = app.add_subcommand("regularize", "recolor vertices by adjacency signature");
  std::string reg_in, reg_out, reg_palette;
  std::int64_t reg_m = 1;
  std::uint64_t reg_seed = 0;
  reg->add_option("--in", reg_in, "input graph JSON")->required();
  reg->add_option("--m", reg_m, "sampled vertices per part");
  reg->add_option("--seed", reg_seed, "random seed");
  reg->add_option("--out", reg_out, "output path (stdout when omitted)");
  reg->add_option("--palette-out", reg_palette, "write the color id -> signature sidecar here");

  // measure
  auto* meas = app.add_subcommand("measure", "score a graph and probe the counting windows");
  std::string meas_in, meas_eps = "1/4", meas_out;
  int meas_h = 1, meas_probes = 16;
  std::int64_t meas_eta_m = 1;
  PlanOptions meas_plan;
  meas->add_option("--in", meas_in, "input graph JSON")->required();
  meas->add_option("--h", meas_h, "slots per part in probe templates");
  meas->add_option("--eps", meas_eps, "target accuracy (rational, e.g. 1/4)");
  meas->add_option("--probes", meas_probes, "number of probe templates");
  meas->add_option("--eta-m", meas_eta_m,
                   "practical eta budget M (samples per part = M*h); 0 uses the full "
                   "schedule budget");
  meas_plan.attach(meas);
  meas->add_option("--out", meas_out, "output path (stdout when omitted)");

  // schedule
  auto* sch = app.add_subcommand("schedule", "print the derived constants and sample schedule");
  int sch_r = 2, sch_h = 1, sch_b1 = 1, sch_b2 = 2, sch_levels = 2;
  std::string sch_eps = "3/5", sch_out;
  std::int64_t sch_cap = 1'000'000, sch_check = -1;
  sch->add_option("--r", sch_r, "number of parts");
  sch->add_option("--h", sch_h, "slots per part");
  sch->add_option("--b1", sch_b1, "vertex palette bound");
  sch->add_option("--b2", sch_b2, "pair palette bound");
  sch->add_option("--eps", sch_eps, "target accuracy (rational)");
  sch->add_option("--levels", sch_levels, "levels of m(n) to print");
  sch->add_option("--digit-cap", sch_cap, "refuse values with more decimal digits than this");
  sch->add_option("--check-n", sch_check, "also report whether the size inequality holds at n");
  sch->add_option("--out", sch_out, "output path (stdout when omitted)");

  // verify
  auto* ver = app.add_subcommand("verify", "run exact random-instance checks");
  std::string ver_lemma = "all";
  int ver_instances = 100;
  std::uint64_t ver_seed = 1, ver_cap = 10'000'000;
  ver->add_option("--lemma", ver_lemma, "counting | meansquare | cauchy | energy | all");
  ver->add_option("--instances", ver_instances, "instances per suite");
  ver->add_option("--seed", ver_seed, "base seed");
  ver->add_option("--work-cap", ver_cap, "largest enumeration accepted");

  // experiment
  auto* exp = app.add_subcommand("experiment", "sweep a schedule: draw, regularize, score");
  std::string exp_in, exp_gen, exp_sched = "0,1,2,4,8", exp_eps = "1/4", exp_out;
  int exp_h = 2, exp_trials = 10, exp_probes = 16, exp_threads = 1;
  std::int64_t exp_eta_m = 1;
  bool exp_faithful = false, exp_csv = false;
  PlanOptions exp_plan;
  exp->add_option("--in", exp_in, "input graph JSON");
  exp->add_option("--gen", exp_gen, "generator spec instead of --in");
  exp->add_option("--schedule", exp_sched, "comma-separated m values");
  exp->add_option("--h", exp_h, "slots per part in probe templates");
  exp->add_option("--eps", exp_eps, "target accuracy (rational)");
  exp->add_option("--trials", exp_trials, "trials per schedule entry (or total with --faithful)");
  exp->add_option("--probes", exp_probes, "probe templates per trial");
  exp->add_option("--eta-m", exp_eta_m, "practical eta budget M; 0 uses the full budget");
  exp->add_flag("--faithful", exp_faithful,
                "draw (n, map) jointly per trial instead of sweeping every level");
  exp->add_option("--threads", exp_threads, "worker threads (output is identical either way)");
  exp->add_flag("--csv", exp_csv, "emit per-trial CSV instead of JSON");
  exp_plan.attach(exp);
  exp->add_option("--out", exp_out, "output path (stdout when omitted)");

  for (CLI::App* sub : {gen, reg, meas, sch, ver, exp})
    sub->set_help_flag("--help", "print help and exit");

  try {
    app.parse(argc, argv);
    if (gen->parsed()) return run_gen(gen_spec, gen_seed, gen_out);
    if (reg->parsed()) return run_regularize(reg_in, reg_m, reg_seed, reg_out, reg_palette);
    if (meas->parsed())
      return run_measure(meas_in, meas_h, meas_eps, meas_probes, meas_eta_m, meas_plan,
                         meas_out);
    if (sch->parsed())
      return run_schedule(sch_r, sch_h, sch_b1, sch_b2, sch_eps, sch_levels, sch_cap,
                          sch_check, sch_out);
    if (ver->parsed()) return run_verify(ver_lemma, ver_instances, ver_seed, ver_cap);
    if (exp->parsed())
      return run_experiment_cmd(exp_in, exp_gen, exp_sched, exp_h, exp_eps, exp_trials,
                                exp_probes, exp_eta_m, exp_faithful, exp_threads, exp_csv,
                                exp_plan, exp_out);
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 1;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const WorkCapError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return 2;
  } catch (const DigitCapError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return 2;
  } catch (const VerificationError& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
