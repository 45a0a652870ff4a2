#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "regseed/bignum.hpp"
#include "regseed/complex.hpp"
#include "regseed/densities.hpp"
#include "regseed/graph.hpp"
#include "regseed/rng.hpp"

namespace regseed {

// How an expectation is evaluated.  Exhaustive enumeration is exact and
// refuses (WorkCapError) beyond work_cap; Monte Carlo draws sample_count
// samples.  eta_sample_count drives the outer expectation of eta separately,
// since one eta sample costs a full bucketing pass.  Seeds derive from `seed`
// by sample index, so results are independent of worker layout.
struct SamplingPlan {
  enum class Mode { exhaustive, monte_carlo };
  Mode mode = Mode::monte_carlo;
  std::int64_t sample_count = 10'000;
  std::int64_t eta_sample_count = 2'000;
  std::uint64_t work_cap = 10'000'000;
  std::uint64_t seed = 0;

  SamplingPlan with_seed(std::uint64_t s) const {
    SamplingPlan p = *this;
    p.seed = s;
    return p;
  }
};

struct Estimate {
  double value = 0.0;
  double stderr_ = 0.0;
  bool exact = false;
};

// P over uniform independent maps phi in Phi(h) that every visible slot of s
// matches g.  stderr is sqrt(p(1-p)/N) in Monte Carlo mode, 0 in exhaustive
// mode.
Estimate embed_probability(const ColoredGraph& g, const Complex& s, const SamplingPlan& plan);

// P[visible edges match | visible vertices match].  The vertex condition is
// slotwise independent, so Monte Carlo draws directly from the conditional
// distribution (uniform over each color class).  Fails on zero-probability
// conditions.
Estimate conditional_embed_probability(const ColoredGraph& g, const Complex& s,
                                       const SamplingPlan& plan);

// eta for one occurring pair total color of gstar: the mean over maps phi' in
// Phi(samples_per_part) and over edges e* with the total color's frame of the
// squared gap between the bucket-conditional color probability and d.  The
// inner probabilities are exact per sampled phi' (edges are bucketed by the
// refined frame); only the outer expectation is sampled in Monte Carlo mode.
Estimate eta(const ColoredGraph& gstar, const TotalColor& tc,
             std::int64_t samples_per_part, const SamplingPlan& plan);

// eta for every occurring pair total color at once (one bucketing pass per
// sampled phi' serves all of them).
std::map<TotalColor, Estimate> eta_table(const ColoredGraph& gstar,
                                         std::int64_t samples_per_part,
                                         const SamplingPlan& plan,
                                         const DensityTable& dens);

// Total colors tc = (c_J)_{J subset I} with d((c_J)_{J subset I*}) <=
// sqrt(eps1)/|C_I*| for some nonempty I* subset I; decided exactly in squared
// form, so rational-boundary cases are not float-sensitive.  Contains vertex
// and pair total colors.
std::set<TotalColor> bad_colors(const ColoredGraph& gstar, const BigRat& eps1);

struct ErrorEntry {
  double eta = 0.0;
  double eta_stderr = 0.0;
  double delta = 0.0;
  bool is_bad = false;
};

struct ErrorTable {
  std::map<TotalColor, ErrorEntry> entries;  // occurring pair total colors
  std::set<TotalColor> bad;                  // vertex and pair entries
  BigRat eps1;
  BigRat sqrt_eps1;
  double C = 0.0;
  BigInt M;
  std::int64_t samples_per_part = 0;

  // delta is 0 for vertex total colors and for unsupported colors.
  double delta(const TotalColor& tc) const;
};

// Fills eta/BAD/delta for every occurring pair total color of gstar:
// delta = 1 on BAD colors, min(1, C sqrt(eta)) otherwise, 0 for vertex total
// colors.  M defaults to the schedule budget ceil((c1(G*)/sqrt(eps1))^(rh))
// and is refused (WorkCapError) when M*h exceeds the plan's work cap; pass
// practical_M to override.
ErrorTable delta_table(const ColoredGraph& gstar, int h, const BigRat& eps,
                       const SamplingPlan& plan,
                       std::optional<std::int64_t> practical_M = std::nullopt);

// Violation margin of the factorization window: distance from the measured
// embedding probability of s to
//   [ prod_v d * prod_e max(0, d - delta),  prod_v d * prod_e min(1, d + delta) ],
// 0 when inside.
double counting_check(const ColoredGraph& g, const Complex& s, const DensityTable& dens,
                      const ErrorTable& errs, const SamplingPlan& plan);

struct ProbeRecord {
  std::string label;
  double p = 0.0;
  double p_stderr = 0.0;
  double lower = 0.0;  // interval ends
  double upper = 0.0;
  double margin = 0.0;
};

struct PairReport {
  int i = 0, j = 0;
  int palette = 0;
  double mean_delta = 0.0;    // E over edges of delta(G*<e>)
  double bad_fraction = 0.0;  // edge mass on BAD total colors
};

struct RegularityReport {
  double score = 0.0;  // max over pairs of palette * mean_delta
  std::vector<PairReport> pairs;
  std::vector<ProbeRecord> probes;
  BigRat eps;
  BigRat eps1;
  double C = 0.0;
  BigInt M;
  std::int64_t samples_per_part = 0;
  SamplingPlan plan;
  // Probes sample the factorization property; they are not a proof of it.
  std::string coverage_note;
};

// Score plus per-pair statistics and probe margins.  The score is the
// certified upper bound |C_I| * E_e[delta] realized by the constructed delta;
// probe margins are the raw per-complex deviations.
RegularityReport regularity_report(const ColoredGraph& gstar, int h, const BigRat& eps,
                                   const std::vector<Complex>& probes,
                                   const SamplingPlan& plan,
                                   std::optional<std::int64_t> practical_M = std::nullopt);

// Default probe suite: single-edge complexes over occurring pair total colors
// (a seeded subsample when they outnumber the budget after reserving room for
// random probes) plus fully visible random complexes at the caller's h.
std::vector<Complex> default_probes(const ColoredGraph& g, int h, int budget,
                                    const DensityTable& dens, Rng& rng);

std::string probe_label(const Complex& s);

}  // namespace regseed
