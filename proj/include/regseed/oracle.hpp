#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "regseed/bignum.hpp"
#include "regseed/complex.hpp"
#include "regseed/graph.hpp"
#include "regseed/schedule.hpp"
#include "regseed/statistics.hpp"

// Brute-force reference implementations and exact inequality checkers.
// Everything here enumerates (no sampling) and computes in exact rationals;
// an instance that cannot be enumerated under the work cap is an error, never
// a silent approximation.
namespace regseed::oracle {

// Exact embedding probability by enumerating all of Phi(h).
BigRat exhaustive_embed(const ColoredGraph& g, const Complex& s, std::uint64_t work_cap);

struct LemmaCheckResult {
  std::string instance;  // generation parameters and seed
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;  // exact rational comparison, tolerance zero
  double slack = 0.0;  // rhs - lhs
};

// |P[edges | vertices] - prod_e d| <=
//   |V2(S)| * max over nonempty D subset V2(S) of
//   |E[prod_{e in D}(indicator_e - d_e) | vertices]|,
// all sides exact.  Requires a nonzero vertex condition.
LemmaCheckResult check_counting_lemma(const ColoredGraph& g, const Complex& s,
                                      std::uint64_t work_cap);

// E_omega[(E[X | fine class])^2] >= E_omega[(E[X | coarse class])^2] for a
// refining pair of partitions of [n] under the uniform measure.
LemmaCheckResult check_cauchy_refinement(const std::vector<BigRat>& X,
                                         const std::vector<int>& coarse,
                                         const std::vector<int>& fine);

// The mean-square correlation bound at edge slot e0 = (i,j,a,b) of s with
// level m: the squared unconditional F-product expectation is at most the
// bucketed mean-square term times prod_v d * (prod_{v not in e0} d + 1/m).
// F maps each pair palette color to [-1,1] (one table per visible edge slot,
// indexed like Complex::eslot).  Returns the unconditional form and, when
// 1/m <= prod_{v not in e0} d and the conditioning events are nonzero, the
// conditional factor-2 form as a second result.
std::vector<LemmaCheckResult> check_mean_square_lemma(
    const ColoredGraph& g, const Complex& s, const EdgeSlot& e0, int m,
    const std::map<int, std::vector<BigRat>>& F, std::uint64_t work_cap);

// E_{phi in Phi(samples_per_part)} E_{e in Omega_I}[ P[G(e') = c | e' in
// bucket(e)]^2 ] for every pair I and color c: the mean squared
// bucket-conditional density.  Non-decreasing in samples_per_part and
// confined to [0,1]; the telescoping increments over a schedule sum to at
// most 1.
std::map<std::pair<int, ColorId>, BigRat> energy(const ColoredGraph& g,
                                                 int samples_per_part,
                                                 std::uint64_t work_cap);

// Empirical check of the expectation bound: mean score over trials of
// (draw n uniform, draw phi in Phi(m(n)), score G/phi), plus the tail
// fraction P[score > sqrt(mean)] against sqrt(mean) + 3 stderr.
struct ExpectedScoreEstimate {
  double mean_score = 0.0;
  double stderr_ = 0.0;
  std::vector<double> scores;
  double markov_fraction = 0.0;
  double markov_bound = 0.0;
  bool markov_ok = false;
};

ExpectedScoreEstimate expected_score_estimate(const ColoredGraph& g, const PracticalSchedule& sched,
                                      int h, const BigRat& eps, int probe_budget, int trials,
                                      const SamplingPlan& plan, std::uint64_t seed,
                                      std::optional<std::int64_t> practical_M = 1);

// Seeded random-instance suites used by `verify` and the acceptance gate.
struct SuiteReport {
  std::string name;
  int instances = 0;
  int violations = 0;
  std::vector<LemmaCheckResult> results;
};

SuiteReport counting_suite(int instances, std::uint64_t seed, std::uint64_t work_cap);
SuiteReport meansquare_suite(int instances, std::uint64_t seed, std::uint64_t work_cap);
SuiteReport cauchy_suite(int instances, std::uint64_t seed);
SuiteReport energy_suite(int instances, std::uint64_t seed, std::uint64_t work_cap);

}  // namespace regseed::oracle
