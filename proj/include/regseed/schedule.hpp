#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "regseed/bignum.hpp"
#include "regseed/pmap.hpp"
#include "regseed/rng.hpp"

namespace regseed {

inline BigInt binom2(int r) { return BigInt(r) * (r - 1) / 2; }

// eps1 = (eps / (6 * b2 * binom(r,2)))^2; its square root is rational.
BigRat epsilon1(int r, int b2, const BigRat& eps);
BigRat sqrt_epsilon1(int r, int b2, const BigRat& eps);

// C = sqrt(2) * binom(r,2) * h^2 * (b2 / sqrt(eps1))^(binom(r,2)h^2 - 1).
// C itself is irrational; C^2 is an exact rational and is what every
// downstream comparison uses.  The interval encloses C with relative width
// below 2^-96 so twelve significant digits print exactly.
struct RatInterval {
  BigRat lo, hi;
  double mid_double() const { return to_double((lo + hi) / 2); }
};

BigRat constant_C_squared(int r, int h, int b2, const BigRat& eps1);
RatInterval constant_C(int r, int h, int b2, const BigRat& eps1);

// Smallest integer n with C * b2 * sqrt(b2 / n) <= eps / (2 binom(r,2)),
// i.e. ceil(4 * binom(r,2)^2 * b2^3 * C^2 / eps^2), decided exactly in the
// squared form.
BigInt n_tilde(int r, int h, int b2, const BigRat& eps);
bool n_tilde_inequality_holds(int r, int h, int b2, const BigRat& eps, const BigInt& n);

// ceil((c1 / sqrt_eps1)^(rh)): the per-level sampling budget, with c1 the
// relevant vertex palette size (b1 * b2^((r-1)m) for the theoretical
// schedule, or the regularized graph's own largest palette).
BigInt sample_budget_M(const BigInt& c1, const BigRat& sqrt_eps1, int r, int h);

// The theoretical sampling schedule: m(0) = 0 and
// m(n+1) = m(n) + M(n) * h with M(n) = ceil((b1 b2^((r-1)m(n)) / sqrt(eps1))^(rh)).
// Values whose predicted size exceeds the digit cap are never materialized;
// they are reported as overflowed together with a certified strict lower
// bound 2^lower_bound_log2 (floor-log2 arithmetic, exact).  Once level n0
// overflows, later levels inherit its bound (m is strictly increasing).
struct ScheduleValue {
  bool overflow = false;
  BigInt value;            // exact m(n) when !overflow
  BigInt lower_bound_log2; // m(n) > 2^lower_bound_log2 when overflow
};

class TheoreticalSchedule {
 public:
  TheoreticalSchedule(int r, int h, int b1, int b2, const BigRat& eps,
                      std::int64_t digit_cap = 1'000'000);

  int r() const { return r_; }
  int h() const { return h_; }
  const BigRat& eps() const { return eps_; }
  const BigRat& eps1() const { return eps1_; }
  const BigRat& sqrt_eps1() const { return sqrt_eps1_; }
  const RatInterval& C() const { return c_; }
  const BigRat& C_squared() const { return c_squared_; }
  const BigInt& ntilde() const { return ntilde_; }
  std::int64_t digit_cap() const { return digit_cap_; }

  // m(n); memoized, n >= 0.
  const ScheduleValue& m_of(std::int64_t n);

 private:
  int r_, h_, b1_, b2_;
  BigRat eps_, eps1_, sqrt_eps1_;
  BigRat c_squared_;
  RatInterval c_;
  BigInt ntilde_;
  std::int64_t digit_cap_;
  std::vector<ScheduleValue> memo_;
};

// A hand-picked list of sample counts used by experiments in place of the
// astronomically growing theoretical m(n); entries are strictly increasing.
struct PracticalSchedule {
  std::vector<std::int64_t> m;
};

PracticalSchedule parse_schedule(const std::string& text);  // "0,1,2,4,8"

// Draws n uniformly from [0, len) and one random map with m[n] slots per
// part: the single randomized draw the main statement quantifies over.
std::pair<int, PartitionwiseMap> choose_n_and_sample(const PracticalSchedule& sched,
                                                     const std::vector<int>& part_sizes,
                                                     Rng& rng);

}  // namespace regseed
