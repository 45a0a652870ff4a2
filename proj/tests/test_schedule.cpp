#include <set>
#include <vector>

#include "doctest.h"
#include "regseed/errors.hpp"
#include "regseed/schedule.hpp"

using namespace regseed;

TEST_CASE("epsilon1_values") {
  CHECK(epsilon1(2, 2, BigRat(3, 5)) == BigRat(1, 400));
  CHECK(sqrt_epsilon1(2, 2, BigRat(3, 5)) == BigRat(1, 20));
  CHECK(epsilon1(3, 2, BigRat(3, 5)) == BigRat(1, 3600));
  CHECK(epsilon1(2, 2, BigRat(1, 4)) == BigRat(1, 2304));
}

TEST_CASE("constant_c_squared_values") {
  CHECK(constant_C_squared(2, 1, 2, BigRat(1, 400)) == BigRat(2));
  CHECK(constant_C_squared(2, 2, 2, BigRat(1, 400)) == BigRat(BigInt("131072000000")));
}

TEST_CASE("constant_c_interval_encloses_root") {
  RatInterval c = constant_C(2, 1, 2, BigRat(1, 400));
  CHECK(c.lo * c.lo <= 2);
  CHECK(c.hi * c.hi >= 2);
  CHECK(c.hi - c.lo < BigRat(1, 1'000'000'000));
  CHECK(c.mid_double() == doctest::Approx(1.4142135623730951).epsilon(1e-12));

  RatInterval big = constant_C(2, 2, 2, BigRat(1, 400));
  CHECK(big.lo * big.lo <= BigRat(BigInt("131072000000")));
  CHECK(big.hi * big.hi >= BigRat(BigInt("131072000000")));
  CHECK(big.mid_double() == doctest::Approx(362038.672).epsilon(1e-6));
}

TEST_CASE("n_tilde_threshold") {
  CHECK(n_tilde(2, 1, 2, BigRat(3, 5)) == 178);
  CHECK(n_tilde_inequality_holds(2, 1, 2, BigRat(3, 5), BigInt(178)));
  CHECK_FALSE(n_tilde_inequality_holds(2, 1, 2, BigRat(3, 5), BigInt(177)));
  CHECK(n_tilde_inequality_holds(2, 1, 2, BigRat(3, 5), BigInt(100000)));
}

TEST_CASE("sample_budget_values") {
  CHECK(sample_budget_M(BigInt(1), BigRat(1, 20), 2, 1) == 400);
  CHECK(sample_budget_M(BigInt(2), BigRat(1, 20), 2, 1) == 1600);
  CHECK(sample_budget_M(BigInt(1), BigRat(1, 20), 2, 2) == 160000);
}

TEST_CASE("schedule_small_levels_exact") {
  TheoreticalSchedule s(2, 1, 1, 2, BigRat(3, 5));
  CHECK(s.eps1() == BigRat(1, 400));
  CHECK(s.sqrt_eps1() == BigRat(1, 20));
  CHECK(s.C_squared() == 2);
  CHECK(s.ntilde() == 178);

  CHECK_FALSE(s.m_of(0).overflow);
  CHECK(s.m_of(0).value == 0);
  CHECK_FALSE(s.m_of(1).overflow);
  CHECK(s.m_of(1).value == 400);
  REQUIRE_FALSE(s.m_of(2).overflow);
  BigInt expected = 400 + 400 * (BigInt(1) << 800);
  CHECK(s.m_of(2).value == expected);
}

TEST_CASE("schedule_overflow_reports_certified_bound") {
  TheoreticalSchedule s(2, 1, 1, 2, BigRat(3, 5), 100);
  CHECK_FALSE(s.m_of(1).overflow);
  CHECK(s.m_of(1).value == 400);
  REQUIRE(s.m_of(2).overflow);
  CHECK(s.m_of(2).lower_bound_log2 == 808);
  REQUIRE(s.m_of(3).overflow);
  CHECK(s.m_of(3).lower_bound_log2 == 808);
  // the bound is strict: m(2) = 400 + 400*2^800 > 2^808 = 256*2^800
  CHECK(400 + 400 * (BigInt(1) << 800) > (BigInt(1) << 808));
}

TEST_CASE("schedule_rejects_bad_parameters") {
  CHECK_THROWS_AS(TheoreticalSchedule(1, 1, 1, 2, BigRat(3, 5)), ValidationError);
  CHECK_THROWS_AS(TheoreticalSchedule(2, 0, 1, 2, BigRat(3, 5)), ValidationError);
  CHECK_THROWS_AS(TheoreticalSchedule(2, 1, 0, 2, BigRat(3, 5)), ValidationError);
  CHECK_THROWS_AS(TheoreticalSchedule(2, 1, 1, 2, BigRat(0)), ValidationError);
  CHECK_THROWS_AS(TheoreticalSchedule(2, 1, 1, 2, BigRat(3, 5), 0), ValidationError);
}

TEST_CASE("parse_schedule_forms") {
  PracticalSchedule s = parse_schedule("0,1,2,4,8");
  CHECK(s.m == std::vector<std::int64_t>{0, 1, 2, 4, 8});
  CHECK(parse_schedule("5").m == std::vector<std::int64_t>{5});
  CHECK_THROWS_AS(parse_schedule(""), ValidationError);
  CHECK_THROWS_AS(parse_schedule("3,2"), ValidationError);
  CHECK_THROWS_AS(parse_schedule("1,1"), ValidationError);
  CHECK_THROWS_AS(parse_schedule("1,,2"), ValidationError);
  CHECK_THROWS_AS(parse_schedule("-1,2"), ValidationError);
  CHECK_THROWS_AS(parse_schedule("a,b"), ValidationError);
}

TEST_CASE("choose_n_covers_schedule") {
  PracticalSchedule sched = parse_schedule("0,2,5");
  std::vector<int> sizes = {3, 4};
  Rng rng(77);
  std::set<int> seen;
  for (int i = 0; i < 200; ++i) {
    auto [n, phi] = choose_n_and_sample(sched, sizes, rng);
    REQUIRE(n >= 0);
    REQUIRE(n < 3);
    seen.insert(n);
    for (int part = 0; part < 2; ++part)
      CHECK(phi.count(part) == static_cast<int>(sched.m[n]));
  }
  CHECK(seen.size() == 3);

  Rng a(5), b(5);
  auto [na, pa] = choose_n_and_sample(sched, sizes, a);
  auto [nb, pb] = choose_n_and_sample(sched, sizes, b);
  CHECK(na == nb);
  CHECK(pa.targets == pb.targets);
}
