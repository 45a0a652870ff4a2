#include "regseed/schedule.hpp"

#include <sstream>

#include "regseed/errors.hpp"

namespace regseed {

namespace {

void check_params(int r, int h, int b2, const BigRat& eps) {
  if (r < 2) throw ValidationError("schedule: r must be at least 2");
  if (h < 1) throw ValidationError("schedule: h must be positive");
  if (b2 < 1) throw ValidationError("schedule: b2 must be positive");
  if (eps <= 0) throw ValidationError("schedule: eps must be positive");
}

BigRat pow_rat(const BigRat& x, const BigInt& e) {
  if (e < 0) return 1 / pow_rat(x, -e);
  BigRat acc = 1, base = x;
  BigInt k = e;
  while (k > 0) {
    if ((k & 1) != 0) acc *= base;
    base *= base;
    k >>= 1;
  }
  return acc;
}

}  // namespace

BigRat sqrt_epsilon1(int r, int b2, const BigRat& eps) {
  check_params(r, 1, b2, eps);
  return eps / (6 * b2 * binom2(r));
}

BigRat epsilon1(int r, int b2, const BigRat& eps) {
  BigRat s = sqrt_epsilon1(r, b2, eps);
  return s * s;
}

BigRat constant_C_squared(int r, int h, int b2, const BigRat& eps1) {
  check_params(r, h, b2, 1);
  if (eps1 <= 0) throw ValidationError("schedule: eps1 must be positive");
  BigInt e = binom2(r) * h * h - 1;
  BigRat base = BigRat(b2) * b2 / eps1;
  BigRat f = binom2(r) * h * h;
  return 2 * f * f * pow_rat(base, e);
}

RatInterval constant_C(int r, int h, int b2, const BigRat& eps1) {
  BigRat se;
  if (!exact_sqrt(eps1, se))
    throw ValidationError("schedule: eps1 must be a rational square");
  BigInt e = binom2(r) * h * h - 1;
  BigRat factor = BigRat(binom2(r)) * h * h * pow_rat(BigRat(b2) / se, e);
  BigRat lo2, hi2;
  sqrt_interval(BigRat(2), 96, lo2, hi2);
  return {lo2 * factor, hi2 * factor};
}

BigInt n_tilde(int r, int h, int b2, const BigRat& eps) {
  check_params(r, h, b2, eps);
  BigRat c2 = constant_C_squared(r, h, b2, epsilon1(r, b2, eps));
  BigRat bound = 4 * BigRat(binom2(r) * binom2(r)) * BigInt(b2) * b2 * b2 * c2 / (eps * eps);
  BigInt n = ceil_rat(bound);
  return n < 1 ? BigInt(1) : n;
}

bool n_tilde_inequality_holds(int r, int h, int b2, const BigRat& eps, const BigInt& n) {
  if (n < 1) return false;
  BigRat c2 = constant_C_squared(r, h, b2, epsilon1(r, b2, eps));
  // C b2 sqrt(b2/n) <= eps/(2 binom2): both sides nonnegative, compare squares.
  return 4 * binom2(r) * binom2(r) * c2 * BigInt(b2) * b2 * b2 <= eps * eps * n;
}

BigInt sample_budget_M(const BigInt& c1, const BigRat& sqrt_eps1, int r, int h) {
  if (c1 < 1) throw ValidationError("sample_budget_M: palette size must be positive");
  if (sqrt_eps1 <= 0) throw ValidationError("sample_budget_M: sqrt(eps1) must be positive");
  return ceil_rat(pow_rat(BigRat(c1) / sqrt_eps1, BigInt(r) * h));
}

TheoreticalSchedule::TheoreticalSchedule(int r, int h, int b1, int b2, const BigRat& eps,
                                         std::int64_t digit_cap)
    : r_(r), h_(h), b1_(b1), b2_(b2), eps_(eps), digit_cap_(digit_cap) {
  check_params(r, h, b2, eps);
  if (b1 < 1) throw ValidationError("schedule: b1 must be positive");
  if (digit_cap < 1) throw ValidationError("schedule: digit cap must be positive");
  eps1_ = epsilon1(r, b2, eps);
  sqrt_eps1_ = sqrt_epsilon1(r, b2, eps);
  c_squared_ = constant_C_squared(r, h, b2, eps1_);
  c_ = constant_C(r, h, b2, eps1_);
  ntilde_ = n_tilde(r, h, b2, eps);
  memo_.push_back({false, BigInt(0), BigInt(0)});
}

const ScheduleValue& TheoreticalSchedule::m_of(std::int64_t n) {
  if (n < 0) throw ValidationError("schedule: m(n) needs n >= 0");
  while (static_cast<std::int64_t>(memo_.size()) <= n) {
    const ScheduleValue& prev = memo_.back();
    ScheduleValue next;
    if (prev.overflow) {
      // m is strictly increasing, so the first overflow bound carries on.
      next.overflow = true;
      next.lower_bound_log2 = prev.lower_bound_log2;
      memo_.push_back(std::move(next));
      continue;
    }
    // Predict bit size of M = (b1 b2^((r-1)m) / sqrt(eps1))^(rh) before
    // materializing anything: refuse once the result would exceed the digit
    // cap (cap_bits overestimates digits * log2(10)).
    BigInt e = BigInt(r_ - 1) * prev.value;
    BigInt bits_upper =
        BigInt(r_) * h_ *
        (BigInt(bit_length(BigInt(b1_))) + e * bit_length(BigInt(b2_)) +
         floor_log2(1 / sqrt_eps1_) + 2);
    BigInt cap_bits = BigInt(digit_cap_) * 10 / 3 + 8;
    if (bits_upper > cap_bits) {
      next.overflow = true;
      // Certified: M >= 2^L with
      // L = rh((r-1) m floor_log2(b2) + floor_log2(b1/sqrt_eps1)), so
      // m(n+1) = m(n) + M h > 2^L whenever m(n) > 0 or h > 1; in the
      // remaining corner m(n+1) = M could equal 2^L exactly, so drop to L-1.
      BigInt L = BigInt(r_) * h_ *
                 (e * floor_log2(BigRat(b2_)) + floor_log2(BigRat(b1_) / sqrt_eps1_));
      next.lower_bound_log2 = (prev.value > 0 || h_ > 1) ? L : L - 1;
      memo_.push_back(std::move(next));
      continue;
    }
    BigRat x = BigRat(b1_) * pow_rat(BigRat(b2_), e) / sqrt_eps1_;
    BigInt M = ceil_rat(pow_rat(x, BigInt(r_) * h_));
    next.overflow = false;
    next.value = prev.value + M * h_;
    memo_.push_back(std::move(next));
  }
  return memo_[n];
}

PracticalSchedule parse_schedule(const std::string& text) {
  PracticalSchedule sched;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      long long v = std::stoll(item, &pos);
      if (pos != item.size() || v < 0) throw std::invalid_argument(item);
      sched.m.push_back(v);
    } catch (const std::exception&) {
      throw ValidationError("bad schedule entry '" + item + "' in '" + text + "'");
    }
  }
  if (sched.m.empty()) throw ValidationError("schedule list is empty");
  for (std::size_t k = 1; k < sched.m.size(); ++k)
    if (sched.m[k] <= sched.m[k - 1])
      throw ValidationError("schedule entries must be strictly increasing");
  return sched;
}

std::pair<int, PartitionwiseMap> choose_n_and_sample(const PracticalSchedule& sched,
                                                     const std::vector<int>& part_sizes,
                                                     Rng& rng) {
  if (sched.m.empty()) throw ValidationError("choose_n_and_sample: empty schedule");
  int n = static_cast<int>(rng.bounded(static_cast<std::uint32_t>(sched.m.size())));
  PartitionwiseMap phi =
      random_partitionwise_map(part_sizes, static_cast<int>(sched.m[n]), rng);
  return {n, phi};
}

}  // namespace regseed
