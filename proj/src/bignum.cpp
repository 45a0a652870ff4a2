#include "regseed/bignum.hpp"

#include <boost/multiprecision/integer.hpp>

#include "regseed/errors.hpp"

namespace regseed {

BigInt floor_rat(const BigRat& x) {
  BigInt q = rat_num(x) / rat_den(x);
  if (x < 0 && q * rat_den(x) != rat_num(x)) --q;
  return q;
}

BigInt ceil_rat(const BigRat& x) {
  BigInt q = rat_num(x) / rat_den(x);
  if (x > 0 && q * rat_den(x) != rat_num(x)) ++q;
  return q;
}

std::size_t bit_length(const BigInt& x) {
  if (x == 0) return 0;
  return boost::multiprecision::msb(boost::multiprecision::abs(x)) + 1;
}

BigInt floor_log2(const BigRat& x) {
  if (x <= 0) throw ValidationError("floor_log2: argument must be positive");
  const BigInt p = rat_num(x), q = rat_den(x);
  BigInt k = BigInt(bit_length(p)) - BigInt(bit_length(q));
  // p/q in [2^(k-1), 2^(k+1)); settle the boundary exactly.
  if (k >= 0) {
    if (p >= (q << static_cast<unsigned>(k))) return k;
    return k - 1;
  }
  if ((p << static_cast<unsigned>(-k)) >= q) return k;
  return k - 1;
}

BigRat parse_rational(const std::string& text) {
  if (text.empty()) throw ValidationError("empty number");
  const auto bad = [&] { throw ValidationError("cannot parse number '" + text + "'"); };
  std::size_t slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      BigInt num(text.substr(0, slash));
      BigInt den(text.substr(slash + 1));
      if (den == 0) bad();
      return BigRat(num, den);
    }
    std::size_t dot = text.find('.');
    if (dot == std::string::npos) return BigRat(BigInt(text));
    std::string head = text.substr(0, dot), tail = text.substr(dot + 1);
    if (tail.empty()) bad();
    for (char c : tail)
      if (c < '0' || c > '9') bad();
    if (head.empty() || head == "-" || head == "+") head += "0";
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(tail.size()));
    BigInt whole(head);
    BigInt frac(tail);
    bool neg = !head.empty() && head[0] == '-';
    BigInt num = whole * scale + (neg ? -frac : frac);
    return BigRat(num, scale);
  } catch (const std::runtime_error&) {
    bad();
  }
  return BigRat();  // unreachable
}

void sqrt_interval(const BigRat& x, unsigned bits, BigRat& lo, BigRat& hi) {
  if (x < 0) throw ValidationError("sqrt_interval: negative argument");
  if (x == 0) {
    lo = hi = 0;
    return;
  }
  // sqrt(p/q) = sqrt(p*q)/q; enclose sqrt of the integer p*q << 2*bits.
  const BigInt p = rat_num(x), q = rat_den(x);
  BigInt scaled = (p * q) << (2 * bits);
  BigInt root = boost::multiprecision::sqrt(scaled);  // floor sqrt
  BigInt denom = q << bits;
  lo = BigRat(root, denom);
  hi = (root * root == scaled) ? lo : BigRat(root + 1, denom);
}

bool exact_sqrt(const BigRat& x, BigRat& root) {
  if (x < 0) return false;
  BigInt sn = boost::multiprecision::sqrt(rat_num(x));
  BigInt sd = boost::multiprecision::sqrt(rat_den(x));
  if (sn * sn == rat_num(x) && sd * sd == rat_den(x)) {
    root = BigRat(sn, sd);
    return true;
  }
  return false;
}

std::string rational_decimal(const BigRat& x, int frac_digits) {
  BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac_digits));
  BigRat scaled = x * scale;
  BigInt t = rat_num(scaled) / rat_den(scaled);  // truncate toward zero
  bool neg = t < 0;
  std::string digits = boost::multiprecision::abs(t).convert_to<std::string>();
  if (static_cast<int>(digits.size()) <= frac_digits)
    digits.insert(0, frac_digits + 1 - digits.size(), '0');
  digits.insert(digits.size() - frac_digits, ".");
  return (neg ? "-" : "") + digits;
}

}  // namespace regseed
