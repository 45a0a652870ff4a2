#!/usr/bin/env python3
"""Independent recomputation of the sampling-schedule constants.

Everything is exact: Fractions for rationals, integer square roots for
enclosing the irrational factor of C.  The C++ schedule module must agree
with the values printed here; the unit and acceptance tests freeze them.

Definitions, for an r-partite graph with pair palette bound b2, target eps,
template size h:

  eps1        = (eps / (6 * b2 * binom(r,2)))^2
  sqrt(eps1)  = eps / (6 * b2 * binom(r,2))            (exact rational)
  C           = sqrt(2) * binom(r,2) * h^2 * (b2 / sqrt(eps1))^(binom(r,2)*h^2 - 1)
  n_tilde     = minimal integer n with C * b2 * sqrt(b2/n) <= eps / (2*binom(r,2))
              = ceil(4 * binom(r,2)^2 * b2^3 * C^2 / eps^2)   (C^2 is rational)
  M(n)        = (b1 * b2^((r-1)*m(n)) / sqrt(eps1))^(r*h)
  m(0)        = 0,   m(n+1) = m(n) + M(n) * h
"""

from fractions import Fraction
from math import comb, isqrt


def eps1_of(r: int, b2: int, eps: Fraction) -> Fraction:
    return (eps / (6 * b2 * comb(r, 2))) ** 2


def sqrt_eps1_of(r: int, b2: int, eps: Fraction) -> Fraction:
    return eps / (6 * b2 * comb(r, 2))


def c_squared(r: int, h: int, b2: int, eps1: Fraction) -> Fraction:
    expo = comb(r, 2) * h * h - 1
    return 2 * Fraction(comb(r, 2) * h * h) ** 2 * (b2 * b2 / eps1) ** expo


def c_interval(r: int, h: int, b2: int, eps1: Fraction, bits: int = 128):
    """Rational enclosure [lo, hi] of C with hi - lo < rational_factor / 2^bits."""
    expo = comb(r, 2) * h * h - 1
    factor = comb(r, 2) * h * h * (Fraction(b2) / sqrt_eps1_from_eps1(eps1)) ** expo
    s = isqrt(2 << (2 * bits))
    lo = Fraction(s, 1 << bits) * factor
    hi = Fraction(s + 1, 1 << bits) * factor
    return lo, hi


def sqrt_eps1_from_eps1(eps1: Fraction) -> Fraction:
    num, den = eps1.numerator, eps1.denominator
    sn, sd = isqrt(num), isqrt(den)
    assert sn * sn == num and sd * sd == den, "eps1 must be a rational square"
    return Fraction(sn, sd)


def n_tilde_of(r: int, h: int, b2: int, eps: Fraction) -> int:
    c2 = c_squared(r, h, b2, eps1_of(r, b2, eps))
    bound = 4 * comb(r, 2) ** 2 * b2 ** 3 * c2 / eps ** 2
    n = -(-bound.numerator // bound.denominator)  # ceil
    return int(n)


def schedule_inequality_holds(r: int, h: int, b2: int, eps: Fraction, n: int) -> bool:
    """C * b2 * sqrt(b2/n) <= eps / (2*binom(r,2)), checked in squared form."""
    c2 = c_squared(r, h, b2, eps1_of(r, b2, eps))
    return c2 * b2 ** 3 * 4 * comb(r, 2) ** 2 <= eps ** 2 * n


def big_m(r: int, h: int, b1: int, b2: int, eps: Fraction, m: int) -> Fraction:
    se = sqrt_eps1_of(r, b2, eps)
    return (b1 * Fraction(b2) ** ((r - 1) * m) / se) ** (r * h)


def main() -> None:
    # Case A: r=2, b2=2, eps=3/5, h=1, b1=1.
    r, h, b1, b2 = 2, 1, 1, 2
    eps = Fraction(3, 5)

    e1 = eps1_of(r, b2, eps)
    print(f"eps1(r=2,b2=2,eps=3/5) = {e1} = {float(e1)}")
    assert e1 == Fraction(1, 400)

    c2 = c_squared(r, h, b2, e1)
    print(f"C^2(r=2,h=1)           = {c2}   (C = sqrt({c2}))")
    assert c2 == 2

    nt = n_tilde_of(r, h, b2, eps)
    print(f"n_tilde(r=2,h=1)       = {nt}")
    assert nt == 178
    assert schedule_inequality_holds(r, h, b2, eps, 178)
    assert not schedule_inequality_holds(r, h, b2, eps, 177)
    print("  inequality holds at 178, fails at 177 (minimality confirmed)")

    m0 = 0
    M0 = big_m(r, h, b1, b2, eps, m0)
    assert M0 == 400
    m1 = m0 + int(M0) * h
    print(f"M(0) = {M0}, m(1) = {m1}")
    assert m1 == 400

    M1 = big_m(r, h, b1, b2, eps, m1)
    assert M1.denominator == 1
    m2 = m1 + int(M1) * h
    assert m2 == 400 + 400 * 2 ** 800
    digits = len(str(m2))
    print(f"m(2) = 400 + 400*2^800  ({digits} decimal digits)")
    assert m2 > 2 ** 800
    print("  m(2) > 2^800 confirmed")
    # Certified log2 lower bound used by the overflow report:
    # r*h * ((r-1)*m(1)*floor(log2 b2) + floor(log2 (b1/sqrt(eps1)))) = 2*(400+4) = 808
    assert m2 >= 2 ** 808
    print("  m(2) >= 2^808 (floor-log2 certified bound) confirmed")

    # Case B: r=2, h=2 with the same eps1: C = sqrt(2)*4*40^3.
    c2b = c_squared(r, 2, b2, e1)
    print(f"C^2(r=2,h=2)           = {c2b}")
    assert c2b == 2 * 16 * 40 ** 6
    lo, hi = c_interval(r, 2, b2, e1)
    print(f"C(r=2,h=2) in [{float(lo):.12f}, {float(hi):.12f}] (= 256000*sqrt(2))")
    assert Fraction(36203867196751, 10 ** 8) < lo < hi < Fraction(36203867196752, 10 ** 8)
    assert lo * lo < c2b < hi * hi

    print("all schedule constants verified")


if __name__ == "__main__":
    main()
