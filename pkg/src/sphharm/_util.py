"""Exact scalar helpers shared across modules.

Pochhammer symbols, double factorials and half-integer Gamma values are
kept as :class:`fractions.Fraction` so that every normalization constant
in the library stays exact until the final float conversion.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial


def pochhammer(a: Fraction | int, k: int) -> Fraction:
    """Rising factorial (a)_k = a (a+1) ... (a+k-1), exact; (a)_0 = 1."""
    if k < 0:
        raise ValueError("pochhammer order must be nonnegative")
    out = Fraction(1)
    a = Fraction(a)
    for j in range(k):
        out *= a + j
    return out


def double_factorial(n: int) -> int:
    """n!! with the usual conventions (-1)!! = 0!! = 1."""
    if n < -1:
        raise ValueError("double factorial requires n >= -1")
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def gamma_half(k: int) -> tuple[Fraction, Fraction]:
    """Gamma(k/2) for integer k >= 1, as a pair (c, e) with value c * pi**e.

    The exponent e is 0 for even k and 1/2 for odd k, so ratios of
    half-integer Gamma values reduce to exact rationals times an integer
    power of pi.
    """
    if k < 1:
        raise ValueError("gamma_half requires a positive half-integer argument")
    if k % 2 == 0:
        return Fraction(factorial(k // 2 - 1)), Fraction(0)
    return Fraction(double_factorial(k - 2), 2 ** ((k - 1) // 2)), Fraction(1, 2)
