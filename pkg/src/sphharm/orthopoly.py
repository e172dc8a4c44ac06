"""Classical one-variable orthogonal polynomial families.

Gegenbauer (ultraspherical) C_n^lam, Chebyshev T_n / U_n, Legendre P_n and
the associated Legendre functions, with two independent construction
routes for Gegenbauer (three-term recurrence vs the terminating
hypergeometric sum) that must agree exactly.

Exact coefficients are available up to degree ``EXACT_DEGREE_CAP``;
coefficient growth is factorial beyond that, so higher degrees are served
by the numerically stable forward recurrences (`gegenbauer_eval` and
friends), which have no cap.

The parameter ``lam`` is an exact rational; the Chebyshev limit lam -> 0+
is selected with the :data:`CHEBYSHEV_LIMIT` tag, under which the family
degenerates to (2/n) T_n for n >= 1.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import factorial
from typing import Sequence, Union

from sphharm._util import double_factorial, pochhammer

EXACT_DEGREE_CAP = 64

CHEBYSHEV_LIMIT = "chebyshev-limit"

# A Gegenbauer parameter is an exact rational lam > -1/2, lam != 0, or the
# tagged lam -> 0+ limit.
GegenbauerParam = Union[Fraction, int, str]

_ZERO = Fraction(0)
_ONE = Fraction(1)


class Poly1:
    """Dense univariate polynomial with exact rational coefficients.

    Coefficients are ascending powers; the trailing (highest) coefficient
    is nonzero unless the polynomial is zero.  Immutable.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Sequence):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "_coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly1 is immutable")

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int | None:
        return len(self._coeffs) - 1 if self._coeffs else None

    def __call__(self, t):
        """Horner evaluation; exact for Fraction input, float for float."""
        acc = _ZERO
        for c in reversed(self._coeffs):
            acc = acc * t + c
        return acc

    def eval_float(self, t: float) -> float:
        return float(self(float(t)))

    def derivative(self) -> "Poly1":
        return Poly1([k * c for k, c in enumerate(self._coeffs)][1:])

    def scale(self, factor) -> "Poly1":
        f = Fraction(factor)
        return Poly1([c * f for c in self._coeffs])

    def __eq__(self, other):
        if not isinstance(other, Poly1):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(self._coeffs)

    def __repr__(self):
        return f"Poly1({list(self._coeffs)!r})"


def _as_lambda(lam: GegenbauerParam) -> Fraction | None:
    """Normalize a Gegenbauer parameter; None encodes the Chebyshev limit."""
    if lam == CHEBYSHEV_LIMIT:
        return None
    lam = Fraction(lam)
    if lam <= Fraction(-1, 2):
        raise ValueError(f"Gegenbauer parameter must exceed -1/2, got {lam}")
    if lam == 0:
        raise ValueError("lam = 0 is degenerate; use the CHEBYSHEV_LIMIT tag")
    return lam


def _check_exact_degree(n: int) -> None:
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if n > EXACT_DEGREE_CAP:
        raise ValueError(
            f"exact coefficients are capped at degree {EXACT_DEGREE_CAP}; "
            "use the float evaluation routines for higher degrees"
        )


def chebyshev_t(n: int) -> Poly1:
    """T_n with T_n(cos theta) = cos(n theta)."""
    _check_exact_degree(n)
    prev, cur = [_ONE], [_ZERO, _ONE]
    if n == 0:
        return Poly1(prev)
    for _ in range(n - 1):
        nxt = [_ZERO] + [2 * c for c in cur]
        for i, c in enumerate(prev):
            nxt[i] -= c
        prev, cur = cur, nxt
    return Poly1(cur)


def chebyshev_u(n: int) -> Poly1:
    """U_n with U_n(cos theta) = sin((n+1) theta) / sin(theta)."""
    _check_exact_degree(n)
    prev, cur = [_ONE], [_ZERO, Fraction(2)]
    if n == 0:
        return Poly1(prev)
    for _ in range(n - 1):
        nxt = [_ZERO] + [2 * c for c in cur]
        for i, c in enumerate(prev):
            nxt[i] -= c
        prev, cur = cur, nxt
    return Poly1(cur)


def gegenbauer(n: int, lam: GegenbauerParam) -> Poly1:
    """C_n^lam by the three-term recurrence, exact coefficients.

    n C_n = 2 (n + lam - 1) t C_{n-1} - (n + 2 lam - 2) C_{n-2}, seeded by
    C_0 = 1 and C_1 = 2 lam t.  Under the Chebyshev-limit tag this returns
    (2/n) T_n for n >= 1 (and 1 for n = 0).
    """
    _check_exact_degree(n)
    lv = _as_lambda(lam)
    if lv is None:
        if n == 0:
            return Poly1([_ONE])
        return chebyshev_t(n).scale(Fraction(2, n))
    prev, cur = [_ONE], [_ZERO, 2 * lv]
    if n == 0:
        return Poly1(prev)
    for k in range(2, n + 1):
        nxt = [_ZERO] + [2 * (k + lv - 1) * c for c in cur]
        for i, c in enumerate(prev):
            nxt[i] -= (k + 2 * lv - 2) * c
        prev, cur = cur, [c / k for c in nxt]
    return Poly1(cur)


def gegenbauer_via_2f1(n: int, lam: GegenbauerParam) -> Poly1:
    """C_n^lam from the terminating hypergeometric sum; oracle for
    :func:`gegenbauer`, with which it must agree exactly.

    The coefficient of t^(n-2j) is
    ((lam)_n 2^n / n!) (-n/2)_j ((1-n)/2)_j / (j! (1-n-lam)_j).
    """
    _check_exact_degree(n)
    lv = _as_lambda(lam)
    if lv is None:
        if n == 0:
            return Poly1([_ONE])
        return chebyshev_t(n).scale(Fraction(2, n))
    coeffs = [_ZERO] * (n + 1)
    front = pochhammer(lv, n) * Fraction(2**n, factorial(n))
    for j in range(n // 2 + 1):
        num = pochhammer(Fraction(-n, 2), j) * pochhammer(Fraction(1 - n, 2), j)
        den = Fraction(factorial(j)) * pochhammer(1 - n - lv, j)
        coeffs[n - 2 * j] = front * num / den
    return Poly1(coeffs)


def legendre(n: int) -> Poly1:
    """P_n by the standard recurrence, normalized so P_n(1) = 1."""
    _check_exact_degree(n)
    prev, cur = [_ONE], [_ZERO, _ONE]
    if n == 0:
        return Poly1(prev)
    for k in range(1, n):
        nxt = [_ZERO] + [(2 * k + 1) * c for c in cur]
        for i, c in enumerate(prev):
            nxt[i] -= k * c
        prev, cur = cur, [c / (k + 1) for c in nxt]
    return Poly1(cur)


def gegenbauer_one(n: int, lam: GegenbauerParam) -> Fraction:
    """Exact endpoint value C_n^lam(1) = (2 lam)_n / n!."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    lv = _as_lambda(lam)
    if lv is None:
        return _ONE if n == 0 else Fraction(2, n)
    return pochhammer(2 * lv, n) / factorial(n)


def gegenbauer_norm(n: int, d: int) -> Fraction:
    """h_n^lam = (lam / (n + lam)) C_n^lam(1) for the sphere case lam = (d-2)/2."""
    if d < 3:
        raise ValueError("gegenbauer_norm requires d >= 3")
    if n < 0:
        raise ValueError("degree must be nonnegative")
    lam = Fraction(d - 2, 2)
    return lam / (n + lam) * gegenbauer_one(n, lam)


def gegenbauer_eval(n: int, lam: GegenbauerParam, t):
    """Float C_n^lam(t) by the stable forward recurrence; no degree cap.

    Accepts a scalar or a numpy array for ``t``.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    lv = _as_lambda(lam)
    if lv is None:
        return chebyshev_t_eval(n, t) * (2.0 / n) if n else t * 0 + 1.0
    lf = float(lv)
    prev = t * 0 + 1.0
    if n == 0:
        return prev
    cur = 2.0 * lf * t
    for k in range(2, n + 1):
        prev, cur = cur, (2.0 * (k + lf - 1.0) * t * cur - (k + 2.0 * lf - 2.0) * prev) / k
    return cur


def chebyshev_t_eval(n: int, t):
    """Float T_n(t) by forward recurrence; scalar or numpy array input."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    prev = t * 0 + 1.0
    if n == 0:
        return prev
    cur = t * 1.0
    for _ in range(n - 1):
        prev, cur = cur, 2.0 * t * cur - prev
    return cur


def legendre_eval(n: int, t):
    """Float P_n(t) by forward recurrence; scalar or numpy array input."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    prev = t * 0 + 1.0
    if n == 0:
        return prev
    cur = t * 1.0
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1) * t * cur - k * prev) / (k + 1)
    return cur


def assoc_legendre(n: int, k: int, t: float, convention: str = "paper") -> float:
    """Associated Legendre function P_n^k(t) = sign * (1-t^2)^(k/2) d^k/dt^k P_n(t).

    Two sign conventions are exposed: "paper" carries a global (-1)^n,
    "condon-shortley" the usual (-1)^k; the magnitude is convention-free
    and satisfies |P_n^k| = (2k-1)!! (1-t^2)^(k/2) |C_{n-k}^{k+1/2}|.
    k > n returns 0 (the k-th derivative of P_n vanishes), not an error.
    """
    if k < 0:
        raise ValueError("order k must be nonnegative")
    if abs(t) > 1 + 1e-12:
        raise ValueError(f"argument {t} outside [-1, 1]")
    t = min(1.0, max(-1.0, float(t)))
    if k > n:
        return 0.0
    if convention == "paper":
        sign = -1.0 if n % 2 else 1.0
    elif convention == "condon-shortley":
        sign = -1.0 if k % 2 else 1.0
    else:
        raise ValueError(f"unknown sign convention {convention!r}")
    dk = legendre(n)
    for _ in range(k):
        dk = dk.derivative()
    return sign * (1.0 - t * t) ** (k / 2.0) * dk.eval_float(t)


_TABLE_FAMILIES = ("gegenbauer", "chebyshev-t", "chebyshev-u", "legendre")


def coefficient_table(family: str, nmax: int, lam: GegenbauerParam | None = None) -> str:
    """JSON-lines table of exact coefficients: one object per degree.

    Each line carries the degree, the parameter (null for parameter-free
    families) and the ascending coefficients as decimal strings.
    """
    if family not in _TABLE_FAMILIES:
        raise ValueError(f"unknown family {family!r}; choose from {_TABLE_FAMILIES}")
    if family == "gegenbauer" and lam is None:
        raise ValueError("the gegenbauer family needs a lam parameter")
    lines = []
    for n in range(nmax + 1):
        if family == "gegenbauer":
            p = gegenbauer(n, lam)
            lam_str = CHEBYSHEV_LIMIT if lam == CHEBYSHEV_LIMIT else str(Fraction(lam))
        else:
            p = {"chebyshev-t": chebyshev_t, "chebyshev-u": chebyshev_u, "legendre": legendre}[family](n)
            lam_str = None
        lines.append(
            json.dumps(
                {
                    "family": family,
                    "degree": n,
                    "lambda": lam_str,
                    "coefficients": [str(c) for c in p.coeffs],
                },
                sort_keys=True,
            )
        )
    return "\n".join(lines)


def factorial2(n: int) -> int:
    """Double factorial alias kept close to the Legendre relations."""
    return double_factorial(n)
