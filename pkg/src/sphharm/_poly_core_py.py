"""Pure-Python term kernels for sparse exact-rational polynomials.

A polynomial in d variables is stored as a dict mapping exponent tuples of
length d to nonzero Fraction coefficients; {} is the zero polynomial.
These functions are the hot inner loops of the exact-arithmetic layer.  A
compiled twin lives in ``_poly_core_cy.pyx`` and must return identical
results; ``_poly_core`` picks whichever is available at import time.

All functions treat their inputs as immutable and return fresh dicts.
"""

from __future__ import annotations

from fractions import Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _grlex(mono):
    # graded lexicographic with x1 < x2 < ... < xd
    return (sum(mono), mono[::-1])


def add_terms(a, b):
    """a + b with cancelled terms pruned."""
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    out = dict(a)
    for mono, c in b.items():
        s = out.get(mono, _ZERO) + c
        if s:
            out[mono] = s
        else:
            out.pop(mono, None)
    return out


def sub_terms(a, b):
    """a - b with cancelled terms pruned."""
    out = dict(a)
    for mono, c in b.items():
        s = out.get(mono, _ZERO) - c
        if s:
            out[mono] = s
        else:
            out.pop(mono, None)
    return out


def neg_terms(a):
    return {mono: -c for mono, c in a.items()}


def scale_terms(a, c):
    """c * a for a scalar Fraction c."""
    if not c:
        return {}
    return {mono: v * c for mono, v in a.items()}


def mul_terms(a, b):
    """Distributive product a * b."""
    if not a or not b:
        return {}
    if len(b) > len(a):
        a, b = b, a
    out = {}
    for mb, cb in b.items():
        for ma, ca in a.items():
            mono = tuple(x + y for x, y in zip(ma, mb))
            s = out.get(mono, _ZERO) + ca * cb
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
    return out


def mul_monomial_terms(a, mono, c):
    """c * x**mono * a; cancellation-free, so no pruning is needed."""
    if not c:
        return {}
    return {tuple(x + y for x, y in zip(m, mono)): v * c for m, v in a.items()}


def partial_terms(a, i):
    """Formal partial derivative d/dx_i with 0-based axis i."""
    out = {}
    for mono, c in a.items():
        e = mono[i]
        if e:
            out[mono[:i] + (e - 1,) + mono[i + 1:]] = c * e
    return out


def laplacian_terms(a, d):
    """Sum of second partials over all d axes."""
    out = {}
    for mono, c in a.items():
        for i in range(d):
            e = mono[i]
            if e >= 2:
                m2 = mono[:i] + (e - 2,) + mono[i + 1:]
                s = out.get(m2, _ZERO) + c * (e * (e - 1))
                if s:
                    out[m2] = s
                else:
                    out.pop(m2, None)
    return out


def sphere_reduce_terms(a, d):
    """Canonical form modulo x_d**2 -> 1 - x_1**2 - ... - x_{d-1}**2.

    Terminates because each pass lowers the maximal x_d exponent by two;
    the result has x_d exponent 0 or 1 in every term.
    """
    rewrite = None
    cur = a
    while True:
        low = {}
        high = {}
        for mono, c in cur.items():
            e = mono[-1]
            if e >= 2:
                high[mono[:-1] + (e - 2,)] = c
            else:
                low[mono] = c
        if not high:
            return dict(low) if cur is a else low
        if rewrite is None:
            rewrite = {(0,) * d: _ONE}
            for i in range(d - 1):
                m = [0] * d
                m[i] = 2
                rewrite[tuple(m)] = -_ONE
        cur = add_terms(low, mul_terms(high, rewrite))


def eval_terms(a, xs):
    """Evaluate at the point xs (exact for Fraction inputs, float otherwise).

    Terms are accumulated in graded-lex order with per-variable power
    caching, so float results are reproducible run to run.  Returns
    Fraction(0) for the zero polynomial.
    """
    if not a:
        return _ZERO
    pows = [{} for _ in xs]
    total = None
    for mono in sorted(a, key=_grlex):
        v = a[mono]
        for i, e in enumerate(mono):
            if e:
                cache = pows[i]
                p = cache.get(e)
                if p is None:
                    p = xs[i] ** e
                    cache[e] = p
                v = v * p
        total = v if total is None else total + v
    return total
