# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of _poly_core_py.

Same term-dict representation, same contracts, bit-identical results:
coefficients stay Python Fractions, the win comes from C-level loops over
the dicts and exponent tuples.  Keep the two files in sync; the parity
test suite compares them on random inputs.
"""

from fractions import Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _grlex(tuple mono):
    return (sum(mono), mono[::-1])


cdef inline tuple _tuple_add(tuple x, tuple y):
    cdef Py_ssize_t i, n = len(x)
    cdef list out = [0] * n
    for i in range(n):
        out[i] = x[i] + y[i]
    return tuple(out)


def add_terms(dict a, dict b):
    """a + b with cancelled terms pruned."""
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    cdef dict out = dict(a)
    cdef tuple mono
    for mono, c in b.items():
        s = out.get(mono, _ZERO) + c
        if s:
            out[mono] = s
        else:
            out.pop(mono, None)
    return out


def sub_terms(dict a, dict b):
    """a - b with cancelled terms pruned."""
    cdef dict out = dict(a)
    cdef tuple mono
    for mono, c in b.items():
        s = out.get(mono, _ZERO) - c
        if s:
            out[mono] = s
        else:
            out.pop(mono, None)
    return out


def neg_terms(dict a):
    cdef dict out = {}
    cdef tuple mono
    for mono, c in a.items():
        out[mono] = -c
    return out


def scale_terms(dict a, c):
    """c * a for a scalar Fraction c."""
    if not c:
        return {}
    cdef dict out = {}
    cdef tuple mono
    for mono, v in a.items():
        out[mono] = v * c
    return out


def mul_terms(dict a, dict b):
    """Distributive product a * b."""
    if not a or not b:
        return {}
    if len(b) > len(a):
        a, b = b, a
    cdef dict out = {}
    cdef tuple ma, mb, mono
    for mb, cb in b.items():
        for ma, ca in a.items():
            mono = _tuple_add(ma, mb)
            s = out.get(mono, _ZERO) + ca * cb
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
    return out


def mul_monomial_terms(dict a, tuple mono, c):
    """c * x**mono * a; cancellation-free, so no pruning is needed."""
    if not c:
        return {}
    cdef dict out = {}
    cdef tuple m
    for m, v in a.items():
        out[_tuple_add(m, mono)] = v * c
    return out


def partial_terms(dict a, Py_ssize_t i):
    """Formal partial derivative d/dx_i with 0-based axis i."""
    cdef dict out = {}
    cdef tuple mono
    for mono, c in a.items():
        e = mono[i]
        if e:
            out[mono[:i] + (e - 1,) + mono[i + 1:]] = c * e
    return out


def laplacian_terms(dict a, Py_ssize_t d):
    """Sum of second partials over all d axes."""
    cdef dict out = {}
    cdef tuple mono, m2
    cdef Py_ssize_t i
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


def sphere_reduce_terms(dict a, Py_ssize_t d):
    """Canonical form modulo x_d**2 -> 1 - x_1**2 - ... - x_{d-1}**2."""
    cdef dict rewrite = None
    cdef dict cur = a
    cdef dict low, high
    cdef tuple mono
    cdef Py_ssize_t i, last = d - 1
    cdef list m
    while True:
        low = {}
        high = {}
        for mono, c in cur.items():
            e = mono[last]
            if e >= 2:
                high[mono[:last] + (e - 2,)] = c
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


def eval_terms(dict a, xs):
    """Evaluate at the point xs; graded-lex accumulation, cached powers."""
    if not a:
        return _ZERO
    cdef list pows = [{} for _ in xs]
    cdef tuple mono
    cdef Py_ssize_t i
    total = None
    for mono in sorted(a, key=_grlex):
        v = a[mono]
        for i in range(len(mono)):
            e = mono[i]
            if e:
                cache = pows[i]
                p = cache.get(e)
                if p is None:
                    p = xs[i] ** e
                    cache[e] = p
                v = v * p
        total = v if total is None else total + v
    return total
