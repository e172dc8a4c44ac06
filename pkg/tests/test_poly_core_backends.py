"""Parity between the pure-Python and compiled term kernels.

Both backends must return bit-identical dicts on arbitrary inputs; the
pure kernels are the reference.
"""

import random
from fractions import Fraction

import pytest

from sphharm import _poly_core_py as pure

cy = pytest.importorskip("sphharm._poly_core_cy")


def random_terms(rng, d, max_degree=6, terms=10):
    out = {}
    for _ in range(terms):
        alpha = tuple(rng.randint(0, max_degree // 2) for _ in range(d))
        out[alpha] = Fraction(rng.randint(-9, 9) or 1, rng.randint(1, 7))
    return out


@pytest.mark.parametrize("d", [2, 3, 5])
def test_binary_ops_match(d):
    rng = random.Random(d)
    for _ in range(25):
        a = random_terms(rng, d)
        b = random_terms(rng, d)
        assert pure.add_terms(a, b) == cy.add_terms(a, b)
        assert pure.sub_terms(a, b) == cy.sub_terms(a, b)
        assert pure.mul_terms(a, b) == cy.mul_terms(a, b)


@pytest.mark.parametrize("d", [2, 3, 5])
def test_unary_ops_match(d):
    rng = random.Random(100 + d)
    for _ in range(25):
        a = random_terms(rng, d)
        c = Fraction(rng.randint(-5, 5), rng.randint(1, 5))
        mono = tuple(rng.randint(0, 2) for _ in range(d))
        assert pure.neg_terms(a) == cy.neg_terms(a)
        assert pure.scale_terms(a, c) == cy.scale_terms(a, c)
        assert pure.mul_monomial_terms(a, mono, c) == cy.mul_monomial_terms(a, mono, c)
        for i in range(d):
            assert pure.partial_terms(a, i) == cy.partial_terms(a, i)
        assert pure.laplacian_terms(a, d) == cy.laplacian_terms(a, d)
        assert pure.sphere_reduce_terms(a, d) == cy.sphere_reduce_terms(a, d)


@pytest.mark.parametrize("d", [2, 4])
def test_eval_matches_bitwise(d):
    rng = random.Random(200 + d)
    for _ in range(25):
        a = random_terms(rng, d)
        xf = tuple(rng.uniform(-1, 1) for _ in range(d))
        xq = tuple(Fraction(rng.randint(-5, 5), rng.randint(1, 5)) for _ in range(d))
        assert pure.eval_terms(a, xf) == cy.eval_terms(a, xf)  # identical float path
        assert pure.eval_terms(a, xq) == cy.eval_terms(a, xq)


def test_empty_and_cancellation():
    zero = {}
    one = {(0, 0): Fraction(1)}
    minus = {(0, 0): Fraction(-1)}
    for impl in (pure, cy):
        assert impl.add_terms(one, minus) == {}
        assert impl.mul_terms(zero, one) == {}
        assert impl.eval_terms(zero, (0.5, 0.5)) == 0
