import json
import math
import random
from fractions import Fraction

import numpy as np
import pytest
import scipy.special as sp

from sphharm.basis import dim_harmonic
from sphharm.orthopoly import (
    CHEBYSHEV_LIMIT,
    EXACT_DEGREE_CAP,
    Poly1,
    assoc_legendre,
    chebyshev_t,
    chebyshev_t_eval,
    chebyshev_u,
    coefficient_table,
    factorial2,
    gegenbauer,
    gegenbauer_eval,
    gegenbauer_norm,
    gegenbauer_one,
    gegenbauer_via_2f1,
    legendre,
)
from sphharm.quadrature import gauss_jacobi, surface_area

HALF = Fraction(1, 2)


class TestGegenbauer:
    def test_recurrence_seeds(self):
        assert gegenbauer(0, 1) == Poly1([1])
        assert gegenbauer(1, 1) == Poly1([0, 2])

    def test_degree_two(self):
        assert gegenbauer(2, 1) == Poly1([-1, 0, 4])
        assert gegenbauer(2, 1)(Fraction(1)) == 3

    def test_endpoint_matches_dimension(self):
        # C_n^lam(1) = (lam/(n+lam)) dim H_n^d for lam = (d-2)/2
        d, n = 4, 2
        lam = Fraction(d - 2, 2)
        assert gegenbauer(n, lam)(Fraction(1)) == lam / (n + lam) * dim_harmonic(n, d)
        assert gegenbauer_one(n, lam) == Fraction(3)
        assert dim_harmonic(2, 4) == 9

    @pytest.mark.parametrize("lam", [HALF, 1, Fraction(3, 2), 2, Fraction(5, 2)])
    def test_matches_hypergeometric_route(self, lam):
        for n in range(13):
            assert gegenbauer(n, lam) == gegenbauer_via_2f1(n, lam)

    def test_2f1_small_cases(self):
        assert gegenbauer_via_2f1(1, Fraction(7, 3)) == Poly1([0, Fraction(14, 3)])
        assert gegenbauer_via_2f1(2, 1) == Poly1([-1, 0, 4])
        assert gegenbauer_via_2f1(5, Fraction(3, 2)) == gegenbauer(5, Fraction(3, 2))

    @pytest.mark.parametrize("lam", [HALF, 1, Fraction(5, 2)])
    def test_parity(self, lam):
        for n in range(9):
            coeffs = gegenbauer(n, lam).coeffs
            for k, c in enumerate(coeffs):
                if (n - k) % 2:
                    assert c == 0

    def test_float_eval_matches_scipy(self):
        t = np.linspace(-1, 1, 21)
        for n in (0, 3, 10, 40, 80):
            mine = gegenbauer_eval(n, Fraction(3, 2), t)
            ref = sp.eval_gegenbauer(n, 1.5, t)
            assert np.max(np.abs(mine - ref)) < 1e-9 * np.max(np.abs(ref) + 1)

    def test_exact_cap(self):
        gegenbauer(EXACT_DEGREE_CAP, 1)
        with pytest.raises(ValueError, match="capped"):
            gegenbauer(EXACT_DEGREE_CAP + 1, 1)

    def test_invalid_lambda(self):
        with pytest.raises(ValueError):
            gegenbauer(2, Fraction(-1, 2))
        with pytest.raises(ValueError):
            gegenbauer(2, 0)


class TestChebyshevLimit:
    def test_limit_variant_returns_scaled_t(self):
        for n in range(1, 9):
            assert gegenbauer(n, CHEBYSHEV_LIMIT) == chebyshev_t(n).scale(Fraction(2, n))

    def test_limit_degree_zero(self):
        assert gegenbauer(0, CHEBYSHEV_LIMIT) == Poly1([1])

    def test_limit_numerically(self):
        # (1/lam) C_n^lam -> (2/n) T_n as lam -> 0+
        n = 5
        t = 0.37
        for lam in (Fraction(1, 100), Fraction(1, 1000)):
            approx = float(gegenbauer(n, lam)(Fraction(t).limit_denominator())) / float(lam)
            target = 2.0 / n * chebyshev_t(n).eval_float(t)
            assert abs(approx - target) < 0.05


class TestChebyshev:
    def test_t2(self):
        assert chebyshev_t(2) == Poly1([-1, 0, 2])

    def test_u1(self):
        assert chebyshev_u(1) == Poly1([0, 2])

    def test_t3_trig_identity(self, rng):
        for _ in range(20):
            th = rng.uniform(0, math.pi)
            assert abs(chebyshev_t(3).eval_float(math.cos(th)) - math.cos(3 * th)) <= 1e-12

    def test_u_equals_gegenbauer_lambda_one(self):
        for n in range(9):
            assert chebyshev_u(n) == gegenbauer(n, 1)

    def test_u_trig_identity(self, rng):
        for _ in range(10):
            th = rng.uniform(0.1, math.pi - 0.1)
            n = rng.randint(0, 8)
            expected = math.sin((n + 1) * th) / math.sin(th)
            assert abs(chebyshev_u(n).eval_float(math.cos(th)) - expected) < 1e-11


class TestLegendre:
    def test_seeds(self):
        assert legendre(0) == Poly1([1])
        assert legendre(1) == Poly1([0, 1])

    def test_p2(self):
        assert legendre(2) == Poly1([-HALF, 0, Fraction(3, 2)])

    def test_normalized_at_one(self):
        for n in range(13):
            assert legendre(n)(Fraction(1)) == 1

    def test_equals_gegenbauer_half(self):
        # the lam = 1/2 ultraspherical family is already P_n-normalized
        for n in range(10):
            assert legendre(n) == gegenbauer(n, HALF)


class TestAssocLegendre:
    def test_n1_k1_magnitude(self):
        assert abs(assoc_legendre(1, 1, 0.0)) == pytest.approx(1.0, abs=1e-15)

    def test_k0_at_one(self):
        assert abs(assoc_legendre(2, 0, 1.0)) == pytest.approx(1.0, abs=1e-15)

    def test_k_above_n_is_zero(self):
        assert assoc_legendre(2, 5, 0.3) == 0.0

    @pytest.mark.parametrize("convention", ["paper", "condon-shortley"])
    def test_gegenbauer_relation(self, rng, convention):
        for _ in range(20):
            n = rng.randint(0, 8)
            k = rng.randint(0, n)
            t = rng.uniform(-0.99, 0.99)
            lhs = abs(assoc_legendre(n, k, t, convention))
            rhs = factorial2(2 * k - 1) * (1 - t * t) ** (k / 2) * abs(
                gegenbauer_eval(n - k, Fraction(2 * k + 1, 2), t)
            )
            assert abs(lhs - rhs) <= 1e-10 * (1 + abs(rhs))

    def test_conventions_differ_by_sign(self, rng):
        for _ in range(10):
            n = rng.randint(0, 6)
            k = rng.randint(0, n)
            t = rng.uniform(-0.9, 0.9)
            a = assoc_legendre(n, k, t, "paper")
            b = assoc_legendre(n, k, t, "condon-shortley")
            assert a == pytest.approx((-1.0) ** (n - k) * b, abs=1e-13)

    def test_condon_shortley_matches_scipy(self, rng):
        for _ in range(20):
            n = rng.randint(0, 8)
            k = rng.randint(0, n)
            t = rng.uniform(-0.95, 0.95)
            mine = assoc_legendre(n, k, t, "condon-shortley")
            ref = sp.lpmv(k, n, t)
            assert mine == pytest.approx(ref, abs=1e-10 * (1 + abs(ref)))

    def test_unknown_convention(self):
        with pytest.raises(ValueError, match="convention"):
            assoc_legendre(2, 1, 0.5, "other")


class TestGegenbauerNorm:
    def test_degree_zero(self):
        assert gegenbauer_norm(0, 5) == 1

    def test_d4_n2(self):
        assert gegenbauer_norm(2, 4) == 1

    @pytest.mark.parametrize("d", [3, 4, 5])
    def test_quadrature_orthogonality(self, d):
        lam = Fraction(d - 2, 2)
        rule = gauss_jacobi(24, lam - HALF)
        ratio = surface_area(d - 1) / surface_area(d)
        for n in range(6):
            for m in range(6):
                val = ratio * sum(
                    w * gegenbauer_eval(n, lam, t) * gegenbauer_eval(m, lam, t)
                    for t, w in zip(rule.nodes, rule.weights)
                )
                expected = float(gegenbauer_norm(n, d)) if n == m else 0.0
                assert abs(val - expected) <= 1e-11 * (1 + abs(expected))


@pytest.mark.parametrize(
    "family,builder,weight",
    [
        ("legendre", legendre, Fraction(0)),
        ("chebyshev-u", chebyshev_u, HALF),
        ("gegenbauer-5/2", lambda n: gegenbauer(n, Fraction(5, 2)), 2),
    ],
)
def test_family_orthogonality_gram(family, builder, weight):
    rule = gauss_jacobi(20, weight)
    polys = [builder(n) for n in range(7)]
    for i in range(7):
        for j in range(i + 1, 7):
            val = sum(
                w * polys[i].eval_float(t) * polys[j].eval_float(t)
                for t, w in zip(rule.nodes, rule.weights)
            )
            assert abs(val) <= 1e-11


class TestCoefficientTable:
    def test_json_lines(self):
        text = coefficient_table("gegenbauer", 3, Fraction(3, 2))
        lines = text.splitlines()
        assert len(lines) == 4
        row = json.loads(lines[2])
        assert row["degree"] == 2
        assert row["lambda"] == "3/2"
        assert row["coefficients"] == [str(c) for c in gegenbauer(2, Fraction(3, 2)).coeffs]

    def test_parameter_free_family(self):
        row = json.loads(coefficient_table("legendre", 2).splitlines()[-1])
        assert row["lambda"] is None

    def test_needs_lambda(self):
        with pytest.raises(ValueError, match="lam"):
            coefficient_table("gegenbauer", 3)


class TestPoly1:
    def test_trailing_zeros_trimmed(self):
        assert Poly1([1, 2, 0, 0]).coeffs == (1, 2)

    def test_zero_degree_sentinel(self):
        assert Poly1([]).degree is None
        assert Poly1([0]).degree is None

    def test_derivative(self):
        assert Poly1([1, 2, 3]).derivative() == Poly1([2, 6])

    def test_exact_eval(self):
        p = Poly1([Fraction(1, 3), 0, 1])
        assert p(Fraction(1, 2)) == Fraction(1, 3) + Fraction(1, 4)


def test_chebyshev_eval_recurrence_vs_coeffs(rng):
    for _ in range(10):
        n = rng.randint(0, 20)
        t = rng.uniform(-1, 1)
        assert chebyshev_t_eval(n, t) == pytest.approx(chebyshev_t(n).eval_float(t), abs=1e-11)
