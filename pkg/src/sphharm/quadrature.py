"""Gauss-Jacobi rules on [-1, 1] and product quadrature on the sphere.

The 1D rules are built dependency-free from the symmetric tridiagonal
recurrence matrix: nodes by Sturm-sequence bisection (tolerance 1e-15,
iteration cap 200 per node), weights from the orthonormal-recurrence
identity w_i = 1 / sum_k phi_k(x_i)^2 with the zeroth moment computed
exactly through half-integer Gamma values.  Nodes and weights are then
symmetrized about 0, which makes odd integrands cancel exactly in pairs.

The sphere rule is the tensor rule in spherical coordinates: an
equispaced (trapezoid-type) rule in the first angle, exact for
trigonometric polynomials, and a Gauss-Jacobi rule with weight
(1 - t^2)^((j-2)/2) for each remaining angle after t = cos(theta_j).
Its independent oracle is :func:`monomial_integral`, the classical
Beta-function formula for monomial integrals over the sphere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import ceil, pi, sqrt

import numpy as np

from sphharm._util import gamma_half


class QuadratureError(RuntimeError):
    """Rule construction failed (non-convergence or invalid parameters)."""


@dataclass(frozen=True)
class Rule1D:
    """Gauss rule for the weight (1 - t^2)^alpha on (-1, 1)."""

    nodes: tuple[float, ...]
    weights: tuple[float, ...]
    exact_degree: int
    alpha: Fraction

    @property
    def total_mass(self) -> float:
        return float(sum(self.weights))


@dataclass(frozen=True, eq=False)
class SphereRule:
    """Positive-weight rule on S^{d-1}, exact for polynomials of total
    degree <= exact_degree (up to roundoff)."""

    dimension: int
    points: np.ndarray  # (K, d), unit vectors
    weights: np.ndarray  # (K,)
    exact_degree: int
    angles: np.ndarray | None = field(default=None, repr=False)  # (K, d-1)

    def __post_init__(self):
        self.points.setflags(write=False)
        self.weights.setflags(write=False)
        if self.angles is not None:
            self.angles.setflags(write=False)

    def __len__(self) -> int:
        return len(self.weights)


def surface_area_exact(d: int) -> tuple[Fraction, Fraction]:
    """omega_d = 2 pi^{d/2} / Gamma(d/2) as (coefficient, power of pi)."""
    if d < 1:
        raise ValueError("dimension must be at least 1")
    c, e = gamma_half(d)
    return Fraction(2) / c, Fraction(d, 2) - e


def surface_area(d: int) -> float:
    """Surface area of S^{d-1} as a float."""
    c, e = surface_area_exact(d)
    return float(c) * pi ** float(e)


def _jacobi_offdiag_sq(m: int, alpha: float) -> list[float]:
    """Squared off-diagonal entries b_1..b_{m-1} of the symmetric
    tridiagonal recurrence matrix for the weight (1 - t^2)^alpha."""
    b = []
    for k in range(1, m):
        if k == 1:
            b.append(1.0 / (2.0 * alpha + 3.0))
        else:
            b.append(
                k * (k + 2.0 * alpha) / ((2.0 * k + 2.0 * alpha + 1.0) * (2.0 * k + 2.0 * alpha - 1.0))
            )
    return b


_PIVMIN = 1e-280


def _sturm_count(e2: list[float], x: float) -> int:
    """Number of eigenvalues below x (zero-diagonal tridiagonal matrix).

    LDL^T pivot recurrence; pivots that underflow are clamped to a small
    negative value before being counted, the usual breakdown guard.
    """
    count = 0
    q = -x
    for b in e2:
        if abs(q) < _PIVMIN:
            q = -_PIVMIN
        if q < 0.0:
            count += 1
        q = -x - b / q
    if q < 0.0:
        count += 1
    return count


def _tridiag_eigenvalues(e2: list[float], m: int) -> list[float]:
    """All m eigenvalues, ascending, by bisection on the Sturm count."""
    eigs = []
    for i in range(m):
        lo, hi = -1.0, 1.0
        iterations = 0
        while hi - lo > 1e-15:
            iterations += 1
            if iterations > 200:
                raise QuadratureError(
                    f"bisection for node {i} failed to converge: "
                    f"interval [{lo}, {hi}] after 200 iterations"
                )
            mid = 0.5 * (lo + hi)
            if _sturm_count(e2, mid) >= i + 1:
                hi = mid
            else:
                lo = mid
        eigs.append(0.5 * (lo + hi))
    return eigs


def _zeroth_moment_exact(alpha: Fraction) -> tuple[Fraction, Fraction]:
    """Integral of (1 - t^2)^alpha over [-1, 1] as (coefficient, pi power).

    Equals sqrt(pi) Gamma(alpha + 1) / Gamma(alpha + 3/2), exact for
    half-integer alpha.
    """
    c1, e1 = gamma_half(int(2 * alpha) + 2)
    c2, e2 = gamma_half(int(2 * alpha) + 3)
    return c1 / c2, Fraction(1, 2) + e1 - e2


@lru_cache(maxsize=None)
def _gauss_jacobi_cached(m: int, alpha: Fraction) -> Rule1D:
    af = float(alpha)
    e2 = _jacobi_offdiag_sq(m, af)
    nodes = _tridiag_eigenvalues(e2, m)

    # enforce exact symmetry about 0 (eigenvalues come in +/- pairs)
    for i in range(m // 2):
        v = 0.5 * (nodes[m - 1 - i] - nodes[i])
        nodes[i], nodes[m - 1 - i] = -v, v
    if m % 2:
        nodes[m // 2] = 0.0

    mc, me = _zeroth_moment_exact(alpha)
    mu0 = float(mc) * pi ** float(me)

    # w_i = 1 / sum_k phi_k(x_i)^2 with phi_k the orthonormal recurrence:
    # sqrt(b_k) phi_k = x phi_{k-1} - sqrt(b_{k-1}) phi_{k-2}
    roots_b = [sqrt(b) for b in e2]
    weights = []
    for x in nodes:
        phi_pp = 0.0
        phi = 1.0 / sqrt(mu0)
        total = phi * phi
        prev_rb = 0.0
        for rb in roots_b:
            phi_pp, phi = phi, (x * phi - prev_rb * phi_pp) / rb
            prev_rb = rb
            total += phi * phi
        weights.append(1.0 / total)
    # symmetrize weights as well
    for i in range(m // 2):
        w = 0.5 * (weights[i] + weights[m - 1 - i])
        weights[i] = weights[m - 1 - i] = w
    return Rule1D(tuple(nodes), tuple(weights), 2 * m - 1, alpha)


def gauss_jacobi(m: int, alpha) -> Rule1D:
    """Gauss rule with m nodes for the weight (1 - t^2)^alpha.

    alpha must be a half-integer rational > -1; the rule is exact for
    polynomial degree 2m - 1.
    """
    if m < 1:
        raise ValueError("node count must be positive")
    alpha = Fraction(alpha)
    if alpha <= -1:
        raise ValueError("weight exponent must exceed -1")
    if (2 * alpha).denominator != 1:
        raise ValueError(f"weight exponent must be a half-integer, got {alpha}")
    return _gauss_jacobi_cached(m, alpha)


def integrate_1d(f, rule: Rule1D) -> float:
    """Weighted sum over the rule nodes."""
    return float(sum(w * f(x) for x, w in zip(rule.nodes, rule.weights)))


def sphere_product_rule(d: int, target_degree: int) -> SphereRule:
    """Tensor rule in spherical coordinates, exact for total degree <= N."""
    if d < 2:
        raise ValueError("dimension must be at least 2")
    if target_degree < 0:
        raise ValueError("target degree must be nonnegative")
    N = target_degree

    n_circle = 2 * ceil(N / 2) + 2
    theta1 = 2.0 * pi * np.arange(n_circle) / n_circle
    w1 = np.full(n_circle, 2.0 * pi / n_circle)

    gauss_rules = [gauss_jacobi(N // 2 + 1, Fraction(j - 2, 2)) for j in range(2, d)]

    angle_grids = [theta1] + [np.arccos(np.asarray(r.nodes)) for r in gauss_rules]
    weight_grids = [w1] + [np.asarray(r.weights) for r in gauss_rules]

    mesh = np.meshgrid(*angle_grids, indexing="ij")
    angles = np.stack([g.ravel() for g in mesh], axis=1)  # (K, d-1)
    wmesh = np.meshgrid(*weight_grids, indexing="ij")
    weights = np.ones(angles.shape[0])
    for g in wmesh:
        weights = weights * g.ravel()

    # cartesian assembly, peeling angles from theta_{d-1} inward
    K = angles.shape[0]
    points = np.empty((K, d))
    s = np.ones(K)
    for j in range(d - 1, 1, -1):
        th = angles[:, j - 1]
        points[:, j] = s * np.cos(th)
        s = s * np.sin(th)
    points[:, 1] = s * np.cos(angles[:, 0])
    points[:, 0] = s * np.sin(angles[:, 0])

    return SphereRule(d, points, weights, N, angles)


def integrate_sphere(f, rule: SphereRule) -> float:
    """Sum of w_i f(p_i); f may be a callable on unit vectors or any
    object with an ``eval_many`` method (e.g. MultiPoly)."""
    if hasattr(f, "eval_many"):
        values = np.asarray(f.eval_many(rule.points), dtype=float)
    else:
        values = np.array([f(p) for p in rule.points], dtype=float)
    return float(rule.weights @ values)


def monomial_integral(alpha, d: int) -> Fraction:
    """Exact integral of x^alpha over S^{d-1} as a multiple of omega_d.

    Zero when any exponent is odd; otherwise the Beta-function value
    2 prod_i Gamma((alpha_i + 1)/2) / Gamma((|alpha| + d)/2) divided by
    omega_d, which is always rational.  This is the exactness oracle for
    :func:`sphere_product_rule`.
    """
    alpha = tuple(int(e) for e in alpha)
    if len(alpha) != d:
        raise ValueError(f"exponent tuple has length {len(alpha)}, expected {d}")
    if any(e < 0 for e in alpha):
        raise ValueError("exponents must be nonnegative")
    if any(e % 2 for e in alpha):
        return Fraction(0)
    n = sum(alpha)
    coef = Fraction(1)
    pi_exp = Fraction(0)
    for e in alpha:
        c, p = gamma_half(e + 1)
        coef *= c
        pi_exp += p
    cn, pn = gamma_half(n + d)
    coef = 2 * coef / cn
    pi_exp -= pn
    # divide by omega_d
    oc, oe = surface_area_exact(d)
    coef /= oc
    pi_exp -= oe
    if pi_exp != 0:
        raise AssertionError("monomial integral ratio should be rational")
    return coef
