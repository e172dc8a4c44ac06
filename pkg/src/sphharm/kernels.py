"""Projection onto the harmonic subspaces, zonal kernels, the apolar
inner product and the Funk-Hecke transform.

The zonal (reproducing) kernel of the degree-n harmonics is a function of
the inner product alone:

    Z_n(x, y) = ((n + lam)/lam) C_n^lam(<x, y>),   lam = (d-2)/2, d >= 3,

with the d = 2 case served by the Chebyshev limit 2 T_n (n >= 1) so one
API covers all dimensions.  Evaluated at t = 1 the profile equals
dim H_n^d exactly.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

import numpy as np

from sphharm import quadrature
from sphharm._util import pochhammer
from sphharm.exactpoly import MultiPoly
from sphharm.orthopoly import (
    Poly1,
    chebyshev_t,
    chebyshev_t_eval,
    gegenbauer,
    gegenbauer_eval,
    gegenbauer_one,
)


def _clamp(t: float) -> float:
    if abs(t) > 1.0 + 1e-12:
        raise ValueError(f"inner product {t} outside [-1, 1]")
    return min(1.0, max(-1.0, float(t)))


class ZonalKernel:
    """Radial profile of the degree-n reproducing kernel on S^{d-1}."""

    __slots__ = ("n", "dimension", "lam", "radial_profile")

    def __init__(self, n: int, d: int):
        if n < 0 or d < 2:
            raise ValueError("need n >= 0 and d >= 2")
        self.n = n
        self.dimension = d
        if d >= 3:
            self.lam = Fraction(d - 2, 2)
            scale = (n + self.lam) / self.lam
            self.radial_profile = gegenbauer(n, self.lam).scale(scale)
        else:
            self.lam = None
            self.radial_profile = Poly1([1]) if n == 0 else chebyshev_t(n).scale(2)

    def profile_at_one(self) -> Fraction:
        """Exact value at t = 1; equals dim H_n^d."""
        return Fraction(self.radial_profile(Fraction(1)))

    def eval(self, t: float) -> float:
        return zonal_eval(self.n, self.dimension, t)

    def eval_many(self, t: np.ndarray) -> np.ndarray:
        t = np.clip(np.asarray(t, dtype=float), -1.0, 1.0)
        n, d = self.n, self.dimension
        if d >= 3:
            lam = Fraction(d - 2, 2)
            return float((n + lam) / lam) * gegenbauer_eval(n, lam, t)
        if n == 0:
            return np.ones_like(t)
        return 2.0 * chebyshev_t_eval(n, t)


def zonal_eval(n: int, d: int, t: float) -> float:
    """Z_n(x, y) as a function of t = <x, y> (clamped to [-1, 1])."""
    t = _clamp(t)
    if d >= 3:
        lam = Fraction(d - 2, 2)
        return float((n + lam) / lam) * float(gegenbauer_eval(n, lam, t))
    if d == 2:
        return 1.0 if n == 0 else 2.0 * float(chebyshev_t_eval(n, t))
    raise ValueError("need d >= 2")


def zonal_from_basis(basis, x, y) -> float:
    """Addition-formula sum over an orthonormal basis:
    sum_k Y_k(x) Y_k(y), which must match :func:`zonal_eval` at <x, y>."""
    if not getattr(basis, "orthonormal", False):
        raise ValueError("zonal_from_basis needs an orthonormal basis")
    return float(sum(el(x) * el(y) for el in basis))


def project_homogeneous(p: MultiPoly) -> MultiPoly:
    """Orthogonal projection of a homogeneous polynomial onto the
    harmonics of the same degree:

        proj p = sum_j ||x||^(2j) Lap^j p / (4^j j! (-n + 2 - d/2)_j),

    exact, idempotent on harmonics.  The Pochhammer factor cannot vanish
    for d >= 2 and j <= n/2; this is asserted and faults otherwise.
    """
    if not p.is_homogeneous():
        raise ValueError("projection needs a homogeneous input")
    if p.is_zero():
        return p
    d = p.dimension
    if d < 2:
        raise ValueError("projection needs dimension >= 2")
    n = p.degree
    out = MultiPoly.zero(d)
    nrm_pow = MultiPoly.one(d)
    nrm = MultiPoly.norm_sq(d)
    q = p
    for j in range(n // 2 + 1):
        if j:
            q = q.laplacian()
            nrm_pow = nrm_pow * nrm
            if q.is_zero():
                break
        poch = pochhammer(Fraction(-n + 2) - Fraction(d, 2), j)
        if poch == 0:
            raise ArithmeticError(
                f"projection coefficient vanished at j={j} for n={n}, d={d}"
            )
        coeff = Fraction(1) / (Fraction(4**j * factorial(j)) * poch)
        out = out + coeff * (nrm_pow * q)
    return out


class ProjectedHarmonic:
    """Quadrature image of the projection operator: a closure over the
    stored samples f(y_i), evaluable anywhere on the sphere."""

    __slots__ = ("n", "rule", "_fw")

    def __init__(self, n: int, rule: quadrature.SphereRule, f_values: np.ndarray):
        self.n = n
        self.rule = rule
        omega = quadrature.surface_area(rule.dimension)
        self._fw = rule.weights * np.asarray(f_values, dtype=float) / omega

    def __call__(self, point) -> float:
        cart = np.asarray(getattr(point, "cartesian", point), dtype=float)
        t = self.rule.points @ cart
        zk = ZonalKernel(self.n, self.rule.dimension)
        return float(self._fw @ zk.eval_many(t))

    def eval_many(self, points) -> np.ndarray:
        pts = np.asarray(points, dtype=float)
        t = pts @ self.rule.points.T
        zk = ZonalKernel(self.n, self.rule.dimension)
        return zk.eval_many(t) @ self._fw


def project_quadrature(f, n: int, rule: quadrature.SphereRule) -> ProjectedHarmonic:
    """Degree-n harmonic component of f via the kernel integral
    x -> (1/omega_d) integral f(y) Z_n(<x, y>) dsigma(y) on the rule."""
    if hasattr(f, "eval_many"):
        values = np.asarray(f.eval_many(rule.points), dtype=float)
    else:
        values = np.array([f(p) for p in rule.points], dtype=float)
    return ProjectedHarmonic(n, rule, values)


def apolar_inner(p: MultiPoly, q: MultiPoly) -> Fraction:
    """The differentiation pairing <p, q> = p(d) q on matching monomials:
    sum_alpha alpha! a_alpha b_alpha, exact.

    Homogeneous inputs of different degrees share no monomials, so the
    pairing is exactly 0 across degrees (the documented extension).
    """
    if p.dimension != q.dimension:
        raise ValueError(f"dimension mismatch: {p.dimension} vs {q.dimension}")
    small, large = (p, q) if len(p) <= len(q) else (q, p)
    total = Fraction(0)
    lt = large.terms
    for alpha, a in small.terms.items():
        b = lt.get(alpha)
        if b is not None:
            f = 1
            for e in alpha:
                f *= factorial(e)
            total += f * a * b
    return total


def apolar_kernel(x, d: int, n: int) -> MultiPoly:
    """Reproducing kernel k_n(x, .) = <x, .>^n / n! of the apolar product,
    as a polynomial in the second slot for a fixed rational point x."""
    xs = [Fraction(v) for v in x]
    if len(xs) != d:
        raise ValueError(f"point has length {len(xs)}, expected {d}")
    inner = MultiPoly(d, {tuple(1 if j == i else 0 for j in range(d)): xs[i] for i in range(d)})
    return inner**n / factorial(n)


def apolar_sphere_ratio_check(p: MultiPoly, q: MultiPoly, rule: quadrature.SphereRule) -> tuple[Fraction, float]:
    """Both sides of <p, q>_d = 2^n (d/2)_n <p, q>_{S^{d-1}} for a harmonic q.

    Returns (exact apolar value, quadrature sphere inner product); the
    caller compares them against the 2^n (d/2)_n bridge factor.
    """
    lhs = apolar_inner(p, q)
    omega = quadrature.surface_area(rule.dimension)
    vals = p.eval_many(rule.points) * q.eval_many(rule.points)
    rhs = float(rule.weights @ vals) / omega
    return lhs, rhs


def apolar_bridge_factor(n: int, d: int) -> Fraction:
    """The constant 2^n (d/2)_n linking the apolar and sphere pairings."""
    return Fraction(2**n) * pochhammer(Fraction(d, 2), n)


def funk_hecke(f, n: int, d: int, m: int | None = None, poly_degree: int | None = None) -> float:
    """Funk-Hecke multiplier of the kernel f(<x, .>) on degree-n harmonics:

        lambda_n(f) = omega_{d-1} integral_{-1}^{1} f(t)
                      [C_n^lam(t) / C_n^lam(1)] (1 - t^2)^((d-3)/2) dt.

    Computed with a Gauss-Jacobi rule of m nodes; when f is a polynomial
    of known degree, m defaults to max(32, degree + n + 8), otherwise m
    must be supplied.  d = 2 is served by the Chebyshev-limit profile
    T_n(t) with the weight (1 - t^2)^(-1/2).
    """
    if d < 2:
        raise ValueError("need d >= 2")
    if m is None:
        if poly_degree is None:
            raise ValueError("supply a node count m (or poly_degree for polynomial f)")
        m = max(32, poly_degree + n + 8)
    rule = quadrature.gauss_jacobi(m, Fraction(d - 3, 2))
    nodes = np.asarray(rule.nodes)
    weights = np.asarray(rule.weights)
    fvals = np.array([f(t) for t in nodes], dtype=float)
    if d >= 3:
        lam = Fraction(d - 2, 2)
        ratio = gegenbauer_eval(n, lam, nodes) / float(gegenbauer_one(n, lam))
    else:
        ratio = chebyshev_t_eval(n, nodes)
    omega_lower = quadrature.surface_area(d - 1)
    return omega_lower * float(weights @ (fvals * ratio))
