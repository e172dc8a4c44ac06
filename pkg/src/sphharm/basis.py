"""Explicit bases of the spaces of spherical harmonics.

Covers the dimension bookkeeping, the monic (Maxwell) basis generated by
the differentiation recurrence, the orthonormal basis in spherical
coordinates with exact normalization constants, the closed forms in two
and three variables, coordinate transforms, and the decomposition of a
homogeneous polynomial into harmonic layers.

Index convention: every degree-n basis is tagged by the multi-indices
{alpha : |alpha| = n, alpha_d in {0, 1}} in graded-lex order, so matrices
taken between different bases of the same degree are well defined.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import atan2, comb, cos, factorial, pi, sin, sqrt
from typing import Iterator, Sequence

import numpy as np

from sphharm import kernels, quadrature
from sphharm._util import pochhammer
from sphharm.exactpoly import MultiPoly, grlex_key
from sphharm.orthopoly import Poly1, assoc_legendre, gegenbauer, gegenbauer_eval


class BasisError(RuntimeError):
    """Basis construction failed (degenerate input or normalization guard)."""


# ----------------------------------------------------------------------
# dimensions
# ----------------------------------------------------------------------
def dim_homogeneous(n: int, d: int) -> int:
    """dim of the homogeneous polynomials of degree n in d variables."""
    if n < 0 or d < 1:
        raise ValueError("need n >= 0 and d >= 1")
    return comb(n + d - 1, n)


def dim_harmonic(n: int, d: int) -> int:
    """dim of the degree-n spherical harmonics: C(n+d-1, n) - C(n+d-3, n-2)."""
    if n < 0 or d < 2:
        raise ValueError("need n >= 0 and d >= 2")
    lower = comb(n + d - 3, n - 2) if n >= 2 else 0
    return comb(n + d - 1, n) - lower


def dim_pi_sphere(n: int, d: int) -> int:
    """dim of the degree-<=n polynomials restricted to the sphere."""
    if n < 0 or d < 2:
        raise ValueError("need n >= 0 and d >= 2")
    lower = comb(n + d - 2, n - 1) if n >= 1 else 0
    return comb(n + d - 1, n) + lower


# ----------------------------------------------------------------------
# points and coordinates
# ----------------------------------------------------------------------
_NORM_TOL = 1e-12
_AGREE_TOL = 1e-10


def angles_to_cartesian(angles: Sequence[float], d: int) -> tuple[float, ...]:
    """Map (theta_1, ..., theta_{d-1}) to a unit vector.

    Uses x1 = sin(theta_{d-1})...sin(theta_2) sin(theta_1),
    x2 = ... cos(theta_1), ..., xd = cos(theta_{d-1}).
    """
    if len(angles) != d - 1:
        raise ValueError(f"expected {d - 1} angles, got {len(angles)}")
    out = [0.0] * d
    s = 1.0
    for j in range(d - 1, 1, -1):
        th = angles[j - 1]
        out[j] = s * cos(th)
        s *= sin(th)
    out[1] = s * cos(angles[0])
    out[0] = s * sin(angles[0])
    return tuple(out)


def cartesian_to_angles(x: Sequence[float]) -> tuple[float, ...]:
    """Inverse of :func:`angles_to_cartesian` on canonical ranges.

    theta_1 lands in [0, 2 pi) and the others in [0, pi]; at poles the
    undetermined inner angles are canonicalized to 0.
    """
    d = len(x)
    if d < 2:
        raise ValueError("need at least two coordinates")
    angles = [0.0] * (d - 1)
    for j in range(d - 1, 1, -1):
        rho = sqrt(sum(v * v for v in x[:j]))
        angles[j - 1] = atan2(rho, x[j])
    angles[0] = atan2(x[0], x[1]) % (2.0 * pi)
    return tuple(angles)


@dataclass(frozen=True)
class SpherePoint:
    """Point on S^{d-1} carrying the Cartesian unit vector and,
    optionally, its spherical angles."""

    cartesian: tuple[float, ...]
    angles: tuple[float, ...] | None = None

    def __post_init__(self):
        norm = sqrt(sum(v * v for v in self.cartesian))
        if abs(norm - 1.0) > _NORM_TOL:
            raise ValueError(f"point has norm {norm}, not on the unit sphere")
        if self.angles is not None:
            if len(self.angles) != self.d - 1:
                raise ValueError("angle tuple has wrong length")
            rebuilt = angles_to_cartesian(self.angles, self.d)
            if max(abs(a - b) for a, b in zip(rebuilt, self.cartesian)) > _AGREE_TOL:
                raise ValueError("cartesian and angle representations disagree")

    @property
    def d(self) -> int:
        return len(self.cartesian)

    @classmethod
    def from_cartesian(cls, vec: Sequence[float], normalize: bool = False) -> "SpherePoint":
        vec = tuple(float(v) for v in vec)
        if normalize:
            norm = sqrt(sum(v * v for v in vec))
            if norm == 0.0:
                raise ValueError("cannot normalize the zero vector")
            vec = tuple(v / norm for v in vec)
        return cls(vec)

    @classmethod
    def from_angles(cls, angles: Sequence[float], d: int | None = None) -> "SpherePoint":
        angles = tuple(float(a) for a in angles)
        if d is None:
            d = len(angles) + 1
        return cls(angles_to_cartesian(angles, d), angles)

    def with_angles(self) -> "SpherePoint":
        if self.angles is not None:
            return self
        return SpherePoint(self.cartesian, cartesian_to_angles(self.cartesian))


def _as_angles(point) -> tuple[float, ...]:
    if isinstance(point, SpherePoint):
        return point.angles if point.angles is not None else cartesian_to_angles(point.cartesian)
    return cartesian_to_angles(tuple(float(v) for v in point))


# ----------------------------------------------------------------------
# index bookkeeping
# ----------------------------------------------------------------------
def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def canonical_index_set(n: int, d: int) -> list[tuple[int, ...]]:
    """All alpha with |alpha| = n and alpha_d in {0, 1}, graded-lex order."""
    out = []
    for last in (0, 1):
        if n - last < 0:
            continue
        for head in _compositions(n - last, d - 1):
            out.append(head + (last,))
    out.sort(key=grlex_key)
    return out


class HarmonicBasis:
    """Ordered list of degree-n harmonics with index tags.

    Elements are either exact polynomials (MultiPoly) or angle-evaluable
    closed forms; both are callable on a SpherePoint or coordinate
    sequence.  Immutable once built.
    """

    def __init__(self, degree: int, dimension: int, elements, indexing, orthonormal: bool = False):
        expected = dim_harmonic(degree, dimension)
        if len(elements) != expected:
            raise BasisError(
                f"basis for n={degree}, d={dimension} has {len(elements)} elements, "
                f"expected {expected}"
            )
        if len(indexing) != len(elements):
            raise BasisError("indexing and element count differ")
        self.degree = degree
        self.dimension = dimension
        self.elements = tuple(elements)
        self.indexing = tuple(tuple(a) for a in indexing)
        self.orthonormal = bool(orthonormal)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, k):
        return self.elements[k]

    def is_polynomial(self) -> bool:
        return all(isinstance(el, MultiPoly) for el in self.elements)

    def eval_matrix(self, rule_or_points) -> np.ndarray:
        """Evaluate every element at every point; shape (len, K)."""
        if isinstance(rule_or_points, quadrature.SphereRule):
            points = rule_or_points.points
            angles = rule_or_points.angles
        else:
            points = np.asarray(rule_or_points, dtype=float)
            angles = None
        if self.is_polynomial():
            return np.stack([el.eval_many(points) for el in self.elements])
        if angles is None:
            angles = np.array([cartesian_to_angles(p) for p in points])
        return np.stack([el.eval_many_angles(angles) for el in self.elements])


# ----------------------------------------------------------------------
# Maxwell (monic) basis
# ----------------------------------------------------------------------
@lru_cache(maxsize=None)
def _maxwell_p(alpha: tuple[int, ...], d: int) -> MultiPoly:
    n = sum(alpha)
    if n == 0:
        return MultiPoly.one(d)
    i = next(k for k, e in enumerate(alpha) if e > 0)
    prev = _maxwell_p(alpha[:i] + (alpha[i] - 1,) + alpha[i + 1:], d)
    xi_prev = MultiPoly.variable(d, i + 1) * prev
    correction = MultiPoly.norm_sq(d) * prev.partial(i + 1)
    return xi_prev - Fraction(1, 2 * (n - 1) + d - 2) * correction


def maxwell_harmonic(alpha: Sequence[int], d: int) -> MultiPoly:
    """Monic harmonic p_alpha from the recurrence
    p_{alpha+e_i} = x_i p_alpha - ||x||^2 d_i p_alpha / (2|alpha| + d - 2).

    Exactly harmonic, and p_alpha - x^alpha lies in ||x||^2 P_{n-2}.
    """
    if d < 3:
        raise ValueError("the monic construction needs d >= 3")
    alpha = tuple(int(e) for e in alpha)
    if len(alpha) != d or any(e < 0 for e in alpha):
        raise ValueError(f"bad multi-index {alpha} for dimension {d}")
    return _maxwell_p(alpha, d)


def maxwell_basis(n: int, d: int) -> HarmonicBasis:
    """The monic basis {p_alpha : |alpha| = n, alpha_d in {0, 1}}."""
    if d < 3:
        raise ValueError("the monic construction needs d >= 3 (use basis_d2 for d = 2)")
    if n < 0:
        raise ValueError("degree must be nonnegative")
    idx = canonical_index_set(n, d)
    return HarmonicBasis(n, d, [_maxwell_p(a, d) for a in idx], idx, orthonormal=False)


def gram_schmidt(basis: HarmonicBasis, rule: quadrature.SphereRule) -> HarmonicBasis:
    """Orthonormalize a polynomial basis against quadrature inner products.

    The combination coefficients come from a Cholesky factor of the Gram
    matrix; they are floats, converted exactly to rationals, so the output
    elements remain exactly harmonic.
    """
    if not basis.is_polynomial():
        raise TypeError("gram_schmidt needs polynomial basis elements")
    if rule.exact_degree < 2 * basis.degree:
        raise ValueError(
            f"rule exact to degree {rule.exact_degree} cannot integrate degree "
            f"{2 * basis.degree} products"
        )
    B = basis.eval_matrix(rule)
    omega = quadrature.surface_area(basis.dimension)
    G = (B * rule.weights) @ B.T / omega

    N = len(basis)
    L = np.zeros((N, N))
    for k in range(N):
        pivot = G[k, k] - L[k, :k] @ L[k, :k]
        if pivot <= 0.0 or sqrt(max(pivot, 0.0)) < 1e-8:
            raise BasisError(f"numerically dependent basis element at index {k}")
        L[k, k] = sqrt(pivot)
        for i in range(k + 1, N):
            L[i, k] = (G[i, k] - L[i, :k] @ L[k, :k]) / L[k, k]
    C = np.linalg.solve(L, np.eye(N))  # rows express orthonormal elements

    new_elements = []
    for i in range(N):
        acc = MultiPoly.zero(basis.dimension)
        for j in range(i + 1):
            c = C[i, j]
            if c != 0.0:
                acc = acc + Fraction(c) * basis.elements[j]
        new_elements.append(acc)
    return HarmonicBasis(basis.degree, basis.dimension, new_elements, basis.indexing, orthonormal=True)


# ----------------------------------------------------------------------
# spherical-coordinate orthonormal basis
# ----------------------------------------------------------------------
def _sph_norm_factor_sq(alpha: tuple[int, ...], d: int) -> Fraction:
    """Exact squared normalizer for the spherical-coordinate element.

    Built from the ultraspherical normalization constants: with
    tail_j = alpha_{j+1} + ... + alpha_d and lam_j = tail_j + (d-j-1)/2,

        N^2 = b prod_j  alpha_j! ((d-j+1)/2)_{tail_j} (alpha_j + lam_j)
                       ------------------------------------------------
                        (2 lam_j)_{alpha_j} ((d-j)/2)_{tail_j} lam_j

    where b = 2 when the trigonometric frequency is positive.  The
    element N * (product) has unit norm; constructors cross-check this
    against quadrature and fail loudly on mismatch.
    """
    b = 2 if (alpha[d - 2] + alpha[d - 1]) > 0 else 1
    out = Fraction(b)
    for j in range(1, d - 1):
        tail = sum(alpha[j:])
        lam = Fraction(tail) + Fraction(d - j - 1, 2)
        num = Fraction(factorial(alpha[j - 1]))
        num *= pochhammer(Fraction(d - j + 1, 2), tail) * (alpha[j - 1] + lam)
        den = pochhammer(2 * lam, alpha[j - 1]) * pochhammer(Fraction(d - j, 2), tail) * lam
        out *= num / den
    return out


class SphCoordHarmonic:
    """One element of the orthonormal basis in spherical coordinates.

    Value at angles (theta_1, ..., theta_{d-1}):

        N * trig(f * theta_1) * prod_{j=1}^{d-2}
            sin(theta_{d-j})^{tail_j} C_{alpha_j}^{lam_j}(cos(theta_{d-j}))

    with trig = cos for alpha_d = 0 and sin for alpha_d = 1, frequency
    f = alpha_{d-1} + alpha_d, tail_j = alpha_{j+1} + ... + alpha_d and
    lam_j = tail_j + (d-j-1)/2.  The restriction to the sphere of a
    homogeneous harmonic of degree |alpha|.
    """

    __slots__ = ("alpha", "dimension", "norm_factor_sq", "normalizer", "_factors", "_freq", "_is_sin")

    def __init__(self, alpha: Sequence[int], d: int):
        alpha = tuple(int(e) for e in alpha)
        if d < 3 or len(alpha) != d or alpha[-1] not in (0, 1):
            raise ValueError(f"bad index {alpha} for dimension {d}")
        self.alpha = alpha
        self.dimension = d
        self._freq = alpha[d - 2] + alpha[d - 1]
        self._is_sin = alpha[d - 1] == 1
        factors = []
        for j in range(1, d - 1):
            tail = sum(alpha[j:])
            lam = Fraction(tail) + Fraction(d - j - 1, 2)
            factors.append((tail, alpha[j - 1], lam))
        self._factors = tuple(factors)
        self.norm_factor_sq = _sph_norm_factor_sq(alpha, d)
        self.normalizer = sqrt(
            self.norm_factor_sq.numerator / self.norm_factor_sq.denominator
        )

    @property
    def degree(self) -> int:
        return sum(self.alpha)

    def eval_angles(self, angles: Sequence[float]) -> float:
        d = self.dimension
        v = self.normalizer
        v *= sin(self._freq * angles[0]) if self._is_sin else cos(self._freq * angles[0])
        for j, (tail, deg, lam) in enumerate(self._factors, start=1):
            th = angles[d - j - 1]
            t = cos(th)
            v *= sin(th) ** tail * gegenbauer_eval(deg, lam, t)
        return v

    def eval_many_angles(self, angles: np.ndarray) -> np.ndarray:
        angles = np.asarray(angles, dtype=float)
        d = self.dimension
        v = np.full(angles.shape[0], self.normalizer)
        base = self._freq * angles[:, 0]
        v = v * (np.sin(base) if self._is_sin else np.cos(base))
        for j, (tail, deg, lam) in enumerate(self._factors, start=1):
            th = angles[:, d - j - 1]
            v = v * np.sin(th) ** tail * gegenbauer_eval(deg, lam, np.cos(th))
        return v

    def __call__(self, point) -> float:
        return self.eval_angles(_as_angles(point))

    def __repr__(self):
        return f"SphCoordHarmonic(alpha={self.alpha}, d={self.dimension})"


def sph_coord_basis(n: int, d: int, check_normalization: bool = True) -> HarmonicBasis:
    """Orthonormal basis of degree-n harmonics in spherical coordinates.

    The exact normalizers are guarded by an independent quadrature check
    of every element's norm (tolerance 1e-8, raises on mismatch); pass
    ``check_normalization=False`` to skip the guard.
    """
    if d < 3:
        raise ValueError("spherical-coordinate basis needs d >= 3 (use basis_d2 for d = 2)")
    if n < 0:
        raise ValueError("degree must be nonnegative")
    idx = canonical_index_set(n, d)
    elements = [SphCoordHarmonic(a, d) for a in idx]
    if check_normalization:
        rule = quadrature.sphere_product_rule(d, 2 * n)
        omega = quadrature.surface_area(d)
        M = np.stack([el.eval_many_angles(rule.angles) for el in elements])
        norms = (M * M * rule.weights).sum(axis=1) / omega
        worst = int(np.argmax(np.abs(norms - 1.0)))
        if abs(norms[worst] - 1.0) > 1e-8:
            raise BasisError(
                f"normalization mismatch for alpha={idx[worst]}: "
                f"quadrature norm^2 = {norms[worst]!r}"
            )
    return HarmonicBasis(n, d, elements, idx, orthonormal=True)


# ----------------------------------------------------------------------
# closed forms in two and three variables
# ----------------------------------------------------------------------
def homogenize_even(p: Poly1, d: int, axis: int, degree: int) -> MultiPoly:
    """Lift sum_k c_k t^k to sum_k c_k x_axis^k ||x||^(degree-k).

    Requires degree - k even wherever c_k is nonzero (parity of the
    classical families), so the result is a polynomial.
    """
    if not 1 <= axis <= d:
        raise ValueError(f"axis {axis} out of range for dimension {d}")
    out = MultiPoly.zero(d)
    nrm = MultiPoly.norm_sq(d)
    for k, c in enumerate(p.coeffs):
        if c == 0:
            continue
        if (degree - k) % 2:
            raise ValueError(f"coefficient of t^{k} breaks the parity needed for degree {degree}")
        alpha = [0] * d
        alpha[axis - 1] = k
        out = out + MultiPoly.monomial(d, alpha, c) * nrm ** ((degree - k) // 2)
    return out


def basis_d2(n: int, orthonormal: bool = False) -> HarmonicBasis:
    """Closed-form basis of H_n^2: real and imaginary parts of (x1 + i x2)^n.

    In polar coordinates these are r^n cos(n theta) and r^n sin(n theta);
    with ``orthonormal=True`` both are scaled by sqrt(2) (n >= 1) to have
    unit norm against the normalized sphere measure.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if n == 0:
        return HarmonicBasis(0, 2, [MultiPoly.one(2)], [(0, 0)], orthonormal=True)
    re_terms = {}
    im_terms = {}
    for k in range(n + 1):
        c = Fraction(comb(n, k))
        if k % 4 in (2, 3):
            c = -c
        alpha = (n - k, k)
        if k % 2 == 0:
            re_terms[alpha] = c
        else:
            im_terms[alpha] = c
    elements = [MultiPoly(2, re_terms), MultiPoly(2, im_terms)]
    if orthonormal:
        s = Fraction(sqrt(2.0))
        elements = [s * el for el in elements]
    return HarmonicBasis(n, 2, elements, [(n, 0), (n - 1, 1)], orthonormal=orthonormal)


def basis_d2_chebyshev_form(n: int) -> tuple[MultiPoly, MultiPoly]:
    """The same two elements written through T_n and U_{n-1}:
    r^n T_n(x1/r) and x2 r^{n-1} U_{n-1}(x1/r), as exact polynomials."""
    if n < 1:
        raise ValueError("Chebyshev form needs n >= 1")
    from sphharm.orthopoly import chebyshev_t, chebyshev_u

    first = homogenize_even(chebyshev_t(n), 2, 1, n)
    second = MultiPoly.variable(2, 2) * homogenize_even(chebyshev_u(n - 1), 2, 1, n - 1)
    return first, second


class ComplexSphHarmonic:
    """Complex orthonormal element of H_n^3:
    sqrt((2n+1)(n-k)!/(n+k)!) P_n^k(cos theta) e^{i k phi}, -n <= k <= n.

    Negative orders use the reflection
    P_n^{-k} = (-1)^k (n-k)!/(n+k)! P_n^k applied within the configured
    sign convention.
    """

    __slots__ = ("n", "k", "convention")

    def __init__(self, n: int, k: int, convention: str = "paper"):
        if abs(k) > n:
            raise ValueError("order |k| must not exceed the degree")
        self.n = n
        self.k = k
        self.convention = convention

    def eval_angles(self, angles: Sequence[float]) -> complex:
        phi, theta = angles[0], angles[1]
        n, k = self.n, abs(self.k)
        p = assoc_legendre(n, k, cos(theta), self.convention)
        coeff = sqrt((2 * n + 1) * factorial(n - k) / factorial(n + k))
        if self.k < 0:
            p = (-1) ** k * factorial(n - k) / factorial(n + k) * p
            coeff = sqrt((2 * n + 1) * factorial(n + k) / factorial(n - k))
        return coeff * p * complex(cos(self.k * phi), sin(self.k * phi))

    def __call__(self, point) -> complex:
        return self.eval_angles(_as_angles(point))


def basis_d3(n: int, form: str = "real", convention: str = "paper"):
    """Degree-n basis on S^2.

    ``form="real"`` returns the orthonormal closed forms
    (sin theta)^k C_{n-k}^{k+1/2}(cos theta) {cos, sin}(k phi) (an
    :class:`HarmonicBasis`); ``form="complex"`` returns the 2n+1 complex
    elements built from associated Legendre functions, ordered k = -n..n.
    """
    if form == "real":
        return sph_coord_basis(n, 3)
    if form == "complex":
        return [ComplexSphHarmonic(n, k, convention) for k in range(-n, n + 1)]
    raise ValueError(f"unknown form {form!r}")


# ----------------------------------------------------------------------
# harmonic decomposition and axially invariant harmonics
# ----------------------------------------------------------------------
def harmonic_decompose(p: MultiPoly) -> list[tuple[int, MultiPoly]]:
    """Write a homogeneous p as sum_j ||x||^(2j) P_{n-2j} with each
    P_{n-2j} exactly harmonic; zero layers are omitted.

    Computed by repeated harmonic projection and exact division by
    ||x||^2.
    """
    if not p.is_homogeneous():
        raise ValueError("harmonic decomposition needs a homogeneous input")
    out = []
    shift = 0
    q = p
    while not q.is_zero():
        h = kernels.project_homogeneous(q)
        if not h.is_zero():
            out.append((shift, h))
        r = q - h
        if r.is_zero():
            break
        q = r.divide_norm_sq()
        shift += 1
    return out


def axial_harmonic(n: int, d: int) -> MultiPoly:
    """The degree-n harmonic invariant under rotations fixing x_d:
    ||x||^n C_n^lam(x_d / ||x||) with lam = (d-2)/2, as an exact polynomial."""
    if d < 3:
        raise ValueError("axial harmonics need d >= 3")
    return homogenize_even(gegenbauer(n, Fraction(d - 2, 2)), d, d, n)
