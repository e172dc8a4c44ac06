"""Fundamental systems of points and zonal bases.

A fundamental system of degree n is a set of N = dim H_n^d points whose
zonal Gram matrix [Z_n(<x_i, x_j>)] is positive definite; the zonal
translates Z_n(<., x_i>) then form a basis and harmonic interpolation at
the points is unique.  Existence is generic (the bad sets are algebraic
surfaces), so points are found by seeded greedy determinant maximization
over random candidates.

The same greedy idea builds the power-basis points xi_j whose ridge
powers <x, xi_j>^n span the full homogeneous space; their apolar Gram is
the explicit matrix n! <xi_i, xi_j>^n.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

import numpy as np

from sphharm import basis as basis_mod
from sphharm import kernels
from sphharm.exactpoly import MultiPoly
from sphharm.orthopoly import Poly1


class FundamentalSystemError(RuntimeError):
    """Greedy point selection failed to reach a nonsingular system."""


_PIVOT_THRESHOLD = 1e-10
_CONDITION_CAP = 1e12
_RETRY_BUDGET = 8


@dataclass(frozen=True, eq=False)
class ZonalSystem:
    """Fundamental system with its basis matrix and zonal Gram matrix."""

    degree: int
    dimension: int
    points: np.ndarray  # (N, d) unit vectors
    basis: basis_mod.HarmonicBasis
    basis_matrix: np.ndarray  # M[k, i] = Y_k(x_i)
    gram: np.ndarray  # [Z_n(<x_i, x_j>)]
    min_eigenvalue: float
    condition: float

    def __post_init__(self):
        self.points.setflags(write=False)
        self.basis_matrix.setflags(write=False)
        self.gram.setflags(write=False)

    @property
    def size(self) -> int:
        return len(self.points)


def _default_basis(n: int, d: int) -> basis_mod.HarmonicBasis:
    if d == 2:
        return basis_mod.basis_d2(n, orthonormal=True)
    return basis_mod.sph_coord_basis(n, d)


def _random_unit(rng: np.random.Generator, count: int, d: int) -> np.ndarray:
    vecs = rng.standard_normal((count, d))
    return vecs / np.linalg.norm(vecs, axis=1, keepdims=True)


def greedy_fundamental_system(
    n: int,
    d: int,
    seed: int = 0,
    candidates_per_step: int = 32,
    basis: basis_mod.HarmonicBasis | None = None,
) -> ZonalSystem:
    """Build a fundamental system by seeded greedy |det| maximization.

    At each step, ``candidates_per_step`` uniform points are drawn (ties
    broken toward the lowest candidate index) and the one maximizing the
    determinant of the grown basis matrix is kept.  A step whose best
    pivot |det M_{k+1}| / |det M_k| stays below 1e-10 is redrawn up to the
    retry budget and then faults.
    """
    if n < 0 or d < 2:
        raise ValueError("need n >= 0 and d >= 2")
    if basis is None:
        basis = _default_basis(n, d)
    if not basis.orthonormal:
        raise ValueError("greedy construction needs an orthonormal basis")
    N = len(basis)
    rng = np.random.default_rng(seed)

    chosen = np.zeros((N, d))
    M = np.zeros((N, N))  # filled progressively; leading (k, k) block live
    prev_det = 1.0
    for k in range(N):
        best_val = -1.0
        best_point = None
        best_col = None
        for _attempt in range(_RETRY_BUDGET):
            cand = _random_unit(rng, candidates_per_step, d)
            E = basis.eval_matrix(cand)  # (N, candidates)
            dets = np.empty(candidates_per_step)
            for c in range(candidates_per_step):
                trial = np.empty((k + 1, k + 1))
                trial[:, :k] = M[: k + 1, :k]
                trial[:, k] = E[: k + 1, c]
                dets[c] = abs(np.linalg.det(trial))
            pick = int(np.argmax(dets))
            if dets[pick] > best_val:
                best_val = dets[pick]
                best_point = cand[pick]
                best_col = E[:, pick]
            if best_val / abs(prev_det) >= _PIVOT_THRESHOLD:
                break
        else:
            raise FundamentalSystemError(
                f"pivot below {_PIVOT_THRESHOLD} at point {k + 1} of {N} "
                f"after {_RETRY_BUDGET} retries (n={n}, d={d}, seed={seed})"
            )
        chosen[k] = best_point
        M[:, k] = best_col
        prev_det = best_val if best_val > 0 else prev_det

    inner = np.clip(chosen @ chosen.T, -1.0, 1.0)
    zk = kernels.ZonalKernel(n, d)
    gram = zk.eval_many(inner)
    eigs = np.linalg.eigvalsh(gram)
    return ZonalSystem(
        degree=n,
        dimension=d,
        points=chosen,
        basis=basis,
        basis_matrix=M,
        gram=gram,
        min_eigenvalue=float(eigs[0]),
        condition=float(eigs[-1] / eigs[0]) if eigs[0] > 0 else float("inf"),
    )


def zonal_basis_coeffs(system: ZonalSystem) -> np.ndarray:
    """Coefficients C with Y_k = sum_i C[k, i] Z_n(<., x_i>).

    Inverts the addition-formula relation P_i = sum_k M[k, i] Y_k; faults
    when the basis matrix is too ill-conditioned to trust the inverse.
    """
    M = system.basis_matrix
    cond = np.linalg.cond(M)
    if cond > _CONDITION_CAP:
        raise FundamentalSystemError(
            f"basis matrix condition {cond:.3e} exceeds {_CONDITION_CAP:.0e}; "
            "re-draw the system with another seed"
        )
    return np.linalg.solve(M.T, np.eye(system.size))


class ZonalInterpolant:
    """The unique degree-n harmonic through the system values:
    x -> sum_i c_i Z_n(<x, x_i>)."""

    __slots__ = ("system", "coeffs", "_zk")

    def __init__(self, system: ZonalSystem, coeffs: np.ndarray):
        self.system = system
        self.coeffs = np.asarray(coeffs, dtype=float)
        self._zk = kernels.ZonalKernel(system.degree, system.dimension)

    def __call__(self, point) -> float:
        cart = np.asarray(getattr(point, "cartesian", point), dtype=float)
        t = np.clip(self.system.points @ cart, -1.0, 1.0)
        return float(self.coeffs @ self._zk.eval_many(t))

    def eval_many(self, points) -> np.ndarray:
        pts = np.asarray(points, dtype=float)
        t = np.clip(pts @ self.system.points.T, -1.0, 1.0)
        return self._zk.eval_many(t) @ self.coeffs


def interpolate(system: ZonalSystem, values) -> ZonalInterpolant:
    """Solve [Z_n(<x_i, x_j>)] c = values and return the interpolant."""
    values = np.asarray(values, dtype=float)
    if values.shape != (system.size,):
        raise ValueError(f"expected {system.size} values, got shape {values.shape}")
    coeffs, residuals, rank, _ = np.linalg.lstsq(system.gram, values, rcond=None)
    if rank < system.size:
        raise FundamentalSystemError(
            f"zonal Gram matrix is rank deficient ({rank} < {system.size})"
        )
    return ZonalInterpolant(system, coeffs)


@dataclass(frozen=True, eq=False)
class PowerBasisSystem:
    """Points whose ridge powers <x, xi_j>^n form a basis of the
    homogeneous polynomials of degree n."""

    degree: int
    dimension: int
    points: np.ndarray  # (r, d) with r = dim P_n^d
    gram: np.ndarray  # n! <xi_i, xi_j>^n

    def __post_init__(self):
        self.points.setflags(write=False)
        self.gram.setflags(write=False)

    @property
    def size(self) -> int:
        return len(self.points)


def power_basis_system(
    n: int, d: int, seed: int = 0, candidates_per_step: int = 32
) -> PowerBasisSystem:
    """Greedy points xi_j making the apolar Gram n! <xi_i, xi_j>^n
    nonsingular (relative Schur pivot >= 1e-10), certifying that the
    ridge powers span the degree-n homogeneous space."""
    if n < 0 or d < 1:
        raise ValueError("need n >= 0 and d >= 1")
    r = basis_mod.dim_homogeneous(n, d)
    rng = np.random.default_rng(seed)
    chosen = np.zeros((r, d))
    K = np.zeros((r, r))  # normalized gram <xi_i, xi_j>^n, leading block live
    for k in range(r):
        best_pivot = -1.0
        best_point = None
        for _attempt in range(_RETRY_BUDGET):
            cand = _random_unit(rng, candidates_per_step, d)
            g = (cand @ chosen[:k].T) ** n if k else np.zeros((candidates_per_step, 0))
            if k:
                sol = np.linalg.solve(K[:k, :k], g.T)
                pivots = 1.0 - np.einsum("ck,kc->c", g, sol)
            else:
                pivots = np.ones(candidates_per_step)
            pick = int(np.argmax(pivots))
            if pivots[pick] > best_pivot:
                best_pivot = float(pivots[pick])
                best_point = cand[pick]
            if best_pivot >= _PIVOT_THRESHOLD:
                break
        else:
            raise FundamentalSystemError(
                f"apolar pivot below {_PIVOT_THRESHOLD} at point {k + 1} of {r} "
                f"(n={n}, d={d}, seed={seed})"
            )
        chosen[k] = best_point
        K[k, : k + 1] = (chosen[: k + 1] @ best_point) ** n
        K[: k + 1, k] = K[k, : k + 1]
    gram = float(factorial(n)) * K
    return PowerBasisSystem(degree=n, dimension=d, points=chosen, gram=gram)


def ridge_decompose(f: MultiPoly, system: PowerBasisSystem) -> list[Poly1]:
    """Write f (degree <= n) as sum_j p_j(<x, xi_j>) with one-variable
    polynomials p_j.

    Each homogeneous layer f_m is expressed in the ridge powers of degree
    m by collocation at the points (equivalently, the apolar Gram system
    m! <xi_i, xi_j>^m); a layer whose system is inconsistent names its
    degree in the fault.
    """
    n = system.degree
    d = system.dimension
    if f.dimension != d:
        raise ValueError(f"dimension mismatch: {f.dimension} vs {d}")
    if not f.is_zero() and f.degree > n:
        raise ValueError(f"polynomial degree {f.degree} exceeds system degree {n}")
    r = system.size
    coeff_table = np.zeros((r, n + 1))
    for m, layer in f.homogeneous_components():
        A = (system.points @ system.points.T) ** m
        v = layer.eval_many(system.points)
        c, _, _, _ = np.linalg.lstsq(A, v, rcond=None)
        resid = float(np.linalg.norm(A @ c - v))
        if resid > 1e-8 * (1.0 + float(np.linalg.norm(v))):
            raise FundamentalSystemError(
                f"ridge system is rank deficient at degree {m} (residual {resid:.3e})"
            )
        coeff_table[:, m] = c
    return [Poly1([Fraction(c) for c in row]) for row in coeff_table]


def evaluate_ridge(polys: list[Poly1], system: PowerBasisSystem, points) -> np.ndarray:
    """Evaluate sum_j p_j(<x, xi_j>) at an (m, d) array of points."""
    pts = np.asarray(points, dtype=float)
    t = pts @ system.points.T  # (m, r)
    out = np.zeros(pts.shape[0])
    for j, p in enumerate(polys):
        col = t[:, j]
        acc = np.zeros_like(col)
        for c in reversed(p.coeffs):
            acc = acc * col + float(c)
        out += acc
    return out
