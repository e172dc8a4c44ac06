"""Named verification suite behind the ``check`` CLI subcommand.

Every check is seeded and pure, so a fixed (d, nmax, seed) triple always
produces the same report.  Exact checks (harmonicity, eigenvalues,
operator route equivalence, commutators) report residual 0.0 or fail;
float checks report their worst residual against the listed tolerance.
"""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np

from sphharm import basis as basis_mod
from sphharm import kernels, quadrature, sphereops, zonalsys
from sphharm.exactpoly import MultiPoly

TOLERANCES = {
    "addition-formula": 1e-8,
    "commutators": 0.0,
    "eigenvalue": 0.0,
    "gradient-parts": 1e-8,
    "harmonicity": 0.0,
    "integration-by-parts": 1e-9,
    "interpolation": 1e-7,
    "operator-route-equivalence": 0.0,
    "orthonormality": 1e-9,
    "quadrature-exactness": 1e-11,
    "zonal-bound": 1e-10,
}


def random_poly(
    rng: random.Random,
    d: int,
    degree: int,
    terms: int = 8,
    homogeneous: bool = False,
) -> MultiPoly:
    """Random sparse polynomial with small integer coefficients."""
    out: dict = {}
    for _ in range(terms):
        if homogeneous:
            total = degree
        else:
            total = rng.randint(0, degree)
        alpha = [0] * d
        for _ in range(total):
            alpha[rng.randrange(d)] += 1
        c = rng.randint(1, 6) * rng.choice((1, -1))
        alpha_t = tuple(alpha)
        out[alpha_t] = out.get(alpha_t, Fraction(0)) + c
    p = MultiPoly(d, out)
    if p.is_zero():
        return MultiPoly.monomial(d, (degree,) + (0,) * (d - 1))
    return p


def random_unit_points(seed: int, count: int, d: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    vecs = rng.standard_normal((count, d))
    return vecs / np.linalg.norm(vecs, axis=1, keepdims=True)


def _entry(name: str, residual: float, tol: float, witness: str | None) -> dict:
    return {
        "check": name,
        "status": "pass" if residual <= tol else "fail",
        "max_residual": float(residual),
        "witness": witness,
    }


def _orthonormal_basis(n: int, d: int):
    if d == 2:
        return basis_mod.basis_d2(n, orthonormal=True)
    return basis_mod.sph_coord_basis(n, d, check_normalization=False)


def _check_addition_formula(d, nmax, seed, tol):
    worst, witness = 0.0, None
    pts = random_unit_points(seed, 2 * 20, d)
    for n in range(nmax + 1):
        bas = _orthonormal_basis(n, d)
        for k in range(20):
            x, y = pts[2 * k], pts[2 * k + 1]
            lhs = kernels.zonal_from_basis(bas, x, y)
            rhs = kernels.zonal_eval(n, d, float(x @ y))
            resid = abs(lhs - rhs)
            if resid > worst:
                worst, witness = resid, f"n={n} pair={k}"
    return _entry("addition-formula", worst, tol, witness if worst > tol else None)


def _check_commutators(d, nmax, seed, tol):
    report = sphereops.commutator_check(d, max_degree=4)
    return _entry("commutators", report.max_residual, tol, report.witness)


def _check_eigenvalue(d, nmax, seed, tol):
    for n in range(nmax + 1):
        bas = basis_mod.basis_d2(n) if d == 2 else basis_mod.maxwell_basis(n, d)
        report = sphereops.eigen_check(n, d, bas)
        if not report.passed:
            return _entry("eigenvalue", float("inf"), tol, f"n={n}: {report.witness}")
    return _entry("eigenvalue", 0.0, tol, None)


def _check_gradient_parts(d, nmax, seed, tol):
    rng = random.Random(seed)
    rule = quadrature.sphere_product_rule(d, 10)
    worst, witness = 0.0, None
    for k in range(5):
        f = random_poly(rng, d, 3)
        g = random_poly(rng, d, 3)
        report = sphereops.gradient_parts_check(f, g, rule)
        if report.max_residual > worst:
            worst, witness = report.max_residual, f"pair={k} ({report.witness})"
    return _entry("gradient-parts", worst, tol, witness if worst > tol else None)


def _check_harmonicity(d, nmax, seed, tol):
    for n in range(nmax + 1):
        bas = basis_mod.basis_d2(n) if d == 2 else basis_mod.maxwell_basis(n, d)
        for idx, el in enumerate(bas):
            if not el.laplacian().is_zero():
                return _entry("harmonicity", float("inf"), tol, f"n={n} element={idx}")
    return _entry("harmonicity", 0.0, tol, None)


def _check_integration_by_parts(d, nmax, seed, tol):
    rng = random.Random(seed)
    rule = quadrature.sphere_product_rule(d, 10)
    worst, witness = 0.0, None
    for k in range(10):
        f = random_poly(rng, d, 3)
        g = random_poly(rng, d, 3)
        i = rng.randint(1, d - 1)
        j = rng.randint(i + 1, d)
        lhs, rhs = sphereops.integration_by_parts_check((i, j), f, g, rule)
        resid = abs(lhs - rhs) / (1.0 + abs(lhs))
        if resid > worst:
            worst, witness = resid, f"pair={k} D({i},{j})"
    return _entry("integration-by-parts", worst, tol, witness if worst > tol else None)


def _check_interpolation(d, nmax, seed, tol):
    worst, witness = 0.0, None
    samples = random_unit_points(seed + 1, 50, d)
    for n in range(min(nmax, 3) + 1):
        system = zonalsys.greedy_fundamental_system(n, d, seed=seed)
        target = system.basis[min(1, len(system.basis) - 1)]
        values = [target(p) for p in system.points]
        interp = zonalsys.interpolate(system, values)
        resid = max(abs(interp(p) - target(p)) for p in samples)
        if resid > worst:
            worst, witness = resid, f"n={n}"
    return _entry("interpolation", worst, tol, witness if worst > tol else None)


def _check_route_equivalence(d, nmax, seed, tol):
    rng = random.Random(seed)
    for degree in range(1, min(6, max(2, nmax)) + 1):
        for k in range(10):
            p = random_poly(rng, d, degree)
            if sphereops.laplace_beltrami(p) != sphereops.laplace_beltrami_via_dij(p):
                return _entry(
                    "operator-route-equivalence",
                    float("inf"),
                    tol,
                    f"degree={degree} sample={k}",
                )
    return _entry("operator-route-equivalence", 0.0, tol, None)


def _check_orthonormality(d, nmax, seed, tol):
    worst, witness = 0.0, None
    for n in range(nmax + 1):
        bas = _orthonormal_basis(n, d)
        rule = quadrature.sphere_product_rule(d, 2 * n)
        G = (bas.eval_matrix(rule) * rule.weights) @ bas.eval_matrix(rule).T
        G /= quadrature.surface_area(d)
        resid = float(np.max(np.abs(G - np.eye(len(bas)))))
        if resid > worst:
            worst, witness = resid, f"n={n}"
    return _entry("orthonormality", worst, tol, witness if worst > tol else None)


def _check_quadrature_exactness(d, nmax, seed, tol):
    degree = min(2 * max(nmax, 1), 10)
    rule = quadrature.sphere_product_rule(d, degree)
    omega = quadrature.surface_area(d)
    worst, witness = 0.0, None
    for total in range(degree + 1):
        for alpha in basis_mod._compositions(total, d):
            exact = float(quadrature.monomial_integral(alpha, d)) * omega
            approx = quadrature.integrate_sphere(MultiPoly.monomial(d, alpha), rule)
            resid = abs(approx - exact) / (1.0 + abs(exact))
            if resid > worst:
                worst, witness = resid, f"alpha={list(alpha)}"
    return _entry("quadrature-exactness", worst, tol, witness if worst > tol else None)


def _check_zonal_bound(d, nmax, seed, tol):
    pts = random_unit_points(seed + 2, 400, d)
    worst, witness = 0.0, None
    for n in range(nmax + 1):
        bound = basis_mod.dim_harmonic(n, d)
        t = np.clip(pts[:200] @ pts[200:].T, -1.0, 1.0).ravel()
        values = kernels.ZonalKernel(n, d).eval_many(t)
        resid = float(np.max(np.abs(values)) - bound)
        if resid > worst:
            worst, witness = resid, f"n={n}"
    return _entry("zonal-bound", worst, tol, witness if worst > tol else None)


_CHECKS = {
    "addition-formula": _check_addition_formula,
    "commutators": _check_commutators,
    "eigenvalue": _check_eigenvalue,
    "gradient-parts": _check_gradient_parts,
    "harmonicity": _check_harmonicity,
    "integration-by-parts": _check_integration_by_parts,
    "interpolation": _check_interpolation,
    "operator-route-equivalence": _check_route_equivalence,
    "orthonormality": _check_orthonormality,
    "quadrature-exactness": _check_quadrature_exactness,
    "zonal-bound": _check_zonal_bound,
}


def run_checks(d: int, nmax: int, seed: int = 0, tolerances: dict | None = None) -> list[dict]:
    """Run the full identity suite; entries come back sorted by name."""
    if d < 2 or nmax < 0:
        raise ValueError("need d >= 2 and nmax >= 0")
    tols = dict(TOLERANCES)
    if tolerances:
        unknown = set(tolerances) - set(tols)
        if unknown:
            raise ValueError(f"unknown check names: {sorted(unknown)}")
        tols.update(tolerances)
    report = []
    for name in sorted(_CHECKS):
        report.append(_CHECKS[name](d, nmax, seed, tols[name]))
    return report
