"""Differential operators on the sphere, realized exactly on polynomials.

Two independent routes to the Laplace-Beltrami operator are provided and
must agree term for term after sphere reduction:

* the radial split Delta = d_rr + ((d-1)/r) d_r + (1/r^2) Delta_0, which
  on a homogeneous piece h of degree m gives
  Delta_0 h = ||x||^2 Lap(h) - m (m + d - 2) h on the sphere;
* the sum of squared angular derivatives Delta_0 = sum_{i<j} D_{i,j}^2
  with D_{i,j} = x_i d_j - x_j d_i.

Equalities on the sphere are certified through sphere-reduced canonical
forms, never by sampling; the finite-difference oracle in d = 3 angles is
a float cross-check, not a production operator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import cos, sin

from sphharm.exactpoly import MultiPoly


class PoleError(ValueError):
    """Finite-difference stencil requested too close to a pole."""


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one identity check."""

    name: str
    passed: bool
    max_residual: float
    witness: str | None = None


def _check_pair(pair: tuple[int, int], d: int) -> tuple[int, int]:
    i, j = pair
    if not (1 <= i <= d and 1 <= j <= d):
        raise ValueError(f"axis pair {pair} out of range for dimension {d}")
    if i == j:
        raise ValueError("angular derivative needs two distinct axes")
    return i, j


def angular_derivative(pair: tuple[int, int], p: MultiPoly) -> MultiPoly:
    """D_{i,j} p = x_i d_j p - x_j d_i p (1-based axes, any order;
    the formula itself carries the antisymmetry D_{j,i} = -D_{i,j})."""
    i, j = _check_pair(pair, p.dimension)
    d = p.dimension
    return MultiPoly.variable(d, i) * p.partial(j) - MultiPoly.variable(d, j) * p.partial(i)


def laplace_beltrami(p: MultiPoly) -> MultiPoly:
    """Delta_0 p via the radial split, as a sphere-reduced polynomial.

    Each homogeneous component h of degree m contributes
    ||x||^2 Lap(h) - m (m + d - 2) h.
    """
    d = p.dimension
    nrm = MultiPoly.norm_sq(d)
    total = MultiPoly.zero(d)
    for m, h in p.homogeneous_components():
        total = total + nrm * h.laplacian() - (m * (m + d - 2)) * h
    return total.sphere_reduce()


def laplace_beltrami_via_dij(p: MultiPoly) -> MultiPoly:
    """Delta_0 p as sum_{i<j} D_{i,j}^2 p, sphere-reduced; must equal
    :func:`laplace_beltrami` exactly."""
    d = p.dimension
    total = MultiPoly.zero(d)
    for i in range(1, d + 1):
        for j in range(i + 1, d + 1):
            total = total + angular_derivative((i, j), angular_derivative((i, j), p))
    return total.sphere_reduce()


def spherical_gradient(p: MultiPoly) -> tuple[MultiPoly, ...]:
    """Components of the spherical gradient, sphere-reduced:
    (grad_0 p)_j = d_j p - x_j sum_i x_i d_i p.

    The result is tangent: sum_j x_j (grad_0 p)_j reduces to 0.
    """
    d = p.dimension
    radial = MultiPoly.zero(d)
    for i in range(1, d + 1):
        radial = radial + MultiPoly.variable(d, i) * p.partial(i)
    return tuple(
        (p.partial(j) - MultiPoly.variable(d, j) * radial).sphere_reduce()
        for j in range(1, d + 1)
    )


def eigen_check(n: int, d: int, basis) -> CheckReport:
    """Assert Delta_0 Y = -n (n + d - 2) Y exactly on every element."""
    eigenvalue = -n * (n + d - 2)
    failures = []
    for idx, el in enumerate(basis):
        if not isinstance(el, MultiPoly):
            raise TypeError("eigen_check needs polynomial basis elements")
        lhs = laplace_beltrami(el)
        rhs = (eigenvalue * el).sphere_reduce()
        if lhs != rhs:
            failures.append(idx)
    return CheckReport(
        name=f"eigenvalue-d{d}-n{n}",
        passed=not failures,
        max_residual=0.0 if not failures else float("inf"),
        witness=None if not failures else f"element {failures[0]}",
    )


def _monomials_up_to(d: int, degree: int) -> list[MultiPoly]:
    out = []

    def rec(prefix, remaining, parts):
        if parts == 1:
            out.append(prefix + (remaining,))
            return
        for e in range(remaining + 1):
            rec(prefix + (e,), remaining - e, parts - 1)

    for total in range(degree + 1):
        rec((), total, d)
    return [MultiPoly.monomial(d, alpha) for alpha in out]


def commutator_check(d: int, max_degree: int = 4) -> CheckReport:
    """Verify the commutator table
    [D_{i,j}, D_{k,l}] = -delta_ik D_{j,l} + delta_il D_{j,k}
                         + delta_jk D_{i,l} - delta_jl D_{i,k}
    and [D_{1,2}, sum D^2] = 0, exactly, on all monomials of degree <=
    max_degree."""
    if d < 2:
        raise ValueError("need d >= 2")
    pairs = [(i, j) for i in range(1, d + 1) for j in range(i + 1, d + 1)]
    gens = _monomials_up_to(d, max_degree)
    failures: list[str] = []

    def D(pair, q):
        return angular_derivative(pair, q)

    def D_or_zero(i, j, q):
        # D_{i,i} never appears in the table; treat it as 0
        return MultiPoly.zero(d) if i == j else angular_derivative((i, j), q)

    for a in pairs:
        for b in pairs:
            i, j = a
            k, l = b
            for g in gens:
                lhs = D(a, D(b, g)) - D(b, D(a, g))
                rhs = MultiPoly.zero(d)
                if i == k:
                    rhs = rhs - D_or_zero(j, l, g)
                if i == l:
                    rhs = rhs + D_or_zero(j, k, g)
                if j == k:
                    rhs = rhs + D_or_zero(i, l, g)
                if j == l:
                    rhs = rhs - D_or_zero(i, k, g)
                if lhs != rhs:
                    failures.append(f"[D{a}, D{b}] on monomial {g!r}")
                    break
    if d >= 3:
        for g in gens:
            acc = MultiPoly.zero(d)
            for pr in pairs:
                acc = acc + D(pr, D(pr, g))
            lhs = D((1, 2), acc) - sum(
                (D(pr, D(pr, D((1, 2), g))) for pr in pairs), MultiPoly.zero(d)
            )
            if not lhs.is_zero():
                failures.append(f"[D(1,2), Delta0-sum] on monomial {g!r}")
                break
    return CheckReport(
        name=f"commutators-d{d}",
        passed=not failures,
        max_residual=0.0 if not failures else float("inf"),
        witness=failures[0] if failures else None,
    )


def integration_by_parts_check(pair, f: MultiPoly, g: MultiPoly, rule) -> tuple[float, float]:
    """Return (integral of f D_{i,j} g, -integral of (D_{i,j} f) g); the
    two must agree within quadrature accuracy."""
    from sphharm.quadrature import integrate_sphere

    lhs = integrate_sphere(f * angular_derivative(pair, g), rule)
    rhs = -integrate_sphere(angular_derivative(pair, f) * g, rule)
    return lhs, rhs


def gradient_parts_check(f: MultiPoly, g: MultiPoly, rule) -> CheckReport:
    """Both integration-by-parts identities for the spherical gradient:

    * componentwise: int f (grad_0 g)_j = -int ((grad_0 f)_j - (d-1) x_j f) g
    * scalar:        int grad_0 f . grad_0 g = -int (Delta_0 f) g
    """
    from sphharm.quadrature import integrate_sphere

    d = f.dimension
    grad_f = spherical_gradient(f)
    grad_g = spherical_gradient(g)
    worst = 0.0
    witness = None
    for j in range(1, d + 1):
        lhs = integrate_sphere(f * grad_g[j - 1], rule)
        rhs = -integrate_sphere(
            (grad_f[j - 1] - (d - 1) * MultiPoly.variable(d, j) * f) * g, rule
        )
        resid = abs(lhs - rhs) / (1.0 + abs(lhs))
        if resid > worst:
            worst, witness = resid, f"component {j}"
    dot = sum((a * b for a, b in zip(grad_f, grad_g)), MultiPoly.zero(d))
    lhs = integrate_sphere(dot, rule)
    rhs = -integrate_sphere(laplace_beltrami(f) * g, rule)
    resid = abs(lhs - rhs) / (1.0 + abs(lhs))
    if resid > worst:
        worst, witness = resid, "gradient dot identity"
    return CheckReport(
        name="gradient-parts",
        passed=worst <= 1e-8,
        max_residual=worst,
        witness=witness if worst > 1e-8 else None,
    )


def beltrami_fd_d3(f, theta: float, phi: float, h: float) -> float:
    """Finite-difference Laplace-Beltrami oracle on S^2 in angles:

        (1/sin) d_theta (sin d_theta) + (1/sin^2) d_phi^2,

    from 3-point central stencils at steps h and h/2 combined by one
    Richardson step (factor 2), so the error is O(h^4).  Refuses points
    with sin(theta) < 10 h rather than switching charts.
    """
    if sin(theta) < 10.0 * h:
        raise PoleError(f"sin(theta) = {sin(theta)} too small for step {h}")

    def base(step: float) -> float:
        st = sin(theta)
        d2t = (f(theta + step, phi) - 2.0 * f(theta, phi) + f(theta - step, phi)) / step**2
        d1t = (f(theta + step, phi) - f(theta - step, phi)) / (2.0 * step)
        d2p = (f(theta, phi + step) - 2.0 * f(theta, phi) + f(theta, phi - step)) / step**2
        return d2t + (cos(theta) / st) * d1t + d2p / st**2

    coarse = base(h)
    fine = base(h / 2.0)
    return (4.0 * fine - coarse) / 3.0


def radial_laplace_identity_check(rho: int, g: MultiPoly) -> CheckReport:
    """Verify Lap(||x||^rho g) = rho (2n + rho + d - 2) ||x||^(rho-2) g
    + ||x||^rho Lap(g) exactly, for even rho >= 0 and homogeneous g."""
    if rho < 0 or rho % 2:
        raise ValueError("rho must be an even nonnegative integer")
    if not g.is_homogeneous():
        raise ValueError("g must be homogeneous")
    d = g.dimension
    n = g.degree if g.degree is not None else 0
    nrm = MultiPoly.norm_sq(d)
    lhs = (nrm ** (rho // 2) * g).laplacian()
    rhs = nrm ** (rho // 2) * g.laplacian()
    if rho:
        rhs = rhs + (rho * (2 * n + rho + d - 2)) * (nrm ** (rho // 2 - 1) * g)
    passed = lhs == rhs
    return CheckReport(
        name=f"radial-laplace-rho{rho}",
        passed=passed,
        max_residual=0.0 if passed else float("inf"),
        witness=None if passed else repr(lhs - rhs),
    )
