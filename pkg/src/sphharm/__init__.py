"""Dimension-generic spherical harmonics with exact-rational certification.

Constructs and cross-verifies the classical objects on S^{d-1}: harmonic
polynomial bases (monic, spherical-coordinate, closed forms for d = 2, 3),
zonal reproducing kernels and the addition formula, harmonic projection,
the apolar inner product, Gauss-Jacobi and product sphere quadrature,
angular derivatives and the Laplace-Beltrami operator by two independent
routes, fundamental point systems and zonal interpolation.

Structural identities are certified in exact rational arithmetic;
integral identities are checked by quadrature against exact oracles.
"""

from sphharm._poly_core import BACKEND
from sphharm.basis import (
    HarmonicBasis,
    SpherePoint,
    angles_to_cartesian,
    axial_harmonic,
    basis_d2,
    basis_d3,
    cartesian_to_angles,
    dim_harmonic,
    dim_homogeneous,
    dim_pi_sphere,
    gram_schmidt,
    harmonic_decompose,
    maxwell_basis,
    maxwell_harmonic,
    sph_coord_basis,
)
from sphharm.exactpoly import MultiPoly, Rational, grlex_key
from sphharm.kernels import (
    ZonalKernel,
    apolar_inner,
    funk_hecke,
    project_homogeneous,
    project_quadrature,
    zonal_eval,
    zonal_from_basis,
)
from sphharm.orthopoly import (
    CHEBYSHEV_LIMIT,
    Poly1,
    assoc_legendre,
    chebyshev_t,
    chebyshev_u,
    gegenbauer,
    gegenbauer_norm,
    gegenbauer_via_2f1,
    legendre,
)
from sphharm.quadrature import (
    Rule1D,
    SphereRule,
    gauss_jacobi,
    integrate_sphere,
    monomial_integral,
    sphere_product_rule,
    surface_area,
    surface_area_exact,
)
from sphharm.sphereops import (
    angular_derivative,
    beltrami_fd_d3,
    laplace_beltrami,
    laplace_beltrami_via_dij,
    spherical_gradient,
)
from sphharm.zonalsys import (
    ZonalSystem,
    greedy_fundamental_system,
    interpolate,
    power_basis_system,
    ridge_decompose,
    zonal_basis_coeffs,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CHEBYSHEV_LIMIT",
    "HarmonicBasis",
    "MultiPoly",
    "Poly1",
    "Rational",
    "Rule1D",
    "SpherePoint",
    "SphereRule",
    "ZonalKernel",
    "ZonalSystem",
    "angles_to_cartesian",
    "angular_derivative",
    "apolar_inner",
    "assoc_legendre",
    "axial_harmonic",
    "basis_d2",
    "basis_d3",
    "beltrami_fd_d3",
    "cartesian_to_angles",
    "chebyshev_t",
    "chebyshev_u",
    "dim_harmonic",
    "dim_homogeneous",
    "dim_pi_sphere",
    "funk_hecke",
    "gauss_jacobi",
    "gegenbauer",
    "gegenbauer_norm",
    "gegenbauer_via_2f1",
    "gram_schmidt",
    "greedy_fundamental_system",
    "grlex_key",
    "harmonic_decompose",
    "integrate_sphere",
    "interpolate",
    "laplace_beltrami",
    "laplace_beltrami_via_dij",
    "legendre",
    "maxwell_basis",
    "maxwell_harmonic",
    "monomial_integral",
    "power_basis_system",
    "project_homogeneous",
    "project_quadrature",
    "ridge_decompose",
    "sph_coord_basis",
    "sphere_product_rule",
    "spherical_gradient",
    "surface_area",
    "surface_area_exact",
    "zonal_basis_coeffs",
    "zonal_eval",
    "zonal_from_basis",
]
