"""Geometric factors and sharp eigenvalue bounds for starlike domains.

Typical use::

    from starspec import EllipsoidDomain, factor_set, dirichlet_bound
    f = factor_set(EllipsoidDomain([3.0, 1.0]))
    dirichlet_bound(f, "sum", n=10).bound_value
"""

from .ball import BoundaryCondition, ball_spectrum, ball_values, bessel_deriv_zero, bessel_zero
from .bounds import (BoundReport, ConcaveFunctional, apply_concave, dirichlet_bound, improved_dirichlet_bound,
                     majorize_check, neumann_bound, perturb_ball_expansion, perturb_disk_bound, robin_bounds,
                     robin_first_bound, sloshing_bound, sloshing_values)
from .domain import (EllipsoidDomain, FourierDomain, HarmonicDomain, PolygonDomain, StarlikeDomain, ball, disk,
                     describe_about, load_domain, make_domain, regular_polygon, square, translate_origin)
from .errors import StarspecError
from .factors import FactorSet, factor_set, g0, g0_boundary, g1, g_combo, g_robin, origin_scan
from .fem import DiscreteSpectrum, laplace_eigs_2d
from .homeo import CircleMap, LatLongMap, LinearMap, Transplantation, build_map
from .montecarlo import haar_orthogonal_sample, mc_conjugation_average, mc_q23_check
from .verify import verify_inequalities

__all__ = [
    "BoundaryCondition",
    "ball_spectrum",
    "ball_values",
    "bessel_deriv_zero",
    "bessel_zero",
    "BoundReport",
    "ConcaveFunctional",
    "apply_concave",
    "dirichlet_bound",
    "improved_dirichlet_bound",
    "majorize_check",
    "neumann_bound",
    "perturb_ball_expansion",
    "perturb_disk_bound",
    "robin_bounds",
    "robin_first_bound",
    "sloshing_bound",
    "sloshing_values",
    "EllipsoidDomain",
    "FourierDomain",
    "HarmonicDomain",
    "PolygonDomain",
    "StarlikeDomain",
    "ball",
    "disk",
    "describe_about",
    "load_domain",
    "make_domain",
    "regular_polygon",
    "square",
    "translate_origin",
    "StarspecError",
    "FactorSet",
    "factor_set",
    "g0",
    "g0_boundary",
    "g1",
    "g_combo",
    "g_robin",
    "origin_scan",
    "DiscreteSpectrum",
    "laplace_eigs_2d",
    "CircleMap",
    "LatLongMap",
    "LinearMap",
    "Transplantation",
    "build_map",
    "haar_orthogonal_sample",
    "mc_conjugation_average",
    "mc_q23_check",
    "verify_inequalities",
]

__version__ = "0.1.0"
