"""Check the eigenvalue bounds against computed spectra of planar domains."""

import numpy as np

from .ball import parse_bc
from .bounds import (check_robin_parameters, dirichlet_bound, improved_dirichlet_bound, neumann_bound, robin_bounds,
                     robin_first_bound, robin_parameters, sloshing_bound)
from .errors import InvalidArgument, Unsupported
from .factors import factor_set
from .fem import DEFAULT_RESOLUTION, laplace_eigs_2d

DIRICHLET_FAMILY = ("lambda1", "lambda2", "sum", "power_mean:0.5", "power_mean:1", "geo_mean",
                    "zeta:-1", "heat:0.1", "heat:1")
NEUMANN_FAMILY = ("mu2", "sum", "power_mean:0.5", "power_mean:1", "geo_mean", "zeta:-1",
                  "heat:0.1", "heat:1")


def verify_inequalities(domain, h=None, bc="dirichlet", n=10, resolution=DEFAULT_RESOLUTION,
                        functionals=None, spectrum=None, hbar=1.0, sigma=1.0, improved=True,
                        sloshing_depths=()):
    """Attach computed spectra to the bounds and return the reports.

    Parameters
    ----------
    domain : StarlikeDomain
        A planar domain.
    h : SphereMap or str, optional
        Map used for G1; in the plane the default moment-of-inertia formula
        is equivalent to the circle map.
    bc : {'dirichlet', 'neumann', 'robin'}
    spectrum : DiscreteSpectrum, optional
        Reuse a spectrum computed earlier with the same boundary condition.
        Not used for 'robin', where the parameters depend on the factors.
    sloshing_depths : sequence of float
        Neumann only: also check the sloshing sum at these depths.
    """
    if domain.dim != 2:
        raise Unsupported("eigenvalue verification is planar")
    if n < 1 or int(n) != n:
        raise InvalidArgument(f"n must be a positive integer, got {n}")
    if str(bc).lower() in ("r", "robin"):
        check_robin_parameters(hbar, sigma)
    kind = parse_bc(bc, hbar, sigma).kind
    f = factor_set(domain, h)
    reports = []
    if kind == "dirichlet":
        sp = spectrum or laplace_eigs_2d(domain, "dirichlet", max(n, 2), resolution)
        for fn in functionals or DIRICHLET_FAMILY:
            reports.append(dirichlet_bound(f, fn, n, sp))
        if improved:
            reports.append(improved_dirichlet_bound(f, n, sp))
    elif kind == "neumann":
        if n < 2:
            raise InvalidArgument("Neumann bounds need n >= 2")
        sp = spectrum or laplace_eigs_2d(domain, "neumann", n, resolution)
        for fn in functionals or NEUMANN_FAMILY:
            reports.append(neumann_bound(f, fn, n, sp))
        if improved:
            reports.append(improved_dirichlet_bound(f, n, sp, bc="neumann"))
        for L in sloshing_depths:
            reports.append(sloshing_bound(f, n, L, sp))
    else:
        h1, s1 = robin_parameters(f, hbar, sigma, first=True)
        sp1 = laplace_eigs_2d(domain, "robin", 1, resolution, hbar=h1, sigma=s1)
        reports.append(robin_first_bound(f, hbar, sigma, sp1))
        h2, s2 = robin_parameters(f, hbar, sigma, first=False)
        spn = laplace_eigs_2d(domain, "robin", n, resolution, hbar=h2, sigma=s2)
        for fn in functionals or ("sum",):
            reports.append(robin_bounds(f, hbar, sigma, n, fn, spn))
    return reports


def summarize(reports):
    """(all passed, list of failing functional labels)."""
    bad = [r.functional for r in reports if r.verdict != "PASS"]
    return not bad, bad


def margins(reports):
    return np.array([r.margin for r in reports])
