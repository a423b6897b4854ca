"""Reference spectra of the unit disk and unit ball.

Eigenfunctions separate as u = J_m(omega s) e^{i m theta} in the disk and
u = j_l(omega s) Y_lm in the ball.  The radial wavenumber omega solves

* Dirichlet: J(omega) = 0
* Neumann:   J'(omega) = 0 (plus the constant mode, eigenvalue 0)
* Robin:     hbar^2 omega J'(omega) + sigma J(omega) = 0, eigenvalue hbar^2 omega^2

with J the Bessel function J_m (d = 2) or the spherical Bessel function
j_l (d = 3).  Roots are bracketed by a sign-change scan and refined by a
safeguarded Newton iteration; scipy.special only evaluates the functions.
"""

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Tuple

import numpy as np
from scipy import integrate
from scipy.special import jv, jvp, spherical_jn

from .errors import InvalidArgument, ToleranceNotMet, Unsupported

_SCAN_STEP = 0.1


@dataclass(frozen=True)
class BoundaryCondition:
    kind: str  # 'dirichlet' | 'neumann' | 'robin'
    hbar: float = 1.0
    sigma: float = 0.0

    def __post_init__(self):
        if self.kind not in ("dirichlet", "neumann", "robin"):
            raise InvalidArgument(f"unknown boundary condition {self.kind!r}")
        if self.kind == "robin":
            if not self.hbar > 0:
                raise InvalidArgument("hbar must be positive")
            if self.sigma < 0:
                raise Unsupported("negative Robin parameters are not supported (sigma must be >= 0)")

    @property
    def effective(self):
        """Robin with sigma = 0 has the Neumann wavenumbers."""
        if self.kind == "robin" and self.sigma == 0:
            return "neumann"
        return self.kind

    @property
    def scale(self):
        return self.hbar**2 if self.kind == "robin" else 1.0

    def label(self):
        if self.kind == "robin":
            return f"robin(hbar={self.hbar:g},sigma={self.sigma:g})"
        return self.kind


def parse_bc(bc, hbar=1.0, sigma=0.0):
    if isinstance(bc, BoundaryCondition):
        return bc
    key = str(bc).lower()
    aliases = {"d": "dirichlet", "n": "neumann", "r": "robin"}
    key = aliases.get(key, key)
    if key == "robin":
        return BoundaryCondition("robin", float(hbar), float(sigma))
    return BoundaryCondition(key)


@dataclass(frozen=True)
class BallMode:
    value: float
    angular_index: int
    radial_index: int
    multiplicity: int
    angular_fraction: float = 0.0
    wavenumber: float = 0.0


@dataclass(frozen=True)
class BallSpectrum:
    boundary_condition: BoundaryCondition
    dim: int
    modes: Tuple[BallMode, ...] = field(default_factory=tuple)

    @property
    def values(self):
        return np.array([m.value for m in self.modes])

    @property
    def alphas(self):
        return np.array([m.angular_fraction for m in self.modes])

    def __len__(self):
        return len(self.modes)


# ---------------------------------------------------------------------------
# radial functions and derivatives


def _radial(dim, nu, x, der=0):
    """J_nu (d = 2) or spherical j_nu (d = 3) and derivatives up to 2."""
    if dim == 2:
        if der == 0:
            return jv(nu, x)
        if der == 1:
            return jvp(nu, x, 1)
        return jvp(nu, x, 2)
    if der == 0:
        return spherical_jn(nu, x)
    if der == 1:
        return spherical_jn(nu, x, derivative=True)
    # x^2 j'' + 2 x j' + (x^2 - l(l+1)) j = 0
    j = spherical_jn(nu, x)
    dj = spherical_jn(nu, x, derivative=True)
    return -2 * dj / x - (1 - nu * (nu + 1) / x**2) * j


def _root_function(dim, nu, bc):
    kind = bc.effective
    if kind == "dirichlet":
        return (lambda x: _radial(dim, nu, x), lambda x: _radial(dim, nu, x, 1))
    if kind == "neumann":
        return (lambda x: _radial(dim, nu, x, 1), lambda x: _radial(dim, nu, x, 2))
    h2, s = bc.hbar**2, bc.sigma

    def F(x):
        return h2 * x * _radial(dim, nu, x, 1) + s * _radial(dim, nu, x)

    def dF(x):
        return h2 * (_radial(dim, nu, x, 1) + x * _radial(dim, nu, x, 2)) + s * _radial(dim, nu, x, 1)

    return F, dF


def _refine(F, dF, a, b, fa, tol=1e-15, maxit=100):
    """Safeguarded Newton on a sign-change bracket [a, b]."""
    x = 0.5 * (a + b)
    for _ in range(maxit):
        fx = F(x)
        if fx == 0:
            return x
        if (fx > 0) == (fa > 0):
            a, fa = x, fx
        else:
            b = x
        d = dF(x)
        step = x - fx / d if d != 0 else 0.5 * (a + b)
        if not (a < step < b):
            step = 0.5 * (a + b)
        if abs(step - x) <= tol * max(1.0, abs(x)) or b - a <= tol * max(1.0, abs(x)):
            return step
        x = step
    return x


def _roots_below(dim, nu, bc, xmax, count=None):
    """Positive roots of the boundary function of order nu below xmax (or the first ``count``)."""
    F, dF = _root_function(dim, nu, bc)
    x = max(1e-3, 0.5 * nu)
    fx = F(x)
    roots = []
    while True:
        if count is None and x > xmax:
            break
        if count is not None and len(roots) >= count:
            break
        y = x + _SCAN_STEP
        fy = F(y)
        if fx == 0:
            roots.append(x)
        elif (fx > 0) != (fy > 0):
            roots.append(_refine(F, dF, x, y, fx))
        x, fx = y, fy
    if count is None:
        roots = [r for r in roots if r <= xmax]
    return roots


def _check_order(nu, k):
    if k < 1 or int(k) != k:
        raise InvalidArgument(f"root index must be a positive integer, got {k}")
    if nu < 0:
        raise InvalidArgument(f"order must be nonnegative, got {nu}")


@lru_cache(maxsize=4096)
def bessel_zero(nu, k, dim=2):
    """k-th positive zero of J_nu (d = 2) or of the spherical j_nu (d = 3)."""
    _check_order(nu, k)
    return _roots_below(dim, nu, BoundaryCondition("dirichlet"), None, count=int(k))[k - 1]


@lru_cache(maxsize=4096)
def bessel_deriv_zero(nu, k, dim=2):
    """k-th positive zero of J_nu' (or j_nu'); the zero at the origin for nu = 0 is skipped."""
    _check_order(nu, k)
    return _roots_below(dim, nu, BoundaryCondition("neumann"), None, count=int(k))[k - 1]


def robin_root(nu, k, hbar, sigma, dim=2):
    _check_order(nu, k)
    bc = BoundaryCondition("robin", hbar, sigma)
    return _roots_below(dim, nu, bc, None, count=int(k))[k - 1]


# ---------------------------------------------------------------------------
# angular energy fraction


def _energy_parts(dim, nu, omega):
    """(angular, radial) Dirichlet energy of u(s) = J(omega s) on [0, 1]."""
    w = nu * nu if dim == 2 else nu * (nu + 1)
    p = 1 if dim == 2 else 2  # radial measure s^p ds

    def ang(s):
        if s == 0:
            return 0.0
        u = _radial(dim, nu, omega * s)
        return w * u * u * s ** (p - 2)

    def rad(s):
        du = omega * _radial(dim, nu, omega * s, 1)
        return du * du * s**p

    opts = dict(epsabs=1e-14, epsrel=1e-12, limit=200, full_output=1)
    a, ea, *info_a = integrate.quad(ang, 0, 1, **opts)
    r, er, *info_r = integrate.quad(rad, 0, 1, **opts)
    if len(info_a) > 1 or len(info_r) > 1:
        raise ToleranceNotMet(f"energy quadrature did not converge for order {nu}, omega {omega}")
    return a, r


def angular_fraction(mode, dim=2):
    """Share of the Dirichlet energy carried by angular derivatives.

    Parameters
    ----------
    mode : BallMode
        A mode from :func:`ball_spectrum`; ``wavenumber`` must be set.
    """
    if mode.angular_index == 0 or mode.wavenumber == 0:
        return 0.0
    a, r = _energy_parts(dim, mode.angular_index, mode.wavenumber)
    return a / (a + r)


# ---------------------------------------------------------------------------


def _weyl_guess(n, dim):
    if dim == 2:
        return 4.0 * n + 30.0
    return (6 * math.pi**2 * n / (4 * math.pi / 3)) ** (2 / 3) * 1.5 + 30.0


def ball_spectrum(bc, dim=2, n=10, hbar=1.0, sigma=0.0, alpha=True):
    """First ``n`` eigenvalues of the unit disk (d = 2) or ball (d = 3).

    The returned list is sorted by value, ties broken by angular index and
    then radial index, and expanded by multiplicity (so a mode with
    multiplicity 2 appears twice).  It is truncated to exactly ``n`` entries.
    """
    bc = parse_bc(bc, hbar, sigma)
    if dim not in (2, 3):
        raise Unsupported(f"ball spectra are provided for d = 2, 3, got {dim}")
    if n < 1 or int(n) != n:
        raise InvalidArgument(f"n must be a positive integer, got {n}")
    lam = _weyl_guess(n, dim)
    while True:
        found = _modes_below(bc, dim, lam)
        total = sum(m[3] for m in found)
        if total >= n:
            break
        lam *= 2
    modes = []
    for value, nu, k, mult, omega in found:
        frac = 0.0
        if alpha and nu > 0:
            a, r = _energy_parts(dim, nu, omega)
            frac = a / (a + r)
        mode = BallMode(value, nu, k, mult, frac, omega)
        modes.extend([mode] * mult)
        if len(modes) >= n:
            break
    return BallSpectrum(bc, dim, tuple(modes[:n]))


def _modes_below(bc, dim, lam):
    scale = bc.scale
    wmax = math.sqrt(lam / scale)
    out = []
    if bc.effective == "neumann":
        out.append((0.0, 0, 1, 1, 0.0))
    nu = 0
    while True:
        roots = _roots_below(dim, nu, bc, wmax)
        if not roots:
            break
        offset = 1 if (bc.effective == "neumann" and nu == 0) else 0
        mult = 1 if nu == 0 else (2 if dim == 2 else 2 * nu + 1)
        for k, w in enumerate(roots, start=1):
            out.append((scale * w * w, nu, k + offset, mult, w))
        nu += 1
    out.sort(key=lambda t: (t[0], t[1], t[2]))
    return out


def ball_values(bc, dim=2, n=10, hbar=1.0, sigma=0.0):
    """Eigenvalues only, without energy fractions."""
    return ball_spectrum(bc, dim, n, hbar, sigma, alpha=False).values
