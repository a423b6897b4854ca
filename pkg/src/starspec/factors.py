"""Geometric factors G0, G1, G_Robin and their combinations.

All factors are scale invariant and equal 1 exactly for the centred ball.

G0 compares the boundary distortion with the ball,

    G0 = avg[R^{d-2} + |grad R|^2 R^{d-4}] / (avg R^d)^{(d-2)/d},

G1 measures the derivative of a prescribed-Jacobian sphere map,

    G1 = avg[|DH|_HS^2 / (d-1) R^{d-2}] / (avg R^d)^{(d-2)/d},

and G_Robin is the squared normalised isoperimetric ratio.  In the plane
G0 = 1 + avg((log R)')^2, G1 = 2 pi I / A^2 with I the polar moment of
inertia, and G_Robin = L^2 / (4 pi A).
"""

from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from . import quadrature as quad
from .domain import PolygonDomain, describe_about
from .errors import InvalidArgument, NotStarlike
from .homeo import LatLongMap, LinearMap, build_map


@dataclass(frozen=True)
class FactorSet:
    g0: float
    g1: float
    g_robin: float
    dim: int = 2
    volume: float = float("nan")
    map_used: Optional[str] = None

    @property
    def g(self):
        return max(self.g0, self.g1)

    def combo(self, alpha):
        return g_combo(alpha, self)

    def to_dict(self):
        d = asdict(self)
        d["g"] = self.g
        return d


def g0(domain):
    """G0 from the radius function."""
    d = domain.dim
    if isinstance(domain, PolygonDomain):
        # 1 + (R'/R)^2 = sec^2(theta - nu) on each edge, integrated in closed form
        a = domain.vertex_angles
        b = np.roll(a, -1)
        nu = domain.normal_angles
        span = np.mod(b - a, 2 * np.pi)
        total = np.sum(np.tan(a + span - nu) - np.tan(a - nu))
        return float(total / (2 * np.pi))
    avg = domain.rule.average
    _, R, g = domain.node_values()
    num = avg(R ** (d - 2) + np.sum(g * g, -1) * R ** (d - 4))
    return float(num / avg(R**d) ** ((d - 2) / d))


def _planar_support_integral(domain, panels=128, per_panel=12):
    # walk the boundary curve x(t) = R(t) e_r(t) with Gauss-Legendre panels:
    # unit normal from the tangent, ds = |x'| dt
    x, w = np.polynomial.legendre.leggauss(per_panel)
    edges = np.linspace(0.0, 2 * np.pi, panels + 1)
    half = 0.5 * np.diff(edges)
    t = (edges[:-1, None] + half[:, None] * (x + 1)).ravel()
    wt = (half[:, None] * w).ravel()
    R, dR = domain.radius_theta(t), domain.dradius_theta(t)
    c, s = np.cos(t), np.sin(t)
    pos = np.stack([R * c, R * s], -1)
    tan = np.stack([dR * c - R * s, dR * s + R * c], -1)
    speed = np.hypot(tan[:, 0], tan[:, 1])
    normal = np.stack([tan[:, 1], -tan[:, 0]], -1) / speed[:, None]
    return float(np.sum(wt * speed / np.sum(pos * normal, -1)))


def g0_boundary(domain):
    """G0 as a boundary integral of 1/(x.N), an independent formula.

    Planar smooth domains are integrated along the boundary curve itself;
    polygons sum edge length over distance to the edge line.
    """
    d = domain.dim
    if d == 2 and not isinstance(domain, PolygonDomain):
        return _planar_support_integral(domain) / (2 * np.pi)
    vb = quad.ball_volume(d)
    return float(domain.support_integral() / quad.sphere_measure(d) * (vb / domain.volume()) ** ((d - 2) / d))


def g1(domain, h=None, check_tol=1e-6):
    """G1.  Planar domains use 2 pi I / A^2; in 3D the map ``h`` is required.

    ``h`` may be a SphereMap or a map specification string ('latlong:c',
    'linear').  The map is checked against the prescribed Jacobian first.
    """
    d = domain.dim
    if d == 2 and h is None:
        A = domain.volume()
        return float(2 * np.pi * domain.moment_of_inertia() / A**2)
    if h is None or isinstance(h, str):
        h = build_map(domain, h)
    if h.dim != d:
        raise InvalidArgument("map and domain dimensions differ")
    if check_tol is not None:
        h.check_consistent(domain, check_tol)
    return g1_from_map(domain, h)


def g1_from_map(domain, h):
    """Evaluate the sphere-average definition of G1 with the given map."""
    d = domain.dim
    if isinstance(h, LatLongMap):
        fl = h.grid_fields()
        w = fl["weights"] / quad.sphere_measure(d)
        R = domain._radius(fl["nodes"].reshape(-1, d)).reshape(w.shape)
        num = np.sum(w * fl["hs2"] / (d - 1) * R ** (d - 2))
        den = np.sum(w * R**d)
    else:
        rule = domain.rule
        _, R, _ = domain.node_values()
        num = rule.average(h.hs2(rule.nodes) / (d - 1) * R ** (d - 2))
        den = rule.average(R**d)
    return float(num / den ** ((d - 2) / d))


def linear_factor(semiaxes):
    """Closed-form G0 = G1 of a centred ellipsoid under its linear map."""
    return LinearMap.for_ellipsoid(semiaxes).closed_form_factor()


def g_robin(domain):
    d = domain.dim
    vb = quad.ball_volume(d)
    sb = quad.sphere_measure(d)
    V = domain.volume()
    ratio = (domain.surface_area() / V ** ((d - 1) / d)) / (sb / vb ** ((d - 1) / d))
    return float(ratio**2)


def g_combo(alpha, f):
    """(1 - alpha) G0 + alpha G1 for alpha in [0, 1]."""
    a = np.asarray(alpha, dtype=float)
    if np.any(a < 0) or np.any(a > 1) or np.any(~np.isfinite(a)):
        raise InvalidArgument(f"alpha must lie in [0, 1], got {alpha!r}")
    out = (1 - a) * f.g0 + a * f.g1
    return float(out) if out.ndim == 0 else out


def factor_set(domain, h=None):
    """All factors of ``domain``; in 3D G1 uses ``h`` (default 'latlong:c')."""
    if domain.dim == 3 and h is None:
        h = "latlong:c"
    if isinstance(h, str):
        h = build_map(domain, h)
    return FactorSet(g0=g0(domain), g1=g1(domain, h), g_robin=g_robin(domain), dim=domain.dim,
                     volume=float(domain.volume()), map_used=None if h is None else h.label)


def origin_scan(domain, xs, ys):
    """Factors over a lattice of candidate origins.

    Returns a list of dict rows ``x, y, valid, g0, g1, sign`` where sign is
    the sign of g0 - g1 (0 when |g0 - g1| < 1e-6).  Origins about which the
    shape is not starlike are reported with ``valid = False``.
    """
    if domain.dim != 2:
        raise InvalidArgument("origin scans are planar")
    rows = []
    for y in ys:
        for x in xs:
            row = {"x": float(x), "y": float(y), "valid": False, "g0": None, "g1": None, "sign": None}
            try:
                dom = describe_about(domain, [x, y])
            except NotStarlike:
                rows.append(row)
                continue
            a, b = g0(dom), g1(dom)
            diff = a - b
            row.update(valid=True, g0=a, g1=b, sign=0 if abs(diff) < 1e-6 else int(np.sign(diff)))
            rows.append(row)
    return rows
