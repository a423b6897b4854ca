"""Starlike domains described by a radius function on the unit sphere.

A domain is the set ``{r xi : 0 <= r < R(xi)}``.  Every concrete class
provides ``radius`` and ``gradient_radius`` on unit vectors; ``gradient_radius``
returns the tangential gradient of the degree-zero homogeneous extension of R,
so ``xi . grad R(xi) = 0``.  Integrals over the sphere use the quadrature rule
attached to the domain; polygons and ellipsoids use closed forms where they
exist.
"""

import json
import math

import numpy as np
from scipy.special import ellipe, sph_harm_y

from . import quadrature as quad
from .errors import InvalidArgument, InvalidDomain, NotStarlike, Unsupported

# number of random probe directions used when validating positivity
_N_PROBES = 2048


def angles_to_directions(theta):
    theta = np.asarray(theta, dtype=float)
    return np.stack([np.cos(theta), np.sin(theta)], axis=-1)


def _as_directions(xi, dim):
    xi = np.asarray(xi, dtype=float)
    if xi.ndim == 0 and dim == 2:
        # bare angle
        return angles_to_directions(xi)[None, :], True
    single = xi.ndim == 1
    xi = np.atleast_2d(xi)
    if xi.shape[-1] != dim:
        raise InvalidArgument(f"expected directions in R^{dim}, got shape {xi.shape}")
    return xi, single


class StarlikeDomain:
    """Base class.  Subclasses implement ``_radius`` and ``_gradient``.

    Parameters
    ----------
    dim : int
        2 or 3.
    quadrature_order : int, optional
        Circle nodes (d = 2) or Gauss-Legendre colatitudes (d = 3).
    """

    kind = "abstract"

    def __init__(self, dim, quadrature_order=None):
        if dim not in (2, 3):
            raise Unsupported(f"only d = 2 and d = 3 are supported, got d = {dim}")
        self.dim = dim
        self.quadrature_order = quadrature_order
        self._rule = None
        self.nonsmooth_directions = np.zeros((0, dim))

    # -- evaluation -------------------------------------------------------
    def radius(self, xi):
        """R(xi) for unit vector(s) xi, shape (..., d) -> (...)."""
        x, single = _as_directions(xi, self.dim)
        r = self._radius(x)
        return float(r[0]) if single else r

    def gradient_radius(self, xi):
        """Tangential gradient of R at unit vector(s) xi."""
        x, single = _as_directions(xi, self.dim)
        g = self._gradient(x)
        return g[0] if single else g

    def gauge(self, xi):
        return 1.0 / self.radius(xi)

    def radius_theta(self, theta):
        """R as a function of polar angle (d = 2)."""
        self._need_2d()
        return self._radius(angles_to_directions(np.atleast_1d(theta))).reshape(np.shape(theta))

    def dradius_theta(self, theta):
        """dR/dtheta (d = 2)."""
        self._need_2d()
        t = np.atleast_1d(np.asarray(theta, dtype=float))
        g = self._gradient(angles_to_directions(t))
        et = np.stack([-np.sin(t), np.cos(t)], axis=-1)
        return np.sum(g * et, axis=-1).reshape(np.shape(theta))

    def _need_2d(self):
        if self.dim != 2:
            raise Unsupported("operation is defined only for planar domains")

    # -- quadrature -------------------------------------------------------
    @property
    def rule(self):
        if self._rule is None:
            self._rule = self._make_rule()
        return self._rule

    def _make_rule(self):
        return quad.default_rule(self.dim, self.quadrature_order)

    def node_values(self):
        """(nodes, R, grad R) on the attached rule, computed once."""
        if getattr(self, "_nodal", None) is None:
            xi = self.rule.nodes
            self._nodal = (xi, self._radius(xi), self._gradient(xi))
        return self._nodal

    def sphere_integral(self, fn):
        """Integrate ``fn(xi, R, gradR)`` against the attached rule."""
        return self.rule.integrate(fn(*self.node_values()))

    # -- geometric quantities --------------------------------------------
    def volume(self):
        return self.sphere_integral(lambda xi, R, g: R ** self.dim) / self.dim

    def support_integral(self):
        """Boundary integral of 1/(x.N), evaluated as a sphere integral."""
        d = self.dim
        return self.sphere_integral(lambda xi, R, g: R ** (d - 2) * (1.0 + np.sum(g * g, -1) / R**2))

    def surface_area(self):
        d = self.dim
        return self.sphere_integral(lambda xi, R, g: R ** (d - 2) * np.sqrt(R**2 + np.sum(g * g, -1)))

    def moment_of_inertia(self):
        """Polar moment of inertia about the origin (d = 2)."""
        if self.dim != 2:
            raise Unsupported("moment of inertia is only used for planar domains")
        return self.sphere_integral(lambda xi, R, g: R**4) / 4.0

    def boundary_points(self, xi):
        xi, _ = _as_directions(xi, self.dim)
        return xi * self._radius(xi)[:, None]

    def outward_normal(self, xi):
        """Unit outer normal at the boundary point in direction xi."""
        xi, _ = _as_directions(xi, self.dim)
        R = self._radius(xi)
        n = xi - self._gradient(xi) / R[:, None]
        return n / np.linalg.norm(n, axis=-1, keepdims=True)

    def validate(self, n_probes=_N_PROBES, seed=0):
        """Check R > 0 at the quadrature nodes and at random probes."""
        rng = np.random.default_rng(seed)
        probes = rng.standard_normal((n_probes, self.dim))
        probes /= np.linalg.norm(probes, axis=1, keepdims=True)
        for pts in (self.rule.nodes, probes):
            r = self._radius(pts)
            if not np.all(np.isfinite(r)) or np.min(r) <= 0:
                raise InvalidDomain(f"{self.kind}: radius function is not positive (min {np.min(r):.3g})")
        return self

    def scaled(self, a):
        """The dilated domain a * Omega."""
        return ScaledDomain(self, a)

    def to_json(self):
        raise Unsupported(f"{self.kind} domains cannot be serialized")

    def __repr__(self):
        return f"<{type(self).__name__} d={self.dim}>"


class FourierDomain(StarlikeDomain):
    """R(theta) = sum_k cos[k] cos(k theta) + sum_k sin[k] sin(k theta).

    ``sin[0]`` multiplies sin(0) and is ignored; the sine list is aligned
    with the cosine list so that index k is the frequency.
    """

    kind = "fourier"

    def __init__(self, cos, sin=(), quadrature_order=None):
        super().__init__(2, quadrature_order)
        n = max(len(cos), len(sin), 1)
        self.cos = np.zeros(n)
        self.sin = np.zeros(n)
        self.cos[: len(cos)] = cos
        self.sin[: len(sin)] = sin
        self.sin[0] = 0.0
        self._k = np.arange(n)

    def _terms(self, xi):
        t = np.arctan2(xi[:, 1], xi[:, 0])
        kt = np.outer(t, self._k)
        return np.cos(kt), np.sin(kt)

    def _radius(self, xi):
        c, s = self._terms(xi)
        return c @ self.cos + s @ self.sin

    def _gradient(self, xi):
        c, s = self._terms(xi)
        dr = -s @ (self._k * self.cos) + c @ (self._k * self.sin)
        return dr[:, None] * np.stack([-xi[:, 1], xi[:, 0]], axis=-1)

    def scaled(self, a):
        return FourierDomain(a * self.cos, a * self.sin, self.quadrature_order)

    def to_json(self):
        return {"dim": 2, "type": "fourier", "cos": self.cos.tolist(), "sin": self.sin.tolist()}


class PolygonDomain(StarlikeDomain):
    """Polygon with vertices listed counter-clockwise around the origin.

    On the edge with unit outer normal at angle nu and distance h from the
    origin, R(theta) = h / cos(theta - nu).
    """

    kind = "polygon"

    def __init__(self, vertices, quadrature_order=None):
        super().__init__(2, quadrature_order)
        v = np.asarray(vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2 or len(v) < 3:
            raise InvalidDomain("polygon needs at least three planar vertices")
        ang = np.arctan2(v[:, 1], v[:, 0])
        if np.any(np.linalg.norm(v, axis=1) == 0):
            raise NotStarlike("a polygon vertex coincides with the origin")
        steps = np.mod(np.diff(np.r_[ang, ang[0]]), 2 * np.pi)
        if np.any(steps <= 0) or not math.isclose(steps.sum(), 2 * np.pi, rel_tol=1e-9):
            raise NotStarlike("vertex angles are not strictly increasing once around the origin")
        w = np.roll(v, -1, axis=0)
        e = w - v
        self.lengths = np.linalg.norm(e, axis=1)
        n = np.stack([e[:, 1], -e[:, 0]], axis=1) / self.lengths[:, None]
        self.heights = np.sum(n * v, axis=1)
        if np.any(self.heights <= 0):
            raise NotStarlike("origin is not strictly inside every edge half-plane")
        self.vertices = v
        self.normal_angles = np.arctan2(n[:, 1], n[:, 0])
        self.vertex_angles = np.mod(ang, 2 * np.pi)
        self.nonsmooth_directions = v / np.linalg.norm(v, axis=1, keepdims=True)

    def _edge_of(self, xi):
        t = np.mod(np.arctan2(xi[:, 1], xi[:, 0]), 2 * np.pi)
        # vertex i starts edge i; at a vertex the edge leaving it is used (one-sided)
        order = np.argsort(self.vertex_angles)
        a_sorted = self.vertex_angles[order]
        j = np.searchsorted(a_sorted, t, side="right") - 1
        return order[j % len(order)], t

    def _radius(self, xi):
        i, t = self._edge_of(xi)
        return self.heights[i] / np.cos(t - self.normal_angles[i])

    def _gradient(self, xi):
        i, t = self._edge_of(xi)
        u = t - self.normal_angles[i]
        dr = self.heights[i] * np.tan(u) / np.cos(u)
        return dr[:, None] * np.stack([-xi[:, 1], xi[:, 0]], axis=-1)

    def is_vertex_direction(self, xi, tol=1e-12):
        xi, _ = _as_directions(xi, 2)
        return np.max(xi @ self.nonsmooth_directions.T, axis=1) > 1 - tol

    def _make_rule(self):
        # Gauss-Legendre on each edge so that piecewise smooth integrands converge fast
        total = self.quadrature_order or 512
        per = max(16, int(math.ceil(total / len(self.vertices))))
        x, w = np.polynomial.legendre.leggauss(per)
        a0 = self.vertex_angles
        span = np.mod(np.roll(a0, -1) - a0, 2 * np.pi)
        th = (a0[:, None] + 0.5 * span[:, None] * (x[None, :] + 1)).ravel()
        wt = (0.5 * span[:, None] * w[None, :]).ravel()
        return quad.QuadratureRule(angles_to_directions(th), wt, per, (th.size,))

    def volume(self):
        v, w = self.vertices, np.roll(self.vertices, -1, axis=0)
        return 0.5 * float(np.sum(v[:, 0] * w[:, 1] - v[:, 1] * w[:, 0]))

    def support_integral(self):
        return float(np.sum(self.lengths / self.heights))

    def surface_area(self):
        return float(np.sum(self.lengths))

    def moment_of_inertia(self):
        v, w = self.vertices, np.roll(self.vertices, -1, axis=0)
        cr = v[:, 0] * w[:, 1] - v[:, 1] * w[:, 0]
        return float(np.sum(cr * (np.sum(v * v, 1) + np.sum(w * w, 1) + np.sum(v * w, 1))) / 12.0)

    def scaled(self, a):
        return PolygonDomain(a * self.vertices, self.quadrature_order)

    def to_json(self):
        return {"dim": 2, "type": "polygon", "vertices": self.vertices.tolist()}


class EllipsoidDomain(StarlikeDomain):
    """Centred ellipse or ellipsoid with the given semiaxes, R = 1/|M xi|."""

    kind = "ellipsoid"

    def __init__(self, semiaxes, quadrature_order=None):
        s = np.asarray(semiaxes, dtype=float)
        super().__init__(len(s), quadrature_order)
        if np.any(s <= 0):
            raise InvalidDomain("semiaxes must be positive")
        self.semiaxes = s
        self.M = 1.0 / s

    def _radius(self, xi):
        return 1.0 / np.linalg.norm(xi * self.M, axis=-1)

    def _gradient(self, xi):
        mx = xi * self.M
        nn = np.linalg.norm(mx, axis=-1)[:, None]
        return xi / nn - self.M * mx / nn**3

    def volume(self):
        return float(quad.ball_volume(self.dim) * np.prod(self.semiaxes))

    def moment_of_inertia(self):
        self._need_2d()
        a, b = self.semiaxes
        return float(np.pi * a * b * (a * a + b * b) / 4.0)

    def surface_area(self):
        if self.dim == 2:
            a, b = sorted(self.semiaxes, reverse=True)
            return float(4 * a * ellipe(1 - (b / a) ** 2))
        return super().surface_area()

    def scaled(self, a):
        return EllipsoidDomain(a * self.semiaxes, self.quadrature_order)

    def to_json(self):
        return {"dim": self.dim, "type": "ellipsoid", "semiaxes": self.semiaxes.tolist()}


def real_sph_harm(l, m, xi, grad=False):
    """Orthonormal real spherical harmonic Y_lm at unit vectors xi (N, 3).

    m > 0 uses sqrt(2) Re Y_l^m, m < 0 uses sqrt(2) Im Y_l^|m|.  With
    ``grad=True`` also returns the tangential gradient (N, 3).
    """
    xi = np.atleast_2d(xi)
    th = np.arccos(np.clip(xi[:, 2], -1, 1))
    ph = np.arctan2(xi[:, 1], xi[:, 0])
    am = abs(m)
    if grad:
        y, dy = sph_harm_y(l, am, th, ph, diff_n=1)
    else:
        y = sph_harm_y(l, am, th, ph)
    part = np.real if m >= 0 else np.imag
    c = 1.0 if m == 0 else math.sqrt(2.0)
    val = c * part(y)
    if not grad:
        return val
    dth = c * part(dy[..., 0])
    dph = c * part(dy[..., 1])
    e_th = np.stack([np.cos(th) * np.cos(ph), np.cos(th) * np.sin(ph), -np.sin(th)], -1)
    e_ph = np.stack([-np.sin(ph), np.cos(ph), np.zeros_like(ph)], -1)
    st = np.sin(th)
    with np.errstate(divide="ignore", invalid="ignore"):
        gph = np.where(st > 1e-14, dph / st, 0.0)
    return val, dth[:, None] * e_th + gph[:, None] * e_ph


class HarmonicDomain(StarlikeDomain):
    """R(xi) = sum c_lm Y_lm(xi) with real spherical harmonics.

    ``coeffs`` is a list of ``(l, m, c)`` triples; the constant term is
    ``(0, 0, c)`` with Y_00 = 1/sqrt(4 pi).  ``radius0`` is added as a plain
    constant for convenience.
    """

    kind = "harmonic"

    def __init__(self, coeffs, radius0=0.0, quadrature_order=None):
        super().__init__(3, quadrature_order)
        self.coeffs = [(int(l), int(m), float(c)) for l, m, c in coeffs]
        for l, m, _ in self.coeffs:
            if l < 0 or abs(m) > l:
                raise InvalidDomain(f"invalid harmonic index (l, m) = ({l}, {m})")
        self.radius0 = float(radius0)

    def _radius(self, xi):
        r = np.full(len(xi), self.radius0)
        for l, m, c in self.coeffs:
            r += c * real_sph_harm(l, m, xi)
        return r

    def _gradient(self, xi):
        g = np.zeros_like(xi)
        for l, m, c in self.coeffs:
            if l:
                g += c * real_sph_harm(l, m, xi, grad=True)[1]
        return g

    def scaled(self, a):
        return HarmonicDomain([(l, m, a * c) for l, m, c in self.coeffs], a * self.radius0, self.quadrature_order)

    def to_json(self):
        return {"dim": 3, "type": "harmonic", "radius0": self.radius0, "coeffs": [list(t) for t in self.coeffs]}


def _rotate_towards(xi, e, h):
    return np.cos(h) * xi + np.sin(h) * e


def fd_tangential_gradient(fn, xi, h=1e-3):
    """Fourth-order centred differences of ``fn`` along great circles."""
    xi = np.atleast_2d(xi)
    if xi.shape[1] == 2:
        frames = [np.stack([-xi[:, 1], xi[:, 0]], -1)]
    else:
        frames = list(quad.tangent_frame(xi))
    g = np.zeros_like(xi)
    for e in frames:
        d = (8 * (fn(_rotate_towards(xi, e, h)) - fn(_rotate_towards(xi, e, -h)))
             - (fn(_rotate_towards(xi, e, 2 * h)) - fn(_rotate_towards(xi, e, -2 * h)))) / (12 * h)
        g += d[:, None] * e
    return g


class SampledDomain(StarlikeDomain):
    """Domain given by a smooth positive callable on unit vectors.

    The gradient uses fourth-order finite differences along great circles
    with a step tied to the quadrature resolution.
    """

    kind = "sampled"

    def __init__(self, fn, dim=3, quadrature_order=None):
        super().__init__(dim, quadrature_order)
        self.fn = fn
        order = quadrature_order or (512 if dim == 2 else 128)
        self.fd_step = min(1e-3, 0.5 * np.pi / order)

    def _radius(self, xi):
        return np.asarray(self.fn(xi), dtype=float)

    def _gradient(self, xi):
        return fd_tangential_gradient(self._radius, xi, self.fd_step)


class ScaledDomain(StarlikeDomain):
    kind = "scaled"

    def __init__(self, base, a):
        super().__init__(base.dim, base.quadrature_order)
        if a <= 0:
            raise InvalidArgument("dilation factor must be positive")
        self.base, self.a = base, float(a)
        self.nonsmooth_directions = base.nonsmooth_directions

    def _radius(self, xi):
        return self.a * self.base._radius(xi)

    def _gradient(self, xi):
        return self.a * self.base._gradient(xi)

    def _make_rule(self):
        return self.base.rule


class TranslatedDomain(StarlikeDomain):
    """The shape of ``base`` described about the point ``origin``.

    ``origin`` is given in the base coordinates.  For a direction xi the new
    radius is the unique t > 0 with origin + t xi on the base boundary; it is
    found by bisection on |p| - R_base(p/|p|).
    """

    kind = "translated"

    def __init__(self, base, origin):
        super().__init__(base.dim, base.quadrature_order)
        self.base = base
        self.origin = np.asarray(origin, dtype=float)
        self._tmax = 2.0 * float(np.max(base._radius(base.rule.nodes))) + np.linalg.norm(self.origin)

    def _level(self, p):
        r = np.linalg.norm(p, axis=-1)
        safe = np.where(r > 0, r, 1.0)[:, None]
        return r - self.base._radius(p / safe)

    def _radius(self, xi):
        lo = np.zeros(len(xi))
        hi = np.full(len(xi), self._tmax)
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            inside = self._level(self.origin + mid[:, None] * xi) < 0
            lo = np.where(inside, mid, lo)
            hi = np.where(inside, hi, mid)
        t = 0.5 * (lo + hi)
        # Newton polish along the ray
        for _ in range(2):
            p = self.origin + t[:, None] * xi
            n = self._base_normal_field(p)
            f = self._level(p)
            t = t - f / np.sum(n * xi, -1)
        return t

    def _base_normal_field(self, p):
        # gradient of |p| - R(p/|p|), not normalized
        r = np.linalg.norm(p, axis=-1)[:, None]
        ph = p / r
        return ph - self.base._gradient(ph) / r

    def _gradient(self, xi):
        R = self._radius(xi)
        N = self._base_normal_field(self.origin + R[:, None] * xi)
        N /= np.linalg.norm(N, axis=-1, keepdims=True)
        xn = np.sum(xi * N, -1)
        return R[:, None] * (xi - N / xn[:, None])

    def to_json(self):
        d = self.base.to_json()
        d["origin_offset"] = (-self.origin).tolist()
        return d


def _check_starlike_about(base, offset, density=4):
    """Raise NotStarlike unless every ray from ``offset`` meets the boundary once.

    The test samples the base boundary at ``density`` times the quadrature
    resolution and requires (x - offset) . N > 0 everywhere, with the origin
    itself inside.
    """
    offset = np.asarray(offset, dtype=float)
    r0 = np.linalg.norm(offset)
    if r0 > 0 and r0 >= base.radius(offset / r0):
        raise NotStarlike(f"origin {offset.tolist()} is not inside the domain")
    if base.dim == 2:
        n = density * (base.quadrature_order or 512)
        xi = angles_to_directions(2 * np.pi * (np.arange(n) + 0.5) / n)
    else:
        nt = density * (base.quadrature_order or 128) // 2
        xi = quad.sphere_rule(max(nt, 8)).nodes
    x = base.boundary_points(xi)
    N = base.outward_normal(xi)
    if np.min(np.sum((x - offset) * N, axis=1)) <= 0:
        raise NotStarlike(f"domain is not starlike about {offset.tolist()}")


def translate_origin(domain, offset):
    """The shape moved by ``offset`` relative to the origin.

    Equivalently, the same shape described about the point ``-offset`` of
    its current coordinates: a disk moved by (0.5, 0) has radius function
    0.5 cos t + sqrt(1 - 0.25 sin^2 t).  Use ``describe_about`` to name the
    new origin directly.
    """
    offset = np.asarray(offset, dtype=float)
    if offset.shape != (domain.dim,):
        raise InvalidArgument(f"offset must have {domain.dim} components")
    if not np.any(offset):
        return domain
    if isinstance(domain, PolygonDomain):
        return PolygonDomain(domain.vertices + offset, domain.quadrature_order)
    if isinstance(domain, TranslatedDomain):
        return translate_origin(domain.base, offset - domain.origin)
    _check_starlike_about(domain, -offset)
    return TranslatedDomain(domain, -offset)


def describe_about(domain, point):
    """The same shape with the origin moved to ``point`` (current coordinates)."""
    return translate_origin(domain, -np.asarray(point, dtype=float))


# ---------------------------------------------------------------------------
# construction from plain data


def make_domain(spec=None, **kw):
    """Build and validate a domain from a dict (the JSON domain format).

    Examples
    --------
    >>> make_domain({"dim": 2, "type": "fourier", "cos": [1.0]}).volume()  # doctest: +ELLIPSIS
    3.14159...
    """
    if spec is None:
        spec = {}
    if isinstance(spec, StarlikeDomain):
        return spec
    spec = dict(spec, **kw)
    kind = spec.get("type")
    q = spec.get("quadrature_order")
    if q is not None and (int(q) != q or q < 4):
        raise InvalidArgument(f"invalid quadrature_order {q!r}")
    q = None if q is None else int(q)
    try:
        if kind == "fourier":
            if spec.get("dim", 2) != 2:
                raise InvalidDomain("fourier domains are planar")
            dom = FourierDomain(spec.get("cos", []), spec.get("sin", []), q)
        elif kind == "polygon":
            dom = PolygonDomain(spec["vertices"], q)
        elif kind == "ellipsoid":
            axes = spec["semiaxes"]
            if "dim" in spec and spec["dim"] != len(axes):
                raise InvalidDomain("dim does not match the number of semiaxes")
            dom = EllipsoidDomain(axes, q)
        elif kind == "harmonic":
            dom = HarmonicDomain(spec.get("coeffs", []), spec.get("radius0", 0.0), q)
        elif kind == "disk":
            dom = EllipsoidDomain([spec.get("radius", 1.0)] * 2, q)
        elif kind == "ball":
            dom = EllipsoidDomain([spec.get("radius", 1.0)] * 3, q)
        else:
            raise InvalidDomain(f"unknown domain type {kind!r}")
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InvalidArgument):
            raise
        raise InvalidDomain(f"malformed domain specification: {exc}") from exc
    dom.validate()
    off = spec.get("origin_offset")
    if off is not None:
        dom = translate_origin(dom, off)
        dom.validate()
    return dom


def load_domain(path):
    with open(path) as fh:
        try:
            spec = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidDomain(f"{path}: not valid JSON ({exc})") from exc
    return make_domain(spec)


def disk(radius=1.0, quadrature_order=None):
    return EllipsoidDomain([radius, radius], quadrature_order)


def ball(radius=1.0, quadrature_order=None):
    return EllipsoidDomain([radius] * 3, quadrature_order)


def regular_polygon(n, circumradius=1.0, phase=0.0):
    t = phase + 2 * np.pi * np.arange(n) / n
    return PolygonDomain(circumradius * angles_to_directions(t))


def square(half_side=1.0):
    s = half_side
    return PolygonDomain([[s, -s], [s, s], [-s, s], [-s, -s]])


def random_fourier(rng, n_modes=4, amplitude=0.3, decay=1.0):
    """Random smooth planar domain R = 1 + small trigonometric polynomial.

    Coefficients are drawn uniformly and scaled so that the perturbation sum
    stays below ``amplitude`` in absolute value, which keeps R >= 1 - amplitude.
    """
    k = np.arange(1, n_modes + 1)
    a = rng.uniform(-1, 1, n_modes) / k**decay
    b = rng.uniform(-1, 1, n_modes) / k**decay
    s = amplitude / max(np.sum(np.abs(a) + np.abs(b)), 1e-300)
    return FourierDomain(np.r_[1.0, s * a], np.r_[0.0, s * b])


def random_harmonic(rng, lmax=3, amplitude=0.25, quadrature_order=None):
    """Random smooth 3D domain R = 1 + sum c_lm Y_lm with bounded perturbation."""
    coeffs = []
    for l in range(1, lmax + 1):
        for m in range(-l, l + 1):
            coeffs.append([l, m, rng.uniform(-1, 1) / l**2])
    c = np.array([t[2] for t in coeffs])
    # |Y_lm| <= sqrt((2l+1)/(4 pi)) for the real basis up to a factor sqrt(2)
    bound = sum(abs(t[2]) * math.sqrt(2 * (2 * t[0] + 1) / (4 * math.pi)) for t in coeffs)
    s = amplitude / bound
    return HarmonicDomain([(l, m, s * cc) for (l, m, _), cc in zip(coeffs, c)], 1.0, quadrature_order)


# module-level aliases mirroring the method names
def radius(domain, xi):
    return domain.radius(xi)


def gradient_radius(domain, xi):
    return domain.gradient_radius(xi)


def volume(domain):
    return domain.volume()


def support_integral(domain):
    return domain.support_integral()


def moment_of_inertia(domain):
    return domain.moment_of_inertia()


def surface_area(domain):
    return domain.surface_area()
