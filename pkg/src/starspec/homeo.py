"""Sphere homeomorphisms with prescribed Jacobian, and the induced transplantation.

For a starlike domain with radius function R the map H : S^{d-1} -> S^{d-1}
satisfies ``Jac_H(xi) = V(B)/V(Omega) * R(xi)^d``, so that

    T(r xi) = (r / R(xi)) H(xi)

maps Omega onto the unit ball with constant Jacobian V(B)/V(Omega).

Three constructions are provided.  ``CircleMap`` integrates the planar area
density; ``LatLongMap`` first matches the latitude mass and then the
longitude mass row by row; ``LinearMap`` is the normalised linear map
``M xi / |M xi|`` that is exact for centred ellipsoids.

All maps are evaluated on demand from spectral representations (Legendre
series in cos(theta_1), Fourier series in longitude) instead of interpolated
tables, which keeps derivatives consistent with the map itself.
"""

import numpy as np
from numpy.polynomial import legendre

from . import quadrature as quad
from .domain import angles_to_directions, EllipsoidDomain, _as_directions
from .errors import (InconsistentMap, InvalidArgument, OutOfDomain,
                     QuadratureTooCoarse, Unsupported)

TWO_PI = 2 * np.pi


class SphereMap:
    """Common interface.  All methods take unit vectors of shape (N, d)."""

    kind = "abstract"
    dim = None

    def evaluate(self, xi):
        raise NotImplementedError

    def invert(self, zeta):
        raise NotImplementedError

    def derivative(self, xi):
        """Ambient matrix of DH, zero on xi and with range tangent at H(xi)."""
        raise NotImplementedError

    def jacobian(self, xi):
        raise NotImplementedError

    def hs2(self, xi):
        """Squared Hilbert-Schmidt norm of DH restricted to the tangent space."""
        raise NotImplementedError

    def construction_grid(self):
        """(nodes, weights) of the grid the map was built on."""
        raise NotImplementedError

    @property
    def label(self):
        return self.kind

    def jacobian_defect(self, domain, nodes=None):
        """max |Jac_H - V(B)/V(Omega) R^d| over ``nodes`` (default: construction grid)."""
        if nodes is None:
            nodes = self.construction_grid()[0]
        c = quad.ball_volume(domain.dim) / domain.volume()
        target = c * domain.radius(nodes) ** domain.dim
        return float(np.max(np.abs(self.jacobian(nodes) - target)))

    def check_consistent(self, domain, tol=1e-6):
        defect = self.jacobian_defect(domain)
        if not defect <= tol:
            raise InconsistentMap(f"{self.label}: Jacobian defect {defect:.3g} exceeds {tol:g}")
        return defect


# ---------------------------------------------------------------------------
# two dimensions


class CircleMap(SphereMap):
    """H(theta) = 2 pi S(theta) / A where S is the sector area from angle 0.

    S is tabulated at breakpoints (a uniform grid plus any polygon vertex
    angles) and completed inside each interval by Gauss-Legendre quadrature,
    so H is spectrally accurate for smooth R and exact up to rounding on
    polygons.
    """

    kind = "circle"
    dim = 2
    _NGL = 16

    def __init__(self, domain, n_breaks=None):
        if domain.dim != 2:
            raise Unsupported("the circle map is defined for planar domains")
        self.domain = domain
        n = n_breaks or max(256, (domain.quadrature_order or 512) // 2)
        b = TWO_PI * np.arange(n) / n
        nd = domain.nonsmooth_directions
        if len(nd):
            b = np.union1d(b, np.mod(np.arctan2(nd[:, 1], nd[:, 0]), TWO_PI))
        self.breaks = np.r_[b, TWO_PI]
        self._x, self._w = np.polynomial.legendre.leggauss(self._NGL)
        pieces = self._partial(self.breaks[:-1], self.breaks[1:])
        self.cum = np.r_[0.0, np.cumsum(pieces)]
        self.area = float(self.cum[-1])
        if not np.all(pieces > 0):
            raise InvalidArgument("sector areas must be positive")

    def _partial(self, a, b):
        # integral of R^2 / 2 over [a, b] by Gauss-Legendre (a, b inside one interval)
        a = np.asarray(a, float)[:, None]
        b = np.asarray(b, float)[:, None]
        t = 0.5 * (a + b) + 0.5 * (b - a) * self._x
        r = self.domain.radius_theta(t.ravel()).reshape(t.shape)
        return 0.25 * (b[:, 0] - a[:, 0]) * ((r * r) @ self._w)

    def sector(self, theta):
        t = np.mod(np.asarray(theta, float), TWO_PI).ravel()
        k = np.clip(np.searchsorted(self.breaks, t, side="right") - 1, 0, len(self.breaks) - 2)
        return self.cum[k] + self._partial(self.breaks[k], t)

    def angle(self, theta):
        """H as a function of angle, in [0, 2 pi); H(0) = 0."""
        return TWO_PI * self.sector(theta) / self.area

    def density(self, theta):
        """H'(theta) = K(theta) = pi R^2 / A."""
        r = self.domain.radius_theta(np.ravel(theta))
        return np.pi * r * r / self.area

    def inverse_angle(self, phi):
        phi = np.mod(np.asarray(phi, float), TWO_PI).ravel()
        s = phi * self.area / TWO_PI
        k = np.clip(np.searchsorted(self.cum, s, side="right") - 1, 0, len(self.breaks) - 2)
        a, b = self.breaks[k], self.breaks[k + 1]
        lo, hi = a.copy(), b.copy()
        # linear interpolation inside the interval, then bracketed Newton (S' = R^2 / 2 > 0)
        t = a + (s - self.cum[k]) / (self.cum[k + 1] - self.cum[k]) * (b - a)
        for _ in range(6):
            r = self.domain.radius_theta(t)
            v = self.cum[k] + self._partial(a, t) - s
            lo = np.where(v < 0, t, lo)
            hi = np.where(v < 0, hi, t)
            step = t - v / (0.5 * r * r)
            t = np.where((step >= lo) & (step <= hi), step, 0.5 * (lo + hi))
        return t

    def evaluate(self, xi):
        xi, _ = _as_directions(xi, 2)
        return angles_to_directions(self.angle(np.arctan2(xi[:, 1], xi[:, 0])))

    def invert(self, zeta):
        zeta, _ = _as_directions(zeta, 2)
        return angles_to_directions(self.inverse_angle(np.arctan2(zeta[:, 1], zeta[:, 0])))

    def jacobian(self, xi):
        xi, _ = _as_directions(xi, 2)
        return self.density(np.arctan2(xi[:, 1], xi[:, 0]))

    def hs2(self, xi):
        return self.jacobian(xi) ** 2

    def derivative(self, xi):
        xi, _ = _as_directions(xi, 2)
        t = np.arctan2(xi[:, 1], xi[:, 0])
        h = self.angle(t)
        k = self.density(t)
        e_in = np.stack([-np.sin(t), np.cos(t)], -1)
        e_out = np.stack([-np.sin(h), np.cos(h)], -1)
        return k[:, None, None] * e_out[:, :, None] * e_in[:, None, :]

    def construction_grid(self):
        t = self.breaks[:-1]
        return angles_to_directions(t), np.diff(self.breaks)


# ---------------------------------------------------------------------------
# linear maps


class LinearMap(SphereMap):
    """H(xi) = M xi / |M xi| for a positive diagonal (or general SPD) M.

    For the centred ellipsoid with semiaxes s, M = diag(1/s) gives the
    prescribed Jacobian, and G0 = G1 = (V(E)/V(B))^{2/d} |M|_HS^2 / d.
    """

    kind = "linear"

    def __init__(self, M, grid_order=None):
        M = np.asarray(M, dtype=float)
        if M.ndim == 1:
            M = np.diag(M)
        if M.shape[0] not in (2, 3) or M.shape[0] != M.shape[1]:
            raise Unsupported("linear maps are defined for d = 2 and d = 3")
        if np.linalg.det(M) <= 0:
            raise InvalidArgument("linear map matrix must have positive determinant")
        self.M = M
        self.dim = M.shape[0]
        self._Minv = np.linalg.inv(M)
        self._grid_order = grid_order

    @classmethod
    def for_ellipsoid(cls, semiaxes, grid_order=None):
        s = np.asarray(semiaxes, dtype=float)
        if np.any(s <= 0):
            raise InvalidArgument("semiaxes must be positive")
        return cls(np.diag(1.0 / s), grid_order)

    @classmethod
    def identity(cls, dim):
        return cls(np.eye(dim))

    def closed_form_factor(self):
        """(V(E)/V(B))^{2/d} |M|_HS^2 / d with V(E)/V(B) = 1/det M."""
        d = self.dim
        return float((1.0 / np.linalg.det(self.M)) ** (2.0 / d) * np.sum(self.M**2) / d)

    def evaluate(self, xi):
        xi, _ = _as_directions(xi, self.dim)
        y = xi @ self.M.T
        return y / np.linalg.norm(y, axis=1, keepdims=True)

    def invert(self, zeta):
        zeta, _ = _as_directions(zeta, self.dim)
        y = zeta @ self._Minv.T
        return y / np.linalg.norm(y, axis=1, keepdims=True)

    def derivative(self, xi):
        xi, _ = _as_directions(xi, self.dim)
        y = xi @ self.M.T
        n = np.linalg.norm(y, axis=1)
        h = y / n[:, None]
        eye = np.eye(self.dim)
        P_out = eye - h[:, :, None] * h[:, None, :]
        P_in = eye - xi[:, :, None] * xi[:, None, :]
        return P_out @ self.M @ P_in / n[:, None, None]

    def jacobian(self, xi):
        xi, _ = _as_directions(xi, self.dim)
        n = np.linalg.norm(xi @ self.M.T, axis=1)
        return np.linalg.det(self.M) / n**self.dim

    def hs2(self, xi):
        D = self.derivative(xi)
        return np.sum(D * D, axis=(1, 2))

    def construction_grid(self):
        r = quad.default_rule(self.dim, self._grid_order)
        return r.nodes, r.weights


# ---------------------------------------------------------------------------
# three dimensions


_AXIS_PERM = {"a": [1, 2, 0], "b": [2, 0, 1], "c": [0, 1, 2]}


def north_rotation(north):
    """Rotation Q whose third column is the north pole (world = Q local).

    ``north`` is an axis label 'a', 'b', 'c' (the x, y, z semiaxes) or a
    vector.  For axis labels the prime meridian is the next axis in cyclic
    order, which makes the construction deterministic.
    """
    if isinstance(north, str):
        key = north.lower().removeprefix("north").strip(" _:")
        if key not in _AXIS_PERM:
            raise InvalidArgument(f"unknown north axis {north!r}; use a, b, c or a vector")
        return np.eye(3)[:, _AXIS_PERM[key]]
    n = np.asarray(north, dtype=float)
    if n.shape != (3,) or not np.linalg.norm(n) > 0:
        raise InvalidArgument("north must be a nonzero 3-vector")
    n = n / np.linalg.norm(n)
    ref = np.eye(3)[np.argmin(np.abs(n))]
    e1 = ref - (ref @ n) * n
    e1 /= np.linalg.norm(e1)
    return np.column_stack([e1, np.cross(n, e1), n])


def _local_frames(t1, t2):
    t1, t2 = np.broadcast_arrays(np.asarray(t1, float), np.asarray(t2, float))
    s1, c1 = np.sin(t1), np.cos(t1)
    s2, c2 = np.sin(t2), np.cos(t2)
    pos = np.stack([s1 * c2, s1 * s2, c1], -1)
    e1 = np.stack([c1 * c2, c1 * s2, -s1], -1)
    e2 = np.stack([-s2, c2, np.zeros_like(t1)], -1)
    return pos, e1, e2


def _monotone_solve(fn, target, lo, hi, n_bisect=24, n_newton=4):
    """Solve fn(t) = target for increasing fn on [lo, hi], vectorised.

    ``fn`` returns (value, derivative).  Bisection brackets the root, then
    Newton steps polish it; steps leaving the bracket fall back to the
    midpoint.
    """
    lo = np.full_like(target, lo)
    hi = np.full_like(target, hi)
    for _ in range(n_bisect):
        mid = 0.5 * (lo + hi)
        below = fn(mid)[0] < target
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    t = 0.5 * (lo + hi)
    for _ in range(n_newton):
        v, dv = fn(t)
        step = t - (v - target) / dv
        t = np.where((step >= lo) & (step <= hi), step, t)
    return t


class LatLongMap(SphereMap):
    """Latitude-longitude construction for d = 3.

    With K = V(B)/V(Omega) R^3 in coordinates whose pole is ``north``:

    * kbar(theta1) is the longitude average of K;
    * cos f(theta1) = 1 - int_{cos theta1}^1 kbar(x) dx, so f' sin f = kbar sin theta1;
    * g(theta1, theta2) = int_0^theta2 K(theta1, t) / kbar(theta1) dt.

    kbar is represented by its Legendre series in x = cos(theta1), obtained
    from values on ``n_theta`` Gauss-Legendre colatitudes; g is integrated
    spectrally in longitude from ``n_phi`` samples per row.  The colatitude
    derivative g_theta1 uses the analytic gradient of R, so no differencing
    across rows is needed.

    Parameters
    ----------
    domain : StarlikeDomain
        A smooth 3D domain.
    north : str or array_like
        'a', 'b', 'c' or a unit vector.
    n_theta, n_phi : int, optional
        Construction grid; defaults follow the domain quadrature order.
    """

    kind = "latlong"
    dim = 3

    def __init__(self, domain, north="c", n_theta=None, n_phi=None, tol=1e-8):
        if domain.dim != 3:
            raise Unsupported("the latitude-longitude map is defined for d = 3")
        if len(domain.nonsmooth_directions):
            raise Unsupported("the latitude-longitude map needs a smooth radius function")
        self.domain = domain
        self.north = north
        self.Q = north_rotation(north)
        self.n_theta = n_theta or domain.quadrature_order or 128
        self.n_phi = n_phi or 2 * self.n_theta
        self._c = quad.ball_volume(3) / domain.volume()
        self.theta2 = TWO_PI * np.arange(self.n_phi) / self.n_phi
        x, w = legendre.leggauss(self.n_theta)
        self._gx, self._gw = x[::-1], w[::-1]
        kb = self._rows(np.arccos(self._gx))[0].mean(axis=1)
        n = self.n_theta
        V = legendre.legvander(self._gx, n - 1)
        coef = (V * self._gw[:, None]).T @ kb * (2 * np.arange(n) + 1) / 2
        total = 2 * coef[0]
        self.endpoint_defect = abs(total / 2 - 1)
        if self.endpoint_defect > tol:
            raise QuadratureTooCoarse(
                f"latitude mass defect {self.endpoint_defect:.3g} exceeds {tol:g}; raise the quadrature order")
        # renormalise so that f(pi) = pi exactly
        self._c *= 2 / total
        self._coef = coef * 2 / total
        self._ix, self._iw = legendre.leggauss(n // 2 + 2)

    @property
    def label(self):
        n = self.north if isinstance(self.north, str) else "vector"
        return f"latlong:{n}"

    # -- rows of K and its colatitude derivative in local coordinates --------
    def _rows(self, t1, t2=None):
        t1 = np.asarray(t1, float)[:, None]
        t2 = self.theta2[None, :] if t2 is None else np.asarray(t2, float)
        pos, e1, _ = _local_frames(t1, t2)
        shape = pos.shape[:-1]
        world = pos.reshape(-1, 3) @ self.Q.T
        R = self.domain._radius(world)
        gR = self.domain._gradient(world) @ self.Q
        dR = np.sum(gR * e1.reshape(-1, 3), -1)
        K = self._c * R**3
        Kt = 3 * self._c * R**2 * dR
        return K.reshape(shape), Kt.reshape(shape)

    def kbar(self, t1):
        return legendre.legval(np.cos(t1), self._coef)

    def kbar_prime(self, t1):
        # d/dtheta1 of kbar(cos theta1)
        return -np.sin(t1) * legendre.legval(np.cos(t1), legendre.legder(self._coef))

    def _masses(self, t1):
        # C = int_x^1 kbar and D = int_{-1}^x kbar, exact Gauss rules on each side
        t1 = np.asarray(t1, float)
        up = 2 * np.sin(t1 / 2) ** 2
        dn = 2 * np.cos(t1 / 2) ** 2
        s_up = 1 - 0.5 * up[:, None] * (self._ix + 1)
        s_dn = -1 + 0.5 * dn[:, None] * (self._ix + 1)
        C = 0.5 * up * (legendre.legval(s_up, self._coef) @ self._iw)
        D = 0.5 * dn * (legendre.legval(s_dn, self._coef) @ self._iw)
        return C, D

    def profile(self, t1):
        """f(theta1), sin f and f'(theta1)."""
        t1 = np.atleast_1d(np.asarray(t1, float))
        C, D = self._masses(t1)
        sinf = np.sqrt(np.maximum(C * D, 0.0))
        f = np.arctan2(sinf, 0.5 * (D - C))
        with np.errstate(divide="ignore", invalid="ignore"):
            fp = np.where(sinf > 0, self.kbar(t1) * np.sin(t1) / sinf, np.sqrt(self.kbar(t1)))
        return f, sinf, fp

    def _spectral_coefficients(self, t1):
        # Fourier data of q = K/kbar and its colatitude derivative, row by row
        K, Kt = self._rows(t1)
        kb = K.mean(axis=1)
        kbp = Kt.mean(axis=1)
        q = K / kb[:, None]
        qt = (Kt * kb[:, None] - K * kbp[:, None]) / kb[:, None] ** 2
        n = self.n_phi
        k = np.fft.fftfreq(n, 1.0 / n)
        nz = k != 0
        if n % 2 == 0:
            # drop the Nyquist term so the interpolant is real
            nz[n // 2] = False
        Fq = np.fft.fft(q, axis=1)[:, nz] / (n * 1j * k[nz])
        Ft = np.fft.fft(qt, axis=1)[:, nz] / (n * 1j * k[nz])
        return kb, k[nz], Fq, Ft

    def _longitude(self, t1, t2):
        """g, g_theta1 and g_theta2 at local (theta1, theta2), one point each."""
        kb, k, Fq, Ft = self._spectral_coefficients(t1)
        t2 = np.asarray(t2, float)
        ph = np.exp(1j * t2[:, None] * k[None, :]) - 1
        g = t2 + np.real(np.sum(Fq * ph, axis=1))
        gt1 = np.real(np.sum(Ft * ph, axis=1))
        return g, gt1, self._direct_q(t1, t2, kb)

    def _direct_q(self, t1, t2, kb):
        pos, _, _ = _local_frames(np.asarray(t1), np.asarray(t2))
        R = self.domain._radius(pos @ self.Q.T)
        return self._c * R**3 / kb

    def _to_local(self, xi):
        xi, _ = _as_directions(xi, 3)
        loc = xi @ self.Q
        t1 = np.arccos(np.clip(loc[:, 2], -1, 1))
        t2 = np.mod(np.arctan2(loc[:, 1], loc[:, 0]), TWO_PI)
        return t1, t2

    def angles(self, xi):
        """Local (theta1, theta2) of xi and of H(xi)."""
        t1, t2 = self._to_local(xi)
        f, _, _ = self.profile(t1)
        g = self._longitude(t1, t2)[0]
        return t1, t2, f, np.mod(g, TWO_PI)

    def frame_matrix(self, xi):
        """DH in orthonormal (e_theta1, e_theta2) frames, shape (N, 2, 2)."""
        t1, t2 = self._to_local(xi)
        f, sinf, fp = self.profile(t1)
        _, gt1, gt2 = self._longitude(t1, t2)
        s1 = np.sin(t1)
        D = np.zeros((len(t1), 2, 2))
        D[:, 0, 0] = fp
        D[:, 1, 0] = sinf * gt1
        with np.errstate(divide="ignore", invalid="ignore"):
            D[:, 1, 1] = np.where(s1 > 0, sinf * gt2 / s1, fp)
        return D

    def evaluate(self, xi):
        t1, t2, f, g = self.angles(xi)
        pos, _, _ = _local_frames(f, g)
        return pos @ self.Q.T

    def invert(self, zeta):
        t1z, t2z = self._to_local(zeta)

        def f_of(t):
            f, _, fp = self.profile(t)
            return f, fp

        t1 = _monotone_solve(f_of, t1z, 0.0, np.pi)
        # longitude: g(t1, .) is increasing from 0 to 2 pi
        _, k, coef, _ = self._spectral_coefficients(t1)

        def g_of(t):
            e = np.exp(1j * t[:, None] * k[None, :])
            g = t + np.real(np.sum(coef * (e - 1), axis=1))
            return g, 1 + np.real(np.sum(coef * 1j * k * e, axis=1))

        t2 = _monotone_solve(g_of, t2z, 0.0, TWO_PI)
        pos, _, _ = _local_frames(t1, t2)
        return pos @ self.Q.T

    def jacobian(self, xi):
        return np.abs(np.linalg.det(self.frame_matrix(xi)))

    def hs2(self, xi):
        D = self.frame_matrix(xi)
        return np.sum(D * D, axis=(1, 2))

    def derivative(self, xi):
        t1, t2, f, g = self.angles(xi)
        D = self.frame_matrix(xi)
        _, u1, u2 = _local_frames(t1, t2)
        _, v1, v2 = _local_frames(f, g)
        U = np.einsum("ij,njk->nik", self.Q, np.stack([u1, u2], -1))
        V = np.einsum("ij,njk->nik", self.Q, np.stack([v1, v2], -1))
        return V @ D @ np.transpose(U, (0, 2, 1))

    def jacobian_defect(self, domain, nodes=None):
        if nodes is not None:
            return super().jacobian_defect(domain, nodes)
        fl = self.grid_fields()
        c = quad.ball_volume(3) / domain.volume()
        target = c * domain._radius(fl["nodes"].reshape(-1, 3)) ** 3
        return float(np.max(np.abs(fl["jac"].ravel() - target)))

    def construction_grid(self):
        t1 = np.arccos(self._gx)
        T1, T2 = np.meshgrid(t1, self.theta2, indexing="ij")
        pos, _, _ = _local_frames(T1, T2)
        w = self._gw[:, None] * np.full(self.n_phi, TWO_PI / self.n_phi)[None, :]
        return pos.reshape(-1, 3) @ self.Q.T, w.ravel()

    def grid_fields(self):
        """Map quantities on the construction grid, computed row by row.

        Returns a dict with world nodes, weights, f, g, jacobian and hs2,
        each of shape (n_theta, n_phi).
        """
        t1 = np.arccos(self._gx)
        f, sinf, fp = self.profile(t1)
        K, Kt = self._rows(t1)
        kb = K.mean(axis=1)
        kbp = Kt.mean(axis=1)
        q = K / kb[:, None]
        qt = (Kt * kb[:, None] - K * kbp[:, None]) / kb[:, None] ** 2
        n = self.n_phi
        k = np.fft.fftfreq(n, 1.0 / n)
        nz = k != 0
        if n % 2 == 0:
            nz[n // 2] = False
        E = np.exp(1j * np.outer(k[nz], self.theta2)) - 1

        def cumint(a):
            F = np.fft.fft(a, axis=1) / n
            return np.real((F[:, nz] / (1j * k[nz])) @ E)

        g = self.theta2[None, :] + cumint(q)
        gt1 = cumint(qt)
        s1 = np.sin(t1)[:, None]
        hs2 = fp[:, None] ** 2 + sinf[:, None] ** 2 * (gt1**2 + q**2 / s1**2)
        jac = fp[:, None] * sinf[:, None] * q / s1
        nodes, w = self.construction_grid()
        return dict(nodes=nodes.reshape(self.n_theta, n, 3), weights=w.reshape(self.n_theta, n),
                    f=np.broadcast_to(f[:, None], g.shape), g=g, jac=jac, hs2=hs2)


# ---------------------------------------------------------------------------


def build_circle_map(domain):
    return CircleMap(domain)


def build_latlong_map(domain, north="c", **kw):
    return LatLongMap(domain, north, **kw)


def build_linear_map(semiaxes, grid_order=None):
    return LinearMap.for_ellipsoid(semiaxes, grid_order)


def build_map(domain, spec=None):
    """Map from a short specification string.

    ``None`` or 'auto' picks the circle map in 2D and 'latlong:c' in 3D;
    'linear' requires a centred ellipsoid; 'latlong:a' etc. choose the pole.
    """
    spec = (spec or "auto").lower()
    if spec == "auto":
        return CircleMap(domain) if domain.dim == 2 else LatLongMap(domain, "c")
    if spec == "circle":
        return CircleMap(domain)
    if spec == "linear":
        if not isinstance(domain, EllipsoidDomain):
            raise Unsupported("the linear map is defined for centred ellipsoids")
        return LinearMap.for_ellipsoid(domain.semiaxes, domain.quadrature_order)
    if spec.startswith("latlong"):
        _, _, north = spec.partition(":")
        north = north.removeprefix("north") or "c"
        if north not in ("a", "b", "c"):
            raise InvalidArgument(f"unknown north pole {north!r}; use a, b or c")
        return LatLongMap(domain, north)
    raise InvalidArgument(f"unknown map {spec!r}; use circle, linear or latlong:<a|b|c>")


def evaluate(h, xi):
    return h.evaluate(xi)


def invert(h, zeta):
    return h.invert(zeta)


def jacobian(h, xi):
    return h.jacobian(xi)


def dh_hs_norm(h, xi):
    return h.hs2(xi)


class Transplantation:
    """T(r xi) = (r / R(xi)) H(xi), mapping Omega onto the unit ball."""

    def __init__(self, domain, h):
        if domain.dim != h.dim:
            raise InvalidArgument("domain and map dimensions differ")
        self.domain = domain
        self.map = h

    def __call__(self, x):
        return self.transplant(x)

    def transplant(self, x):
        x = np.atleast_2d(np.asarray(x, float))
        r = np.linalg.norm(x, axis=1)
        out = np.zeros_like(x)
        nz = r > 0
        if np.any(nz):
            xi = x[nz] / r[nz, None]
            R = self.domain._radius(xi)
            if np.any(r[nz] > R * (1 + 1e-12)):
                raise OutOfDomain("point lies outside the domain")
            out[nz] = (r[nz] / R)[:, None] * self.map.evaluate(xi)
        return out

    def transplant_jacobian(self, x, h=1e-5):
        """Finite-difference Jacobian determinant of T at points x (N, d)."""
        x = np.atleast_2d(np.asarray(x, float))
        d = x.shape[1]
        J = np.zeros((len(x), d, d))
        for j in range(d):
            e = np.zeros(d)
            e[j] = h
            J[:, :, j] = (self.transplant(x + e) - self.transplant(x - e)) / (2 * h)
        return np.linalg.det(J)

    def expected_jacobian(self):
        return quad.ball_volume(self.domain.dim) / self.domain.volume()


def transplant(t, x):
    return t.transplant(x)


def transplant_jacobian(t, x):
    return t.transplant_jacobian(x)
