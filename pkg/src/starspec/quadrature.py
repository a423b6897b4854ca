"""Quadrature rules on the unit circle and the unit sphere."""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgument


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Nodes on the unit sphere S^{d-1} with positive weights.

    ``weights.sum()`` equals ``|S^{d-1}|`` (2*pi or 4*pi).  ``shape`` records
    the tensor layout of product rules so that callers can reshape nodal
    values to (n_theta, n_phi); for the circle it is ``(n,)``.
    """

    nodes: np.ndarray
    weights: np.ndarray
    order: int
    shape: tuple

    @property
    def dim(self):
        return self.nodes.shape[1]

    @property
    def measure(self):
        return 2 * np.pi if self.dim == 2 else 4 * np.pi

    def integrate(self, values):
        return float(np.dot(self.weights, values))

    def average(self, values):
        return self.integrate(values) / self.measure


def circle_rule(n=512):
    """Uniform trapezoid rule with ``n`` nodes, starting at angle 0."""
    if n < 4:
        raise InvalidArgument(f"circle rule needs at least 4 nodes, got {n}")
    theta = 2 * np.pi * np.arange(n) / n
    nodes = np.column_stack([np.cos(theta), np.sin(theta)])
    weights = np.full(n, 2 * np.pi / n)
    return QuadratureRule(nodes, weights, n, (n,))


def sphere_grid(n_theta):
    """Gauss-Legendre colatitudes and uniform longitudes for a product rule.

    Returns ``(theta, phi, w_theta)`` with ``2*n_theta`` longitudes; the
    colatitude weights integrate in ``cos(theta)`` so that
    ``sum_ij w_theta[i] * (2 pi / n_phi) f(theta_i, phi_j)`` approximates the
    surface integral.
    """
    x, w = np.polynomial.legendre.leggauss(n_theta)
    # north pole first
    x, w = x[::-1], w[::-1]
    n_phi = 2 * n_theta
    phi = 2 * np.pi * np.arange(n_phi) / n_phi
    return np.arccos(x), phi, w


def spherical_to_cartesian(theta, phi):
    st = np.sin(theta)
    return np.stack([st * np.cos(phi), st * np.sin(phi), np.cos(theta) * np.ones_like(phi)], axis=-1)


def sphere_rule(n_theta=128):
    """Gauss-Legendre (colatitude) x trapezoid (longitude) product rule."""
    if n_theta < 4:
        raise InvalidArgument(f"sphere rule needs at least 4 colatitudes, got {n_theta}")
    theta, phi, w = sphere_grid(n_theta)
    T, P = np.meshgrid(theta, phi, indexing="ij")
    nodes = spherical_to_cartesian(T, P).reshape(-1, 3)
    weights = (w[:, None] * np.full(phi.size, 2 * np.pi / phi.size)[None, :]).ravel()
    return QuadratureRule(nodes, weights, n_theta, (n_theta, phi.size))


def default_rule(dim, order=None):
    if dim == 2:
        return circle_rule(order or 512)
    if dim == 3:
        return sphere_rule(order or 128)
    raise InvalidArgument(f"only d = 2 and d = 3 are supported, got d = {dim}")


def sphere_measure(dim):
    return 2 * np.pi if dim == 2 else 4 * np.pi


def ball_volume(dim):
    return np.pi if dim == 2 else 4 * np.pi / 3


def tangent_frame(xi):
    """Orthonormal tangent vectors at unit vectors ``xi`` (N, 3).

    Uses the colatitude/longitude frame (e_theta, e_phi), switching to a
    frame built from the x-axis near the poles where e_phi is undefined.
    """
    xi = np.atleast_2d(xi)
    ref = np.zeros_like(xi)
    near_pole = np.abs(xi[:, 2]) > 0.9
    ref[~near_pole, 2] = 1.0
    ref[near_pole, 0] = 1.0
    e2 = np.cross(ref, xi)
    e2 /= np.linalg.norm(e2, axis=1, keepdims=True)
    e1 = np.cross(e2, xi)
    return e1, e2
