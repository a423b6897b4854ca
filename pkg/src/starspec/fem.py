"""Laplace eigenvalues of planar starlike domains by quadratic finite elements.

The mesh is built once on the unit disk in polar-graph form (rings of
nodes at radii i/nr, Delaunay triangulated) and pushed forward by
x = R(theta) y, so boundary nodes lie exactly on r = R(theta).  Elements are
isoparametric P2 triangles; midpoints of boundary edges are placed on the
true curve, so curved boundaries are resolved to the element order.
Polygon vertex directions are inserted into the boundary ring.

The generalized eigenproblem K u = lambda M u is solved by shift-invert
Lanczos.  Every solve is repeated on a mesh with half the ring count, and
the difference, divided by 3, is reported as the error estimate.  For P2
elements the true error ratio is close to 16 on smooth problems, so this is
deliberately conservative.
"""

from dataclasses import dataclass, field
import math

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import ArpackNoConvergence, eigsh
from scipy.spatial import Delaunay

from .ball import BoundaryCondition, parse_bc
from .errors import InvalidArgument, SolverFailure, Unsupported

DEFAULT_RESOLUTION = 2e4


@dataclass(frozen=True)
class DiscreteSpectrum:
    """First n eigenvalues with two-grid error estimates.

    ``errors`` are absolute; ``error_estimates`` are relative, measured
    against max(|value|, 1) so that the zero Neumann eigenvalue is handled.
    """

    boundary_condition: BoundaryCondition
    values: np.ndarray
    errors: np.ndarray
    error_estimates: np.ndarray
    resolution: dict = field(default_factory=dict)
    flagged: bool = False

    def __len__(self):
        return len(self.values)


def rings_for_resolution(resolution):
    """Ring count giving roughly ``resolution`` quadratic degrees of freedom."""
    # vertices ~ 3 nr^2, P2 dofs ~ 4x vertices
    return max(4, int(round(math.sqrt(float(resolution) / 12.0))))


def _reference_mesh(nr, boundary_angles=()):
    pts = [np.zeros((1, 2))]
    for i in range(1, nr + 1):
        n = 6 * i
        th = 2 * np.pi * np.arange(n) / n + (0.5 * np.pi / n if i % 2 else 0.0)
        if i == nr and len(boundary_angles):
            th = np.mod(th, 2 * np.pi)
            b = np.mod(np.asarray(boundary_angles, float), 2 * np.pi)
            gap = np.abs(np.angle(np.exp(1j * (th[:, None] - b[None, :]))))
            # drop ring nodes too close to an inserted vertex angle
            th = np.sort(np.r_[th[gap.min(1) > 0.35 * 2 * np.pi / n], b])
        s = i / nr
        pts.append(np.column_stack([s * np.cos(th), s * np.sin(th)]))
    P = np.vstack(pts)
    tri = Delaunay(P).simplices.copy()
    n_b = len(pts[-1])
    return P, tri, np.arange(len(P) - n_b, len(P))


def _triangle_rule(n=4):
    # collapsed tensor Gauss rule on the reference triangle
    x, w = np.polynomial.legendre.leggauss(n)
    x = 0.5 * (x + 1)
    w = 0.5 * w
    U, V = np.meshgrid(x, x, indexing="ij")
    W = np.outer(w, w)
    return np.column_stack([U.ravel(), (V * (1 - U)).ravel()]), (W * (1 - U)).ravel()


def _p2_basis(q):
    x, y = q[:, 0], q[:, 1]
    l0 = 1 - x - y
    N = np.stack([l0 * (2 * l0 - 1), x * (2 * x - 1), y * (2 * y - 1), 4 * l0 * x, 4 * x * y, 4 * y * l0], 1)
    dx = np.stack([-(4 * l0 - 1), 4 * x - 1, 0 * x, 4 * (l0 - x), 4 * y, -4 * y], 1)
    dy = np.stack([-(4 * l0 - 1), 0 * x, 4 * y - 1, -4 * x, 4 * x, 4 * (l0 - y)], 1)
    return N, np.stack([dx, dy], 2)


@dataclass
class Assembly:
    K: sparse.csr_matrix
    M: sparse.csr_matrix
    B: sparse.csr_matrix  # boundary mass, int_{boundary} u v dS
    boundary_dofs: np.ndarray
    nodes: np.ndarray
    elements: np.ndarray


def assemble(domain, nr):
    """Stiffness, mass and boundary-mass matrices on the mapped polar mesh."""
    if domain.dim != 2:
        raise Unsupported("the finite element solver is planar")
    nd = domain.nonsmooth_directions
    bang = np.arctan2(nd[:, 1], nd[:, 0]) if len(nd) else ()
    P, tri, bnd = _reference_mesh(nr, bang)
    th = np.arctan2(P[:, 1], P[:, 0])
    X = P * domain.radius_theta(th)[:, None]
    a = X[tri[:, 1]] - X[tri[:, 0]]
    b = X[tri[:, 2]] - X[tri[:, 0]]
    flip = a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0] < 0
    tri[flip] = tri[flip][:, [0, 2, 1]]

    ne = len(tri)
    edges = np.sort(np.vstack([tri[:, [0, 1]], tri[:, [1, 2]], tri[:, [2, 0]]]), axis=1)
    uniq, inv = np.unique(edges, axis=0, return_inverse=True)
    inv = inv.ravel()
    bedge = np.bincount(inv, minlength=len(uniq)) == 1
    mids = 0.5 * (X[uniq[:, 0]] + X[uniq[:, 1]])
    t0 = np.arctan2(X[uniq[bedge, 0], 1], X[uniq[bedge, 0], 0])
    t1 = np.arctan2(X[uniq[bedge, 1], 1], X[uniq[bedge, 1], 0])
    tm = t0 + 0.5 * np.angle(np.exp(1j * (t1 - t0)))
    mids[bedge] = np.column_stack([np.cos(tm), np.sin(tm)]) * domain.radius_theta(tm)[:, None]
    nodes = np.vstack([X, mids])
    el = np.column_stack([tri, inv.reshape(3, ne).T + len(X)])

    q, w = _triangle_rule(4)
    N, dN = _p2_basis(q)
    XE = nodes[el]
    J = np.einsum("eka,qkb->eqab", XE, dN)
    det = J[..., 0, 0] * J[..., 1, 1] - J[..., 0, 1] * J[..., 1, 0]
    if not np.all(det > 0):
        raise SolverFailure(f"mesh has inverted elements (min det {det.min():.3g})")
    Jinv = np.stack([np.stack([J[..., 1, 1], -J[..., 0, 1]], -1),
                     np.stack([-J[..., 1, 0], J[..., 0, 0]], -1)], -2) / det[..., None, None]
    G = np.einsum("qkb,eqba->eqka", dN, Jinv)
    wd = w[None, :] * det
    Ke = np.einsum("eq,eqka,eqla->ekl", wd, G, G)
    Me = np.einsum("eq,qk,ql->ekl", wd, N, N)
    rows = np.repeat(el, 6, axis=1).ravel()
    cols = np.tile(el, (1, 6)).ravel()
    n = len(nodes)
    K = sparse.csr_matrix((Ke.ravel(), (rows, cols)), shape=(n, n))
    M = sparse.csr_matrix((Me.ravel(), (rows, cols)), shape=(n, n))
    K = 0.5 * (K + K.T)
    M = 0.5 * (M + M.T)

    # boundary mass on curved quadratic edges
    be = np.column_stack([uniq[bedge, 0], len(X) + np.nonzero(bedge)[0], uniq[bedge, 1]])
    s, sw = np.polynomial.legendre.leggauss(5)
    s = 0.5 * (s + 1)
    sw = 0.5 * sw
    L = np.stack([(1 - s) * (1 - 2 * s), 4 * s * (1 - s), s * (2 * s - 1)], 1)
    dL = np.stack([4 * s - 3, 4 - 8 * s, 4 * s - 1], 1)
    tang = np.einsum("eka,qk->eqa", nodes[be], dL)
    jac = np.linalg.norm(tang, axis=-1) * sw[None, :]
    Be = np.einsum("eq,qk,ql->ekl", jac, L, L)
    rb = np.repeat(be, 3, axis=1).ravel()
    cb = np.tile(be, (1, 3)).ravel()
    Bm = sparse.csr_matrix((Be.ravel(), (rb, cb)), shape=(n, n))
    bdofs = np.unique(np.r_[bnd, len(X) + np.nonzero(bedge)[0]])
    return Assembly(K, M, Bm, bdofs, nodes, el)


def _solve(asm, bc, n):
    kind = bc.effective
    K, M = asm.K, asm.M
    if kind == "dirichlet":
        free = np.setdiff1d(np.arange(K.shape[0]), asm.boundary_dofs)
        K = K[free][:, free]
        M = M[free][:, free]
    elif bc.kind == "robin" and bc.sigma != 0:
        # sigma = 0 stays on the Neumann path and is rescaled by hbar^2 below
        K = bc.hbar**2 * K + bc.sigma * asm.B
    if n >= K.shape[0] - 1:
        raise InvalidArgument(f"requested {n} eigenvalues from a system of size {K.shape[0]}")
    try:
        # fixed start vector: ARPACK otherwise draws a random one
        v0 = np.random.default_rng(12345).standard_normal(K.shape[0])
        vals = eigsh(K.tocsc(), k=n, M=M.tocsc(), sigma=-1.0, which="LM", v0=v0,
                     return_eigenvectors=False)
    except ArpackNoConvergence as exc:
        raise SolverFailure(f"eigen-iteration did not converge ({len(exc.eigenvalues)} of {n} values)") from exc
    vals = np.sort(np.real(vals))
    if bc.kind == "robin" and bc.sigma == 0:
        vals = bc.hbar**2 * vals
    return vals, K.shape[0]


def laplace_eigs_2d(domain, bc="dirichlet", n=10, resolution=DEFAULT_RESOLUTION, hbar=1.0, sigma=0.0,
                    tol=None, two_grid=True):
    """First ``n`` eigenvalues of a planar starlike domain.

    Parameters
    ----------
    bc : str or BoundaryCondition
        'dirichlet', 'neumann' or 'robin' (with ``hbar`` and ``sigma``).
    resolution : float
        Target number of quadratic degrees of freedom of the fine mesh.
    tol : float, optional
        Relative error estimate above which the result is flagged.
    """
    bc = parse_bc(bc, hbar, sigma)
    if domain.dim != 2:
        raise Unsupported("eigenvalue verification is planar")
    if n < 1 or n > 40 or int(n) != n:
        raise InvalidArgument(f"n must be an integer in [1, 40], got {n}")
    nr = rings_for_resolution(resolution)
    fine, dofs = _solve(assemble(domain, nr), bc, n)
    info = {"rings": nr, "dofs": dofs}
    if two_grid:
        coarse, cdofs = _solve(assemble(domain, max(nr // 2, 3)), bc, n)
        err = np.abs(fine - coarse) / 3.0
        info.update(coarse_rings=max(nr // 2, 3), coarse_dofs=cdofs)
    else:
        err = np.zeros(n)
    err = np.maximum(err, 1e-12 * np.maximum(np.abs(fine), 1.0))
    rel = err / np.maximum(np.abs(fine), 1.0)
    flagged = bool(tol is not None and np.any(rel > tol))
    return DiscreteSpectrum(bc, fine, err, rel, info, flagged)
