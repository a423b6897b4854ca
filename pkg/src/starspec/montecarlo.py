"""Monte Carlo checks of averaging identities over the orthogonal group.

All routines take a ``numpy.random.Generator`` (or a seed) and draw samples
in fixed-size batches, so results depend only on the seed and the sample
count.
"""

import math

import numpy as np

from . import quadrature as quad
from .errors import InvalidArgument, StatisticalFailure

BATCH = 20000


def _rng(rng):
    return rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)


def haar_orthogonal_sample(dim, size=None, rng=None):
    """Haar-distributed orthogonal matrices.

    QR factorization of a Gaussian matrix, with the columns of Q multiplied
    by the signs of diag(R) so that the factorization is unique and the law
    is exactly invariant.

    Returns an array of shape (dim, dim) when ``size`` is None, otherwise
    (size, dim, dim).
    """
    if dim not in (2, 3):
        raise InvalidArgument(f"Haar sampling is provided for d = 2, 3, got {dim}")
    rng = _rng(rng)
    n = 1 if size is None else int(size)
    Z = rng.standard_normal((n, dim, dim))
    Q, R = np.linalg.qr(Z)
    s = np.sign(np.diagonal(R, axis1=1, axis2=2))
    s[s == 0] = 1.0
    Q = Q * s[:, None, :]
    return Q[0] if size is None else Q


def _batches(samples):
    left = int(samples)
    while left > 0:
        b = min(BATCH, left)
        yield b
        left -= b


def _bound(samples, scale):
    return 5.0 / math.sqrt(samples) * scale


def mc_conjugation_average(M, samples=100000, rng=None, check=True):
    """Monte Carlo estimate of the Haar average of U^{-1} M U.

    The scalar part (tr M / d) Id is conjugation invariant and is added
    exactly; only the traceless part is sampled.  Raises StatisticalFailure
    when the largest entry deviates from (tr M / d) Id by more than
    5 ||M||_2 / sqrt(samples).
    """
    M = np.asarray(M, float)
    d = M.shape[0]
    if M.shape != (d, d) or not np.allclose(M, M.T, atol=1e-12 * max(1.0, np.abs(M).max())):
        raise InvalidArgument("M must be a symmetric square matrix")
    if samples < 1:
        raise InvalidArgument("samples must be positive")
    rng = _rng(rng)
    target = np.trace(M) / d * np.eye(d)
    M0 = M - target
    acc = np.zeros((d, d))
    for b in _batches(samples):
        U = haar_orthogonal_sample(d, b, rng)
        acc += np.einsum("nji,jk,nkl->il", U, M0, U)
    est = target + acc / samples
    dev = float(np.max(np.abs(est - target)))
    if check and dev > _bound(samples, np.linalg.norm(M, 2)):
        raise StatisticalFailure(f"conjugation average deviates by {dev:.3g}; rerun with more samples or a new seed")
    return est


def _default_field(xi):
    return np.roll(xi, 1, axis=1) + 0.5


def q23_constant(h, f, rule=None):
    """c = avg_S f(xi) ||DH(xi)||_HS^2 / (d - 1) Jac_H(xi), by quadrature."""
    d = h.dim
    rule = rule or quad.default_rule(d, 512 if d == 2 else 96)
    xi = rule.nodes
    return float(rule.average(np.asarray(f(xi), float) * h.hs2(xi) / (d - 1) * h.jacobian(xi)))


def mc_q23_check(h, f, zeta=None, samples=100000, rng=None, F=None, tol=None, rule=None):
    """Monte Carlo check of the two averaging identities for a sphere map.

    Estimates the Haar averages of

        f(H^{-1}(U zeta)) U^{-1} DH (DH)^T U    (expected c (Id - zeta zeta^T))
        F(H^{-1}(U zeta)) (DH)^T U              (expected 0)

    with DH evaluated at H^{-1}(U zeta).  ``F`` returns row vectors; the
    default is a fixed non-radial field (a radial F gives zero pointwise,
    since DH annihilates xi).  Returns a dict with both estimates,
    the quadrature constant c and the max-entry deviations.  When ``tol`` is
    given a larger deviation raises StatisticalFailure.
    """
    d = h.dim
    zeta = np.eye(d)[-1] if zeta is None else np.asarray(zeta, float)
    zeta = zeta / np.linalg.norm(zeta)
    F = F or _default_field
    rng = _rng(rng)
    c = q23_constant(h, f, rule)
    acc = np.zeros((d, d))
    vacc = np.zeros(d)
    for b in _batches(samples):
        U = haar_orthogonal_sample(d, b, rng)
        z = U @ zeta
        xi = h.invert(z)
        D = h.derivative(xi)
        fv = np.asarray(f(xi), float)
        DDt = D @ np.swapaxes(D, 1, 2)
        acc += np.einsum("n,nji,njk,nkl->il", fv, U, DDt, U)
        Fv = np.asarray(F(xi), float)
        vacc += np.einsum("ni,nji,njk->k", Fv, D, U)
    est = acc / samples
    vec = vacc / samples
    expected = c * (np.eye(d) - np.outer(zeta, zeta))
    dev = float(np.max(np.abs(est - expected)))
    vdev = float(np.max(np.abs(vec)))
    if tol is not None and (dev > tol or vdev > tol):
        raise StatisticalFailure(f"averaging identity deviates by {max(dev, vdev):.3g} (tolerance {tol:g})")
    return {"estimate": est, "expected": expected, "c": c, "deviation": dev,
            "vector_estimate": vec, "vector_deviation": vdev, "samples": int(samples)}


def orbital_average(f, zeta, dim, samples=100000, rng=None):
    """Monte Carlo average of f(U zeta) over Haar-distributed U."""
    rng = _rng(rng)
    zeta = np.asarray(zeta, float)
    zeta = zeta / np.linalg.norm(zeta)
    tot = 0.0
    for b in _batches(samples):
        U = haar_orthogonal_sample(dim, b, rng)
        tot += float(np.sum(f(U @ zeta)))
    return tot / samples


def orbital_spatial_check(f, zeta, dim, samples=100000, rng=None, rule=None):
    """Compare the orbital average of f with its sphere average.

    Returns (orbital, spatial, bound) with bound = 5 sup|f| / sqrt(samples),
    and raises StatisticalFailure when the gap exceeds the bound.
    """
    rule = rule or quad.default_rule(dim, 256 if dim == 2 else 64)
    spatial = float(rule.average(f(rule.nodes)))
    orbital = orbital_average(f, zeta, dim, samples, rng)
    bound = _bound(samples, float(np.max(np.abs(f(rule.nodes)))))
    if abs(orbital - spatial) > bound:
        raise StatisticalFailure(f"orbital average {orbital:.6g} differs from spatial {spatial:.6g}")
    return orbital, spatial, bound
