import numpy as np
import pytest
from scipy import stats

from starspec import quadrature as quad
from starspec.domain import EllipsoidDomain, random_fourier, real_sph_harm
from starspec.errors import InvalidArgument, StatisticalFailure
from starspec.homeo import CircleMap, LinearMap
from starspec.montecarlo import (haar_orthogonal_sample, mc_conjugation_average, mc_q23_check, orbital_average,
                                 orbital_spatial_check, q23_constant)


@pytest.mark.parametrize("dim", [2, 3])
def test_haar_samples_are_orthogonal(dim):
    U = haar_orthogonal_sample(dim, 500, 0)
    assert np.allclose(np.einsum("nji,njk->nik", U, U), np.eye(dim), atol=1e-13)
    assert haar_orthogonal_sample(dim, rng=1).shape == (dim, dim)


def test_haar_first_column_is_uniform():
    U = haar_orthogonal_sample(3, 20000, 3)
    z = U[:, 2, 0]  # uniform on [-1, 1] for the uniform measure on S^2
    assert stats.kstest(z, "uniform", args=(-1, 2)).pvalue > 1e-3
    U2 = haar_orthogonal_sample(2, 20000, 4)
    ang = np.arctan2(U2[:, 1, 0], U2[:, 0, 0])
    assert stats.kstest(ang, "uniform", args=(-np.pi, 2 * np.pi)).pvalue > 1e-3


def test_haar_moments_and_determinant():
    U = haar_orthogonal_sample(3, 40000, 5)
    assert np.max(np.abs(np.mean(U**2, axis=0) - 1 / 3)) < 0.01
    assert np.max(np.abs(np.mean(U, axis=0))) < 0.02
    frac = np.mean(np.linalg.det(U) > 0)
    assert abs(frac - 0.5) < 0.02


def test_haar_is_left_invariant():
    # U and V U have the same law: compare a statistic by KS
    V = haar_orthogonal_sample(3, rng=6)
    a = haar_orthogonal_sample(3, 20000, 7)
    b = V @ haar_orthogonal_sample(3, 20000, 8)
    assert stats.ks_2samp(a[:, 0, 1], b[:, 0, 1]).pvalue > 1e-3


def test_haar_seeded_and_batched():
    a = haar_orthogonal_sample(3, 100, 11)
    b = haar_orthogonal_sample(3, 100, 11)
    assert np.array_equal(a, b)
    with pytest.raises(InvalidArgument):
        haar_orthogonal_sample(4, 3)


def test_conjugation_average_raw_estimator():
    # plain estimator without any variance reduction
    U = haar_orthogonal_sample(3, 100000, 2024)
    M = np.diag([1.0, 2.0, 3.0])
    est = np.einsum("nji,jk,nkl->il", U, M, U) / len(U)
    assert np.max(np.abs(est - 2 * np.eye(3))) < 0.02


def test_conjugation_average_library():
    est = mc_conjugation_average(np.diag([1.0, 2.0, 3.0]), 100000, 2024)
    assert np.max(np.abs(est - 2 * np.eye(3))) < 0.02
    assert np.array_equal(mc_conjugation_average(np.eye(3), 1000, 0), np.eye(3))
    est2 = mc_conjugation_average(np.diag([1.0, 5.0]), 20000, 1)
    assert np.max(np.abs(est2 - 3 * np.eye(2))) < 0.1


def test_conjugation_average_rejects_bad_input():
    with pytest.raises(InvalidArgument):
        mc_conjugation_average(np.array([[1.0, 2.0], [0.0, 1.0]]))
    with pytest.raises(InvalidArgument):
        mc_conjugation_average(np.eye(2), 0)


def test_q23_identity_map():
    h = LinearMap.identity(3)
    out = mc_q23_check(h, lambda xi: np.ones(len(xi)), samples=20000, rng=0)
    # DH is the tangent projection: c = 1 and the matrix estimate is exact
    assert out["c"] == pytest.approx(1.0, abs=1e-13)
    assert out["deviation"] < 1e-12
    # the vector identity is only statistical
    assert 0 < out["vector_deviation"] < 5 * 1.5 / np.sqrt(20000)


def test_radial_field_vanishes_pointwise():
    h = CircleMap(EllipsoidDomain([3.0, 1.0]))
    out = mc_q23_check(h, lambda xi: np.ones(len(xi)), samples=2000, rng=0, F=lambda xi: xi)
    assert out["vector_deviation"] < 1e-14


def test_q23_ellipse_circle_map():
    e = EllipsoidDomain([3.0, 1.0])
    h = CircleMap(e)
    w = lambda xi: 1.0 / h.jacobian(xi)
    out = mc_q23_check(h, w, samples=100000, rng=7)
    # with f = 1/Jac the constant is avg |DH|^2 = avg Jac^2 = G1 of the ellipse
    assert out["c"] == pytest.approx(5 / 3, rel=1e-10)
    assert out["deviation"] < 0.03
    assert out["vector_deviation"] < 0.03


def test_q23_constant_by_direct_quadrature():
    d = random_fourier(np.random.default_rng(3))
    h = CircleMap(d)
    r = quad.circle_rule(4096)
    ref = r.average(h.jacobian(r.nodes) ** 3)
    assert q23_constant(h, lambda xi: np.ones(len(xi))) == pytest.approx(ref, rel=1e-10)


def test_q23_tolerance_raises():
    h = CircleMap(EllipsoidDomain([3.0, 1.0]))
    with pytest.raises(StatisticalFailure):
        mc_q23_check(h, lambda xi: np.ones(len(xi)), samples=10, rng=0, tol=1e-9)


@pytest.mark.parametrize("l,m", [(1, 0), (2, 1), (3, -2)])
def test_orbital_matches_spatial_for_harmonics(l, m):
    f = lambda x: real_sph_harm(l, m, x) + 0.5
    N = 50000
    orb, spa, bound = orbital_spatial_check(f, [0.3, -0.2, 0.9], 3, N, rng=l * 10 + m)
    assert spa == pytest.approx(0.5, abs=1e-12)
    assert abs(orb - spa) <= bound


def test_orbital_average_planar():
    f = lambda x: x[:, 0] ** 2
    assert orbital_average(f, [1.0, 0.0], 2, 40000, 1) == pytest.approx(0.5, abs=5 / np.sqrt(40000))


def test_seeded_reproducibility():
    a = mc_conjugation_average(np.diag([1.0, 2.0, 3.0]), 30000, 42)
    b = mc_conjugation_average(np.diag([1.0, 2.0, 3.0]), 30000, 42)
    assert np.array_equal(a, b)


def _raw_trace_error(N, seed):
    U = haar_orthogonal_sample(3, N, seed)
    est = np.einsum("nji,jk,nkl->il", U, np.diag([1.0, 2.0, 3.0]), U) / N
    return np.max(np.abs(est - 2 * np.eye(3)))


def test_monte_carlo_rate():
    # quadrupling N should roughly halve the error; require <= 0.7 on 10-run averages
    e1 = np.mean([_raw_trace_error(2000, s) for s in range(10)])
    e4 = np.mean([_raw_trace_error(8000, 100 + s) for s in range(10)])
    assert e4 <= 0.7 * e1
    h = CircleMap(EllipsoidDomain([3.0, 1.0]))
    w = lambda xi: 1.0 / h.jacobian(xi)
    q1 = np.mean([mc_q23_check(h, w, samples=2000, rng=s)["deviation"] for s in range(10)])
    q4 = np.mean([mc_q23_check(h, w, samples=8000, rng=100 + s)["deviation"] for s in range(10)])
    assert q4 <= 0.7 * q1
