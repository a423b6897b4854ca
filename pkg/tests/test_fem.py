import math

import numpy as np
import pytest
from scipy import special

from starspec.ball import ball_values
from starspec.domain import EllipsoidDomain, describe_about, disk, square
from starspec.errors import InvalidArgument, Unsupported
from starspec.fem import assemble, laplace_eigs_2d, rings_for_resolution

from conftest import spectrum


def square_values(n, neumann=False):
    # [-1, 1]^2: (pi/2)^2 (m^2 + k^2)
    lo = 0 if neumann else 1
    v = sorted((math.pi / 2) ** 2 * (m * m + k * k) for m in range(lo, 12) for k in range(lo, 12))
    return np.array(v[:n])


def test_disk_dirichlet_against_bessel_zeros():
    s = spectrum("disk", "dirichlet")
    ref = ball_values("dirichlet", 2, 20)
    assert np.allclose(s.values, ref, rtol=1e-5)
    assert np.all(np.abs(s.values - ref) <= 3 * s.errors + 1e-9 * ref)
    assert s.values[0] == pytest.approx(special.jn_zeros(0, 1)[0] ** 2, rel=1e-6)


def test_square_dirichlet_and_neumann():
    d = spectrum("square", "dirichlet")
    n = spectrum("square", "neumann")
    # corners cap the accuracy; the two-grid estimate must still bound the error
    ref = square_values(20)
    assert np.allclose(d.values, ref, rtol=2e-5)
    assert np.all(np.abs(d.values - ref) <= d.errors)
    assert abs(n.values[0]) < 1e-9
    assert np.allclose(n.values[1:], square_values(20, True)[1:], rtol=2e-5)


def test_disk_robin_against_ball():
    s = laplace_eigs_2d(disk(), "robin", 8, hbar=1.0, sigma=1.0)
    assert np.allclose(s.values, ball_values("robin", 2, 8, sigma=1.0), rtol=1e-6)


def test_robin_sigma_zero_is_neumann_bit_for_bit():
    r = laplace_eigs_2d(square(), "robin", 6, resolution=4000, sigma=0.0)
    n = laplace_eigs_2d(square(), "neumann", 6, resolution=4000)
    assert np.array_equal(r.values, n.values)


def test_robin_monotone_in_sigma():
    vals = [laplace_eigs_2d(square(), "robin", 4, resolution=4000, sigma=s).values for s in (0.5, 1.0, 2.0)]
    assert np.all(np.diff(np.array(vals), axis=0) > 0)
    dirichlet = laplace_eigs_2d(square(), "dirichlet", 4, resolution=4000).values
    assert np.all(vals[-1] < dirichlet)


def test_error_estimates_small_at_default_resolution():
    for name in ("disk", "ellipse", "square", "fourier0"):
        s = spectrum(name, "dirichlet")
        assert s.error_estimates.max() <= 2e-3
        assert not s.flagged


def test_refinement_reduces_error():
    ref = ball_values("dirichlet", 2, 6)
    e1 = np.abs(laplace_eigs_2d(disk(), "dirichlet", 6, resolution=2000, two_grid=False).values - ref).max()
    e2 = np.abs(laplace_eigs_2d(disk(), "dirichlet", 6, resolution=8000, two_grid=False).values - ref).max()
    assert e2 < e1 / 4


def test_scaling_law():
    e = EllipsoidDomain([3.0, 1.0])
    a = laplace_eigs_2d(e, "dirichlet", 5, resolution=6000).values
    b = laplace_eigs_2d(e.scaled(2.0), "dirichlet", 5, resolution=6000).values
    assert np.allclose(b, a / 4, rtol=1e-10)


def test_translation_invariance():
    d = describe_about(disk(), [0.3, -0.2])
    v = laplace_eigs_2d(d, "dirichlet", 6).values
    assert np.allclose(v, ball_values("dirichlet", 2, 6), rtol=1e-5)


def test_mesh_area_matches_domain():
    e = EllipsoidDomain([3.0, 1.0])
    err = [abs(assemble(e, nr).M.sum() - e.volume()) for nr in (10, 20, 40)]
    assert err[2] < 1e-6 * e.volume()
    assert err[1] / err[2] > 8 and err[0] / err[1] > 8


def test_resolution_and_flag():
    assert rings_for_resolution(2e4) == 41
    s = laplace_eigs_2d(disk(), "dirichlet", 5, resolution=500, tol=1e-9)
    assert s.flagged
    with pytest.raises(InvalidArgument):
        laplace_eigs_2d(disk(), "dirichlet", 41)
    with pytest.raises(Unsupported):
        laplace_eigs_2d(EllipsoidDomain([1, 1, 1]), "dirichlet", 3)


def test_deterministic():
    a = laplace_eigs_2d(square(), "dirichlet", 5, resolution=3000).values
    b = laplace_eigs_2d(square(), "dirichlet", 5, resolution=3000).values
    assert np.array_equal(a, b)
