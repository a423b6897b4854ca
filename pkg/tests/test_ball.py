import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate, optimize, special

from starspec.ball import (BoundaryCondition, angular_fraction, ball_spectrum, ball_values, bessel_deriv_zero,
                           bessel_zero, parse_bc, robin_root)
from starspec.errors import InvalidArgument, Unsupported


@pytest.mark.parametrize("nu", [0, 1, 2, 5, 10])
@pytest.mark.parametrize("k", [1, 2, 4])
def test_bessel_zeros_against_mpmath(nu, k):
    assert bessel_zero(nu, k) == pytest.approx(float(mpmath.besseljzero(nu, k)), rel=1e-13)


@pytest.mark.parametrize("nu", [1, 2, 3, 7])
@pytest.mark.parametrize("k", [1, 3])
def test_bessel_derivative_zeros_against_mpmath(nu, k):
    assert bessel_deriv_zero(nu, k) == pytest.approx(float(mpmath.besseljzero(nu, k, derivative=1)), rel=1e-13)


def test_bessel_derivative_zero_order_zero_skips_origin():
    # mpmath counts x = 0 as the first zero of J_0'
    assert bessel_deriv_zero(0, 1) == pytest.approx(float(mpmath.besseljzero(0, 2, derivative=1)), rel=1e-13)
    assert bessel_deriv_zero(0, 1) == pytest.approx(special.jn_zeros(1, 1)[0], rel=1e-13)


def test_spherical_zeros():
    for k in (1, 2, 3):
        assert bessel_zero(0, k, dim=3) == pytest.approx(k * math.pi, rel=1e-14)
        # j_l(x) = sqrt(pi / 2x) J_{l+1/2}(x)
        assert bessel_zero(2, k, dim=3) == pytest.approx(float(mpmath.besseljzero(2.5, k)), rel=1e-13)
    # j_1' = 0 solves tan x = 2x / (2 - x^2)
    x = optimize.brentq(lambda x: math.tan(x) - 2 * x / (2 - x * x), 2.0, 2.5, xtol=1e-15)
    assert bessel_deriv_zero(1, 1, dim=3) == pytest.approx(x, rel=1e-13)


def test_robin_root_against_brentq():
    nu, h, s = 2, 0.7, 1.5

    def F(x):
        return h * h * x * special.jvp(nu, x) + s * special.jv(nu, x)

    a = bessel_deriv_zero(nu, 1)
    b = bessel_zero(nu, 1)
    ref = optimize.brentq(F, a, b, xtol=1e-15)
    assert robin_root(nu, 1, h, s) == pytest.approx(ref, rel=1e-13)


def test_robin_interpolates_between_neumann_and_dirichlet():
    w = [robin_root(1, 1, 1.0, s) for s in (0.0, 0.1, 1.0, 10.0, 1e4)]
    assert w[0] == pytest.approx(bessel_deriv_zero(1, 1), rel=1e-13)
    assert all(np.diff(w) > 0)
    assert w[-1] < bessel_zero(1, 1)
    assert w[-1] == pytest.approx(bessel_zero(1, 1), rel=1e-3)


def test_disk_dirichlet_spectrum_and_multiplicity():
    s = ball_spectrum("dirichlet", 2, 10)
    v = s.values
    assert v[0] == pytest.approx(special.jn_zeros(0, 1)[0] ** 2, rel=1e-14)
    assert v[1] == v[2] == pytest.approx(special.jn_zeros(1, 1)[0] ** 2, rel=1e-14)
    assert [m.angular_index for m in s.modes[:6]] == [0, 1, 1, 2, 2, 0]
    assert len(s) == 10


def test_truncation_splits_a_multiplet():
    s = ball_spectrum("dirichlet", 2, 2)
    assert len(s) == 2 and s.modes[1].angular_index == 1


def test_disk_neumann_starts_at_zero():
    v = ball_values("neumann", 2, 4)
    assert v[0] == 0.0
    assert v[1] == v[2] == pytest.approx(special.jnp_zeros(1, 1)[0] ** 2, rel=1e-14)


def test_ball_dirichlet_multiplicities():
    s = ball_spectrum("dirichlet", 3, 10)
    assert s.values[0] == pytest.approx(math.pi**2, rel=1e-14)
    assert [m.angular_index for m in s.modes[1:4]] == [1, 1, 1]
    assert [m.angular_index for m in s.modes[4:9]] == [2] * 5


def test_sorted_against_brute_force_table():
    # all J_nu zeros with nu < 30, k < 10 from scipy, sorted with multiplicities
    vals = []
    for nu in range(30):
        for z in special.jn_zeros(nu, 10):
            vals.extend([z * z] * (1 if nu == 0 else 2))
    ref = np.sort(vals)[:40]
    assert np.allclose(ball_values("dirichlet", 2, 40), ref, rtol=1e-13)


def test_robin_sigma_zero_equals_scaled_neumann():
    r = ball_values("robin", 2, 12, hbar=0.6, sigma=0.0)
    n = ball_values("neumann", 2, 12)
    assert np.allclose(r, 0.6**2 * n, rtol=4e-16, atol=0)


def test_angular_fraction_against_direct_quadrature():
    s = ball_spectrum("dirichlet", 2, 6)
    m = s.modes[1]
    w, nu = m.wavenumber, m.angular_index
    ang, _ = integrate.quad(lambda r: nu * nu * special.jv(nu, w * r) ** 2 / r, 0, 1, epsabs=1e-14)
    rad, _ = integrate.quad(lambda r: (w * special.jvp(nu, w * r)) ** 2 * r, 0, 1, epsabs=1e-14)
    assert m.angular_fraction == pytest.approx(ang / (ang + rad), rel=1e-10)
    assert s.modes[0].angular_fraction == 0.0


def test_angular_fraction_dirichlet_identity():
    # for Dirichlet modes the total energy is omega^2 times the L2 mass
    s = ball_spectrum("dirichlet", 2, 8)
    for m in s.modes:
        if m.angular_index == 0:
            continue
        w, nu = m.wavenumber, m.angular_index
        mass, _ = integrate.quad(lambda r: special.jv(nu, w * r) ** 2 * r, 0, 1, epsabs=1e-15)
        ang, _ = integrate.quad(lambda r: nu * nu * special.jv(nu, w * r) ** 2 / r, 0, 1, epsabs=1e-15)
        assert m.angular_fraction == pytest.approx(ang / (w * w * mass), rel=1e-9)


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 40))
def test_fractions_in_unit_interval(n):
    a = ball_spectrum("neumann", 2, n).alphas
    assert np.all((a >= 0) & (a <= 1))


def test_neumann_angular_fraction_exceeds_dirichlet():
    d = ball_spectrum("dirichlet", 2, 3).modes[1]
    n = ball_spectrum("neumann", 2, 3).modes[1]
    assert angular_fraction(n) > angular_fraction(d)


def test_invalid_inputs():
    with pytest.raises(InvalidArgument):
        ball_spectrum("dirichlet", 2, 0)
    with pytest.raises(Unsupported):
        ball_spectrum("dirichlet", 4, 3)
    with pytest.raises(Unsupported):
        parse_bc("robin", 1.0, -1.0)
    with pytest.raises(InvalidArgument):
        BoundaryCondition("periodic")
    with pytest.raises(InvalidArgument):
        bessel_zero(1, 0)
