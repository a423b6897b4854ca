import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from starspec import quadrature as quad
from starspec.domain import (EllipsoidDomain, FourierDomain, HarmonicDomain, PolygonDomain, SampledDomain,
                             angles_to_directions, ball, describe_about, disk, fd_tangential_gradient, load_domain,
                             make_domain, random_fourier, random_harmonic, real_sph_harm, regular_polygon, square,
                             translate_origin)
from starspec.errors import InvalidDomain, NotStarlike, Unsupported


def test_quadrature_weights_sum_to_sphere_measure():
    assert quad.circle_rule(512).weights.sum() == pytest.approx(2 * math.pi, rel=1e-12)
    assert quad.sphere_rule(128).weights.sum() == pytest.approx(4 * math.pi, rel=1e-12)
    assert np.all(quad.sphere_rule(16).weights > 0)


def test_sphere_rule_integrates_polynomials():
    r = quad.sphere_rule(32)
    x, y, z = r.nodes.T
    # averages of x^2 and x^2 y^2 z^2 over the sphere: 1/3 and 1/105
    assert r.average(x * x) == pytest.approx(1 / 3, abs=1e-14)
    assert r.average(x**2 * y**2 * z**2) == pytest.approx(1 / 105, abs=1e-14)


def test_constant_fourier_is_unit_disk():
    d = make_domain({"dim": 2, "type": "fourier", "cos": [1.0], "sin": []})
    xi = angles_to_directions(np.linspace(0, 6, 13))
    assert np.allclose(d.radius(xi), 1.0)
    assert np.allclose(d.gradient_radius(xi), 0.0)


def test_ellipse_radius_function():
    e = EllipsoidDomain([3.0, 1.0])
    t = np.linspace(0, 2 * np.pi, 17)
    assert np.allclose(e.radius_theta(t), 3 / np.sqrt(9 * np.sin(t) ** 2 + np.cos(t) ** 2))
    assert e.radius_theta([0.0])[0] == pytest.approx(3.0)
    assert e.radius_theta([np.pi / 2])[0] == pytest.approx(1.0)
    assert e.dradius_theta([0.0])[0] == pytest.approx(0.0, abs=1e-14)


def test_square_radius():
    s = square()
    assert s.radius_theta([0.0])[0] == pytest.approx(1.0)
    assert s.radius_theta([np.pi / 4])[0] == pytest.approx(math.sqrt(2))


def test_fourier_derivative():
    d = FourierDomain([1.0, 0, 0, 0.1])
    assert d.dradius_theta([np.pi / 6])[0] == pytest.approx(-0.3)


def test_gradient_matches_finite_differences():
    rng = np.random.default_rng(3)
    xi = rng.standard_normal((50, 3))
    xi /= np.linalg.norm(xi, axis=1)[:, None]
    h = random_harmonic(rng)
    fd = fd_tangential_gradient(h.radius, xi)
    assert np.max(np.abs(h.gradient_radius(xi) - fd)) < 1e-9
    e = EllipsoidDomain([1.0, 2.0, 3.0])
    assert np.max(np.abs(e.gradient_radius(xi) - fd_tangential_gradient(e.radius, xi))) < 1e-9


@pytest.mark.parametrize("dom", [random_fourier(np.random.default_rng(1)), EllipsoidDomain([1, 2, 3]),
                                 random_harmonic(np.random.default_rng(2))])
def test_gradient_is_tangential(dom):
    xi, _, g = dom.node_values()
    assert np.max(np.abs(np.sum(xi * g, axis=1))) < 1e-9


def test_volumes():
    assert disk().volume() == pytest.approx(math.pi, rel=1e-14)
    assert EllipsoidDomain([1, 1, 2]).volume() == pytest.approx(4 * math.pi / 3 * 2, rel=1e-14)
    assert square().volume() == pytest.approx(4.0)
    # closed form against quadrature of (1/d) int R^d
    e = EllipsoidDomain([1, 2, 3])
    assert e.sphere_integral(lambda xi, R, g: R**3) / 3 == pytest.approx(8 * math.pi, rel=1e-10)


def test_volume_converges_with_quadrature_order():
    rng = np.random.default_rng(8)
    c = random_fourier(rng)
    f1 = FourierDomain(c.cos, c.sin, 256).volume()
    f2 = FourierDomain(c.cos, c.sin, 512).volume()
    assert abs(f1 - f2) < 1e-10 * f2
    h = random_harmonic(rng)
    v1 = HarmonicDomain(h.coeffs, 1.0, 64).volume()
    v2 = HarmonicDomain(h.coeffs, 1.0, 128).volume()
    assert abs(v1 - v2) < 1e-10 * v2


def test_support_integral():
    assert disk().support_integral() == pytest.approx(2 * math.pi)
    assert square().support_integral() == pytest.approx(8.0)
    # ellipse: direct quadrature of 1/(x.N) ds over the parametrized boundary
    a, b = 3.0, 1.0

    def integrand(t):
        x = np.array([a * np.cos(t), b * np.sin(t)])
        tang = np.array([-a * np.sin(t), b * np.cos(t)])
        n = np.array([tang[1], -tang[0]]) / np.linalg.norm(tang)
        return np.linalg.norm(tang) / x.dot(n)

    ref, _ = integrate.quad(integrand, 0, 2 * np.pi, epsabs=1e-13, epsrel=1e-13, limit=200)
    assert EllipsoidDomain([a, b]).support_integral() == pytest.approx(ref, rel=1e-10)
    assert ref == pytest.approx(2 * math.pi * 5 / 3, rel=1e-10)


def test_support_integral_disk_scale_independent_in_plane():
    assert disk(3.7).support_integral() == pytest.approx(2 * math.pi)
    # in 3D the boundary integral of 1/(x.N) scales like r
    assert ball(2.0).support_integral() == pytest.approx(2 * 4 * math.pi, rel=1e-12)


def test_moment_of_inertia():
    assert disk().moment_of_inertia() == pytest.approx(math.pi / 2)
    assert square().moment_of_inertia() == pytest.approx(8 / 3)
    assert EllipsoidDomain([3, 1]).moment_of_inertia() == pytest.approx(7.5 * math.pi)
    with pytest.raises(Unsupported):
        ball().moment_of_inertia()


def test_polygon_closed_forms_match_quadrature():
    p = PolygonDomain([[2, 0], [0.5, 1.5], [-1, 0.7], [-0.8, -1], [1, -1.2]])
    xi, R, g = p.node_values()
    rule = p.rule
    assert rule.integrate(R**2) / 2 == pytest.approx(p.volume(), rel=1e-12)
    assert rule.integrate(1 + np.sum(g * g, -1) / R**2) == pytest.approx(p.support_integral(), rel=1e-10)
    assert rule.integrate(np.sqrt(R**2 + np.sum(g * g, -1))) == pytest.approx(p.surface_area(), rel=1e-10)
    assert rule.integrate(R**4) / 4 == pytest.approx(p.moment_of_inertia(), rel=1e-10)


def test_invalid_domains():
    with pytest.raises(InvalidDomain):
        make_domain({"dim": 2, "type": "fourier", "cos": [0.1, 1.0]})
    with pytest.raises(NotStarlike):
        PolygonDomain([[1, 1], [2, 1], [2, 2], [1, 2]])
    with pytest.raises(NotStarlike):
        PolygonDomain([[1, 0], [0, -1], [-1, 0], [0, 1]])  # clockwise
    with pytest.raises(InvalidDomain):
        make_domain({"type": "blob"})


def test_translate_disk():
    d = translate_origin(disk(), [0.5, 0.0])
    t = np.linspace(0, 2 * np.pi, 31)
    assert np.allclose(d.radius_theta(t), 0.5 * np.cos(t) + np.sqrt(1 - 0.25 * np.sin(t) ** 2), atol=1e-12)
    g_ref = -0.5 * np.sin(t) - 0.25 * np.sin(t) * np.cos(t) / np.sqrt(1 - 0.25 * np.sin(t) ** 2)
    assert np.allclose(d.dradius_theta(t), g_ref, atol=1e-9)


def test_translate_identity_and_square_cases():
    e = EllipsoidDomain([3, 1])
    assert translate_origin(e, [0.0, 0.0]) is e
    s = translate_origin(square(), [0.99, 0.99])
    assert s.volume() == pytest.approx(4.0)
    with pytest.raises(NotStarlike):
        translate_origin(square(), [1.5, 0.0])
    with pytest.raises(NotStarlike):
        describe_about(EllipsoidDomain([3, 1]), [3.1, 0.0])


def test_translate_round_trip():
    rng = np.random.default_rng(5)
    base = random_fourier(rng)
    there = translate_origin(base, [0.1, -0.15])
    back = translate_origin(there, [-0.1, 0.15])
    t = rng.uniform(0, 2 * np.pi, 200)
    assert np.max(np.abs(back.radius_theta(t) - base.radius_theta(t))) < 1e-10
    e = EllipsoidDomain([1, 2, 3])
    there = translate_origin(e, [0.2, 0.1, -0.3])
    xi = quad.sphere_rule(8).nodes
    assert np.max(np.abs(translate_origin(there, [-0.2, -0.1, 0.3]).radius(xi) - e.radius(xi))) < 1e-10


def test_translated_volume_is_preserved():
    e = EllipsoidDomain([3, 1])
    assert translate_origin(e, [1.0, 0.3]).volume() == pytest.approx(3 * math.pi, rel=1e-10)


def test_domain_json_round_trip(tmp_path):
    spec = {"dim": 2, "type": "fourier", "cos": [1.0, 0, 0, 0.1], "sin": [], "origin_offset": [0.05, 0.0]}
    p = tmp_path / "d.json"
    p.write_text(json.dumps(spec))
    d = load_domain(str(p))
    again = make_domain(d.to_json())
    t = np.linspace(0, 6, 20)
    assert np.allclose(d.radius_theta(t), again.radius_theta(t), atol=1e-12)


def test_sampled_domain_matches_analytic():
    e = EllipsoidDomain([1, 2, 3], 48)
    s = SampledDomain(e.radius, 3, 48)
    assert s.volume() == pytest.approx(e.volume(), rel=1e-10)
    assert s.support_integral() == pytest.approx(e.support_integral(), rel=1e-7)


def test_real_harmonics_orthonormal():
    r = quad.sphere_rule(24)
    ys = [real_sph_harm(l, m, r.nodes) for l in range(3) for m in range(-l, l + 1)]
    G = np.array([[r.integrate(a * b) for b in ys] for a in ys])
    assert np.allclose(G, np.eye(len(ys)), atol=1e-12)


@settings(max_examples=25, deadline=None)
@given(st.floats(0.2, 5.0))
def test_regular_polygon_scaling(a):
    p = regular_polygon(6, 1.0)
    q = p.scaled(a)
    assert q.volume() == pytest.approx(a * a * p.volume(), rel=1e-12)
    assert q.support_integral() == pytest.approx(p.support_integral(), rel=1e-12)
