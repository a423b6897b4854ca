import numpy as np
import pytest

from starspec.domain import EllipsoidDomain, disk, square
from starspec.errors import InvalidArgument, Unsupported
from starspec.verify import DIRICHLET_FAMILY, NEUMANN_FAMILY, margins, summarize, verify_inequalities

from conftest import spectrum


def test_dirichlet_family_on_square():
    reps = verify_inequalities(square(), spectrum=spectrum("square", "dirichlet"))
    ok, bad = summarize(reps)
    assert ok, bad
    assert [r.functional for r in reps[: len(DIRICHLET_FAMILY)]] == list(DIRICHLET_FAMILY)
    lam1 = reps[0]
    assert lam1.normalized_lhs == pytest.approx(np.pi**3 / 2, rel=1e-5)
    assert reps[-1].functional == "improved_sum"


def test_neumann_family_with_sloshing():
    reps = verify_inequalities(EllipsoidDomain([3.0, 1.0]), bc="neumann", n=6,
                               spectrum=spectrum("ellipse", "neumann"), sloshing_depths=(0.5, 2.0))
    assert summarize(reps)[0]
    assert reps[0].functional == "mu2"
    assert sum(r.functional == "sloshing_sum" for r in reps) == 2
    assert len(reps) == len(NEUMANN_FAMILY) + 3


def test_disk_margins_are_within_error():
    reps = verify_inequalities(disk(), spectrum=spectrum("disk", "dirichlet"), improved=False)
    m = margins(reps)
    err = np.array([r.error_estimate for r in reps])
    assert np.all(np.abs(m) <= 3 * err + 1e-12)


def test_robin_reports():
    reps = verify_inequalities(square(), bc="robin", n=4, resolution=6000, sigma=1.0)
    assert [r.functional for r in reps] == ["robin_first", "robin_sum"]
    assert summarize(reps)[0]
    assert reps[0].extra["domain_sigma"] > 0


def test_verify_rejects_bad_input():
    with pytest.raises(Unsupported):
        verify_inequalities(EllipsoidDomain([1, 2, 3]))
    with pytest.raises(InvalidArgument):
        verify_inequalities(square(), bc="neumann", n=1)
    with pytest.raises(Unsupported) as info:
        verify_inequalities(square(), bc="robin", sigma=-1.0)
    assert info.value.context == ("bound_engine", "robin_parameters")
