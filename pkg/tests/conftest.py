import functools

import numpy as np
import pytest

from starspec.domain import EllipsoidDomain, FourierDomain, disk, random_fourier, square
from starspec.fem import laplace_eigs_2d


def planar_suite():
    """disk, ellipse (3,1), square and five seeded random Fourier domains."""
    out = [("disk", disk()), ("ellipse", EllipsoidDomain([3.0, 1.0])), ("square", square())]
    rng = np.random.default_rng(2024)
    for i in range(5):
        out.append((f"fourier{i}", random_fourier(rng, n_modes=4, amplitude=0.3)))
    return out


SUITE = dict(planar_suite())
SUITE["fourier_fixed"] = FourierDomain([1.0, 0.0, 0.2], [0.0, 0.0, 0.0, 0.1])


@functools.lru_cache(maxsize=None)
def spectrum(name, bc, n=20, hbar=1.0, sigma=0.0):
    """FEM spectra shared between test modules."""
    return laplace_eigs_2d(SUITE[name], bc, n, hbar=hbar, sigma=sigma)


@pytest.fixture(scope="session")
def suite():
    return planar_suite()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


_CRITERIA = pytest.StashKey[list]()


@pytest.fixture
def record_criterion(request, capsys):
    """Print one PASS/FAIL line for an acceptance criterion and keep it for the summary."""
    log = request.config.stash.setdefault(_CRITERIA, [])

    def record(label, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] {label}" + (f": {detail}" if detail else "")
        log.append(line)
        with capsys.disabled():
            print("\n" + line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_CRITERIA, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
