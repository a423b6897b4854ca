"""Checking the whole family of inequalities on a handful of planar shapes.

For each shape the finite element spectrum is computed once and fed to
every bound: Dirichlet sums and means, the Neumann family, the
Robin first eigenvalue, and the sloshing bound at a few depths.  The disk
is the equality case, so its margins measure the discretization error.

Run with ``python3 demos/theorem_suite.py`` (about a minute).
"""

import numpy as np

from starspec import EllipsoidDomain, disk, regular_polygon, square, verify_inequalities
from starspec.domain import random_fourier
from starspec.verify import summarize

shapes = {
    "disk": disk(),
    "square": square(),
    "ellipse 2:1": EllipsoidDomain([2.0, 1.0]),
    "hexagon": regular_polygon(6),
    "wobbly": random_fourier(np.random.default_rng(5), n_modes=4, amplitude=0.25),
}

for name, dom in shapes.items():
    reps = verify_inequalities(dom, bc="dirichlet", n=8)
    reps += verify_inequalities(dom, bc="neumann", n=8, sloshing_depths=(0.5, 2.0))
    ok, bad = summarize(reps)
    worst = min(reps, key=lambda r: r.margin / max(abs(r.bound_value), 1e-300))
    print(f"{name:>12}: {len(reps)} inequalities, {'all hold' if ok else bad}; "
          f"tightest {worst.bc} {worst.functional} margin {worst.margin:+.2e}")

r = verify_inequalities(square(), bc="robin", n=4, sigma=1.0)[0]
print(f"\nRobin, square, sigma = 1: {r.normalized_lhs:.5f} <= {r.bound_value:.5f}")
