"""Majorization of eigenvalue sequences and a few Monte Carlo identities.

Weak majorization a < b means every partial sum of the k smallest entries of
a is at most that of b.  It is exactly the condition under which
sum phi(a) <= sum phi(b) for every increasing concave phi, and when it fails
a single threshold function min(x, c) exposes the failure.

The second half checks rotation averages by sampling Haar-distributed
orthogonal matrices.

Run with ``python3 demos/majorization_and_mc.py``.
"""

import numpy as np

from starspec import ConcaveFunctional, majorize_check
from starspec.bounds import threshold_witness
from starspec.montecarlo import haar_orthogonal_sample, mc_conjugation_average

a = np.array([1.0, 2.0, 4.0])
b = np.array([1.5, 2.5, 4.0])
print("a < b:", majorize_check(a, b))
for phi in (ConcaveFunctional("power", 0.5), ConcaveFunctional("log"), ConcaveFunctional("neg_exp", 1.0)):
    print(f"  {phi.kind:>8}: {np.sum(phi(a)):.5f} <= {np.sum(phi(b)):.5f}")

c = np.array([2.0, 3.0, 3.0])
print("a < c:", majorize_check(a, c), "  c < a:", majorize_check(c, a))
t = threshold_witness(c, a)
print(f"c < a fails; min(x, {t}) shows it: {np.sum(np.minimum(c, t))} > {np.sum(np.minimum(a, t))}")

# Haar sampling: the average of U^T M U over O(3) is tr(M)/3 times the identity.
# The error should fall like 1/sqrt(N).
M = np.diag([1.0, 2.0, 3.0])
print()
for N in (1000, 10000, 100000):
    U = haar_orthogonal_sample(3, N, 0)
    raw = np.einsum("nji,jk,nkl->il", U, M, U) / N
    lib = mc_conjugation_average(M, N, 0)
    print(f"N = {N:6d}: max error {np.abs(raw - 2 * np.eye(3)).max():.4f}, "
          f"library {np.abs(lib - 2 * np.eye(3)).max():.4f}, sqrt(N) x error "
          f"{np.sqrt(N) * np.abs(lib - 2 * np.eye(3)).max():.2f}")
