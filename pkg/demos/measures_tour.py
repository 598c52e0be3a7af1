"""A tour of the superposition measures on small states.

We start with a path qubit whose coherence ``c`` we can dial, then move to a
two-path system with internal levels and look at the whole Ky-Fan family.

Run with ``python demos/measures_tour.py``.
"""

import numpy as np

from superpos.core import pinch
from superpos.measures import (
    NormSpec,
    a_f,
    a_s,
    dominance_check,
    kyfan_bound,
    kyfan_measures,
    predictability,
    sharp_state,
)
from superpos.sampling import random_density
from superpos.secondq import build_lift, lift_state, wootters_ef


def qubit(c):
    return np.array([[0.5, c / 2], [np.conj(c) / 2, 0.5]], dtype=complex)


# %% Entropic measures on a path qubit
# A_S is a closed form, A_f comes from the ensemble optimizer.  For a qubit
# the lift turns the state into a two-qubit state, so Wootters' formula gives
# an independent value for A_f.
lift = build_lift([1, 1])
print("   c     A_S      A_f   E_f(lift)  A_(1)")
for c in (0.0, 0.2, 0.6, 0.9, 1.0):
    rho = qubit(c)
    af = a_f(rho, [1, 1]).value
    print(f"{c:4.1f}  {a_s(rho, [1, 1]).value:.5f}  {af:.5f}  {wootters_ef(lift_state(lift, rho)):.5f}"
          f"  {kyfan_measures(rho, [1, 1])[0]:.3f}")
# A_S sits below A_f everywhere and both reach ln 2 for the fully coherent state.

# %% The Ky-Fan family for an initially maximally mixed internal state
N = 3
rho0 = np.kron(qubit(1.0), np.eye(N) / N)
print("\nA_(k) of |+><+| (x) 1/N:", np.round(kyfan_measures(rho0, [N, N]), 4), " (k / 2N)")

# %% Bounds from the path probabilities
rho = random_density(2 * N, seed=1)
P = predictability(rho, [N, N])
ky = kyfan_measures(rho, [N, N])
print(f"\nrandom state: predictability {P:.3f}")
for k, v in enumerate(ky, start=1):
    print(f"  A_({k}) = {v:.4f} <= bound {kyfan_bound(rho, [N, N], k):.4f};  A^2 + P^2 = {v * v + P * P:.3f}")

# The sharp state built from the same marginal spectra reaches every bound at once.
s1 = np.sort(np.linalg.eigvalsh(rho[:N, :N]).clip(0))[::-1]
s2 = np.sort(np.linalg.eigvalsh(rho[N:, N:]).clip(0))[::-1]
p1 = s1.sum()
sharp = sharp_state(p1, s1 / p1, s2 / s2.sum())
print("sharp state A_(k):", np.round(kyfan_measures(sharp, [N, N]), 4))
print("its bounds:       ", np.round([kyfan_bound(sharp, [N, N], k) for k in range(1, N + 1)], 4))

# %% Comparing two states across unitarily invariant norms
# If every A_(k) of rho is below that of sigma, every norm-based measure agrees.
# Partially dephasing a state shrinks the whole off-diagonal block, so it is dominated.
softer = 0.6 * rho + 0.4 * pinch(rho, [N, N])
norms = [NormSpec.trace(), NormSpec.schatten(2), NormSpec.schatten(4)]
rep = dominance_check(softer, rho, [N, N], norms)
print("\nKy-Fan gaps A_(k)(rho) - A_(k)(dephased):", np.round(rep.kyfan_gaps, 4))
print("dominated:", rep.kyfan_dominated, " norm verdicts:", rep.norms)
# Two unrelated states usually cross somewhere in the Ky-Fan family.
rep = dominance_check(rho, random_density(2 * N, seed=2), [N, N], norms)
print("unrelated pair, gaps A_(k)(sigma) - A_(k)(rho):", np.round(rep.kyfan_gaps, 4), " dominated:", rep.kyfan_dominated)
