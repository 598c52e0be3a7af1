"""Reading off A_(k) from an interferometer.

Each path gets its own unitary on the internal state (``V`` on path 1,
``U`` on path 2), the paths are recombined on a balanced beam splitter, and
the detectors only see the rank-``k`` filter ``P_C``.  The best achievable
``(p1 - p2)/2`` equals the Ky-Fan measure ``A_(k)``.

Run with ``python demos/interferometer.py``.
"""

import numpy as np

from superpos.interferometer import filter_projector, optimal_single_u, optimal_uv, run_protocol, stochastic_maximize
from superpos.measures import kyfan_measures
from superpos.sampling import random_density, random_unitary

N = 3
rho = random_density(2 * N, seed=3)
ky = kyfan_measures(rho, [N, N])

# %% Optimal settings from the singular value decomposition of the coherence block
print(" k   A_(k)    optimum  simulated  random settings")
rng = np.random.default_rng(0)
for k in range(1, N + 1):
    U, V, value = optimal_uv(rho, k)
    out = run_protocol(rho, U, V, filter_projector(N, k))
    rand = max(run_protocol(rho, random_unitary(N, rng), random_unitary(N, rng), filter_projector(N, k)).contrast
               for _ in range(200))
    print(f" {k}  {ky[k - 1]:.5f}  {value:.5f}  {out.contrast:.5f}    {rand:.5f}")
# Random settings never beat the optimum.

# %% Blind search
# A hill climber that only sees the detector counts finds the same value.
for k in (1, 2):
    _, _, found = stochastic_maximize(rho, k, iters=2000, seed=1)
    print(f"stochastic search, k = {k}: {found:.6f} (A_({k}) = {ky[k - 1]:.6f})")

# %% One tunable unitary and no filter
U, pmax = optimal_single_u(rho)
weights = np.real(np.trace(rho))
print(f"\nsingle-U protocol: p_max = {pmax:.5f} = 1/2 + A_(Tr) = {0.5 * weights + ky[-1]:.5f}")
