"""Which channels can create superposition, seen through the lift.

Subspace-preserving (SP) channels keep the weight in each path.  They never
raise A_S or the trace measure, yet some of them raise A_(1).  Channels that
factor through the single-particle lift (LSP) cannot raise any A_(k).  A
channel that mixes the paths can create superposition from a block-diagonal
state.

Run with ``python demos/channels_and_lift.py``.
"""

import numpy as np

from superpos.channels import (
    collecting_sp_channel,
    is_block_preserving,
    is_sp,
    monotonicity_harness,
    random_lsp_channel,
    random_mixing_channel,
    random_sp_channel,
)
from superpos.measures import kyfan_measures
from superpos.secondq import build_lift, es_decomposition_identity, lift_state

L = [2, 2]

# %% Random SP channel
phi = random_sp_channel(L, seed=0)
for m in ("as", "trace", "kyfan:1"):
    rep = monotonicity_harness(phi, L, m, samples=200, seed=1)
    print(f"random SP channel, {m:8s}: largest change {rep.max_increase:+.2e}")

# %% An SP channel that concentrates coherence
collect = collecting_sp_channel(2)
rho0 = np.kron(np.full((2, 2), 0.5), np.eye(2) / 2)
print("\ncollecting channel is SP:", is_sp(collect, L))
print("A_(k) before:", kyfan_measures(rho0, L), " after:", kyfan_measures(collect(rho0), L))

# %% LSP channels leave every A_(k) non-increasing
lift = build_lift(L)
worst = max(monotonicity_harness(random_lsp_channel(lift, seed=s), L, "kyfan:1", samples=100, seed=s).max_increase
            for s in range(10))
print(f"\nten random LSP channels: largest A_(1) change {worst:+.2e}")

# %% Mixing the paths creates superposition
mix = random_mixing_channel(4, seed=2)
rep = monotonicity_harness(mix, L, "as", samples=50, seed=3, mode="search", pinched_inputs=True)
print(f"\npath-mixing unitary is block preserving: {is_block_preserving(mix, L)}")
print(f"A_S raised by {rep.violations[0][1]:.3f} on a block-diagonal input")

# %% Superposition becomes entanglement
# After the lift, the relative entropy of entanglement of a state with this
# pair structure equals its relative entropy of superposition.
sigma = lift_state(lift, rho0)
idn = es_decomposition_identity(sigma, lift.pairs())
print(f"\nlifted |+><+| (x) 1/2: relative entropy to the separable minimiser {idn.lhs:.6f}, A_S {idn.rhs:.6f}")
