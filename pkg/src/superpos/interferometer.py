"""Mach-Zehnder protocol that reads out the Ky-Fan measures.

States live on ``path (x) internal`` in path-major layout, so ``rho[:N, N:]``
is the coherence block ``<1|rho|2>``.  The particle picks up ``V`` on path 1
and ``U`` on path 2, passes a 50/50 beam splitter

    |1> -> (|1> + |2>)/sqrt(2),   |2> -> (|1> - |2>)/sqrt(2),

and is detected at output ``i`` only if the internal state passes the filter
``P_C`` (rank ``k``, spanned by the first ``k`` internal basis vectors unless
another projector is supplied).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .core import dagger
from .errors import DimensionMismatch, KOutOfRange, NotProjector, NotUnitary
from .sampling import _rng

UNITARY_TOL = 1e-10
HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2)


@dataclass(frozen=True)
class ProtocolConfig:
    internal_dim: int
    filter_dim: int
    mode: str = "general"  # or "single_u": V fixed to the identity, no filter

    def __post_init__(self):
        if not 1 <= self.filter_dim <= self.internal_dim:
            raise KOutOfRange(f"filter rank {self.filter_dim} outside 1..{self.internal_dim}")
        if self.mode not in ("general", "single_u"):
            raise ValueError(f"unknown protocol mode {self.mode!r}")


@dataclass
class ProtocolOutcome:
    p1: float
    p2: float
    q1: float
    q2: float
    r: float

    @property
    def contrast(self) -> float:
        """``(p1 - p2) / 2``."""
        return (self.p1 - self.p2) / 2


def filter_projector(N: int, k: int) -> np.ndarray:
    if not 1 <= k <= N:
        raise KOutOfRange(f"filter rank {k} outside 1..{N}")
    P = np.zeros((N, N))
    P[:k, :k] = np.eye(k)
    return P


def _check_unitary(U: np.ndarray, name: str, N: int) -> np.ndarray:
    U = np.asarray(U, dtype=complex)
    if U.shape != (N, N):
        raise DimensionMismatch(f"{name} has shape {U.shape}, expected {(N, N)}")
    if np.max(np.abs(dagger(U) @ U - np.eye(N))) > UNITARY_TOL:
        raise NotUnitary(f"{name} is not unitary")
    return U


def _check_projector(P: np.ndarray, N: int) -> np.ndarray:
    P = np.asarray(P, dtype=complex)
    if P.shape != (N, N):
        raise DimensionMismatch(f"filter has shape {P.shape}, expected {(N, N)}")
    if np.max(np.abs(P - dagger(P))) > UNITARY_TOL or np.max(np.abs(P @ P - P)) > UNITARY_TOL:
        raise NotProjector("filter is not an orthogonal projector")
    return P


def _internal_dim(rho) -> int:
    d = np.shape(rho)[0]
    if d % 2:
        raise DimensionMismatch(f"state dimension {d} is not path (2) times internal")
    return d // 2


def coherence_block(rho) -> np.ndarray:
    N = _internal_dim(rho)
    return np.asarray(rho, dtype=complex)[:N, N:]


def run_protocol(rho, U, V, PC) -> ProtocolOutcome:
    """Simulate the interferometer and return detection probabilities.

    ``p1, p2`` come from propagating the full state; ``q1, q2, r`` are the
    block-wise terms, and the two are cross-checked.
    """
    rho = np.asarray(rho, dtype=complex)
    N = _internal_dim(rho)
    U = _check_unitary(U, "U", N)
    V = _check_unitary(V, "V", N)
    PC = _check_projector(PC, N)
    E1, E2 = np.diag([1.0, 0.0]), np.diag([0.0, 1.0])
    W = np.kron(HADAMARD, np.eye(N)) @ (np.kron(E1, V) + np.kron(E2, U))
    out = W @ rho @ dagger(W)
    p1 = float(np.real(np.trace(np.kron(E1, PC) @ out)))
    p2 = float(np.real(np.trace(np.kron(E2, PC) @ out)))
    r11, r22, r12 = rho[:N, :N], rho[N:, N:], rho[:N, N:]
    q1 = float(np.real(np.trace(PC @ V @ r11 @ dagger(V)))) / 2
    q2 = float(np.real(np.trace(PC @ U @ r22 @ dagger(U)))) / 2
    r = float(np.real(np.trace(PC @ V @ r12 @ dagger(U))))
    if abs(p1 - (q1 + q2 + r)) > 1e-10 or abs(p2 - (q1 + q2 - r)) > 1e-10:
        raise ArithmeticError("simulated probabilities disagree with the block formulas")
    return ProtocolOutcome(p1, p2, q1, q2, r)


def optimal_uv(rho, k: int) -> tuple[np.ndarray, np.ndarray, float]:
    """Path unitaries maximising ``(p1 - p2)/2`` for the rank-``k`` filter.

    With the SVD ``<1|rho|2> = A S B^H``, ``V = A^H`` and ``U = B^H`` rotate
    the singular vectors onto the filter basis.  The value is the sum of the
    ``k`` largest singular values.
    """
    C = coherence_block(rho)
    N = C.shape[0]
    if not 1 <= k <= N:
        raise KOutOfRange(f"filter rank {k} outside 1..{N}")
    A, s, Bh = np.linalg.svd(C)
    return Bh, dagger(A), float(s[:k].sum())


def optimal_single_u(rho) -> tuple[np.ndarray, float]:
    """Best ``U`` with ``V = 1`` and no filter; returns ``(U, p_max)``.

    ``p_max = 1/2 + ||<1|rho|2>||_Tr`` for states with balanced path weights.
    """
    C = coherence_block(rho)
    A, s, Bh = np.linalg.svd(C)
    U = A @ Bh
    N = C.shape[0]
    out = run_protocol(rho, U, np.eye(N), np.eye(N))
    return U, out.p1


def _random_hermitian(rng, N: int) -> np.ndarray:
    G = rng.standard_normal((N, N)) + 1j * rng.standard_normal((N, N))
    return (G + dagger(G)) / 2


def stochastic_maximize(rho, k: int, iters: int = 2000, seed=None,
                        step: float = 0.3) -> tuple[np.ndarray, np.ndarray, float]:
    """Hill-climb over ``(U, V)`` with exponentiated random Hermitian kicks.

    A (1+1) evolution strategy: a kick is kept if it increases the contrast,
    and the kick size follows the one-fifth success rule.
    """
    if iters < 1:
        raise ValueError("iters must be positive")
    rng = _rng(seed)
    C = coherence_block(rho)
    N = C.shape[0]
    if not 1 <= k <= N:
        raise KOutOfRange(f"filter rank {k} outside 1..{N}")

    def value(U, V):
        return float(np.real(np.trace((V @ C @ dagger(U))[:k, :k])))

    U = expm(1j * _random_hermitian(rng, N))
    V = expm(1j * _random_hermitian(rng, N))
    best = value(U, V)
    for _ in range(iters):
        Uc = expm(1j * step * _random_hermitian(rng, N)) @ U
        Vc = expm(1j * step * _random_hermitian(rng, N)) @ V
        f = value(Uc, Vc)
        if f > best:
            U, V, best = Uc, Vc, f
            step *= 1.5
        else:
            step *= 1.5 ** -0.25
        step = min(max(step, 1e-8), 2.0)
    return U, V, best
