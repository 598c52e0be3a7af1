"""Kraus-form channels, subspace-preserving (SP) and local SP (LSP) classes.

A channel is SP for a two-subspace decomposition when it conserves the weight
``Tr(P_1 rho)``; LSP channels are those compressed from a product of local
channels on the second-quantised factors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .core import (
    as_decomposition,
    dagger,
    pinch,
    singular_values,
    sub_block,
)
from .errors import (
    CoefficientMatrixTooLarge,
    DimensionMismatch,
    NotTracePreserving,
    NotTracePreservingOnSector,
)
from .measures import NormSpec, a_s, kyfan_measures, norm_measure, trace_measure
from .sampling import _rng, ginibre, random_density, random_isometry, random_kraus, random_unitary
from .secondq import LiftMap

TP_TOL = 1e-10


def _stack(kraus) -> list[np.ndarray]:
    ops = [np.atleast_2d(np.asarray(K, dtype=complex)) for K in kraus]
    if not ops:
        raise ValueError("a channel needs at least one Kraus operator")
    shape = ops[0].shape
    if any(K.shape != shape for K in ops):
        raise DimensionMismatch("Kraus operators differ in shape")
    return ops


def _gram(ops) -> np.ndarray:
    return sum(dagger(K) @ K for K in ops)


@dataclass
class LSPCertificate:
    """The local channels whose product, compressed by the lift, gives the channel."""

    lift: LiftMap
    local1: list[np.ndarray]
    local2: list[np.ndarray]

    def off_diagonal_maps(self) -> tuple[np.ndarray, np.ndarray]:
        """``V``, ``W`` with ``P_1 Phi(rho) P_2 = V rho_12 W^H``.

        ``V = sum_i conj(<0|A_i|0>) A_i`` restricted to the mode levels, and the
        same for ``W`` from the second factor.
        """
        def reduce(ops):
            return sum(np.conj(A[0, 0]) * A[1:, 1:] for A in ops)
        return reduce(self.local1), reduce(self.local2)


@dataclass
class KrausChannel:
    """CPTP map ``rho -> sum_i K_i rho K_i^H`` (trace preservation checked to 1e-10)."""

    kraus: list[np.ndarray]
    certificate: LSPCertificate | None = field(default=None, repr=False)

    def __post_init__(self):
        self.kraus = _stack(self.kraus)
        if self.kraus[0].shape[0] != self.kraus[0].shape[1]:
            raise DimensionMismatch("channel Kraus operators must be square")
        dev = np.max(np.abs(_gram(self.kraus) - np.eye(self.dim)))
        if dev > TP_TOL:
            raise NotTracePreserving(f"sum K^H K deviates from identity by {dev:.2e}")

    @property
    def dim(self) -> int:
        return self.kraus[0].shape[1]

    def __call__(self, rho) -> np.ndarray:
        return apply(self, rho)

    def adjoint(self, X) -> np.ndarray:
        return sum(dagger(K) @ X @ K for K in self.kraus)

    def compose(self, other: "KrausChannel") -> "KrausChannel":
        """``self after other``."""
        return KrausChannel([A @ B for A in self.kraus for B in other.kraus])


@dataclass
class SubChannel:
    """Trace non-increasing family with ``sum_i K_i^H K_i <= 1``."""

    kraus: list[np.ndarray]

    def __post_init__(self):
        self.kraus = _stack(self.kraus)
        G = _gram(self.kraus)
        top = np.linalg.eigvalsh((G + dagger(G)) / 2).max()
        if top > 1 + TP_TOL:
            raise NotTracePreserving(f"sum K^H K has eigenvalue {top:.6g} > 1")


def apply(phi: KrausChannel, rho) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (phi.dim, phi.dim):
        raise DimensionMismatch(f"state of shape {rho.shape} for channel on dim {phi.dim}")
    out = sum(K @ rho @ dagger(K) for K in phi.kraus)
    return (out + dagger(out)) / 2


def pinching_channel(L) -> KrausChannel:
    return KrausChannel(as_decomposition(L).projectors())


def unitary_channel(U) -> KrausChannel:
    return KrausChannel([U])


def is_sp(phi: KrausChannel, L, tol: float = TP_TOL) -> bool:
    """Adjoint criterion ``Phi^H(P_1) = P_1``."""
    L = as_decomposition(L)
    L.check(phi.dim)
    P1 = L.projector(0)
    return bool(np.max(np.abs(phi.adjoint(P1) - P1)) <= tol)


def is_block_preserving(phi: KrausChannel, L, tol: float = TP_TOL) -> bool:
    """``Pi o Phi o Pi == Phi o Pi``, checked on every matrix unit inside a diagonal block."""
    L = as_decomposition(L)
    L.check(phi.dim)
    for k in range(L.K):
        s = L.slice(k)
        for i in range(s.start, s.stop):
            for j in range(s.start, s.stop):
                E = np.zeros((phi.dim, phi.dim), dtype=complex)
                E[i, j] = 1.0
                out = sum(K @ E @ dagger(K) for K in phi.kraus)
                if np.max(np.abs(pinch(out, L) - out)) > tol:
                    return False
    return True


def sp_block_form(phi: KrausChannel, rho, L) -> np.ndarray:
    """``sum_{k,k'} P_k Phi(P_k rho P_k') P_k'``; equals ``Phi(rho)`` for SP channels."""
    L = as_decomposition(L)
    rho = np.asarray(rho, dtype=complex)
    P = L.projectors()
    out = np.zeros_like(rho)
    for a in range(L.K):
        for b in range(L.K):
            term = sum(K @ (P[a] @ rho @ P[b]) @ dagger(K) for K in phi.kraus)
            out += P[a] @ term @ P[b]
    return out


def make_lsp(lift: LiftMap, phi1: Sequence[np.ndarray], phi2: Sequence[np.ndarray],
             tol: float = TP_TOL) -> KrausChannel:
    """Compress the product of two local channels through the lift.

    Raises
    ------
    NotTracePreservingOnSector
        If the local channels move weight out of the single-particle sector.
    """
    if lift.source.K != 2:
        raise DimensionMismatch("LSP channels are defined for two-subspace lifts")
    A = _stack(phi1)
    B = _stack(phi2)
    d1, d2 = lift.target_dims
    if A[0].shape != (d1, d1) or B[0].shape != (d2, d2):
        raise DimensionMismatch(f"local channels must act on dims {d1} and {d2}")
    M = lift.matrix
    ops = [dagger(M) @ np.kron(a, b) @ M for a in A for b in B]
    dev = np.max(np.abs(_gram(ops) - np.eye(M.shape[1])))
    if dev > tol:
        raise NotTracePreservingOnSector(f"compressed map loses {dev:.2e} of the sector trace")
    ops = [K for K in ops if np.max(np.abs(K)) > 0]
    return KrausChannel(ops, certificate=LSPCertificate(lift, A, B))


# --- constructors --------------------------------------------------------------

def random_sp_channel(L, n_ops: int = 3, seed=None) -> KrausChannel:
    """Block-diagonal Kraus operators ``K_i = (+)_k K_i^(k)`` from independent CPTP maps per block."""
    rng = _rng(seed)
    L = as_decomposition(L)
    ops = [np.zeros((L.total, L.total), dtype=complex) for _ in range(n_ops)]
    for k, n in enumerate(L.dims):
        s = L.slice(k)
        for K, Kk in zip(ops, random_kraus(n, n_ops, rng)):
            K[s, s] = Kk
    return KrausChannel(ops)


def collecting_sp_channel(n: int) -> KrausChannel:
    """SP channel moving every level to level 0 in both subspaces of ``[n, n]``.

    It maps the off-diagonal block ``B`` to ``Tr(B) |0><0|`` and so can raise ``A_(1)``.
    """
    ops = []
    for k in range(n):
        E = np.zeros((n, n))
        E[0, k] = 1.0
        ops.append(np.kron(np.eye(2), E))
    return KrausChannel(ops)


def random_sector_local_channel(n_modes: int, n_ops: int = 2, seed=None) -> list[np.ndarray]:
    """Local channel on ``vacuum (+) modes`` that never changes the occupation number."""
    rng = _rng(seed)
    c = random_isometry(n_ops, 1, rng)[:, 0]
    inner = random_kraus(n_modes, n_ops, rng)
    ops = []
    for ci, Ki in zip(c, inner):
        A = np.zeros((n_modes + 1, n_modes + 1), dtype=complex)
        A[0, 0] = ci
        A[1:, 1:] = Ki
        ops.append(A)
    return ops


def random_lsp_channel(lift: LiftMap, n_ops: int = 2, seed=None) -> KrausChannel:
    rng = _rng(seed)
    n1, n2 = lift.source.dims
    return make_lsp(lift, random_sector_local_channel(n1, n_ops, rng),
                    random_sector_local_channel(n2, n_ops, rng))


def random_mixing_channel(dim: int, seed=None) -> KrausChannel:
    """Random unitary channel; generically fails block preservation."""
    return KrausChannel([random_unitary(dim, seed)])


def block_swap_channel(L) -> KrausChannel:
    """Exchange two equal-sized subspaces."""
    L = as_decomposition(L)
    if L.K != 2 or L.dims[0] != L.dims[1]:
        raise DimensionMismatch("block swap needs two equal subspaces")
    n = L.dims[0]
    S = np.zeros((2 * n, 2 * n))
    S[:n, n:] = np.eye(n)
    S[n:, :n] = np.eye(n)
    return KrausChannel([S])


def depolarizing_channel(dim: int) -> KrausChannel:
    """Complete depolarisation to ``I/d`` via the matrix-unit Kraus set."""
    ops = []
    for i in range(dim):
        for j in range(dim):
            E = np.zeros((dim, dim))
            E[i, j] = 1 / np.sqrt(dim)
            ops.append(E)
    return KrausChannel(ops)


# --- monotonicity --------------------------------------------------------------

def measure_selector(name: str | Callable) -> Callable[[np.ndarray, object], float]:
    """``as``, ``trace``, ``kyfan:k`` and ``schatten:p`` selectors, or a callable ``(rho, L) -> float``."""
    if callable(name):
        return name
    if name == "as":
        return lambda r, L: a_s(r, L).value
    if name == "trace":
        return trace_measure
    kind, _, arg = name.partition(":")
    if kind == "kyfan":
        return lambda r, L: norm_measure(r, L, NormSpec.kyfan(int(arg)))
    if kind == "schatten":
        return lambda r, L: norm_measure(r, L, NormSpec.schatten(float(arg)))
    raise ValueError(f"unknown measure selector {name!r}")


@dataclass
class MonotonicityReport:
    measure: str
    samples: int
    violations: list[tuple[np.ndarray, float]]
    max_increase: float

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def found(self) -> bool:
        """Search mode: a witness of an increase exists."""
        return bool(self.violations)


def monotonicity_harness(phi: KrausChannel, L, measure="as", samples: int = 100, seed=None,
                         tol: float = 1e-8, mode: str = "assert", pinched_inputs: bool = False,
                         states: Sequence[np.ndarray] = ()) -> MonotonicityReport:
    """Look for states where the measure grows under ``phi``.

    In ``assert`` mode every increase above ``tol`` is recorded as a violation.
    In ``search`` mode the loop stops at the first witness, which the caller
    treats as a success.  With ``pinched_inputs`` the random states are
    replaced by their pinched versions.
    """
    rng = _rng(seed)
    L = as_decomposition(L)
    f = measure_selector(measure)
    label = measure if isinstance(measure, str) else getattr(measure, "__name__", "custom")
    violations = []
    worst = -np.inf
    pool = list(states) + [None] * samples
    for rho in pool:
        if rho is None:
            rank = int(rng.integers(1, L.total + 1))
            rho = random_density(L.total, rank, rng)
        if pinched_inputs:
            rho = pinch(rho, L)
        inc = f(apply(phi, rho), L) - f(rho, L)
        worst = max(worst, inc)
        if inc > tol:
            violations.append((rho, inc))
            if mode == "search":
                break
    return MonotonicityReport(label, len(pool), violations, float(worst))


def all_kyfan_monotone(phi: KrausChannel, L, samples: int = 100, seed=None, tol: float = 1e-8) -> MonotonicityReport:
    """Every ``A_(k)`` at once (one violation entry per offending state)."""
    rng = _rng(seed)
    L = as_decomposition(L)
    violations, worst = [], -np.inf
    for _ in range(samples):
        rho = random_density(L.total, int(rng.integers(1, L.total + 1)), rng)
        inc = float(np.max(kyfan_measures(apply(phi, rho), L) - kyfan_measures(rho, L)))
        worst = max(worst, inc)
        if inc > tol:
            violations.append((rho, inc))
    return MonotonicityReport("kyfan:all", samples, violations, worst)


# --- trace-norm contraction ---------------------------------------------------

@dataclass
class ContractionReport:
    lhs: float
    rhs: float
    passed: bool


def trace_norm(A) -> float:
    return float(singular_values(A).sum())


def trace_contraction_check(C, V: SubChannel, W: SubChannel, Q, tol: float = 1e-9) -> ContractionReport:
    """``|| sum_kl C_kl V_k Q W_l^H ||_Tr <= || Q ||_Tr`` for a contraction ``C``."""
    C = np.atleast_2d(np.asarray(C, dtype=complex))
    if C.shape != (len(V.kraus), len(W.kraus)):
        raise DimensionMismatch(f"coefficient matrix {C.shape} vs families {len(V.kraus)}, {len(W.kraus)}")
    top = np.linalg.eigvalsh(C @ dagger(C)).max()
    if top > 1 + TP_TOL:
        raise CoefficientMatrixTooLarge(f"C C^H has eigenvalue {top:.6g} > 1")
    Q = np.asarray(Q, dtype=complex)
    S = sum(C[k, l] * V.kraus[k] @ Q @ dagger(W.kraus[l])
            for k in range(C.shape[0]) for l in range(C.shape[1]))
    lhs, rhs = trace_norm(S), trace_norm(Q)
    return ContractionReport(lhs, rhs, lhs <= rhs + tol)


def random_contraction_instance(n: int, m: int, nv: int = 3, nw: int = 3, seed=None):
    """Random ``(C, V, W, Q)`` meeting the contraction hypotheses, ``Q`` of shape ``n x m``."""
    rng = _rng(seed)
    C = ginibre(rng, nv, nw)
    C *= rng.uniform(0.2, 1.0) / np.linalg.norm(C, 2)
    V = SubChannel([rng.uniform(0.5, 1.0) * K for K in random_kraus(n, nv, rng)])
    W = SubChannel([rng.uniform(0.5, 1.0) * K for K in random_kraus(m, nw, rng)])
    return C, V, W, ginibre(rng, n, m)


def off_diagonal_block(rho, L) -> np.ndarray:
    return sub_block(rho, L, 0, 1)
