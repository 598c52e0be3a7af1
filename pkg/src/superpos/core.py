"""Density operators, subspace decompositions, pinching and entropies.

Subspaces are contiguous ranges of the computational basis, described by a
:class:`Decomposition` holding their dimensions.  Arbitrary families of
orthogonal projectors are brought into that form with :func:`align_basis`.
All entropies use the natural logarithm.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    IncompleteResolution,
    IndexOutOfRange,
    NegativeEigenvalue,
    NotAProjector,
    NotHermitian,
    NotOrthogonal,
    NotSquare,
    TraceDeviation,
)

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-6
NEGATIVE_TOL = 1e-6
SUPPORT_TOL = 1e-12
PINV_RTOL = 1e-12


@dataclass(frozen=True)
class Decomposition:
    """Ordered subspace dimensions ``[N_1, ..., N_K]`` partitioning the basis."""

    dims: tuple[int, ...]

    def __init__(self, dims: Sequence[int]):
        dims = tuple(int(n) for n in dims)
        if len(dims) < 2:
            raise ValueError("a decomposition needs at least two subspaces")
        if any(n < 1 for n in dims):
            raise ValueError(f"subspace dimensions must be positive, got {dims}")
        object.__setattr__(self, "dims", dims)

    @property
    def K(self) -> int:
        return len(self.dims)

    @property
    def total(self) -> int:
        return sum(self.dims)

    @property
    def offsets(self) -> tuple[int, ...]:
        return tuple(int(x) for x in np.concatenate([[0], np.cumsum(self.dims)]))

    def slice(self, k: int) -> slice:
        """Basis range of subspace ``k`` (zero-based)."""
        if not 0 <= k < self.K:
            raise IndexOutOfRange(f"subspace index {k} outside 0..{self.K - 1}")
        off = self.offsets
        return slice(off[k], off[k + 1])

    def projector(self, k: int) -> np.ndarray:
        P = np.zeros((self.total, self.total))
        s = self.slice(k)
        P[s, s] = np.eye(self.dims[k])
        return P

    def projectors(self) -> list[np.ndarray]:
        return [self.projector(k) for k in range(self.K)]

    def labels(self) -> np.ndarray:
        """Subspace label of every basis index."""
        return np.repeat(np.arange(self.K), self.dims)

    def check(self, dim: int) -> None:
        if self.total != dim:
            raise DimensionMismatch(
                f"decomposition {list(self.dims)} spans {self.total} dimensions, operator has {dim}"
            )


def as_decomposition(L) -> Decomposition:
    return L if isinstance(L, Decomposition) else Decomposition(L)


@dataclass
class BlockForm:
    """Block parametrisation ``rho = sum p_k s_k + sum sqrt(p_k p_k') sqrt(s_k) D sqrt(s_k')``.

    ``diag_states[k]`` and ``off_diag[(k, k')]`` are stored as ambient-dimension
    matrices that vanish outside their blocks.
    """

    probs: np.ndarray
    diag_states: list[np.ndarray]
    off_diag: dict[tuple[int, int], np.ndarray] = field(default_factory=dict)

    def reassemble(self) -> np.ndarray:
        roots = [psd_sqrt(s) for s in self.diag_states]
        out = sum(p * s for p, s in zip(self.probs, self.diag_states))
        for (k, kk), D in self.off_diag.items():
            out = out + np.sqrt(self.probs[k] * self.probs[kk]) * roots[k] @ D @ roots[kk]
        return out


def _as_square(entries) -> np.ndarray:
    A = np.asarray(entries, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise NotSquare(f"expected a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    return A


def make_density(entries) -> np.ndarray:
    """Validate ``entries`` as a density operator and return it as a complex array.

    Hermiticity must hold to 1e-10 and the trace to 1e-6; eigenvalues in
    ``[-1e-6, 0)`` are clipped to zero and the result renormalised.
    """
    A = _as_square(entries)
    herm_err = np.max(np.abs(A - A.conj().T)) if A.size else 0.0
    if herm_err > HERMITIAN_TOL:
        raise NotHermitian(f"Hermiticity violated by {herm_err:.3e}")
    A = (A + A.conj().T) / 2
    tr = np.trace(A).real
    if abs(tr - 1) > TRACE_TOL:
        raise TraceDeviation(f"trace is {tr!r}")
    evals, evecs = np.linalg.eigh(A)
    if evals[0] < -NEGATIVE_TOL:
        raise NegativeEigenvalue(f"eigenvalue {evals[0]:.3e} below tolerance")
    if evals[0] < 0:
        evals = np.clip(evals, 0, None)
        A = (evecs * evals) @ evecs.conj().T
        tr = evals.sum()
    return A / tr


def is_density(A, tol: float = 1e-8) -> bool:
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        return False
    if np.max(np.abs(A - A.conj().T)) > tol or abs(np.trace(A) - 1) > tol:
        return False
    return bool(np.linalg.eigvalsh((A + A.conj().T) / 2)[0] > -tol)


def dagger(A: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(A, -1, -2))


def psd_sqrt(A: np.ndarray) -> np.ndarray:
    evals, evecs = np.linalg.eigh((A + dagger(A)) / 2)
    return (evecs * np.sqrt(np.clip(evals, 0, None))) @ dagger(evecs)


def psd_sqrt_pinv(A: np.ndarray, rtol: float = PINV_RTOL) -> np.ndarray:
    """Moore-Penrose pseudo-inverse of the square root of a PSD matrix.

    Eigenvalues of ``A`` at or below ``rtol`` times the largest are treated as zero.
    """
    evals, evecs = np.linalg.eigh((A + dagger(A)) / 2)
    top = evals.max(initial=0.0)
    inv = np.zeros_like(evals)
    keep = evals > rtol * top
    inv[keep] = 1 / np.sqrt(evals[keep])
    return (evecs * inv) @ dagger(evecs)


def pinch(rho, L) -> np.ndarray:
    """Remove every off-diagonal block of ``rho`` with respect to ``L``."""
    rho = np.asarray(rho, dtype=complex)
    L = as_decomposition(L)
    L.check(rho.shape[0])
    lab = L.labels()
    return np.where(lab[:, None] == lab[None, :], rho, 0)


def block(rho, L, i: int, j: int) -> np.ndarray:
    """``P_i rho P_j`` embedded in the ambient dimension (zero-based indices)."""
    rho = np.asarray(rho, dtype=complex)
    L = as_decomposition(L)
    L.check(rho.shape[0])
    si, sj = L.slice(i), L.slice(j)
    out = np.zeros_like(rho)
    out[si, sj] = rho[si, sj]
    return out


def sub_block(rho, L, i: int, j: int) -> np.ndarray:
    """The rectangular ``N_i x N_j`` block ``P_i rho P_j`` without padding."""
    rho = np.asarray(rho)
    L = as_decomposition(L)
    L.check(rho.shape[0])
    return rho[L.slice(i), L.slice(j)]


def block_probabilities(rho, L) -> np.ndarray:
    L = as_decomposition(L)
    L.check(np.shape(rho)[0])
    d = np.real(np.diag(rho))
    return np.array([d[L.slice(k)].sum() for k in range(L.K)])


def block_form(rho, L) -> BlockForm:
    rho = np.asarray(rho, dtype=complex)
    L = as_decomposition(L)
    L.check(rho.shape[0])
    probs = block_probabilities(rho, L)
    states, inv_roots = [], []
    for k in range(L.K):
        Bkk = block(rho, L, k, k)
        if probs[k] > 0:
            states.append(Bkk / probs[k])
        else:
            states.append(np.zeros_like(rho))
        # pinv(sqrt(p_k s_k)) absorbs the 1/sqrt(p_k p_k') normalisation
        inv_roots.append(psd_sqrt_pinv(Bkk))
    off = {}
    for k in range(L.K):
        for kk in range(L.K):
            if k != kk:
                off[(k, kk)] = inv_roots[k] @ block(rho, L, k, kk) @ inv_roots[kk]
    return BlockForm(probs, states, off)


def shannon_entropy(p) -> float:
    p = np.asarray(p, dtype=float)
    p = p[p > 0]
    return float(-np.sum(p * np.log(p)))


def von_neumann_entropy(rho) -> float:
    """``-Tr(rho ln rho)`` in nats."""
    evals = np.linalg.eigvalsh(np.asarray(rho, dtype=complex))
    return abs(shannon_entropy(evals))


def relative_entropy(rho, sigma) -> float:
    """``Tr(rho ln rho) - Tr(rho ln sigma)``; ``inf`` when supp(rho) is not inside supp(sigma)."""
    rho = np.asarray(rho, dtype=complex)
    sigma = np.asarray(sigma, dtype=complex)
    if rho.shape != sigma.shape:
        raise DimensionMismatch(f"shapes {rho.shape} and {sigma.shape} differ")
    mu, V = np.linalg.eigh((sigma + dagger(sigma)) / 2)
    weights = np.real(np.einsum("ij,ik,kj->j", V.conj(), rho, V))
    kernel = mu <= SUPPORT_TOL
    if np.sum(weights[kernel]) > SUPPORT_TOL:
        return float("inf")
    cross = -np.sum(weights[~kernel] * np.log(mu[~kernel]))
    val = cross - von_neumann_entropy(rho)
    return float(max(val, 0.0)) if val > -1e-12 else float(val)


def singular_values(C) -> np.ndarray:
    """Singular values in non-increasing order (zeros included)."""
    return np.linalg.svd(np.asarray(C, dtype=complex), compute_uv=False)


def partial_trace(rho, dims: Sequence[int], keep: Sequence[int]) -> np.ndarray:
    """Trace out every tensor factor not listed in ``keep`` (factor order is row-major)."""
    rho = np.asarray(rho)
    dims = list(dims)
    n = len(dims)
    if int(np.prod(dims)) != rho.shape[0]:
        raise DimensionMismatch(f"factor dims {dims} do not multiply to {rho.shape[0]}")
    keep = sorted(keep)
    t = rho.reshape(dims + dims)
    letters = "abcdefghijklmnopqrstuvwxyz"
    row = list(letters[:n])
    col = [row[i] if i not in keep else letters[n + i].upper() for i in range(n)]
    out = "".join(row[i] for i in keep) + "".join(col[i] for i in keep)
    t = np.einsum("".join(row) + "".join(col) + "->" + out, t)
    d = int(np.prod([dims[i] for i in keep]))
    return t.reshape(d, d)


def product_decomposition(L1, L2) -> tuple[np.ndarray, Decomposition]:
    """Decomposition ``L1 (x) L2`` of a tensor product space.

    Returns a basis permutation ``perm`` and the decomposition, so that
    ``rho[np.ix_(perm, perm)]`` of a state on ``H1 (x) H2`` has contiguous
    blocks ``L1_i (x) L2_j`` in lexicographic ``(i, j)`` order.
    """
    L1, L2 = as_decomposition(L1), as_decomposition(L2)
    lab1, lab2 = L1.labels(), L2.labels()
    pair = (lab1[:, None] * L2.K + lab2[None, :]).ravel()
    perm = np.argsort(pair, kind="stable")
    dims = [n1 * n2 for n1 in L1.dims for n2 in L2.dims]
    return perm, Decomposition(dims)


def align_basis(rho, projectors: Sequence) -> tuple[np.ndarray, Decomposition]:
    """Rotate ``rho`` so that the ranges of ``projectors`` become contiguous basis blocks."""
    rho = np.asarray(rho, dtype=complex)
    d = rho.shape[0]
    Ps = [np.asarray(P, dtype=complex) for P in projectors]
    if len(Ps) < 2:
        raise ValueError("need at least two projectors")
    for P in Ps:
        if P.shape != (d, d):
            raise DimensionMismatch(f"projector shape {P.shape} vs state dimension {d}")
        if np.max(np.abs(P - dagger(P))) > HERMITIAN_TOL or np.max(np.abs(P @ P - P)) > HERMITIAN_TOL:
            raise NotAProjector("operator is not a Hermitian idempotent")
    for a in range(len(Ps)):
        for b in range(a + 1, len(Ps)):
            if np.max(np.abs(Ps[a] @ Ps[b])) > HERMITIAN_TOL:
                raise NotOrthogonal(f"projectors {a} and {b} overlap")
    if np.max(np.abs(sum(Ps) - np.eye(d))) > HERMITIAN_TOL:
        raise IncompleteResolution("projectors do not sum to the identity")
    cols, dims = [], []
    for P in Ps:
        if np.max(np.abs(P - np.diag(np.diag(P)))) <= HERMITIAN_TOL:
            basis = np.eye(d)[:, np.real(np.diag(P)) > 0.5]
        else:
            w, v = np.linalg.eigh((P + dagger(P)) / 2)
            basis = v[:, w > 0.5]
        if basis.shape[1] == 0:
            raise NotAProjector("zero projector has no range")
        cols.append(basis)
        dims.append(basis.shape[1])
    U = dagger(np.hstack(cols))
    return U @ rho @ dagger(U), Decomposition(dims)
