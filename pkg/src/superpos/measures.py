"""Superposition measures and the predictability bounds.

Entropic measures (``a_s``, ``a_f``) work for any number of subspaces; the
norm-based measures are defined for two-subspace decompositions and act on
the off-diagonal block ``P_1 rho P_2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from . import formation
from .core import (
    Decomposition,
    as_decomposition,
    block_probabilities,
    pinch,
    relative_entropy,
    singular_values,
    sub_block,
    von_neumann_entropy,
)
from .errors import InvalidSpectrum, KOutOfRange, NotBipartite
from .formation import FormationConfig, PureStateEnsemble
from .sampling import random_block_diagonal_density


@dataclass
class MeasureReport:
    value: float
    witness: Any = None
    converged: bool = True
    info: dict = field(default_factory=dict)


@dataclass(frozen=True)
class NormSpec:
    """A unitarily invariant norm: ``kyfan`` (param k), ``trace`` or ``schatten`` (param p)."""

    kind: str
    param: float | None = None

    def __post_init__(self):
        if self.kind not in ("kyfan", "trace", "schatten"):
            raise ValueError(f"unknown norm kind {self.kind!r}")
        if self.kind == "kyfan" and (self.param is None or int(self.param) != self.param or self.param < 1):
            raise KOutOfRange(f"Ky-Fan index must be a positive integer, got {self.param}")
        if self.kind == "schatten" and (self.param is None or not 1 <= self.param < math.inf):
            raise ValueError(f"Schatten exponent must be finite and >= 1, got {self.param}")

    @classmethod
    def kyfan(cls, k: int) -> "NormSpec":
        return cls("kyfan", int(k))

    @classmethod
    def trace(cls) -> "NormSpec":
        return cls("trace")

    @classmethod
    def schatten(cls, p: float) -> "NormSpec":
        return cls("schatten", float(p))

    def label(self) -> str:
        if self.kind == "trace":
            return "trace"
        if self.kind == "kyfan":
            return f"kyfan:{int(self.param)}"
        return f"schatten:{self.param:g}"

    def of_singular_values(self, s: np.ndarray) -> float:
        s = np.sort(np.abs(s))[::-1]
        if self.kind == "trace":
            return float(s.sum())
        if self.kind == "kyfan":
            k = int(self.param)
            if k > len(s):
                raise KOutOfRange(f"k={k} exceeds the {len(s)} available singular values")
            return float(s[:k].sum())
        p = self.param
        return float(np.sum(s ** p) ** (1 / p))


def _bipartite(rho, L) -> Decomposition:
    L = as_decomposition(L)
    if L.K != 2:
        raise NotBipartite(f"norm measures need two subspaces, got {L.K}")
    L.check(np.shape(rho)[0])
    return L


def off_diagonal_singular_values(rho, L) -> np.ndarray:
    """Singular values of the ``N_1 x N_2`` block ``P_1 rho P_2`` (length min(N_1, N_2))."""
    L = _bipartite(rho, L)
    return singular_values(sub_block(rho, L, 0, 1))


def a_s(rho, L) -> MeasureReport:
    """Relative entropy of superposition ``S(Pi(rho)) - S(rho)``; witness is ``Pi(rho)``."""
    rho = np.asarray(rho, dtype=complex)
    P = pinch(rho, L)
    value = von_neumann_entropy(P) - von_neumann_entropy(rho)
    return MeasureReport(max(value, 0.0), witness=P)


def a_s_min_check(rho, L, trials: int = 100, seed=None) -> float:
    """Smallest ``S(rho || sigma)`` over ``Pi(rho)`` and ``trials`` random block-diagonal ``sigma``."""
    rng = np.random.default_rng(seed)
    L = as_decomposition(L)
    best = relative_entropy(rho, pinch(rho, L))
    for _ in range(trials):
        best = min(best, relative_entropy(rho, random_block_diagonal_density(L, rng)))
    return best


def a_f(rho, L, config: FormationConfig | None = None,
        warm_starts: Sequence[PureStateEnsemble] = ()) -> MeasureReport:
    """Superposition of formation (best upper bound found by the ensemble optimizer).

    The witness is the ensemble that attains the reported value.
    """
    res = formation.a_f(rho, L, config, warm_starts)
    return MeasureReport(res.value, witness=res.witness, converged=res.converged,
                         info={"start_index": res.start_index})


def kyfan_measure(rho, L, k: int) -> float:
    s = off_diagonal_singular_values(rho, L)
    if not 1 <= k <= len(s):
        raise KOutOfRange(f"k={k} outside 1..{len(s)}")
    return float(s[:k].sum())


def kyfan_measures(rho, L) -> np.ndarray:
    """All Ky-Fan measures ``[A_(1), ..., A_(N)]`` at once."""
    return np.cumsum(off_diagonal_singular_values(rho, L))


def trace_measure(rho, L) -> float:
    return float(off_diagonal_singular_values(rho, L).sum())


def norm_measure(rho, L, spec: NormSpec) -> float:
    return spec.of_singular_values(off_diagonal_singular_values(rho, L))


@dataclass
class DominanceReport:
    kyfan_dominated: bool
    kyfan_gaps: np.ndarray
    norms: dict[str, bool]

    @property
    def consistent(self) -> bool:
        """Ky-Fan dominance must imply dominance in every supplied norm."""
        return (not self.kyfan_dominated) or all(self.norms.values())


def dominance_check(rho, sigma, L, specs: Sequence[NormSpec] = (), tol: float = 1e-9) -> DominanceReport:
    a = kyfan_measures(rho, L)
    b = kyfan_measures(sigma, L)
    gaps = b - a
    norms = {s.label(): norm_measure(rho, L, s) <= norm_measure(sigma, L, s) + tol for s in specs}
    return DominanceReport(bool(np.all(gaps >= -tol)), gaps, norms)


def predictability(rho, L) -> float:
    p = block_probabilities(rho, _bipartite(rho, L))
    return float(abs(p[0] - p[1]))


def _marginal_spectra(rho, L) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    L = _bipartite(rho, L)
    p = block_probabilities(rho, L)
    specs = []
    for n in range(2):
        B = sub_block(rho, L, n, n)
        lam = np.linalg.eigvalsh(B)[::-1] / p[n] if p[n] > 0 else np.zeros(L.dims[n])
        specs.append(np.clip(lam, 0, None))
    size = max(L.dims)
    specs = [np.pad(s, (0, size - len(s))) for s in specs]
    return p, specs[0], specs[1]


def kyfan_bound(rho, L, k: int) -> float:
    """``sqrt(p1 p2) sum_{l<=k} sqrt(lambda_l(s1) lambda_l(s2))`` with zero-padded marginal spectra."""
    p, l1, l2 = _marginal_spectra(rho, L)
    if p[0] * p[1] <= 0:
        return 0.0
    if k < 1:
        raise KOutOfRange(f"k={k} must be positive")
    return float(np.sqrt(p[0] * p[1]) * np.sum(np.sqrt(l1[:k] * l2[:k])))


def _check_spectrum(spec) -> np.ndarray:
    s = np.asarray(spec, dtype=float)
    if s.ndim != 1 or len(s) == 0 or np.any(s < 0) or abs(s.sum() - 1) > 1e-10:
        raise InvalidSpectrum(f"not a probability vector: {spec}")
    return np.sort(s)[::-1]


def sharp_state(p1: float, spectrum1, spectrum2) -> np.ndarray:
    """State on ``L_1 (+) L_2`` that saturates :func:`kyfan_bound` for every k.

    Subspace dimensions are the lengths of the two spectra.
    """
    if not 0 <= p1 <= 1:
        raise InvalidSpectrum(f"p1={p1} outside [0, 1]")
    l1, l2 = _check_spectrum(spectrum1), _check_spectrum(spectrum2)
    p2 = 1 - p1
    n1, n2 = len(l1), len(l2)
    rho = np.zeros((n1 + n2, n1 + n2), dtype=complex)
    rho[:n1, :n1] = np.diag(p1 * l1)
    rho[n1:, n1:] = np.diag(p2 * l2)
    for l in range(min(n1, n2)):
        c = np.sqrt(p1 * p2 * l1[l] * l2[l])
        rho[l, n1 + l] = rho[n1 + l, l] = c
    return rho
