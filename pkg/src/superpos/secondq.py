"""Second-quantisation lift and the measures it induces.

Each subspace ``L_k`` is extended by a vacuum level, giving factors of
dimension ``N_k + 1`` (level 0 is the vacuum, levels ``1..N_k`` the modes).
The lift ``M`` sends ``|k:l>`` to the occupation state with one particle in
mode ``l`` of factor ``k`` and vacuum elsewhere.  Occupation states are
indexed row-major over ``[N_1 + 1, ..., N_K + 1]``.

Product-subspace structures ``Lbar = (+)_k L1_k (x) L2_k`` on a bipartite
space are described by :class:`PairedSubspaces`, using basis index sets in
each factor.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .core import (
    Decomposition,
    as_decomposition,
    dagger,
    partial_trace,
    relative_entropy,
    von_neumann_entropy,
)
from .errors import DimensionMismatch, SupportFailure, TargetTooLarge, UnsupportedStructure
from .formation import FormationConfig
from .measures import a_f, a_s
from .sampling import random_pure

MAX_TARGET_DIM = 4096


@dataclass(frozen=True)
class BipartiteSplit:
    dimA: int
    dimB: int

    @property
    def dim(self) -> int:
        return self.dimA * self.dimB


@dataclass
class LiftMap:
    source: Decomposition
    target_dims: tuple[int, ...]
    matrix: np.ndarray

    def lifted_projector(self, k: int) -> np.ndarray:
        """Projector onto the image of subspace ``k``."""
        Mk = self.matrix[:, self.source.slice(k)]
        return Mk @ dagger(Mk)

    def pairs(self) -> "PairedSubspaces":
        """The product-subspace structure of the image (two-subspace lifts only)."""
        if self.source.K != 2:
            raise UnsupportedStructure("pair structure is defined for two-subspace lifts")
        n1, n2 = self.source.dims
        return PairedSubspaces(BipartiteSplit(n1 + 1, n2 + 1),
                               first=[list(range(1, n1 + 1)), [0]],
                               second=[[0], list(range(1, n2 + 1))])


def build_lift(L, max_dim: int = MAX_TARGET_DIM) -> LiftMap:
    L = as_decomposition(L)
    target = tuple(n + 1 for n in L.dims)
    D = int(np.prod(target))
    if D > max_dim:
        raise TargetTooLarge(f"lifted dimension {D} exceeds cap {max_dim}")
    M = np.zeros((D, L.total))
    col = 0
    for k, n in enumerate(L.dims):
        for l in range(1, n + 1):
            occ = [0] * L.K
            occ[k] = l
            M[np.ravel_multi_index(occ, target), col] = 1.0
            col += 1
    return LiftMap(L, target, M)


def lift_state(lift: LiftMap, rho) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.shape[0] != lift.matrix.shape[1]:
        raise DimensionMismatch(f"state dimension {rho.shape[0]} vs lift source {lift.matrix.shape[1]}")
    return lift.matrix @ rho @ dagger(lift.matrix)


def lifted_pinch(lift: LiftMap, sigma) -> np.ndarray:
    """Pinching of a lifted-space operator onto the images of the subspaces."""
    return sum(P @ sigma @ P for P in (lift.lifted_projector(k) for k in range(lift.source.K)))


def relative_entropy_surrogate(lift: LiftMap) -> Callable[[np.ndarray], float]:
    """``sigma -> S(sigma || Pi_Lbar(sigma))`` on the lifted space."""
    return lambda sigma: relative_entropy(sigma, lifted_pinch(lift, sigma))


def induced_measure(lift: LiftMap, E: Callable[[np.ndarray], float], rho) -> float:
    return float(E(lift_state(lift, rho)))


def with_basis_change(lift: LiftMap, U) -> LiftMap:
    """Lift built from rotated subspace bases, ``M U`` with ``U`` block-local."""
    return LiftMap(lift.source, lift.target_dims, lift.matrix @ np.asarray(U))


# --- product-subspace structures ---------------------------------------------

@dataclass
class PairedSubspaces:
    """Pairs ``(L1_k, L2_k)`` of coordinate subspaces of the two factors."""

    split: BipartiteSplit
    first: list[list[int]]
    second: list[list[int]]

    def __post_init__(self):
        if len(self.first) != len(self.second):
            raise ValueError("both factors need the same number of subspaces")
        for sets, d in ((self.first, self.split.dimA), (self.second, self.split.dimB)):
            flat = [i for s in sets for i in s]
            if len(set(flat)) != len(flat) or any(not 0 <= i < d for i in flat):
                raise ValueError("factor subspaces must be disjoint index sets within range")

    @property
    def K(self) -> int:
        return len(self.first)

    def indices(self, k: int) -> np.ndarray:
        """Global basis indices spanning ``L1_k (x) L2_k``."""
        a = np.asarray(self.first[k])[:, None]
        b = np.asarray(self.second[k])[None, :]
        return (a * self.split.dimB + b).ravel()

    def projector(self, k: int) -> np.ndarray:
        P = np.zeros((self.split.dim, self.split.dim))
        idx = self.indices(k)
        P[idx, idx] = 1.0
        return P

    def has_one_dim_members(self) -> bool:
        return all(min(len(a), len(b)) == 1 for a, b in zip(self.first, self.second))

    def restrict(self, sigma) -> tuple[np.ndarray, Decomposition]:
        """Compress a state supported on ``Lbar`` to contiguous blocks ``Lbar_1, ..., Lbar_K``."""
        self.check_support(sigma)
        idx = np.concatenate([self.indices(k) for k in range(self.K)])
        return np.asarray(sigma)[np.ix_(idx, idx)], Decomposition([len(self.indices(k)) for k in range(self.K)])

    def check_support(self, sigma, tol: float = 1e-10) -> None:
        sigma = np.asarray(sigma)
        if sigma.shape[0] != self.split.dim:
            raise DimensionMismatch(f"state dimension {sigma.shape[0]} vs split {self.split}")
        P = sum(self.projector(k) for k in range(self.K))
        leak = np.max(np.abs(P @ sigma @ P - sigma))
        if leak > tol:
            raise UnsupportedStructure(f"state leaks outside the paired subspaces by {leak:.2e}")


def _pinch_pairs(sigma, pairs: PairedSubspaces) -> np.ndarray:
    return sum(P @ sigma @ P for P in (pairs.projector(k) for k in range(pairs.K)))


def candidate_min_separable(sigma, pairs: PairedSubspaces) -> np.ndarray:
    """Separable state minimising ``S(sigma || .)`` when every pair has a one-dimensional member.

    Each block ``Pbar_k sigma Pbar_k`` is then a product operator, so the pinched
    state is separable.
    """
    sigma = np.asarray(sigma, dtype=complex)
    pairs.check_support(sigma)
    if not pairs.has_one_dim_members():
        raise UnsupportedStructure("each pair needs a one-dimensional member")
    return _pinch_pairs(sigma, pairs)


@dataclass
class FirstOrderReport:
    derivatives: np.ndarray
    min_derivative: float
    max_deviation: float
    passed: bool
    failures: list[int]


def _directional_derivative(sigma, rho_star, rho, steps=(1e-5, 1e-6)) -> float:
    """Right derivative at 0 of ``x -> S(sigma || (1-x) rho* + x rho)`` (Richardson-combined)."""
    f0 = relative_entropy(sigma, rho_star)
    h1, h2 = steps
    d1 = (relative_entropy(sigma, (1 - h1) * rho_star + h1 * rho) - f0) / h1
    d2 = (relative_entropy(sigma, (1 - h2) * rho_star + h2 * rho) - f0) / h2
    return (h1 * d2 - h2 * d1) / (h1 - h2)


def random_product_pure(split: BipartiteSplit, seed=None) -> np.ndarray:
    rng = np.random.default_rng(seed) if not isinstance(seed, np.random.Generator) else seed
    v = np.kron(random_pure(split.dimA, rng), random_pure(split.dimB, rng))
    return np.outer(v, v.conj())


def first_order_min_check(sigma, rho_star, split: BipartiteSplit, samples: int = 200, seed=None,
                          directions: Sequence[np.ndarray] = (), tol: float = 1e-4,
                          abs_tol: float = 1e-3) -> FirstOrderReport:
    """Sample pure product directions and test the first-order minimality conditions.

    A direction passes when the derivative is at least ``-tol`` and
    ``|1 - derivative| <= 1 + abs_tol``.
    """
    sigma = np.asarray(sigma, dtype=complex)
    rho_star = np.asarray(rho_star, dtype=complex)
    if not np.isfinite(relative_entropy(sigma, rho_star)):
        raise SupportFailure("support of sigma is not inside the support of rho*")
    rng = np.random.default_rng(seed)
    dirs = list(directions) + [random_product_pure(split, rng) for _ in range(samples)]
    ders = np.array([_directional_derivative(sigma, rho_star, d) for d in dirs])
    dev = np.abs(1 - ders)
    bad = [i for i, (d, e) in enumerate(zip(ders, dev)) if d < -tol or e > 1 + abs_tol]
    return FirstOrderReport(ders, float(ders.min(initial=np.inf)), float(dev.max(initial=0.0)),
                            not bad, bad)


@dataclass
class IdentityReport:
    lhs: float
    rhs: float
    passed: bool

    @property
    def gap(self) -> float:
        return abs(self.lhs - self.rhs)


def es_decomposition_identity(sigma, pairs: PairedSubspaces, tol: float = 1e-9) -> IdentityReport:
    """Compare ``S(sigma || rho*)`` with the relative entropy of superposition over ``Lbar``."""
    rho_star = candidate_min_separable(sigma, pairs)
    lhs = relative_entropy(sigma, rho_star)
    small, Lbar = pairs.restrict(sigma)
    rhs = a_s(small, Lbar).value
    return IdentityReport(lhs, rhs, abs(lhs - rhs) <= tol)


# --- entanglement of formation oracles ---------------------------------------

_YY = np.kron([[0, -1j], [1j, 0]], [[0, -1j], [1j, 0]])


def _binary_entropy(x: float) -> float:
    return max(0.0, float(-sum(p * np.log(p) for p in (x, 1 - x) if p > 0)))


def concurrence(rho2q) -> float:
    rho = np.asarray(rho2q, dtype=complex)
    if rho.shape != (4, 4):
        raise DimensionMismatch(f"two-qubit state expected, got shape {rho.shape}")
    R = np.sqrt(np.clip(np.linalg.eigvals(rho @ _YY @ rho.conj() @ _YY).real, 0, None))
    lam = np.sort(R)[::-1]
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def wootters_ef(rho2q) -> float:
    """Two-qubit entanglement of formation in nats from the concurrence."""
    C = min(concurrence(rho2q), 1.0)
    return _binary_entropy((1 + np.sqrt(1 - C * C)) / 2)


def pure_state_ef(rho, split: BipartiteSplit) -> float:
    """Entanglement entropy of a pure bipartite state."""
    return von_neumann_entropy(partial_trace(rho, [split.dimA, split.dimB], [0]))


def _is_pure(rho, tol: float = 1e-10) -> bool:
    return abs(np.real(np.trace(rho @ rho)) - 1) <= tol


def exact_ef(rho, split: BipartiteSplit) -> float:
    """Entanglement of formation where a closed form exists (pure or two-qubit states)."""
    rho = np.asarray(rho, dtype=complex)
    if _is_pure(rho):
        return pure_state_ef(rho, split)
    if (split.dimA, split.dimB) == (2, 2):
        return wootters_ef(rho)
    raise UnsupportedStructure("entanglement of formation has no closed form for this state")


@dataclass
class SuperadditivityReport:
    ef: float
    block_terms: float
    af: float
    equality_expected: bool
    passed: bool


def ef_superadditivity_check(rho, pairs: PairedSubspaces, tol: float = 1e-4,
                             config: FormationConfig | None = None) -> SuperadditivityReport:
    """Check ``E_f(rho) >= sum_k p_k E_f(rho_k) + A_f(rho)`` with equality for one-dimensional pairs."""
    rho = np.asarray(rho, dtype=complex)
    small, Lbar = pairs.restrict(rho)
    ef = exact_ef(rho, pairs.split)
    terms = 0.0
    for k in range(pairs.K):
        P = pairs.projector(k)
        pk = np.real(np.trace(P @ rho))
        if pk <= 1e-14:
            continue
        if min(len(pairs.first[k]), len(pairs.second[k])) == 1:
            continue  # product block: no entanglement
        block_state = P @ rho @ P / pk
        sub = PairedSubspaces(pairs.split, [pairs.first[k], []], [pairs.second[k], []])
        idx = sub.indices(0)
        local = BipartiteSplit(len(pairs.first[k]), len(pairs.second[k]))
        terms += pk * exact_ef(block_state[np.ix_(idx, idx)], local)
    af = a_f(small, Lbar, config).value
    equality = pairs.has_one_dim_members()
    if equality:
        ok = abs(ef - af) <= tol
    else:
        ok = ef >= terms + af - tol
    return SuperadditivityReport(ef, terms, af, equality, ok)
