"""Lindblad relaxation of a particle in a two-path interferometer.

The total space is stored path-major: basis index ``path * N + level``, so
operators are built as ``kron(path_op, internal_op)`` and the path
decomposition is ``[N, N]``.  Internal levels are energy eigenstates in
increasing order.

Three families of jump operators are supported:

* ``f1``: ``sqrt(g_kk') |e_k><e_k'| (x) 1`` acts identically on both paths;
* ``f2``: the same operators restricted to each path separately;
* ``f3``: the convex mixture ``w1 F1 + w2 F2`` (default 0.8 / 0.2).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np
from scipy.linalg import expm

from .core import dagger, is_density
from .errors import DimensionMismatch, InvalidRates, TargetTooLarge, ValidationFailure
from .measures import a_s, kyfan_measures, predictability
from .sampling import _rng

MAX_SUPEROP_DIM = 4096
VALIDATION_TOL = 1e-6


@dataclass
class LindbladGenerator:
    H: np.ndarray
    lindblads: list[np.ndarray] = field(default_factory=list)

    def __post_init__(self):
        self.H = np.asarray(self.H, dtype=complex)
        if self.H.ndim != 2 or self.H.shape[0] != self.H.shape[1]:
            raise DimensionMismatch("Hamiltonian must be square")
        if np.max(np.abs(self.H - dagger(self.H)), initial=0.0) > 1e-10:
            raise ValueError("Hamiltonian is not Hermitian")
        self.lindblads = [np.asarray(L, dtype=complex) for L in self.lindblads]
        if any(L.shape != self.H.shape for L in self.lindblads):
            raise DimensionMismatch("jump operators must match the Hamiltonian shape")

    @property
    def dim(self) -> int:
        return self.H.shape[0]

    def apply(self, rho) -> np.ndarray:
        """Direct evaluation of the generator on an operator."""
        rho = np.asarray(rho, dtype=complex)
        out = -1j * (self.H @ rho - rho @ self.H)
        for L in self.lindblads:
            LdL = dagger(L) @ L
            out += L @ rho @ dagger(L) - 0.5 * (LdL @ rho + rho @ LdL)
        return out


def vec(A: np.ndarray) -> np.ndarray:
    """Column stacking."""
    return np.asarray(A).reshape(-1, order="F")


def unvec(v: np.ndarray, dim: int) -> np.ndarray:
    return v.reshape(dim, dim, order="F")


def liouvillian(gen: LindbladGenerator) -> np.ndarray:
    """Matrix of the generator acting on column-stacked operators."""
    d = gen.dim
    if d * d > MAX_SUPEROP_DIM:
        raise TargetTooLarge(f"superoperator dimension {d * d} exceeds {MAX_SUPEROP_DIM}")
    I = np.eye(d)
    F = -1j * (np.kron(I, gen.H) - np.kron(gen.H.T, I))
    for L in gen.lindblads:
        LdL = dagger(L) @ L
        F += np.kron(L.conj(), L) - 0.5 * np.kron(I, LdL) - 0.5 * np.kron(LdL.T, I)
    return F


def _validate(rho: np.ndarray) -> np.ndarray:
    if not is_density(rho, VALIDATION_TOL):
        raise ValidationFailure("propagated state is not a density operator within 1e-6")
    return (rho + dagger(rho)) / 2


def evolve(gen: LindbladGenerator, rho0, t: float, F: np.ndarray | None = None) -> np.ndarray:
    """``exp(t F) rho0`` via the dense matrix exponential.

    ``F`` may be passed to reuse a precomputed Liouvillian.
    """
    if t < 0:
        raise ValueError("negative evolution time")
    rho0 = np.asarray(rho0, dtype=complex)
    if t == 0:
        return rho0.copy()
    F = liouvillian(gen) if F is None else F
    return _validate(unvec(expm(t * F) @ vec(rho0), gen.dim))


def evolve_rk4(gen: LindbladGenerator, rho0, t: float, h: float | None = None) -> np.ndarray:
    """Fixed-step RK4 on the operator equation; cross-check for :func:`evolve`.

    The default step is ``1e-3 / max(|L|^2)``.
    """
    rho = np.asarray(rho0, dtype=complex).copy()
    if t == 0:
        return rho
    if h is None:
        rate = max([np.linalg.norm(L, 2) ** 2 for L in gen.lindblads] + [np.linalg.norm(gen.H, 2), 1.0])
        h = 1e-3 / rate
    n = int(np.ceil(t / h))
    h = t / n
    f = gen.apply
    for _ in range(n):
        k1 = f(rho)
        k2 = f(rho + h / 2 * k1)
        k3 = f(rho + h / 2 * k2)
        k4 = f(rho + h * k3)
        rho = rho + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
    return _validate(rho)


# --- scenarios -----------------------------------------------------------------

KINDS = ("f1", "f2", "f3")


@dataclass
class Scenario:
    """Model family, level count, upper-triangular rates ``g[k, k']`` (k <= k') and internal Hamiltonian."""

    kind: str
    N: int
    g: np.ndarray
    H: np.ndarray | None = None
    weights: tuple[float, float] = (0.8, 0.2)
    seed: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidRates(f"unknown scenario kind {self.kind!r}")
        self.g = np.asarray(self.g, dtype=float)
        if self.H is None:
            self.H = np.zeros((self.N, self.N))
        self.H = np.asarray(self.H, dtype=complex)

    def metadata(self) -> dict:
        return {"scenario": self.kind, "N": self.N, "seed": self.seed,
                "weights": list(self.weights) if self.kind == "f3" else None,
                "rates": self.g.tolist(),
                "energies": np.real(np.diag(self.H)).tolist()}


def simple_rates(N: int, g: float = 1.0) -> np.ndarray:
    """Every level decays straight to the ground state at rate ``g``."""
    rates = np.zeros((N, N))
    rates[0, :] = g
    return rates


def simple_scenario(kind: str, N: int, g: float = 1.0) -> Scenario:
    return Scenario(kind, N, simple_rates(N, g))


def random_scenario(kind: str, N: int, seed: int, g_range=(0.2, 1.0)) -> Scenario:
    """Sorted uniform ``[0, 1]`` energies and uniform rates on ``k <= k'``."""
    rng = _rng(seed)
    energies = np.sort(rng.uniform(0.0, 1.0, N))
    g = np.triu(rng.uniform(*g_range, (N, N)))
    return Scenario(kind, N, g, np.diag(energies), seed=seed)


def _check_rates(s: Scenario) -> None:
    if s.N < 2:
        raise InvalidRates("at least two internal levels are needed")
    if s.g.shape != (s.N, s.N):
        raise InvalidRates(f"rate matrix must be {s.N}x{s.N}, got {s.g.shape}")
    if not np.all(np.isfinite(s.g)) or np.any(s.g < 0):
        raise InvalidRates("rates must be finite and non-negative")
    if np.any(np.tril(s.g, -1) != 0):
        raise InvalidRates("rates are only defined for k <= k'")
    if s.H.shape != (s.N, s.N):
        raise InvalidRates(f"internal Hamiltonian must be {s.N}x{s.N}")
    w = np.asarray(s.weights, dtype=float)
    if np.any(w < 0) or abs(w.sum() - 1) > 1e-12:
        raise InvalidRates(f"mixture weights {s.weights} are not a probability pair")


def _internal_jumps(s: Scenario) -> list[np.ndarray]:
    ops = []
    for k in range(s.N):
        for kk in range(k, s.N):
            if s.g[k, kk] > 0:
                E = np.zeros((s.N, s.N))
                E[k, kk] = np.sqrt(s.g[k, kk])
                ops.append(E)
    return ops


_PATH = (np.diag([1.0, 0.0]), np.diag([0.0, 1.0]))


def _f1_ops(s: Scenario) -> list[np.ndarray]:
    return [np.kron(np.eye(2), E) for E in _internal_jumps(s)]


def _f2_ops(s: Scenario) -> list[np.ndarray]:
    return [np.kron(P, E) for E in _internal_jumps(s) for P in _PATH]


def build_scenario(s: Scenario) -> LindbladGenerator:
    _check_rates(s)
    H = np.kron(np.eye(2), s.H)
    if s.kind == "f1":
        ops = _f1_ops(s)
    elif s.kind == "f2":
        ops = _f2_ops(s)
    else:
        w1, w2 = s.weights
        ops = [np.sqrt(w1) * L for L in _f1_ops(s)] + [np.sqrt(w2) * L for L in _f2_ops(s)]
    return LindbladGenerator(H, ops)


def local_generators(s: Scenario) -> tuple[LindbladGenerator, LindbladGenerator]:
    """Generators on ``vacuum (+) levels`` for each path whose product reproduces ``f2``.

    The vacuum is left untouched, so the local semigroups conserve the
    occupation number.
    """
    if s.kind != "f2":
        raise InvalidRates("only the f2 family is built from local generators")
    _check_rates(s)

    def extend(A):
        out = np.zeros((s.N + 1, s.N + 1), dtype=complex)
        out[1:, 1:] = A
        return out

    gen = LindbladGenerator(extend(s.H), [extend(E) for E in _internal_jumps(s)])
    return gen, gen


def product_generator(g1: LindbladGenerator, g2: LindbladGenerator) -> LindbladGenerator:
    """Generator of ``exp(t F1) (x) exp(t F2)``."""
    I1, I2 = np.eye(g1.dim), np.eye(g2.dim)
    H = np.kron(g1.H, I2) + np.kron(I1, g2.H)
    ops = [np.kron(L, I2) for L in g1.lindblads] + [np.kron(I1, L) for L in g2.lindblads]
    return LindbladGenerator(H, ops)


def initial_state(N: int) -> np.ndarray:
    """``1_N / N (x) |+><+|`` in path-major layout."""
    plus = np.full((2, 2), 0.5)
    return np.kron(plus, np.eye(N) / N).astype(complex)


def analytic_nonlocal(N: int, g: float, t: float, k: int) -> float:
    """Closed-form ``A_(k)`` for the simple ``f1`` model."""
    return 0.5 - np.exp(-g * t) * (0.5 - k / (2 * N))


def analytic_local(N: int, g: float, t: float, k: int) -> float:
    """Closed-form ``A_(k)`` for the simple ``f2`` model."""
    return k * np.exp(-g * t) / (2 * N)


# --- time series ---------------------------------------------------------------

@dataclass
class TimeSeries:
    times: np.ndarray
    kyfan: np.ndarray  # shape (T, N)
    a_s: np.ndarray
    predictability: np.ndarray
    metadata: dict = field(default_factory=dict)

    @property
    def N(self) -> int:
        return self.kyfan.shape[1]

    def header(self) -> list[str]:
        return ["t"] + [f"A_{k}" for k in range(1, self.N + 1)] + ["A_S", "predictability"]

    def rows(self) -> np.ndarray:
        return np.column_stack([self.times, self.kyfan, self.a_s, self.predictability])

    def to_csv(self, path) -> Path:
        """Write the CSV (12 significant digits) and a ``.json`` metadata sidecar."""
        path = Path(path)
        lines = [",".join(self.header())]
        lines += [",".join(f"{x:.12g}" for x in row) for row in self.rows()]
        path.write_text("\n".join(lines) + "\n")
        sidecar = path.with_suffix(".json")
        sidecar.write_text(json.dumps(self.metadata, indent=2, sort_keys=True) + "\n")
        return sidecar


def run_timeseries(s: Scenario, grid: Sequence[float]) -> TimeSeries:
    times = np.asarray(grid, dtype=float)
    if np.any(np.diff(times) <= 0) or np.any(times < 0):
        raise ValueError("time grid must be non-negative and strictly increasing")
    gen = build_scenario(s)
    F = liouvillian(gen)
    rho0 = initial_state(s.N)
    L = [s.N, s.N]
    ky, ent, pred = [], [], []
    for t in times:
        rho = evolve(gen, rho0, t, F)
        ky.append(kyfan_measures(rho, L))
        ent.append(a_s(rho, L).value)
        pred.append(predictability(rho, L))
    ts = TimeSeries(times, np.array(ky), np.array(ent), np.array(pred), s.metadata())
    if not np.all(np.isfinite(ts.rows())):
        raise ValidationFailure("non-finite measure value in time series")
    return ts
