"""Superposition of formation by optimisation over pure-state ensembles.

Every ensemble of ``m`` pure states realising ``rho`` can be written through
an ``m x r`` matrix ``T`` with orthonormal columns,

    psi_l (unnormalised) = sum_j T[l, j] sqrt(mu_j) e_j,

where ``(mu_j, e_j)`` is the eigensystem of ``rho`` restricted to its rank
``r`` support.  The ensemble cost is

    sum_l lambda_l H(p_l),   p_l = block weights of psi_l / lambda_l,

and is minimised over ``T`` with L-BFGS from several starting points.  ``T``
is parametrised by an unconstrained complex matrix ``X`` through the polar
retraction ``T = X (X^H X)^(-1/2)``; the gradient is propagated through the
retraction analytically.

The returned value is the best upper bound found, never a certified infimum.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import minimize

from .core import as_decomposition, dagger, pinch, shannon_entropy, block_probabilities
from .errors import ConvergenceWarning

RANK_TOL = 1e-12
STATIONARY_TOL = 1e-6


@dataclass
class PureStateEnsemble:
    """Weights ``lambda_l`` and unit vectors ``psi_l`` (rows of ``vectors``)."""

    weights: np.ndarray
    vectors: np.ndarray

    def __post_init__(self):
        self.weights = np.asarray(self.weights, dtype=float)
        self.vectors = np.atleast_2d(np.asarray(self.vectors, dtype=complex))
        if len(self.weights) != len(self.vectors):
            raise ValueError("weights and vectors differ in length")
        if np.any(self.weights < -1e-12):
            raise ValueError("negative ensemble weight")
        if abs(self.weights.sum() - 1) > 1e-10:
            raise ValueError(f"weights sum to {self.weights.sum()!r}")

    def density(self) -> np.ndarray:
        V = self.vectors
        return np.einsum("l,li,lj->ij", self.weights, V, V.conj())

    def unnormalised(self) -> np.ndarray:
        return np.sqrt(np.clip(self.weights, 0, None))[:, None] * self.vectors

    @classmethod
    def from_unnormalised(cls, W: np.ndarray, tol: float = 1e-15) -> "PureStateEnsemble":
        lam = np.sum(np.abs(W) ** 2, axis=1)
        keep = lam > tol
        W, lam = W[keep], lam[keep]
        return cls(lam / lam.sum(), W / np.sqrt(lam)[:, None])

    def matches(self, rho, atol: float = 1e-8) -> bool:
        return bool(np.max(np.abs(self.density() - rho)) <= atol)


@dataclass
class FormationConfig:
    """Optimizer settings for :func:`a_f`.

    ``starts`` random starting points are used in addition to the eigen-ensemble
    and any warm starts.  ``ensemble_size`` defaults to ``rank**2``.
    """

    starts: int = 16
    seed: int = 0
    max_iter: int = 3000
    ftol: float = 1e-13
    gtol: float = 1e-10
    ensemble_size: int | None = None


@dataclass
class FormationResult:
    value: float
    witness: PureStateEnsemble
    converged: bool
    start_index: int


def ensemble_cost(ensemble: PureStateEnsemble, L) -> float:
    """``sum_l lambda_l S(Pi(|psi_l><psi_l|))`` for an explicit ensemble."""
    L = as_decomposition(L)
    total = 0.0
    for lam, v in zip(ensemble.weights, ensemble.vectors):
        p = block_probabilities(np.outer(v, v.conj()), L)
        total += lam * shannon_entropy(p / p.sum())
    return float(total)


def _xlogx(q: np.ndarray) -> np.ndarray:
    out = np.zeros_like(q)
    pos = q > 0
    out[pos] = q[pos] * np.log(q[pos])
    return out


class _Objective:
    """Ensemble cost as a function of the real parameter vector of ``X``."""

    def __init__(self, evals: np.ndarray, evecs: np.ndarray, onehot: np.ndarray, m: int):
        self.r = len(evals)
        self.m = m
        # W = T @ self.factor, factor = S E^T
        self.factor = np.sqrt(evals)[:, None] * evecs.T
        self.back = evecs.conj() * np.sqrt(evals)[None, :]
        self.onehot = onehot

    def unpack(self, x: np.ndarray) -> np.ndarray:
        n = self.m * self.r
        return (x[:n] + 1j * x[n:]).reshape(self.m, self.r)

    @staticmethod
    def pack(X: np.ndarray) -> np.ndarray:
        return np.concatenate([X.real.ravel(), X.imag.ravel()])

    @staticmethod
    def retract(X: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        G = dagger(X) @ X
        g, Q = np.linalg.eigh((G + dagger(G)) / 2)
        g = np.clip(g, 1e-300, None)
        Y = (Q / np.sqrt(g)) @ dagger(Q)
        return X @ Y, Y, g, Q

    def cost_of_T(self, T: np.ndarray) -> float:
        W = T @ self.factor
        q = (np.abs(W) ** 2) @ self.onehot
        lam = q.sum(axis=1)
        return float(np.sum(_xlogx(lam)) - np.sum(_xlogx(q)))

    def __call__(self, x: np.ndarray) -> tuple[float, np.ndarray]:
        X = self.unpack(x)
        T, Y, g, Q = self.retract(X)
        W = T @ self.factor
        absW2 = np.abs(W) ** 2
        q = absW2 @ self.onehot
        lam = q.sum(axis=1)
        f = np.sum(_xlogx(lam)) - np.sum(_xlogx(q))
        with np.errstate(divide="ignore", invalid="ignore"):
            logratio = np.where(q > 0, np.log(np.where(lam[:, None] > 0, lam[:, None], 1.0) / np.where(q > 0, q, 1.0)), 0.0)
        Omega = 2 * W * (logratio @ self.onehot.T)
        Gamma = Omega @ self.back
        # gradient through T = X (X^H X)^(-1/2)
        A = dagger(X) @ Gamma
        B = dagger(Q) @ A @ Q
        sg = np.sqrt(g)
        Kdd = -1.0 / (sg[:, None] * sg[None, :] * (sg[:, None] + sg[None, :]))
        Z = Q @ (B * Kdd) @ dagger(Q)
        grad = Gamma @ Y + X @ (Z + dagger(Z))
        return float(f), self.pack(grad)


def _support(rho: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    mu, E = np.linalg.eigh((rho + dagger(rho)) / 2)
    keep = mu > RANK_TOL * max(mu.max(), 1e-300)
    mu, E = mu[keep][::-1], E[:, keep][:, ::-1]
    return mu, E


def ensemble_to_stiefel(ensemble: PureStateEnsemble, evals: np.ndarray, evecs: np.ndarray) -> np.ndarray:
    """Coordinates ``T`` of an ensemble with respect to the eigensystem of its state."""
    W = ensemble.unnormalised()
    return (W @ evecs.conj()) / np.sqrt(evals)[None, :]


def _block_eigen_ensemble(rho: np.ndarray, L) -> PureStateEnsemble:
    """Ensemble of block-localised eigenvectors; exact for block-diagonal states."""
    L = as_decomposition(L)
    rows, weights = [], []
    for k in range(L.K):
        s = L.slice(k)
        w, v = np.linalg.eigh(rho[s, s])
        for lam, vec in zip(w, v.T):
            if lam > RANK_TOL:
                full = np.zeros(L.total, dtype=complex)
                full[s] = vec
                rows.append(full)
                weights.append(lam)
    weights = np.array(weights)
    return PureStateEnsemble(weights / weights.sum(), np.array(rows))


def a_f(rho, L, config: FormationConfig | None = None,
        warm_starts: Sequence[PureStateEnsemble] = ()) -> FormationResult:
    """Minimise the mean pinching entropy over decompositions of ``rho``."""
    config = config or FormationConfig()
    rho = np.asarray(rho, dtype=complex)
    L = as_decomposition(L)
    L.check(rho.shape[0])

    off = rho - pinch(rho, L)
    if np.max(np.abs(off), initial=0.0) <= 1e-14:
        ens = _block_eigen_ensemble(rho, L)
        return FormationResult(0.0, ens, True, -1)

    mu, E = _support(rho)
    r = len(mu)
    if r == 1:
        ens = PureStateEnsemble(np.ones(1), E.T.copy())
        return FormationResult(ensemble_cost(ens, L), ens, True, 0)

    onehot = np.eye(L.K)[L.labels()]
    m_default = config.ensemble_size or r * r

    inits: list[np.ndarray] = []
    X0 = np.zeros((m_default, r), dtype=complex)
    X0[:r, :r] = np.eye(r)
    inits.append(X0)
    for ens in warm_starts:
        T = ensemble_to_stiefel(ens, mu, E)
        if T.shape[0] < m_default:
            T = np.vstack([T, np.zeros((m_default - T.shape[0], r))])
        inits.append(T)
    for i in range(config.starts):
        # each start draws from its own stream so results do not depend on the start count
        rng = np.random.default_rng([config.seed, i])
        inits.append(rng.standard_normal((m_default, r)) + 1j * rng.standard_normal((m_default, r)))

    best: FormationResult | None = None
    for idx, X in enumerate(inits):
        m = X.shape[0]
        obj = _Objective(mu, E, onehot, m)
        res = minimize(obj, obj.pack(X), jac=True, method="L-BFGS-B",
                       options={"maxiter": config.max_iter, "ftol": config.ftol,
                                "gtol": config.gtol, "maxcor": 30})
        T = obj.retract(obj.unpack(res.x))[0]
        # the start itself is a valid candidate; L-BFGS never returns worse, but keep it honest
        value = obj.cost_of_T(T)
        start_T = obj.retract(X)[0]
        start_value = obj.cost_of_T(start_T)
        # line-search exits at a stationary point are a precision limit, not a failure
        converged = bool(res.success) or float(np.max(np.abs(res.jac))) <= STATIONARY_TOL
        if start_value < value:
            T, value = start_T, start_value
        if best is None or value < best.value - 1e-15:
            ens = PureStateEnsemble.from_unnormalised(T @ obj.factor)
            best = FormationResult(max(value, 0.0), ens, converged, idx)
    if not best.converged:
        warnings.warn("formation optimizer stopped before meeting its tolerance", ConvergenceWarning)
    return best
