"""Random states, unitaries and channels used by the property suites."""

from __future__ import annotations

import numpy as np
from scipy.stats import unitary_group

from .core import Decomposition, as_decomposition


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def ginibre(rng, rows: int, cols: int) -> np.ndarray:
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


def random_density(dim: int, rank: int | None = None, seed=None) -> np.ndarray:
    """Random density operator from a Ginibre ensemble (full rank by default)."""
    rng = _rng(seed)
    G = ginibre(rng, dim, rank or dim)
    rho = G @ G.conj().T
    return rho / np.trace(rho).real


def random_pure(dim: int, seed=None) -> np.ndarray:
    rng = _rng(seed)
    v = ginibre(rng, dim, 1)[:, 0]
    return v / np.linalg.norm(v)


def random_unitary(dim: int, seed=None) -> np.ndarray:
    rng = _rng(seed)
    if dim == 1:
        return np.exp(2j * np.pi * rng.random()) * np.ones((1, 1))
    return unitary_group.rvs(dim, random_state=rng)


def random_block_unitary(L, seed=None) -> np.ndarray:
    """Block-local unitary ``U_1 (+) ... (+) U_K``."""
    rng = _rng(seed)
    L = as_decomposition(L)
    U = np.zeros((L.total, L.total), dtype=complex)
    for k, n in enumerate(L.dims):
        s = L.slice(k)
        U[s, s] = random_unitary(n, rng)
    return U


def random_block_diagonal_density(L, seed=None) -> np.ndarray:
    rng = _rng(seed)
    L = as_decomposition(L)
    w = rng.dirichlet(np.ones(L.K))
    rho = np.zeros((L.total, L.total), dtype=complex)
    for k, n in enumerate(L.dims):
        s = L.slice(k)
        rho[s, s] = w[k] * random_density(n, seed=rng)
    return rho


def random_isometry(rows: int, cols: int, seed=None) -> np.ndarray:
    rng = _rng(seed)
    Q, R = np.linalg.qr(ginibre(rng, rows, cols))
    return Q * (np.diag(R) / np.abs(np.diag(R)))


def random_kraus(dim: int, n_ops: int = 3, seed=None) -> list[np.ndarray]:
    """Generic CPTP map obtained from a random Stinespring isometry."""
    V = random_isometry(dim * n_ops, dim, seed)
    return [V[i * dim:(i + 1) * dim] for i in range(n_ops)]


def random_qubit_state(seed=None) -> np.ndarray:
    return random_density(2, seed=seed)


def random_decomposition(max_block: int, K: int = 2, seed=None) -> Decomposition:
    rng = _rng(seed)
    return Decomposition(rng.integers(1, max_block + 1, size=K))
