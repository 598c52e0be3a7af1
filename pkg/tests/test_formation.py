import warnings

import numpy as np
import pytest

from superpos.core import pinch
from superpos.errors import ConvergenceWarning
from superpos.formation import (
    FormationConfig,
    PureStateEnsemble,
    _Objective,
    ensemble_cost,
    ensemble_to_stiefel,
)
from superpos.measures import a_f, a_s
from superpos.sampling import random_density, random_pure

LN2 = np.log(2)


def h(p):
    return -p * np.log(p) - (1 - p) * np.log(1 - p)


def qubit(c):
    return np.array([[0.5, c / 2], [np.conj(c) / 2, 0.5]], dtype=complex)


@pytest.mark.parametrize("p", [0.5, 0.2, 0.93])
def test_pure_state_value(p):
    v = np.array([np.sqrt(p), np.sqrt(1 - p)])
    assert np.isclose(a_f(np.outer(v, v), [1, 1]).value, h(p), atol=1e-12)


def test_block_diagonal_is_zero():
    r = pinch(random_density(5, seed=0), [2, 3])
    rep = a_f(r, [2, 3])
    assert rep.value == 0
    assert rep.witness.matches(r)


def test_qubit_value_matches_concurrence_formula():
    # concurrence 0.6, E_f = h((1 + sqrt(1 - 0.36)) / 2) = h(0.9)
    rep = a_f(qubit(0.6), [1, 1])
    assert np.isclose(rep.value, h(0.9), atol=1e-8)
    assert np.isclose(rep.value, 0.325083, atol=1e-6)
    assert rep.converged


def test_witness_reproduces_state_and_value():
    r = random_density(4, rank=3, seed=2)
    rep = a_f(r, [2, 2], FormationConfig(starts=3))
    assert rep.witness.matches(r, atol=1e-8)
    assert np.isclose(ensemble_cost(rep.witness, [2, 2]), rep.value, atol=1e-10)
    assert a_s(r, [2, 2]).value <= rep.value + 1e-10


def test_deterministic_for_fixed_seed():
    r = random_density(3, seed=5)
    cfg = FormationConfig(starts=4, seed=9)
    a, b = a_f(r, [1, 2], cfg), a_f(r, [1, 2], cfg)
    assert a.value == b.value and a.info == b.info


def test_warm_start_is_used():
    r = random_density(3, seed=8)
    best = a_f(r, [1, 1, 1], FormationConfig(starts=4))
    rep = a_f(r, [1, 1, 1], FormationConfig(starts=0), warm_starts=[best.witness])
    assert rep.value <= best.value + 1e-12


def test_gradient_matches_finite_differences():
    rng = np.random.default_rng(0)
    r = random_density(4, rank=2, seed=1)
    mu, E = np.linalg.eigh(r)
    mu, E = mu[::-1][:2], E[:, ::-1][:, :2]
    onehot = np.eye(2)[[0, 0, 1, 1]]
    obj = _Objective(mu, E, onehot, 4)
    x = rng.standard_normal(2 * 4 * 2)
    f, g = obj(x)
    eps = 1e-6
    fd = np.array([(obj(x + eps * e)[0] - obj(x - eps * e)[0]) / (2 * eps) for e in np.eye(len(x))])
    assert np.max(np.abs(fd - g)) < 1e-7


def test_stiefel_coordinates_of_an_ensemble_are_orthonormal():
    r = random_density(3, seed=4)
    rep = a_f(r, [1, 2], FormationConfig(starts=1))
    mu, E = np.linalg.eigh(r)
    T = ensemble_to_stiefel(rep.witness, mu, E)
    assert np.allclose(T.conj().T @ T, np.eye(3), atol=1e-8)


def test_ensemble_validation():
    with pytest.raises(ValueError):
        PureStateEnsemble([0.5, 0.6], np.eye(2))
    with pytest.raises(ValueError):
        PureStateEnsemble([1.0], np.eye(2))
    v = random_pure(3, seed=0)
    ens = PureStateEnsemble.from_unnormalised(np.vstack([v * 0.6, v * 0.8, np.zeros(3)]))
    assert len(ens.weights) == 2 and np.isclose(ens.weights.sum(), 1)


def test_convergence_warning_when_iterations_run_out():
    r = random_density(4, seed=3)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        rep = a_f(r, [2, 2], FormationConfig(starts=1, max_iter=1))
    assert not rep.converged
    assert any(issubclass(w.category, ConvergenceWarning) for w in caught)
    # still an upper bound with a valid witness
    assert rep.witness.matches(r, atol=1e-8)
