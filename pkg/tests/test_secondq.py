import numpy as np
import pytest

from superpos.errors import SupportFailure, TargetTooLarge, UnsupportedStructure
from superpos.formation import FormationConfig
from superpos.measures import a_f, a_s
from superpos.sampling import random_block_unitary, random_density
from superpos.secondq import (
    BipartiteSplit,
    PairedSubspaces,
    build_lift,
    candidate_min_separable,
    concurrence,
    ef_superadditivity_check,
    es_decomposition_identity,
    exact_ef,
    first_order_min_check,
    induced_measure,
    lift_state,
    relative_entropy_surrogate,
    with_basis_change,
    wootters_ef,
)

LN2 = np.log(2)
BELL = np.array([0, 1, 1, 0]) / np.sqrt(2)


def h(p):
    return -p * np.log(p) - (1 - p) * np.log(1 - p)


def test_lift_layout_two_qubit_modes():
    lift = build_lift([1, 1])
    assert lift.target_dims == (2, 2)
    # source 0 -> occupation (1, 0), source 1 -> occupation (0, 1)
    assert np.array_equal(lift.matrix, [[0, 0], [0, 1], [1, 0], [0, 0]])
    plus = lift_state(lift, np.full((2, 2), 0.5))
    assert np.allclose(plus, np.outer(BELL, BELL))


def test_lift_is_an_isometry():
    for dims in ([2, 1], [2, 3], [1, 1, 2]):
        lift = build_lift(dims)
        M = lift.matrix
        assert np.allclose(M.T @ M, np.eye(sum(dims)))
        r = random_density(sum(dims), seed=0)
        assert np.isclose(np.trace(lift_state(lift, r)).real, 1)


def test_lift_size_cap():
    with pytest.raises(TargetTooLarge):
        build_lift([15, 15, 16])
    assert build_lift([15, 15, 15]).matrix.shape == (4096, 45)
    assert build_lift([3, 3], max_dim=16).matrix.shape == (16, 6)


def test_induced_surrogate_equals_a_s():
    lift = build_lift([2, 3])
    E = relative_entropy_surrogate(lift)
    for seed in range(5):
        r = random_density(5, seed=seed)
        assert np.isclose(induced_measure(lift, E, r), a_s(r, [2, 3]).value, atol=1e-10)


def test_induced_measure_independent_of_subspace_bases():
    lift = build_lift([2, 2])
    U = random_block_unitary([2, 2], seed=3)
    rot = with_basis_change(lift, U)
    E = relative_entropy_surrogate(lift)
    r = random_density(4, seed=4)
    assert np.isclose(induced_measure(lift, E, r), induced_measure(rot, E, r), atol=1e-10)


def test_equal_superposition_identity():
    lift = build_lift([1, 1])
    sigma = lift_state(lift, np.full((2, 2), 0.5))
    rep = es_decomposition_identity(sigma, lift.pairs())
    assert rep.passed and np.isclose(rep.lhs, LN2)


def test_identity_on_random_lifted_states():
    for dims in ([1, 2], [2, 2], [3, 2]):
        lift = build_lift(dims)
        r = random_density(sum(dims), seed=sum(dims))
        rep = es_decomposition_identity(lift_state(lift, r), lift.pairs())
        assert rep.passed, rep.gap
        assert np.isclose(rep.lhs, a_s(r, dims).value, atol=1e-9)


def test_first_order_conditions_at_candidate():
    lift = build_lift([1, 2])
    sigma = lift_state(lift, random_density(3, seed=1))
    rho_star = candidate_min_separable(sigma, lift.pairs())
    rep = first_order_min_check(sigma, rho_star, lift.pairs().split, samples=50, seed=0)
    assert rep.passed and rep.min_derivative > -1e-4


def test_first_order_conditions_reject_wrong_candidate():
    lift = build_lift([1, 1])
    sigma = lift_state(lift, [[0.7, 0.3], [0.3, 0.3]])
    wrong = np.diag([0, 0.5, 0.5, 0])
    rep = first_order_min_check(sigma, wrong, lift.pairs().split, samples=50, seed=0)
    assert not rep.passed and rep.min_derivative < -0.1


def test_first_order_support_failure():
    lift = build_lift([1, 1])
    sigma = lift_state(lift, np.full((2, 2), 0.5))
    with pytest.raises(SupportFailure):
        first_order_min_check(sigma, np.diag([1.0, 0, 0, 0]), lift.pairs().split, samples=1)


def test_paired_subspace_errors():
    split = BipartiteSplit(2, 2)
    pairs = PairedSubspaces(split, [[0, 1]], [[0, 1]])
    with pytest.raises(UnsupportedStructure):
        candidate_min_separable(np.eye(4) / 4, pairs)
    one = PairedSubspaces(split, [[1], [0]], [[0], [1]])
    with pytest.raises(UnsupportedStructure):
        one.check_support(np.eye(4) / 4)
    with pytest.raises(ValueError):
        PairedSubspaces(split, [[0], [0]], [[0], [1]])
    with pytest.raises(ValueError):
        PairedSubspaces(split, [[0]], [[0], [1]])


def test_wootters_examples():
    bell = np.outer(BELL, BELL)
    assert np.isclose(concurrence(bell), 1) and np.isclose(wootters_ef(bell), LN2)
    prod = np.zeros((4, 4))
    prod[0, 0] = 1
    assert wootters_ef(prod) == 0
    for p in (0.2, 0.5, 0.9):
        werner = p * bell + (1 - p) * np.eye(4) / 4
        assert np.isclose(concurrence(werner), max(0, (3 * p - 1) / 2), atol=1e-12)


def test_a_f_equals_ef_on_lifted_qubits():
    lift = build_lift([1, 1])
    for seed in range(5):
        r = random_density(2, seed=seed)
        assert np.isclose(a_f(r, [1, 1]).value, wootters_ef(lift_state(lift, r)), atol=1e-6)


def test_superadditivity_equality_on_lifted_states():
    lift = build_lift([1, 1])
    rep = ef_superadditivity_check(lift_state(lift, random_density(2, seed=7)), lift.pairs())
    assert rep.equality_expected and rep.passed and rep.block_terms == 0


def test_superadditivity_with_entangled_block():
    # pure state: sqrt(p) Bell on {0,1}x{0,1} plus sqrt(1-p) |22>
    p = 0.6
    v = np.zeros(9)
    v[[0, 4]] = np.sqrt(p / 2)
    v[8] = np.sqrt(1 - p)
    pairs = PairedSubspaces(BipartiteSplit(3, 3), [[0, 1], [2]], [[0, 1], [2]])
    rep = ef_superadditivity_check(np.outer(v, v), pairs, config=FormationConfig(starts=2))
    assert not rep.equality_expected and rep.passed
    assert np.isclose(rep.ef, h(p) + p * LN2)
    assert np.isclose(rep.block_terms, p * LN2)
    assert np.isclose(rep.af, h(p), atol=1e-6)


def test_exact_ef_needs_closed_form():
    with pytest.raises(UnsupportedStructure):
        exact_ef(np.eye(9) / 9, BipartiteSplit(3, 3))
