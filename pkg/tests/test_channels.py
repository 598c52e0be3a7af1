import numpy as np
import pytest

from superpos.channels import (
    KrausChannel,
    SubChannel,
    all_kyfan_monotone,
    apply,
    block_swap_channel,
    collecting_sp_channel,
    depolarizing_channel,
    is_block_preserving,
    is_sp,
    make_lsp,
    measure_selector,
    monotonicity_harness,
    off_diagonal_block,
    pinching_channel,
    random_contraction_instance,
    random_lsp_channel,
    random_mixing_channel,
    random_sector_local_channel,
    random_sp_channel,
    sp_block_form,
    trace_contraction_check,
    unitary_channel,
)
from superpos.errors import (
    CoefficientMatrixTooLarge,
    DimensionMismatch,
    NotTracePreserving,
    NotTracePreservingOnSector,
)
from superpos.measures import a_s, kyfan_measures
from superpos.sampling import random_block_unitary, random_density
from superpos.secondq import build_lift


def qubit(c):
    return np.array([[0.5, c / 2], [np.conj(c) / 2, 0.5]], dtype=complex)


def test_channel_validation():
    with pytest.raises(NotTracePreserving):
        KrausChannel([np.diag([1.0, 0.5])])
    with pytest.raises(DimensionMismatch):
        KrausChannel([np.eye(2), np.eye(3)])
    with pytest.raises(ValueError):
        KrausChannel([])
    with pytest.raises(NotTracePreserving):
        SubChannel([np.eye(2), np.eye(2)])
    SubChannel([np.diag([1.0, 0.5])])
    with pytest.raises(DimensionMismatch):
        apply(pinching_channel([1, 1]), np.eye(3) / 3)


def test_adjoint_and_composition():
    phi, psi = random_sp_channel([2, 2], seed=0), random_mixing_channel(4, seed=1)
    rho, X = random_density(4, seed=2), random_density(4, seed=3)
    assert np.isclose(np.trace(X @ phi(rho)), np.trace(phi.adjoint(X) @ rho))
    assert np.allclose(phi.compose(psi)(rho), phi(psi(rho)))


def test_classification_examples():
    L = [2, 2]
    for phi, sp, bp in [
        (pinching_channel(L), True, True),
        (random_sp_channel(L, seed=4), True, True),
        (unitary_channel(random_block_unitary(L, seed=5)), True, True),
        (block_swap_channel(L), False, True),
        (random_mixing_channel(4, seed=6), False, False),
        (depolarizing_channel(4), False, True),  # output I/d is block diagonal
    ]:
        assert is_sp(phi, L) == sp
        assert is_block_preserving(phi, L) == bp


def test_depolarizing_output():
    assert np.allclose(depolarizing_channel(3)(random_density(3, seed=0)), np.eye(3) / 3)


def test_sp_block_form_matches_channel():
    phi = random_sp_channel([1, 2], seed=7)
    rho = random_density(3, seed=8)
    assert np.allclose(sp_block_form(phi, rho, [1, 2]), phi(rho))
    mix = random_mixing_channel(3, seed=9)
    assert not np.allclose(sp_block_form(mix, rho, [1, 2]), mix(rho))


def test_block_swap_keeps_measures():
    phi = block_swap_channel([1, 1])
    r = qubit(0.6 + 0.2j)
    assert np.allclose(phi(r), qubit(0.6 - 0.2j))
    assert np.isclose(a_s(phi(r), [1, 1]).value, a_s(r, [1, 1]).value)


def test_sp_channels_are_monotone():
    L = [2, 3]
    for seed in range(3):
        phi = random_sp_channel(L, seed=seed)
        for m in ("as", "trace", "kyfan:2", "schatten:2"):
            rep = monotonicity_harness(phi, L, m, samples=20, seed=seed)
            assert rep.passed, (m, rep.max_increase)


def test_collecting_channel_raises_kyfan_1():
    phi = collecting_sp_channel(2)
    assert is_sp(phi, [2, 2])
    rho0 = np.kron(np.full((2, 2), 0.5), np.eye(2) / 2)
    assert np.allclose(kyfan_measures(rho0, [2, 2]), [0.25, 0.5])
    assert np.allclose(kyfan_measures(phi(rho0), [2, 2]), [0.5, 0.5])
    rep = monotonicity_harness(phi, [2, 2], "kyfan:1", samples=0, states=[rho0])
    assert not rep.passed and np.isclose(rep.max_increase, 0.25)
    rep = monotonicity_harness(phi, [2, 2], "trace", samples=30, seed=0)
    assert rep.passed


def test_non_block_preserving_channel_can_create_superposition():
    phi = random_mixing_channel(4, seed=3)
    rep = monotonicity_harness(phi, [2, 2], "as", samples=50, seed=0, mode="search",
                               pinched_inputs=True)
    assert rep.found and len(rep.violations) == 1 and rep.violations[0][1] > 0


def test_lsp_identity_and_maps():
    lift = build_lift([2, 1])
    ident = make_lsp(lift, [np.eye(3)], [np.eye(2)])
    r = random_density(3, seed=0)
    assert np.allclose(ident(r), r)
    phi = random_lsp_channel(lift, seed=1)
    assert is_sp(phi, [2, 1])
    V, W = phi.certificate.off_diagonal_maps()
    assert np.allclose(off_diagonal_block(phi(r), [2, 1]), V @ off_diagonal_block(r, [2, 1]) @ W.conj().T)


def test_lsp_sector_violation():
    lift = build_lift([1, 1])
    X = np.array([[0, 1], [1, 0]])
    with pytest.raises(NotTracePreservingOnSector):
        make_lsp(lift, [X], [np.eye(2)])
    with pytest.raises(DimensionMismatch):
        make_lsp(lift, [np.eye(3)], [np.eye(2)])


def test_sector_local_channels_keep_occupation():
    ops = random_sector_local_channel(3, seed=0)
    assert np.allclose(sum(A.conj().T @ A for A in ops), np.eye(4))
    assert all(np.allclose(A[0, 1:], 0) and np.allclose(A[1:, 0], 0) for A in ops)


def test_lsp_channels_are_kyfan_monotone():
    lift = build_lift([2, 2])
    for seed in range(3):
        rep = all_kyfan_monotone(random_lsp_channel(lift, seed=seed), [2, 2], samples=30, seed=seed)
        assert rep.passed, rep.max_increase


def test_trace_contraction():
    for seed in range(20):
        C, V, W, Q = random_contraction_instance(3, 2, seed=seed)
        rep = trace_contraction_check(C, V, W, Q)
        assert rep.passed and rep.lhs <= rep.rhs + 1e-12
    V = SubChannel([np.eye(2)])
    with pytest.raises(CoefficientMatrixTooLarge):
        trace_contraction_check([[2.0]], V, V, np.eye(2))
    with pytest.raises(DimensionMismatch):
        trace_contraction_check(np.eye(2) / 2, V, V, np.eye(2))
    # equality for C = 1 and unitary families
    rep = trace_contraction_check([[1.0]], V, V, np.diag([1.0, -2.0]))
    assert np.isclose(rep.lhs, 3.0) and np.isclose(rep.rhs, 3.0)


def test_measure_selector():
    r = qubit(0.6)
    assert np.isclose(measure_selector("kyfan:1")(r, [1, 1]), 0.3)
    assert np.isclose(measure_selector("schatten:3")(r, [1, 1]), 0.3)
    assert measure_selector(len) is len
    with pytest.raises(ValueError):
        measure_selector("nope")
