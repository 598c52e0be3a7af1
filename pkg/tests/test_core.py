import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from superpos.core import (
    Decomposition,
    align_basis,
    block,
    block_form,
    block_probabilities,
    make_density,
    partial_trace,
    pinch,
    product_decomposition,
    psd_sqrt_pinv,
    relative_entropy,
    singular_values,
    sub_block,
    von_neumann_entropy,
)
from superpos.errors import (
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
from superpos.sampling import random_density, random_unitary

LN2 = np.log(2)


def qubit(c):
    return np.array([[0.5, c / 2], [np.conj(c) / 2, 0.5]], dtype=complex)


def test_decomposition_basics():
    L = Decomposition([2, 1, 3])
    assert L.K == 3 and L.total == 6
    assert L.offsets == (0, 2, 3, 6)
    assert L.slice(2) == slice(3, 6)
    assert np.array_equal(L.labels(), [0, 0, 1, 2, 2, 2])
    assert np.allclose(sum(L.projectors()), np.eye(6))
    with pytest.raises(IndexOutOfRange):
        L.slice(3)
    with pytest.raises(DimensionMismatch):
        L.check(5)
    with pytest.raises(ValueError):
        Decomposition([3])
    with pytest.raises(ValueError):
        Decomposition([2, 0])


def test_make_density_examples():
    assert np.allclose(make_density(np.eye(2) / 2), np.eye(2) / 2)
    plus = make_density([[0.5, 0.5], [0.5, 0.5]])
    assert np.allclose(plus @ plus, plus)
    rho = make_density([[0.5, 0.3], [0.3, 0.5]])
    assert np.allclose(np.linalg.eigvalsh(rho), [0.2, 0.8])


def test_make_density_errors():
    with pytest.raises(NotSquare):
        make_density(np.ones((2, 3)))
    with pytest.raises(NotHermitian):
        make_density([[0.5, 0.3], [0.1, 0.5]])
    with pytest.raises(TraceDeviation):
        make_density(np.eye(2))
    with pytest.raises(NegativeEigenvalue):
        make_density([[1.1, 0], [0, -0.1]])
    with pytest.raises(ValueError):
        make_density([[np.nan, 0], [0, 1]])


def test_make_density_clips_dust():
    rho = make_density(np.diag([1 + 5e-7, -5e-7]))
    assert np.all(np.linalg.eigvalsh(rho) >= 0)
    assert np.isclose(np.trace(rho).real, 1.0)


def test_pinch_examples():
    plus = np.full((2, 2), 0.5)
    assert np.allclose(pinch(plus, [1, 1]), np.eye(2) / 2)
    assert np.allclose(pinch(qubit(0.6), [1, 1]), np.eye(2) / 2)
    bd = np.zeros((3, 3))
    bd[:2, :2] = [[0.3, 0.1], [0.1, 0.3]]
    bd[2, 2] = 0.4
    assert np.allclose(pinch(bd, [2, 1]), bd)
    with pytest.raises(DimensionMismatch):
        pinch(plus, [1, 2])


def test_block_examples():
    rho = qubit(0.6)
    B = block(rho, [1, 1], 0, 1)
    assert B.shape == (2, 2) and np.isclose(B[0, 1], 0.3) and np.count_nonzero(B) == 1
    assert np.allclose(block(pinch(rho, [1, 1]), [1, 1], 0, 1), 0)
    r = random_density(5, seed=3)
    Bkk = sub_block(r, [2, 3], 1, 1)
    assert np.allclose(Bkk, Bkk.conj().T) and np.linalg.eigvalsh(Bkk).min() > -1e-12
    with pytest.raises(IndexOutOfRange):
        block(rho, [1, 1], 0, 2)


def test_block_form_examples():
    bf = block_form(qubit(0.6), [1, 1])
    assert np.allclose(bf.probs, [0.5, 0.5])
    assert np.isclose(bf.off_diag[(0, 1)][0, 1], 0.6)
    bd = random_density(4, seed=1)
    bd = pinch(bd, [2, 2])
    assert all(np.allclose(D, 0) for D in block_form(bd, [2, 2]).off_diag.values())
    v = np.ones(4) / 2
    bf = block_form(np.outer(v, v), [2, 2])
    assert np.isclose(singular_values(bf.off_diag[(0, 1)])[0], 1.0)


def test_block_form_reassembly_with_empty_block():
    rho = np.zeros((3, 3), dtype=complex)
    rho[:2, :2] = random_density(2, seed=0)
    bf = block_form(rho, [2, 1])
    assert bf.probs[1] == 0
    assert np.allclose(bf.reassemble(), rho)


def test_entropy_examples():
    v = np.array([1, 1j]) / np.sqrt(2)
    assert abs(von_neumann_entropy(np.outer(v, v.conj()))) < 1e-12
    assert np.isclose(von_neumann_entropy(np.eye(2) / 2), LN2)
    # -0.8 ln 0.8 - 0.2 ln 0.2
    assert np.isclose(von_neumann_entropy(np.diag([0.8, 0.2])), 0.500402, atol=1e-6)


def test_relative_entropy_examples():
    r = random_density(3, seed=2)
    assert abs(relative_entropy(r, r)) < 1e-12
    plus = np.full((2, 2), 0.5)
    assert np.isclose(relative_entropy(plus, np.eye(2) / 2), LN2)
    assert relative_entropy(np.diag([1.0, 0]), np.diag([0, 1.0])) == np.inf
    with pytest.raises(DimensionMismatch):
        relative_entropy(np.eye(2) / 2, np.eye(3) / 3)


def test_singular_values_examples():
    assert np.allclose(singular_values(random_unitary(4, seed=0)), 1)
    assert np.allclose(singular_values(np.diag([3, -4])), [4, 3])
    u, w = np.array([1, 1j, 0]) / np.sqrt(2), np.array([0, 1, 0])
    assert np.allclose(singular_values(2j * np.outer(u, w)), [2, 0, 0])


def test_psd_sqrt_pinv_on_singular_matrix():
    A = np.diag([4.0, 1e-14, 0.0])
    assert np.allclose(psd_sqrt_pinv(A), np.diag([0.5, 0, 0]))


def test_partial_trace_of_product():
    a, b = random_density(2, seed=0), random_density(3, seed=1)
    ab = np.kron(a, b)
    assert np.allclose(partial_trace(ab, [2, 3], [0]), a)
    assert np.allclose(partial_trace(ab, [2, 3], [1]), b)
    with pytest.raises(DimensionMismatch):
        partial_trace(ab, [2, 2], [0])


def test_product_decomposition_blocks():
    perm, L = product_decomposition([1, 2], [2, 1])
    assert L.dims == (2, 1, 4, 2)
    # the first product block is span{|0>} (x) span{|0>,|1>}
    assert list(perm[:2]) == [0, 1]


def test_align_basis_examples():
    r = random_density(3, seed=4)
    P = [np.diag([1.0, 1, 0]), np.diag([0.0, 0, 1])]
    out, L = align_basis(r, P)
    assert L.dims == (2, 1) and np.allclose(out, r)
    swapped, L = align_basis(qubit(0.6 + 0.2j), [np.diag([0.0, 1]), np.diag([1.0, 0])])
    assert np.allclose(swapped, qubit(0.6 - 0.2j))


def test_align_basis_rotated_split_matches_projector_pinching():
    r = random_density(4, seed=5)
    W = random_unitary(4, seed=6)
    P = [W @ np.diag(d) @ W.conj().T for d in ([1.0, 1, 0, 0], [0.0, 0, 1, 1])]
    out, L = align_basis(r, P)
    direct = sum(Pk @ r @ Pk for Pk in P)
    aligned = von_neumann_entropy(pinch(out, L)) - von_neumann_entropy(out)
    assert np.isclose(aligned, von_neumann_entropy(direct) - von_neumann_entropy(r), atol=1e-10)


def test_align_basis_errors():
    with pytest.raises(NotAProjector):
        align_basis(np.eye(2) / 2, [np.diag([0.5, 0]), np.diag([0.0, 1])])
    with pytest.raises(NotOrthogonal):
        align_basis(np.eye(2) / 2, [np.eye(2), np.diag([0.0, 1])])
    with pytest.raises(IncompleteResolution):
        align_basis(np.eye(3) / 3, [np.diag([1.0, 0, 0]), np.diag([0.0, 1, 0])])


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**31 - 1), st.lists(st.integers(1, 3), min_size=2, max_size=3))
def test_pinch_properties(seed, dims):
    r = random_density(sum(dims), seed=seed)
    P = pinch(r, dims)
    assert np.allclose(pinch(P, dims), P)
    assert np.isclose(np.trace(P).real, 1.0)
    assert np.linalg.eigvalsh(P).min() > -1e-12
    assert von_neumann_entropy(P) >= von_neumann_entropy(r) - 1e-12
    assert np.isclose(relative_entropy(r, P), von_neumann_entropy(P) - von_neumann_entropy(r), atol=1e-9)
    assert np.allclose(block_probabilities(r, dims).sum(), 1.0)
