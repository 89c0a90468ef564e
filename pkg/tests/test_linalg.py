import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from effham.errors import NonHermitianInput, SingularBlock
from effham.linalg import (
    as_matrix,
    check_hermitian,
    evolve_operator,
    fix_gauge,
    hermitian_eig,
    inv_sqrt_psd,
    random_hermitian,
    random_unitary,
    sqrt_psd,
    svd,
)

seeds = st.integers(0, 2**32 - 1)
dims = st.integers(1, 9)


def _rng(seed):
    return np.random.default_rng(seed)


@settings(max_examples=40, deadline=None)
@given(seeds, dims)
def test_eig_reconstructs_and_is_sorted(seed, dim):
    H = random_hermitian(_rng(seed), dim)
    eig = hermitian_eig(H)
    assert np.all(np.diff(eig.values) >= 0)
    assert np.allclose(eig.reconstruct(), H, atol=1e-10)
    assert np.allclose(eig.vectors.conj().T @ eig.vectors, np.eye(dim), atol=1e-10)


@settings(max_examples=40, deadline=None)
@given(seeds, dims)
def test_gauge_pivots_are_real_positive(seed, dim):
    V = fix_gauge(random_unitary(_rng(seed), dim))
    piv = V[np.argmax(np.round(np.abs(V), 12), axis=0), np.arange(dim)]
    assert np.allclose(piv.imag, 0, atol=1e-12)
    assert np.all(piv.real > 0)


@settings(max_examples=30, deadline=None)
@given(seeds, dims)
def test_inverse_square_root(seed, dim):
    X = random_hermitian(_rng(seed), dim)
    A = X @ X + np.eye(dim)
    R = inv_sqrt_psd(A)
    assert np.allclose(R @ A @ R, np.eye(dim), atol=1e-9)
    S = sqrt_psd(A)
    assert np.allclose(S @ S, A, atol=1e-9)


def test_singular_block_detected():
    with pytest.raises(SingularBlock):
        inv_sqrt_psd(np.diag([1.0, 1e-14]))
    with pytest.raises(SingularBlock):
        inv_sqrt_psd(np.zeros((2, 2)))


def test_non_hermitian_rejected():
    with pytest.raises(NonHermitianInput):
        check_hermitian([[0, 1], [0, 0]])
    # a tiny defect relative to the norm passes
    check_hermitian(np.array([[1e6, 1], [1 + 1e-7, 0]]))


@pytest.mark.parametrize("bad", [np.zeros((2, 3)), np.zeros(3), [[np.nan, 0], [0, 0]]])
def test_as_matrix_rejects(bad):
    with pytest.raises(ValueError):
        as_matrix(bad)


@settings(max_examples=25, deadline=None)
@given(seeds, st.integers(1, 6), st.floats(0, 50), st.floats(0, 50))
def test_evolution_is_a_unitary_group(seed, dim, t1, t2):
    H = random_hermitian(_rng(seed), dim, 0.1)
    U1, U2 = evolve_operator(H, t1), evolve_operator(H, t2)
    assert np.allclose(U1.conj().T @ U1, np.eye(dim), atol=1e-10)
    assert np.allclose(U1 @ U2, evolve_operator(H, t1 + t2), atol=1e-9)


def test_evolution_units():
    # a 1 GHz level picks up a full turn of phase per ns
    U = evolve_operator(np.diag([0.0, 1.0]), 0.25)
    assert np.isclose(U[1, 1], np.exp(-0.5j * np.pi))


@settings(max_examples=25, deadline=None)
@given(seeds, st.integers(1, 6), st.integers(1, 6))
def test_svd_convention(seed, m, n):
    rng = _rng(seed)
    A = rng.normal(size=(m, n)) + 1j * rng.normal(size=(m, n))
    U, s, V = svd(A)
    k = min(m, n)
    assert np.allclose((U[:, :k] * s) @ V[:, :k].conj().T, A, atol=1e-10)
