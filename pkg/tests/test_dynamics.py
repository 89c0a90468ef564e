import numpy as np
import pytest
import scipy.linalg as sla
from hypothesis import given, settings
from hypothesis import strategies as st

from effham.dynamics import (
    PAULI,
    Propagator,
    avg_projected_fidelity,
    basis_state,
    fft_extract_coupling,
    nu_zx,
    pauli_coefficients,
    pauli_reconstruct,
    projected_fidelity_trace,
    three_body_kappa,
    three_body_operator,
    zz_strength,
)
from effham.errors import NoPeak
from effham.linalg import random_hermitian


def test_propagator_matches_expm():
    H = random_hermitian(np.random.default_rng(0), 4, 0.1)
    psi = basis_state(4, 2)
    out = Propagator(H).evolve(psi, [0.0, 3.7])
    assert np.allclose(out[0], psi)
    assert np.allclose(out[1], sla.expm(-2j * np.pi * H * 3.7) @ psi)


def test_projected_fidelity_exact_for_decoupled_block():
    H = np.diag([0.0, 0.3, 5.0]).astype(complex)
    H[0, 1] = H[1, 0] = 0.01
    psi = basis_state(3, 0)
    tr = projected_fidelity_trace(H, H[:2, :2], [0, 1], psi, np.linspace(0, 100, 11))
    assert np.allclose(tr, 1.0)
    avg = avg_projected_fidelity(H, H, [0, 1], psi, T_total=100.0, N_steps=11)
    assert avg["mean"] == pytest.approx(1.0)


def test_projected_fidelity_input_checks():
    H = np.eye(3)
    with pytest.raises(ValueError, match="supported"):
        projected_fidelity_trace(H, H, [0, 1], basis_state(3, 2), [0.0])
    with pytest.raises(ValueError, match="normalized"):
        projected_fidelity_trace(H, H, [0, 1], 2 * basis_state(3, 0), [0.0])


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_pauli_round_trip(seed):
    H = random_hermitian(np.random.default_rng(seed), 4)
    c = pauli_coefficients(H)
    assert len(c) == 16
    assert np.allclose(pauli_reconstruct(c), H)


def test_pauli_checks():
    assert nu_zx(np.kron(PAULI["Z"], PAULI["X"])) == pytest.approx(2.0)
    with pytest.raises(ValueError):
        pauli_coefficients(np.eye(3))


def test_zz_strength():
    H = np.diag([0.0, 1.0, 2.0, 3.5])
    labels = {"00": 0, "01": 1, "10": 2, "11": 3}
    assert zz_strength(H, labels) == pytest.approx(0.5)
    with pytest.raises(KeyError, match="11"):
        zz_strength(H, {"00": 0, "01": 1, "10": 2})


def test_three_body_operator():
    K = three_body_operator()
    assert np.trace(K.conj().T @ K).real == pytest.approx(1.0)
    kappa, overlap = three_body_kappa(0.3 * K)
    assert overlap == pytest.approx(0.3)
    # for K itself <110|K|011> = +1/2 and <100|K|001> = -1/2, so kappa = overlap
    assert kappa == pytest.approx(0.3)
    with pytest.raises(ValueError):
        three_body_kappa(np.eye(4))


@pytest.mark.parametrize("g", [0.001, 0.0042, 0.02])
def test_fft_recovers_two_level_coupling(g):
    H = np.array([[0, g], [g, 0]], dtype=complex)
    assert fft_extract_coupling(H, 0, 1, T_total=20_000.0) == pytest.approx(g, abs=5e-7)


def test_fft_no_transfer():
    with pytest.raises(NoPeak):
        fft_extract_coupling(np.diag([0.0, 1.0]), 0, 1, T_total=100.0, n_points=256)
