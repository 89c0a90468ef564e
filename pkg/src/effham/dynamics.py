"""Time evolution benchmarks and extraction of effective observables."""

from itertools import product

import numpy as np

from .errors import NoPeak
from .linalg import check_hermitian, hermitian_eig

PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


class Propagator:
    """exp(-2 pi i H t) applied to states through a cached eigendecomposition."""

    def __init__(self, H):
        eig = hermitian_eig(check_hermitian(H))
        self.values = eig.values
        self.vectors = eig.vectors

    def evolve(self, psi0, times):
        """Rows are psi(t) for each t in ``times``."""
        c = self.vectors.conj().T @ np.asarray(psi0, dtype=complex)
        phases = np.exp(-2j * np.pi * np.outer(times, self.values))
        return (phases * c[None, :]) @ self.vectors.T


def basis_state(dim, index):
    psi = np.zeros(dim, dtype=complex)
    psi[index] = 1.0
    return psi


def projected_fidelity_trace(H_full, H_eff, computational_indices, psi0, times):
    """F(t) = |<P psi_exact(t)|psi_eff(t)>|^2 on the given time grid.

    ``H_eff`` may be either full size or the computational block alone.
    """
    H_full = check_hermitian(H_full)
    idx = np.asarray(computational_indices)
    psi0 = np.asarray(psi0, dtype=complex)
    if np.linalg.norm(np.delete(psi0, idx)) > 1e-12:
        raise ValueError("initial state must be supported on the computational indices")
    if not np.isclose(np.linalg.norm(psi0), 1.0, atol=1e-10):
        raise ValueError("initial state must be normalized")
    H_eff = np.asarray(H_eff, dtype=complex)
    if H_eff.shape[0] == H_full.shape[0]:
        H_eff = H_eff[np.ix_(idx, idx)]
    exact = Propagator(H_full).evolve(psi0, times)[:, idx]
    eff = Propagator(H_eff).evolve(psi0[idx], times)
    return np.abs(np.sum(exact.conj() * eff, axis=1)) ** 2


def avg_projected_fidelity(H_full, H_eff, computational_indices, psi0, T_total=10_000.0,
                           N_steps=2**13):
    """Mean of the projected fidelity over a uniform grid on [0, T_total] ns."""
    times = np.linspace(0.0, T_total, N_steps)
    trace = projected_fidelity_trace(H_full, H_eff, computational_indices, psi0, times)
    return {"mean": float(trace.mean()), "trace": trace, "times": times}


def population_trace(H, init_index, target_index, times):
    psi = Propagator(H).evolve(basis_state(H.shape[0], init_index), times)
    return np.abs(psi[:, target_index]) ** 2


def _dominant_frequency(signal, dt, pad_factor):
    x = np.asarray(signal, dtype=float)
    x = x - x.mean()
    n = len(x) * pad_factor
    spec = np.abs(np.fft.rfft(x, n=n))
    freqs = np.fft.rfftfreq(n, d=dt)
    spec[0] = 0.0
    k = int(np.argmax(spec))
    if spec[k] <= 1e-9 * max(len(x), 1):
        raise NoPeak("population never transfers: spectrum is flat")
    if 0 < k < len(spec) - 1:
        a, b, c = spec[k - 1], spec[k], spec[k + 1]
        den = a - 2 * b + c
        shift = 0.5 * (a - c) / den if den != 0 else 0.0
    else:
        shift = 0.0
    return (k + shift) * (freqs[1] - freqs[0])


def fft_extract_coupling(H, init_index, target_index, T_total=20_000.0, n_points=2**15,
                         pad_factor=4):
    """Effective coupling from the swap oscillation of the target population.

    Population oscillates at twice the coupling, so the peak frequency of
    the padded spectrum is halved.
    """
    H = check_hermitian(H)
    times = np.linspace(0.0, T_total, n_points, endpoint=False)
    pop = population_trace(H, init_index, target_index, times)
    return 0.5 * _dominant_frequency(pop, times[1] - times[0], pad_factor)


def pauli_coefficients(H):
    """c_PQ = Re Tr[(P x Q) H] / 4 for a 4x4 operator in the {00,01,10,11} basis."""
    H = np.asarray(H, dtype=complex)
    if H.shape != (4, 4):
        raise ValueError("expected a 4x4 two-qubit operator")
    return {
        p + q: float(np.real(np.trace(np.kron(PAULI[p], PAULI[q]) @ H)) / 4)
        for p, q in product("IXYZ", repeat=2)
    }


def pauli_reconstruct(coeffs):
    return sum(c * np.kron(PAULI[k[0]], PAULI[k[1]]) for k, c in coeffs.items())


def nu_zx(H_eff_2q):
    """ZX rate with the convention nu_ZX = 2 c_ZX."""
    return 2.0 * pauli_coefficients(H_eff_2q)["ZX"]


def zz_strength(H_eff, labels):
    """E11 - E10 - E01 + E00 from diagonal entries.

    ``labels`` maps "00", "01", "10", "11" to indices of H_eff.
    """
    d = np.real(np.diag(np.asarray(H_eff)))
    try:
        return float(d[labels["11"]] - d[labels["10"]] - d[labels["01"]] + d[labels["00"]])
    except KeyError as exc:
        raise KeyError(f"missing computational label {exc}") from None


def three_body_operator():
    """K = -(X Z X + Y Z Y)/4, with Tr(K^2) = 1 so Tr(K^H H) reads kappa."""
    X, Y, Z = PAULI["X"], PAULI["Y"], PAULI["Z"]
    return -0.25 * (np.kron(np.kron(X, Z), X) + np.kron(np.kron(Y, Z), Y))


def three_body_kappa(H_eff_3q):
    """kappa = <110|H|011> - <100|H|001> and the overlap Tr(K^H H).

    H_eff_3q is 8x8 in the qubit basis |q1 q2 q3>, q1 most significant.
    """
    H = np.asarray(H_eff_3q, dtype=complex)
    if H.shape != (8, 8):
        raise ValueError("expected an 8x8 three-qubit operator")
    kappa = float(np.real(H[0b110, 0b011] - H[0b100, 0b001]))
    K = three_body_operator()
    overlap = float(np.real(np.trace(K.conj().T @ H)))
    return kappa, overlap
