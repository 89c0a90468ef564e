"""Exact block diagonalization by the least-action criterion.

Among all unitaries T that make T^H H T block diagonal for a given partition,
the one closest to the identity in Frobenius norm is

    T = S S_BD^H (S_BD S_BD^H)^{-1/2},

where S holds the labeled eigenvectors of H and S_BD is its block-diagonal
part. This module builds T, the fidelity lower bound implied by ||T - I||_F,
the exact long-time average of the trace fidelity, and the soundness score.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .errors import SingularBlock, SpectrumMismatch
from .linalg import check_hermitian, hermitian_eig, inv_sqrt_psd, sqrt_psd
from .partition import (
    block_diagonal_part,
    label_eigenvectors,
    off_block_norm,
    projector,
)

DEGENERACY_TOL = 1e-9
SPECTRUM_TOL = 1e-6


@dataclass
class EffectiveResult:
    T: np.ndarray
    H_bd: np.ndarray
    distance_sq: float
    fidelity_bound: float
    soundness: float
    labels: object = None
    partition: object = None
    sweeps: int = 0

    @property
    def off_block_norm(self):
        return off_block_norm(self.H_bd, self.partition)

    def block(self, k):
        idx = self.partition.indices(k)
        return self.H_bd[np.ix_(idx, idx)]


def fidelity_lower_bound(distance_sq, D):
    """(1 - d^2 / 2D)^2, clamped to zero once d^2 exceeds 2D."""
    if distance_sq < 0:
        raise ValueError("distance_sq must be non-negative")
    if distance_sq > 2 * D:
        return 0.0
    return (1.0 - distance_sq / (2.0 * D)) ** 2


def _blockwise_inv_sqrt(A, partition, rel_tol):
    out = np.zeros_like(A)
    for k in range(partition.n_blocks):
        idx = partition.indices(k)
        sub = A[np.ix_(idx, idx)]
        try:
            out[np.ix_(idx, idx)] = inv_sqrt_psd(sub, rel_tol=rel_tol)
        except SingularBlock as exc:
            raise SingularBlock(f"block {k}: {exc}") from None
    return out


def soundness_metric(S_BD, partition, computational_block=0):
    """Static [0, 1] score of how well the eigenbasis stays in one block.

    The first term measures population retained in the computational block,
    the second the phase coherence of the polar factor restricted to it.
    """
    P = projector(partition, computational_block)
    d = len(partition.blocks[computational_block])
    M = S_BD @ S_BD.conj().T
    retained = np.trace(P @ M @ P).real
    coherence = abs(np.trace(P @ sqrt_psd(M) @ P)) ** 2
    return float((retained + coherence) / (d * (d + 1)))


def least_action_transform(H, partition, computational_block=0, rel_tol=1e-10, labels=None):
    """EBD-LA effective Hamiltonian for ``partition``.

    ``labels`` may carry a precomputed LabeledEigenSystem for H.
    """
    H = check_hermitian(H)
    if labels is None:
        labels = label_eigenvectors(hermitian_eig(H))
    S = labels.vectors
    S_BD = block_diagonal_part(S, partition)
    A = S_BD @ S_BD.conj().T
    A = 0.5 * (A + A.conj().T)
    A_isq = _blockwise_inv_sqrt(A, partition, rel_tol)
    T = S @ S_BD.conj().T @ A_isq
    # T^H H T = A^{-1/2} S_BD E S_BD^H A^{-1/2}; this form is block diagonal
    # by construction, so off-block entries are exact zeros
    core = A_isq @ (S_BD * labels.energies) @ S_BD.conj().T @ A_isq
    H_bd = block_diagonal_part(0.5 * (core + core.conj().T), partition)
    D = H.shape[0]
    distance_sq = float(np.linalg.norm(T - np.eye(D)) ** 2)
    return EffectiveResult(
        T=T,
        H_bd=H_bd,
        distance_sq=distance_sq,
        fidelity_bound=fidelity_lower_bound(distance_sq, D),
        soundness=soundness_metric(S_BD, partition, computational_block),
        labels=labels,
        partition=partition,
    )


def _spectral_scale(values):
    return max(float(np.max(np.abs(values))), 1e-300) if len(values) else 1.0


def degenerate_groups(values, tol):
    """Split ascending ``values`` into runs whose neighbours differ by < tol."""
    groups = []
    start = 0
    for i in range(1, len(values) + 1):
        if i == len(values) or values[i] - values[i - 1] >= tol:
            groups.append(np.arange(start, i))
            start = i
    return groups


def long_time_trace_fidelity(H, H_eff_full):
    """Infinite-time average of Tr[U^H U_eff] / D for isospectral H, H_eff.

    Eigenvectors of both operators are paired by sorted eigenvalue; within
    a degenerate group every |W_mn|^2 survives the time average.
    """
    H = check_hermitian(H)
    H_eff_full = check_hermitian(H_eff_full)
    if H.shape != H_eff_full.shape:
        raise ValueError("H and H_eff must have the same dimension")
    e, S = sla.eigh(0.5 * (H + H.conj().T))
    f, F = sla.eigh(0.5 * (H_eff_full + H_eff_full.conj().T))
    scale = _spectral_scale(e)
    mismatch = np.max(np.abs(e - f)) if len(e) else 0.0
    if mismatch > SPECTRUM_TOL * scale:
        raise SpectrumMismatch(f"spectra differ by {mismatch:.3e}")
    W2 = np.abs(F.conj().T @ S) ** 2
    total = 0.0
    for g in degenerate_groups(e, DEGENERACY_TOL * scale):
        total += W2[np.ix_(g, g)].sum()
    return float(total / H.shape[0])


def trace_fidelity_series(H, H_eff_full, times):
    """Complex Tr[U^H(t) U_eff(t)] / D on a time grid (ns)."""
    e, S = sla.eigh(H)
    f, F = sla.eigh(H_eff_full)
    W = F.conj().T @ S
    out = np.empty(len(times), dtype=complex)
    W2 = np.abs(W) ** 2
    for n, t in enumerate(times):
        # Tr[S e^{+iEt} S^H F e^{-iFt} F^H] = sum_mn W*_mn W_mn e^{i(E_n - F_m)t}
        phase = np.exp(2j * np.pi * (e[None, :] - f[:, None]) * t)
        out[n] = np.sum(W2 * phase) / len(e)
    return out
