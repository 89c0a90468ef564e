"""Baseline constructors: second-order Schrieffer-Wolff and Givens sweeps."""

import numpy as np

from .bloch_brandow import DENOM_TOL
from .ebd import EffectiveResult, fidelity_lower_bound, soundness_metric
from .errors import NoConvergence, ResonantDenominator
from .linalg import check_hermitian, hermitian_eig
from .partition import (
    block_diagonal_part,
    label_eigenvectors,
    off_block_norm,
    off_block_part,
)


def swt_generator(split, denom_tol=DENOM_TOL):
    """First-order generator S1 with (S1)_ab = (V_od)_ab / (e_a - e_b)."""
    V_od = off_block_part(split.V, split.partition)
    e = split.H0_diag
    gaps = e[:, None] - e[None, :]
    live = np.abs(V_od) > 0
    small = np.abs(gaps) <= denom_tol
    bad = live & small
    if np.any(bad):
        a, b = np.argwhere(bad)[0]
        raise ResonantDenominator(
            f"resonant denominator between states {a} and {b}: gap {gaps[a, b]:.3e}",
            where=(int(a), int(b), float(gaps[a, b])),
            gap=float(gaps[a, b]),
        )
    S1 = np.zeros_like(V_od)
    S1[live] = V_od[live] / gaps[live]
    return S1, V_od


def swt_second_order(split, denom_tol=DENOM_TOL):
    """H0 + block-diag(V) + 1/2 block-diag([S1, V_od])."""
    S1, V_od = swt_generator(split, denom_tol)
    second = 0.5 * (S1 @ V_od - V_od @ S1)
    H = split.H0() + block_diagonal_part(split.V, split.partition)
    H = H + block_diagonal_part(second, split.partition)
    return 0.5 * (H + H.conj().T)


def _off_block_pairs(partition):
    owner = partition.block_of
    n = partition.dim
    return [(i, j) for i in range(n) for j in range(i + 1, n) if owner[i] != owner[j]]


def _rotate(H, U, p, q):
    """Zero H[p, q] with the smallest rotation in the (p, q) plane."""
    h = H[p, q]
    mag = abs(h)
    a = H[p, p].real
    b = H[q, q].real
    if a == b:
        theta = np.pi / 4
    else:
        theta = 0.5 * np.arctan(2 * mag / (a - b))
    phase = h / mag
    c = np.cos(theta)
    s = np.sin(theta)
    G = np.array([[c, -s * phase], [s * np.conj(phase), c]])
    idx = [p, q]
    # H <- G^H H G restricted to the touched rows and columns
    H[:, idx] = H[:, idx] @ G
    H[idx, :] = G.conj().T @ H[idx, :]
    U[:, idx] = U[:, idx] @ G
    return theta


def givens_block_diagonalize(H, partition, strategy="cyclic", tol=1e-10, max_sweeps=1000,
                             computational_block=0):
    """Jacobi-style elimination of off-block elements.

    ``cyclic`` visits off-block pairs in row-major order each sweep;
    ``largest`` always rotates the largest remaining off-block element, and
    one sweep counts as as many rotations as there are off-block pairs.
    """
    H = check_hermitian(H)
    if strategy not in ("cyclic", "largest"):
        raise ValueError(f"unknown strategy {strategy!r}")
    Hw = 0.5 * (H + H.conj().T)
    D = H.shape[0]
    U = np.eye(D, dtype=complex)
    target = tol * max(np.linalg.norm(H), 1e-300)
    pairs = _off_block_pairs(partition)
    mask = ~partition.same_block_mask()
    sweeps = 0
    while off_block_norm(Hw, partition) > target:
        if sweeps >= max_sweeps:
            raise NoConvergence(
                f"givens sweeps did not converge after {max_sweeps} sweeps "
                f"(off-block norm {off_block_norm(Hw, partition):.3e})"
            )
        if strategy == "cyclic":
            for p, q in pairs:
                if abs(Hw[p, q]) > 0:
                    _rotate(Hw, U, p, q)
        else:
            for _ in range(len(pairs)):
                mags = np.where(mask, np.abs(Hw), 0.0)
                p, q = np.unravel_index(np.argmax(mags), mags.shape)
                if mags[p, q] <= 0:
                    break
                _rotate(Hw, U, min(p, q), max(p, q))
        sweeps += 1
    H_gr = U.conj().T @ H @ U
    H_gr = block_diagonal_part(0.5 * (H_gr + H_gr.conj().T), partition)
    distance_sq = float(np.linalg.norm(U - np.eye(D)) ** 2)
    labels = label_eigenvectors(hermitian_eig(H), warn=False)
    S_BD = block_diagonal_part(labels.vectors, partition)
    result = EffectiveResult(
        T=U,
        H_bd=H_gr,
        distance_sq=distance_sq,
        fidelity_bound=fidelity_lower_bound(distance_sq, D),
        soundness=soundness_metric(S_BD, partition, computational_block),
        labels=labels,
        partition=partition,
        sweeps=sweeps,
    )
    return result
