"""Symmetry operators and checks that effective Hamiltonians keep them."""

from dataclasses import dataclass
from itertools import product

import numpy as np

from .baselines import givens_block_diagonalize, swt_second_order
from .bloch_brandow import PerturbationSplit, bb_effective
from .ebd import least_action_transform
from .linalg import commutator, random_hermitian
from .partition import BlockPartition, projector


@dataclass(frozen=True)
class SymmetryOperator:
    matrix: np.ndarray
    label: str = ""

    @property
    def is_unitary(self):
        M = self.matrix
        return np.allclose(M.conj().T @ M, np.eye(M.shape[0]), atol=1e-10)

    @property
    def is_hermitian(self):
        M = self.matrix
        return np.allclose(M, M.conj().T, atol=1e-10)

    def __post_init__(self):
        M = np.asarray(self.matrix, dtype=complex)
        object.__setattr__(self, "matrix", M)
        if not (self.is_unitary or self.is_hermitian):
            raise ValueError("symmetry operator must be unitary or hermitian")


def residual(A, B):
    """Frobenius norm of the commutator [A, B]."""
    return float(np.linalg.norm(commutator(np.asarray(A), np.asarray(B))))


def exchange_operator(mode_a, mode_b, dims):
    """Permutation swapping two equal-dimension tensor factors.

    ``dims`` lists the level count of every mode, first mode most significant.
    """
    dims = list(dims)
    if dims[mode_a] != dims[mode_b]:
        raise ValueError(
            f"modes {mode_a} and {mode_b} have different dimensions "
            f"{dims[mode_a]} and {dims[mode_b]}"
        )
    D = int(np.prod(dims))
    P = np.zeros((D, D), dtype=complex)
    for occ in product(*[range(d) for d in dims]):
        swapped = list(occ)
        swapped[mode_a], swapped[mode_b] = occ[mode_b], occ[mode_a]
        P[np.ravel_multi_index(swapped, dims), np.ravel_multi_index(occ, dims)] = 1.0
    return SymmetryOperator(P, label=f"swap({mode_a},{mode_b})")


def effective_hamiltonian(H, partition, method, bb_order=4, givens_strategy="cyclic"):
    """Full-size block-diagonal effective Hamiltonian from one constructor."""
    method = method.upper()
    if method == "LA":
        return least_action_transform(H, partition).H_bd
    if method == "GR":
        return givens_block_diagonalize(H, partition, strategy=givens_strategy).H_bd
    split = PerturbationSplit.from_hamiltonian(H, partition)
    if method == "BB":
        return bb_effective(split, bb_order)
    if method == "SWT2":
        return swt_second_order(split)
    raise ValueError(f"unknown method {method!r}")


def verify_preservation(H, sym, partition, method, **kwargs):
    """Commutator residuals of the input, the projectors and the output."""
    S = sym.matrix if isinstance(sym, SymmetryOperator) else np.asarray(sym)
    H_eff = effective_hamiltonian(H, partition, method, **kwargs)
    return {
        "input_residual": residual(H, S),
        "projector_residuals": [
            residual(projector(partition, k), S) for k in range(partition.n_blocks)
        ],
        "effective_residual": residual(H_eff, S),
        "norm": float(np.linalg.norm(H)),
    }


def random_symmetric_instance(rng, dim, n_blocks=2, coupling=0.05):
    """Random (H, S, partition) with [H, S] = 0 and [P_k, S] = 0.

    S swaps random pairs of basis states inside each block, so it maps every
    block onto itself. H starts as a well-separated diagonal plus a weak
    random coupling and is symmetrized as (H + S H S^H) / 2.
    """
    cuts = np.sort(rng.choice(np.arange(1, dim), size=n_blocks - 1, replace=False))
    blocks = [b.tolist() for b in np.split(np.arange(dim), cuts)]
    partition = BlockPartition.from_blocks(blocks, dim)
    perm = np.arange(dim)
    for b in blocks:
        b = list(rng.permutation(b))
        while len(b) >= 2:
            i, j = b.pop(), b.pop()
            if rng.random() < 0.7:
                perm[i], perm[j] = j, i
    S = np.zeros((dim, dim), dtype=complex)
    S[perm, np.arange(dim)] = 1.0
    levels = np.empty(dim)
    for k, b in enumerate(blocks):
        levels[b] = 2.0 * k + rng.uniform(0.0, 0.5, size=len(b))
    levels = 0.5 * (levels + levels[perm])
    H = np.diag(levels).astype(complex) + random_hermitian(rng, dim, coupling)
    H = 0.5 * (H + S @ H @ S.conj().T)
    return H, SymmetryOperator(S, label="block-preserving permutation"), partition
