"""Block structure of the Hilbert space and eigenvector labeling."""

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

LOW_OVERLAP = 0.5


class LabelingWarning(UserWarning):
    pass


@dataclass(frozen=True)
class BlockPartition:
    """Ordered, disjoint index sets covering ``range(dim)``."""

    blocks: tuple
    dim: int
    block_of: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        blocks = tuple(tuple(int(i) for i in b) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        owner = np.full(self.dim, -1, dtype=int)
        for k, b in enumerate(blocks):
            if not b:
                raise ValueError(f"block {k} is empty")
            for i in b:
                if not 0 <= i < self.dim:
                    raise ValueError(f"index {i} outside 0..{self.dim - 1}")
                if owner[i] >= 0:
                    raise ValueError(f"index {i} appears in blocks {owner[i]} and {k}")
                owner[i] = k
        if np.any(owner < 0):
            missing = np.flatnonzero(owner < 0).tolist()
            raise ValueError(f"indices not covered by any block: {missing}")
        owner.setflags(write=False)
        object.__setattr__(self, "block_of", owner)

    @classmethod
    def from_blocks(cls, blocks, dim=None):
        blocks = [list(b) for b in blocks]
        if dim is None:
            dim = sum(len(b) for b in blocks)
        return cls(blocks=tuple(blocks), dim=dim)

    @classmethod
    def with_remainder(cls, blocks, dim):
        """Listed blocks plus one trailing block holding every unlisted index."""
        used = set(i for b in blocks for i in b)
        rest = [i for i in range(dim) if i not in used]
        blocks = [list(b) for b in blocks]
        if rest:
            blocks.append(rest)
        return cls(blocks=tuple(blocks), dim=dim)

    @property
    def n_blocks(self):
        return len(self.blocks)

    def same_block_mask(self):
        return self.block_of[:, None] == self.block_of[None, :]

    def indices(self, k):
        return np.array(self.blocks[k], dtype=int)


def projector(partition, block_index):
    if not 0 <= block_index < partition.n_blocks:
        raise IndexError(f"block index {block_index} out of range")
    P = np.zeros((partition.dim, partition.dim), dtype=complex)
    idx = partition.indices(block_index)
    P[idx, idx] = 1.0
    return P


def block_diagonal_part(S, partition):
    S = np.asarray(S)
    return np.where(partition.same_block_mask(), S, 0.0)


def off_block_part(S, partition):
    S = np.asarray(S)
    return np.where(partition.same_block_mask(), 0.0, S)


def off_block_norm(A, partition):
    return float(np.linalg.norm(off_block_part(A, partition)))


@dataclass(frozen=True)
class LabeledEigenSystem:
    """Eigenpairs reordered so that column j belongs to bare state j."""

    energies: np.ndarray
    vectors: np.ndarray
    assignment_overlaps: np.ndarray
    low_overlap: bool


def label_eigenvectors(eig, warn=True):
    """Assign each eigenvector to one bare basis state.

    The assignment maximizes the total squared overlap sum_j |<j|v_sigma(j)>|^2
    with an exact linear assignment solve, which stays correct near avoided
    crossings where a greedy pick can assign two states to one vector.
    """
    V = np.asarray(eig.vectors)
    weights = np.abs(V) ** 2
    # rows: basis states, cols: eigenvectors
    rows, cols = linear_sum_assignment(weights, maximize=True)
    order = np.empty(V.shape[0], dtype=int)
    order[rows] = cols
    vectors = V[:, order]
    overlaps = weights[np.arange(V.shape[0]), order]
    low = bool(np.any(overlaps < LOW_OVERLAP))
    if low and warn:
        warnings.warn(
            f"eigenvector labeling has overlap {overlaps.min():.3f} < {LOW_OVERLAP}",
            LabelingWarning,
            stacklevel=2,
        )
    return LabeledEigenSystem(
        energies=np.asarray(eig.values)[order],
        vectors=vectors,
        assignment_overlaps=overlaps,
        low_overlap=low,
    )
