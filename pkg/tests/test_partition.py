import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from effham.linalg import hermitian_eig, random_hermitian
from effham.partition import (
    BlockPartition,
    LabelingWarning,
    block_diagonal_part,
    label_eigenvectors,
    off_block_part,
    projector,
)


def test_validation():
    with pytest.raises(ValueError, match="empty"):
        BlockPartition.from_blocks([[0, 1], []])
    with pytest.raises(ValueError, match="appears in blocks"):
        BlockPartition.from_blocks([[0, 1], [1]], 3)
    with pytest.raises(ValueError, match="not covered"):
        BlockPartition.from_blocks([[0], [2]], 3)
    with pytest.raises(ValueError, match="outside"):
        BlockPartition.from_blocks([[0], [5]], 2)


def test_remainder_block():
    p = BlockPartition.with_remainder([[3, 1]], 5)
    assert p.blocks == ((3, 1), (0, 2, 4))
    assert p.block_of.tolist() == [1, 0, 1, 0, 1]
    # nothing left over: no empty trailing block
    assert BlockPartition.with_remainder([[0, 1]], 2).n_blocks == 1


@st.composite
def partitions(draw):
    dim = draw(st.integers(2, 10))
    labels = draw(st.lists(st.integers(0, 3), min_size=dim, max_size=dim))
    blocks = [[i for i in range(dim) if labels[i] == k] for k in sorted(set(labels))]
    return BlockPartition.from_blocks(blocks, dim)


@settings(max_examples=40, deadline=None)
@given(partitions(), st.integers(0, 2**32 - 1))
def test_projectors_and_masks(part, seed):
    P = sum(projector(part, k) for k in range(part.n_blocks))
    assert np.allclose(P, np.eye(part.dim))
    S = random_hermitian(np.random.default_rng(seed), part.dim)
    assert np.allclose(block_diagonal_part(S, part) + off_block_part(S, part), S)
    for k in range(part.n_blocks):
        Pk = projector(part, k)
        assert np.allclose(Pk @ block_diagonal_part(S, part), block_diagonal_part(S, part) @ Pk)


def test_projector_index_checked():
    with pytest.raises(IndexError):
        projector(BlockPartition.from_blocks([[0], [1]]), 2)


def test_labeling_follows_bare_states():
    # weakly coupled levels in scrambled order: every vector goes home
    e = np.array([3.0, 0.0, 2.0, 1.0])
    H = np.diag(e) + 0.01 * (np.ones((4, 4)) - np.eye(4))
    lab = label_eigenvectors(hermitian_eig(H))
    assert np.argmax(np.abs(lab.vectors), axis=0).tolist() == [0, 1, 2, 3]
    assert np.allclose(lab.energies, np.diag(lab.vectors.conj().T @ H @ lab.vectors).real)
    assert not lab.low_overlap


def test_labeling_is_a_permutation_at_crossings():
    # three nearly degenerate states: greedy argmax can pick one vector twice
    H = np.array([[0, 0.5, 0.5], [0.5, 0.001, 0.5], [0.5, 0.5, 0.002]])
    with pytest.warns(LabelingWarning):
        lab = label_eigenvectors(hermitian_eig(H))
    cols = [np.flatnonzero(np.all(np.isclose(hermitian_eig(H).vectors, v[:, None]), axis=0))
            for v in lab.vectors.T]
    assert sorted(int(c[0]) for c in cols) == [0, 1, 2]
    assert lab.low_overlap


def test_labeling_warning_can_be_silenced(recwarn):
    H = np.array([[0, 1.0], [1.0, 0]]) + np.diag([0, 1e-3])
    label_eigenvectors(hermitian_eig(np.kron(H, np.eye(2)) + 0.3), warn=False)
    assert not [w for w in recwarn if issubclass(w.category, LabelingWarning)]
