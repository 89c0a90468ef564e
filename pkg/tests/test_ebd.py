import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from effham.ebd import (
    fidelity_lower_bound,
    least_action_transform,
    long_time_trace_fidelity,
    soundness_metric,
    trace_fidelity_series,
)
from effham.errors import SingularBlock, SpectrumMismatch
from effham.linalg import random_hermitian, random_unitary
from effham.partition import BlockPartition, LabeledEigenSystem, off_block_norm

pytestmark = pytest.mark.filterwarnings("ignore::UserWarning")


def _instance(seed, dim, coupling=0.1):
    rng = np.random.default_rng(seed)
    H = np.diag(np.arange(dim, dtype=float)) + random_hermitian(rng, dim, coupling)
    k = dim // 2
    return H, BlockPartition.from_blocks([range(k), range(k, dim)]), rng


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 10))
def test_transform_is_unitary_and_block_diagonalizes(seed, dim):
    H, part, _ = _instance(seed, dim)
    r = least_action_transform(H, part)
    assert np.allclose(r.T.conj().T @ r.T, np.eye(dim), atol=1e-9)
    assert off_block_norm(r.H_bd, part) == 0.0
    assert np.allclose(r.T.conj().T @ H @ r.T, r.H_bd, atol=1e-9)
    assert np.allclose(np.linalg.eigvalsh(r.H_bd), np.linalg.eigvalsh(H), atol=1e-9)
    assert np.isclose(r.distance_sq, np.linalg.norm(r.T - np.eye(dim)) ** 2)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 8))
def test_least_action_is_minimal(seed, dim):
    # any T W with W block-diagonal unitary also block diagonalizes H
    H, part, rng = _instance(seed, dim)
    r = least_action_transform(H, part)
    W = np.zeros((dim, dim), dtype=complex)
    for b in part.blocks:
        W[np.ix_(b, b)] = random_unitary(rng, len(b))
    other = r.T @ W
    assert off_block_norm(other.conj().T @ H @ other, part) < 1e-8
    assert r.distance_sq <= np.linalg.norm(other - np.eye(dim)) ** 2 + 1e-10


def test_uncoupled_blocks_give_identity():
    H = np.diag([0.0, 1.0, 5.0]) + np.array([[0, 0.2, 0], [0.2, 0, 0], [0, 0, 0]])
    r = least_action_transform(H, BlockPartition.from_blocks([[0, 1], [2]]))
    assert np.allclose(r.T, np.eye(3))
    assert r.distance_sq < 1e-20 and r.fidelity_bound == pytest.approx(1.0)
    assert r.soundness == pytest.approx(1.0)


def test_two_level_closed_form():
    # [[0, g], [g, D]] split into singletons: the shift is the exact level
    D, g = 1.0, 0.2
    H = np.array([[0, g], [g, D]])
    r = least_action_transform(H, BlockPartition.from_blocks([[0], [1]]))
    assert r.H_bd[0, 0].real == pytest.approx(0.5 * (D - np.hypot(D, 2 * g)))
    theta = 0.5 * np.arctan2(2 * g, D)
    assert r.distance_sq == pytest.approx(2 * (2 - 2 * np.cos(theta)))


def test_bound_formula_edges():
    assert fidelity_lower_bound(0.0, 4) == 1.0
    assert fidelity_lower_bound(4.0, 4) == pytest.approx(0.25)
    assert fidelity_lower_bound(8.0, 4) == 0.0
    assert fidelity_lower_bound(100.0, 4) == 0.0
    with pytest.raises(ValueError):
        fidelity_lower_bound(-1.0, 4)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 9))
def test_long_time_fidelity_respects_bound(seed, dim):
    rng = np.random.default_rng(seed)
    H = random_hermitian(rng, dim)
    k = int(rng.integers(1, dim))
    perm = rng.permutation(dim)
    part = BlockPartition.from_blocks([sorted(perm[:k]), sorted(perm[k:])])
    r = least_action_transform(H, part)
    F = long_time_trace_fidelity(H, r.H_bd)
    assert 0.0 <= F <= 1.0 + 1e-12
    assert F >= r.fidelity_bound - 1e-12


def test_long_time_fidelity_matches_time_average():
    H, part, _ = _instance(3, 4, 0.3)
    r = least_action_transform(H, part)
    times = np.linspace(0, 4000, 40001)
    series = trace_fidelity_series(H, r.H_bd, times)
    assert abs(series[0]) == pytest.approx(1.0)
    F = long_time_trace_fidelity(H, r.H_bd)
    # the long-time limit is the average of the complex trace; |Tr| averages higher
    assert abs(np.mean(series)) == pytest.approx(F, abs=5e-3)
    assert np.mean(np.abs(series)) >= F - 5e-3


def test_fidelity_of_identical_and_mismatched():
    H = random_hermitian(np.random.default_rng(1), 5)
    assert long_time_trace_fidelity(H, H) == pytest.approx(1.0)
    with pytest.raises(SpectrumMismatch):
        long_time_trace_fidelity(H, H + 0.1 * np.eye(5))
    with pytest.raises(ValueError):
        long_time_trace_fidelity(H, np.eye(3))


def test_degenerate_spectrum_counts_whole_groups():
    # both operators are multiples of the identity, any eigenbasis is fine
    assert long_time_trace_fidelity(np.eye(3), np.eye(3)) == pytest.approx(1.0)


def test_singular_block_from_crafted_labels():
    H = np.array([[0, 1.0], [1.0, 0]])
    labels = LabeledEigenSystem(np.array([-1.0, 1.0]), np.array([[0, 1.0], [1.0, 0]]),
                                np.zeros(2), True)
    with pytest.raises(SingularBlock):
        least_action_transform(H, BlockPartition.from_blocks([[0], [1]]), labels=labels)


def test_soundness_range():
    part = BlockPartition.from_blocks([[0, 1], [2]])
    assert soundness_metric(np.eye(3), part) == pytest.approx(1.0)
    half = np.diag([np.sqrt(0.5), np.sqrt(0.5), 1.0])
    assert 0.0 < soundness_metric(half, part) < 1.0
