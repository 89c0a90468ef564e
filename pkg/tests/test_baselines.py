import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from effham.baselines import givens_block_diagonalize, swt_generator, swt_second_order
from effham.bloch_brandow import PerturbationSplit, bb_effective
from effham.errors import NoConvergence, ResonantDenominator
from effham.linalg import random_hermitian
from effham.partition import BlockPartition, off_block_norm

pytestmark = pytest.mark.filterwarnings("ignore::UserWarning")


def _instance(seed, dim, eps=0.1):
    rng = np.random.default_rng(seed)
    k = dim // 2
    H = np.diag(np.arange(dim, dtype=float)) + eps * random_hermitian(rng, dim)
    return H, BlockPartition.from_blocks([range(k), range(k, dim)])


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 8), st.sampled_from(["cyclic", "largest"]))
def test_givens_converges(seed, dim, strategy):
    H, part = _instance(seed, dim)
    r = givens_block_diagonalize(H, part, strategy=strategy)
    assert np.allclose(r.T.conj().T @ r.T, np.eye(dim), atol=1e-10)
    assert off_block_norm(r.T.conj().T @ H @ r.T, part) <= 1e-9 * np.linalg.norm(H)
    assert np.allclose(np.linalg.eigvalsh(r.H_bd), np.linalg.eigvalsh(H), atol=1e-8)
    assert r.sweeps >= 1


def test_givens_limits():
    H, part = _instance(0, 4)
    with pytest.raises(NoConvergence):
        givens_block_diagonalize(H, part, max_sweeps=0)
    with pytest.raises(ValueError):
        givens_block_diagonalize(H, part, strategy="random")
    # already block diagonal: no sweeps at all
    assert givens_block_diagonalize(np.diag([1.0, 2.0]), BlockPartition.from_blocks([[0], [1]])
                                    ).sweeps == 0


def test_swt_two_level():
    D, g = 2.0, 0.1
    sp = PerturbationSplit.from_hamiltonian(np.array([[0, g], [g, D]]),
                                            BlockPartition.from_blocks([[0], [1]]))
    H2 = swt_second_order(sp)
    assert H2[0, 0].real == pytest.approx(-g**2 / D)
    assert H2[1, 1].real == pytest.approx(D + g**2 / D)
    assert H2[0, 1] == 0


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 8))
def test_swt2_equals_symmetrized_bb2(seed, dim):
    H, part = _instance(seed, dim)
    sp = PerturbationSplit.from_hamiltonian(H, part)
    assert np.allclose(swt_second_order(sp), bb_effective(sp, 2), atol=1e-12)


def test_swt_generator_is_antihermitian_and_resonance_checked():
    H, part = _instance(2, 5)
    S1, _ = swt_generator(PerturbationSplit.from_hamiltonian(H, part))
    assert np.allclose(S1, -S1.conj().T)
    bad = np.array([[1.0, 0.1], [0.1, 1.0]])
    with pytest.raises(ResonantDenominator):
        swt_generator(PerturbationSplit.from_hamiltonian(bad, BlockPartition.from_blocks([[0], [1]])))
