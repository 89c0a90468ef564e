"""Long-time trace fidelity of the least-action model against its bound.

Draws random hermitian matrices with a random two-block split, builds the
least-action effective Hamiltonian, and compares the time-averaged trace
fidelity with (1 - d^2 / 2D)^2. No instance should fall below the bound.
Dense random matrices have no perturbative labeling, so the labeling
warning is silenced here; the bound does not depend on it.
"""

import warnings

import numpy as np

from effham.ebd import least_action_transform, long_time_trace_fidelity
from effham.linalg import random_hermitian
from effham.partition import BlockPartition, LabelingWarning

warnings.simplefilter("ignore", LabelingWarning)

rng = np.random.default_rng(2024)
gaps = []
for _ in range(200):
    dim = int(rng.integers(4, 13))
    H = random_hermitian(rng, dim)
    k = int(rng.integers(1, dim))
    order = rng.permutation(dim)
    part = BlockPartition.from_blocks([sorted(order[:k]), sorted(order[k:])])
    la = least_action_transform(H, part)
    gaps.append(long_time_trace_fidelity(H, la.H_bd) - la.fidelity_bound)

gaps = np.array(gaps)
print(f"instances {len(gaps)}, below bound {(gaps < -1e-12).sum()}")
print(f"gap  min {gaps.min():.3e}  median {np.median(gaps):.3e}  max {gaps.max():.3e}")
