"""Effective Hamiltonians for coupled superconducting circuits."""

from .baselines import givens_block_diagonalize, swt_second_order
from .bloch_brandow import PerturbationSplit, bb_effective, v_eff_orders
from .ebd import (
    EffectiveResult,
    fidelity_lower_bound,
    least_action_transform,
    long_time_trace_fidelity,
    soundness_metric,
    trace_fidelity_series,
)
from .errors import *  # noqa: F401,F403
from .partition import BlockPartition, label_eigenvectors

__version__ = "0.1.0"
