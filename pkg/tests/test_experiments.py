import warnings

import numpy as np
import pytest

from effham.errors import ResonantDenominator
from effham.experiments import EXPERIMENTS, METHODS, Row, rng_for


def test_rng_streams_independent_of_order():
    a = [rng_for(5, i).random() for i in (0, 1, 2)]
    b = [rng_for(5, i).random() for i in (2, 1, 0)][::-1]
    assert a == b
    assert rng_for(5, 0).random() != rng_for(6, 0).random()
    assert len(set(a)) == 3


def test_row_attempt_soft_failures():
    row = Row()

    def boom():
        raise ResonantDenominator("x")

    def noisy():
        warnings.warn("careful")
        return 3

    assert row.attempt("bb2", boom) is None
    assert row.attempt("la", noisy) == 3
    assert row.attempt("la", noisy) == 3
    assert row.warnings[0].startswith("bb2: ResonantDenominator")
    assert row.warnings[1:] == ["la: careful"]
    with pytest.raises(KeyError):
        row.attempt("la", dict().__getitem__, "k")


@pytest.mark.parametrize("name", sorted(EXPERIMENTS))
def test_columns_are_stable(name):
    exp = EXPERIMENTS[name]
    dyn = {"initial_states": ["a"]}
    cols = exp.columns(list(METHODS), dyn)
    assert cols == exp.columns(list(METHODS), dyn)
    assert len(set(cols)) == len(cols)


def test_bound_point_reproducible():
    exp = EXPERIMENTS["bound_scatter"]
    p = {"dim_min": 4, "dim_max": 8}
    r1 = exp.point(p, ["la"], None, seed=3, index=4).cells
    r2 = exp.point(p, ["la"], None, seed=3, index=4).cells
    assert r1 == r2
    assert r1["avg_fidelity"] >= r1["fidelity_bound"] - 1e-12
    assert set(r1) <= set(exp.columns(["la"], None))


def test_near_identity_family_tends_to_identity():
    exp = EXPERIMENTS["bound_scatter"]
    d = [exp.point({"coupling": c, "dim_min": 6, "dim_max": 6}, ["la"], None, seed=1).cells
         ["distance_sq"] for c in (0.02, 0.01)]
    assert d[0] / d[1] == pytest.approx(4, rel=0.1)
    assert np.isfinite(d).all()
