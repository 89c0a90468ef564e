"""Point evaluators for the benchmark sweeps driven by the CLI.

Each experiment maps one resolved model block (a plain dict of numbers) to
one output row. Columns depend only on the experiment name, the method list
and whether a dynamics block is present, so a sweep always has a fixed
header. Soft numerical failures become entries in the row's warnings list
and leave the affected cells empty.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from . import oracles
from .baselines import givens_block_diagonalize, swt_second_order
from .bloch_brandow import PerturbationSplit, bb_effective
from .dynamics import (
    avg_projected_fidelity,
    basis_state,
    fft_extract_coupling,
    nu_zx,
    three_body_kappa,
    zz_strength,
)
from .ebd import least_action_transform, long_time_trace_fidelity, soundness_metric
from .errors import (
    NoConvergence,
    NoPeak,
    ResonantDenominator,
    SingularBlock,
    SpectrumMismatch,
    ZeroDetuning,
)
from .linalg import random_hermitian
from .models import (
    build_hamiltonian,
    cr_model,
    cr_partition,
    crw_renormalized_qcq,
    csfq_params,
    drop_counter_rotating,
    excitation_partition,
    fit_cr_coupling,
    five_mode_chain,
    qcq_model,
    three_level_matrix,
)
from .oracles import cr_crw_shifts
from .partition import BlockPartition, block_diagonal_part
from .symmetry import random_symmetric_instance, residual

METHODS = ("la", "bb2", "bb4", "swt2", "gr")
SOFT_ERRORS = (ResonantDenominator, SingularBlock, NoConvergence, NoPeak, SpectrumMismatch,
               ZeroDetuning, ZeroDivisionError)


def rng_for(seed, index):
    """Philox stream for one sweep point: key = seed, jumped ``index`` times."""
    return np.random.Generator(np.random.Philox(key=int(seed)).jumped(int(index)))


class Row:
    """Collects cells and warnings for one sweep point."""

    def __init__(self):
        self.cells = {}
        self.warnings = []

    def __setitem__(self, key, value):
        self.cells[key] = value

    def attempt(self, label, fn, *args, **kwargs):
        """fn(*args) or None, recording soft failures and labeling warnings."""
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            try:
                out = fn(*args, **kwargs)
            except SOFT_ERRORS as exc:
                self.warnings.append(f"{label}: {type(exc).__name__}: {exc}")
                out = None
        for w in caught:
            msg = f"{label}: {w.message}"
            if msg not in self.warnings:
                self.warnings.append(msg)
        return out


def effective_hamiltonian(H, partition, method, bb_blocks=None, computational_block=0):
    """Full-size effective Hamiltonian; for "la" the EffectiveResult."""
    if method == "la":
        return least_action_transform(H, partition, computational_block)
    if method == "gr":
        return givens_block_diagonalize(H, partition).H_bd
    split = PerturbationSplit.from_hamiltonian(H, partition)
    if method in ("bb2", "bb4"):
        return bb_effective(split, int(method[-1]), blocks=bb_blocks)
    if method == "swt2":
        return swt_second_order(split)
    raise ValueError(f"unknown method {method!r}")


def _heff(result):
    return result.H_bd if hasattr(result, "H_bd") else result


def run_methods(row, H, partition, methods, bb_blocks=None, diagnostics_block=0):
    """Effective Hamiltonians per method and the LA result (or None).

    LA diagnostics are written to the row, with the soundness score taken
    on ``diagnostics_block``.
    """
    out, la = {}, None
    for m in methods:
        res = row.attempt(m, effective_hamiltonian, H, partition, m, bb_blocks,
                          diagnostics_block)
        if res is None:
            out[m] = None
            continue
        if m == "la":
            la = res
            row["distance_sq"] = res.distance_sq
            row["fidelity_bound"] = res.fidelity_bound
            row["soundness"] = res.soundness
        out[m] = _heff(res)
    return out, la


def dynamics_cells(row, H, H_effs, comp_idx, states, index_of, dyn):
    for name in states:
        psi = basis_state(H.shape[0], index_of(name))
        for m, Heff in H_effs.items():
            key = f"avg_fidelity_{m}_{name}"
            if Heff is None:
                row[key] = None
                continue
            res = row.attempt(f"{m} dynamics", avg_projected_fidelity, H, Heff, comp_idx, psi,
                              T_total=float(dyn.get("T_ns", 10_000.0)),
                              N_steps=int(dyn.get("steps", 2**13)))
            row[key] = None if res is None else res["mean"]


def dynamics_columns(methods, dyn, extra_methods=()):
    if not dyn:
        return []
    names = [str(s) for s in dyn.get("initial_states", [])]
    return [f"avg_fidelity_{m}_{s}" for s in names for m in list(methods) + list(extra_methods)]


DIAGNOSTICS = ["distance_sq", "fidelity_bound", "soundness"]


@dataclass(frozen=True)
class Experiment:
    name: str
    columns: object
    point: object
    needs_seed: bool = False


def _elem(H, i, j):
    return None if H is None else float(np.real(H[i, j]))


# compare3 ---------------------------------------------------------------


def compare3_columns(methods, dyn):
    cols = [f"g_{m}" for m in methods] + [f"w1_{m}" for m in methods]
    cols += ["g_la4_oracle", "g_swt4_oracle", "g_second_order_oracle"]
    if dyn and dyn.get("fft"):
        cols.append("g_fft")
    return cols + DIAGNOSTICS + dynamics_columns(methods, dyn)


def compare3_point(p, methods, dyn, seed=None, index=0):
    row = Row()
    w1, w2, wc, g1, g2 = (float(p[k]) for k in ("w1", "w2", "wc", "g1", "g2"))
    H = three_level_matrix(w1, w2, wc, g1, g2)
    # basis (C, Q1, Q2); block 0 holds the two qubits
    part = BlockPartition.from_blocks([[1, 2], [0]])
    Heffs, _ = run_methods(row, H, part, methods, bb_blocks=[0])
    for m in methods:
        row[f"g_{m}"] = _elem(Heffs[m], 1, 2)
        row[f"w1_{m}"] = _elem(Heffs[m], 1, 1)
    la4 = row.attempt("oracle", oracles.three_level_la_4th, w1, w2, wc, g1, g2)
    sw4 = row.attempt("oracle", oracles.three_level_swt_4th, w1, w2, wc, g1, g2)
    so = row.attempt("oracle", oracles.three_level_second_order, w1, w2, wc, g1, g2)
    row["g_la4_oracle"] = None if la4 is None else la4[0]
    row["g_swt4_oracle"] = None if sw4 is None else sw4[0]
    row["g_second_order_oracle"] = so
    if dyn:
        if dyn.get("fft"):
            g = row.attempt("fft", fft_extract_coupling, H, 1, 2,
                            T_total=float(dyn.get("fft_T_ns", 20_000.0)),
                            n_points=int(dyn.get("fft_points", 2**15)))
            # the FFT only sees |g|; report it with the sign of the LA coupling
            sign = -1.0 if (row.cells.get("g_la") or -1.0) < 0 else 1.0
            row["g_fft"] = None if g is None else sign * g
        dynamics_cells(row, H, Heffs, [1, 2], dyn.get("initial_states", []),
                       lambda s: {"Q1": 1, "Q2": 2}[s], dyn)
    return row


# Q-C-Q multi-level chain --------------------------------------------------


def _qcq_from(p):
    g = p.get("g")
    g1 = float(p.get("g1", g))
    g2 = float(p.get("g2", g))
    return qcq_model(float(p["w1"]), float(p["w2"]), float(p["wc"]),
                     float(p.get("b1", 0.0)), float(p.get("b2", 0.0)), float(p.get("bc", 0.0)),
                     g1, g2, float(p.get("g12", 0.0)), levels=int(p.get("levels", 3)),
                     form=p.get("form", "full_dipole"))


QCQ_COMP = ["000", "100", "001", "101"]


def qcq_columns(methods, dyn):
    cols = [f"g_{m}" for m in methods] + [f"zeta_{m}" for m in methods]
    cols += ["g_decoup_oracle", "g_decoup_rwa_oracle"]
    return cols + DIAGNOSTICS + dynamics_columns(methods, dyn)


def qcq_point(p, methods, dyn, seed=None, index=0):
    row = Row()
    model = _qcq_from(p)
    H = build_hamiltonian(model)
    comp = [model.index(s) for s in QCQ_COMP]
    part = BlockPartition.with_remainder([comp], model.dim)
    Heffs, _ = run_methods(row, H, part, methods, bb_blocks=[0])
    labels = {"00": comp[0], "10": comp[1], "01": comp[2], "11": comp[3]}
    for m in methods:
        Heff = Heffs[m]
        row[f"g_{m}"] = _elem(Heff, comp[1], comp[2])
        row[f"zeta_{m}"] = None if Heff is None else zz_strength(Heff, labels)
    m0 = model.modes
    crw = row.attempt("oracle", crw_renormalized_qcq, m0[0].frequency, m0[2].frequency,
                      m0[1].frequency, m0[0].anharmonicity, m0[2].anharmonicity,
                      m0[1].anharmonicity, model.couplings[0].strength,
                      model.couplings[1].strength, float(p.get("g12", 0.0)))
    row["g_decoup_oracle"] = None if crw is None else crw["g_decoup"]
    row["g_decoup_rwa_oracle"] = None if crw is None else crw["g_decoup_rwa"]
    if dyn:
        dynamics_cells(row, H, Heffs, comp, dyn.get("initial_states", []), model.index, dyn)
    return row


# beyond-RWA ----------------------------------------------------------------


def rwa_columns(methods, dyn):
    cols = ["g12_tilde_oracle", "g_decoup_oracle", "g_decoup_rwa_oracle"]
    cols += [f"g_{m}" for m in methods] + ["g_rwa"]
    return cols + DIAGNOSTICS + dynamics_columns(methods, dyn, extra_methods=("rwa",))


def rwa_point(p, methods, dyn, seed=None, index=0):
    """Full dipole chain against its rotating-wave truncation.

    The partition is by total excitation number; the single-excitation
    sector is the computational block. The RWA model conserves excitation
    number, so its own sector block is its effective Hamiltonian.
    """
    row = Row()
    model = _qcq_from(p)
    H = build_hamiltonian(model)
    part = excitation_partition(model)
    one = 1  # sector 0 is the vacuum
    idx = part.indices(one)
    Heffs, _ = run_methods(row, H, part, methods, bb_blocks=[one], diagnostics_block=one)
    H_rwa = build_hamiltonian(drop_counter_rotating(model))
    i1, i2 = model.index("100"), model.index("001")
    for m in methods:
        row[f"g_{m}"] = _elem(Heffs[m], i1, i2)
    row["g_rwa"] = _elem(H_rwa, i1, i2)
    m0 = model.modes
    crw = row.attempt("oracle", crw_renormalized_qcq, m0[0].frequency, m0[2].frequency,
                      m0[1].frequency, m0[0].anharmonicity, m0[2].anharmonicity,
                      m0[1].anharmonicity, model.couplings[0].strength,
                      model.couplings[1].strength, float(p.get("g12", 0.0)))
    if crw is not None:
        row["g12_tilde_oracle"] = crw["g12"]
        row["g_decoup_oracle"] = crw["g_decoup"]
        row["g_decoup_rwa_oracle"] = crw["g_decoup_rwa"]
    if dyn:
        Heffs = dict(Heffs)
        Heffs["rwa"] = H_rwa
        dynamics_cells(row, H, Heffs, idx, dyn.get("initial_states", []), model.index, dyn)
    return row


# cross-resonance ---------------------------------------------------------


def cr_setup(p):
    """(model parameters, J) from either an explicit J or a dressed/bare pair."""
    bare = [float(x) for x in p["bare"]]
    if "J" in p:
        J = float(p["J"])
    else:
        J = fit_cr_coupling([float(x) for x in p["dressed"]], bare)
    nu0, nu1, a0, a1 = cr_crw_shifts(*bare, J)
    return (nu0, nu1, a0, a1), J


def cr_columns(methods, dyn):
    cols = ["omega"] + [f"nu_zx_{m}" for m in methods]
    cols += ["nu_zx_oracle2", "nu_zx_oracle24", "nu_zx_oracle24_printed"]
    return cols + DIAGNOSTICS


def cr_point(p, methods, dyn, seed=None, index=0):
    row = Row()
    (nu0, nu1, a0, a1), J = cr_setup(p)
    nu_d = float(p["nu_d"])
    D01, D0d, D1d = nu0 - nu1, nu0 - nu_d, nu1 - nu_d
    omega = float(p["omega"]) if "omega" in p else float(p["eps"]) * D01
    row["omega"] = omega
    levels = tuple(int(x) for x in p.get("levels", (4, 3)))
    model = cr_model(nu0, nu1, a0, a1, J, omega, nu_d, levels=levels)
    H = build_hamiltonian(model)
    part = cr_partition(model)
    Heffs, _ = run_methods(row, H, part, methods, bb_blocks=[0, 1])
    comp = [model.index(s) for s in ("00", "01", "10", "11")]
    for m in methods:
        Heff = Heffs[m]
        row[f"nu_zx_{m}"] = None if Heff is None else nu_zx(Heff[np.ix_(comp, comp)])
    S01 = D0d + D1d
    n2 = row.attempt("oracle", oracles.zx_second_order, omega, J, D0d, D01, a0)
    n4 = row.attempt("oracle", oracles.zx_fourth_order, omega, J, D0d, D01, D1d, a0, a1, S01)
    n4p = row.attempt("oracle", oracles.zx_fourth_order, omega, J, D0d, D01, D1d, a0, a1, S01,
                      printed=True)
    row["nu_zx_oracle2"] = n2
    row["nu_zx_oracle24"] = None if n2 is None or n4 is None else n2 + n4
    row["nu_zx_oracle24_printed"] = None if n2 is None or n4p is None else n2 + n4p
    return row


# two-site ZZ -------------------------------------------------------------


def two_site_model(p):
    w1, b1, bc = float(p["w1"]), float(p["b1"]), float(p["bc"])
    wc = w1 - float(p["Delta1"]) if "Delta1" in p else float(p["wc"])
    g, g12 = float(p["g"]), float(p["g12"])
    return qcq_model(w1, w1, wc, b1, b1, bc, g, g, g12, levels=int(p.get("levels", 3)),
                     form=p.get("form", "full_dipole")), (w1, wc, b1, bc, g, g12)


def sector_partition(model, max_n=None):
    """Blocks of {i0j} states by i + j, then every coupler-excited state."""
    occ = np.array(model.occupations())
    free = np.flatnonzero(occ[:, 1] == 0)
    n = occ[free, 0] + occ[free, 2]
    top = int(n.max()) if max_n is None else int(max_n)
    blocks = [free[n == k].tolist() for k in range(top + 1)]
    return BlockPartition.with_remainder(blocks, model.dim)


ZZ_SECTORS = (1, 2, 3)


def zz_columns(methods, dyn):
    cols = [f"zeta_{m}" for m in methods] + [f"g_{m}" for m in methods]
    cols += ["zeta_oracle", "zeta_oracle_printed", "g_oracle"]
    cols += [f"soundness_sector{k}" for k in ZZ_SECTORS]
    return cols + DIAGNOSTICS + dynamics_columns(methods, dyn)


def zz_point(p, methods, dyn, seed=None, index=0):
    row = Row()
    model, (w1, wc, b1, bc, g, g12) = two_site_model(p)
    H = build_hamiltonian(model)
    part = sector_partition(model)
    Heffs, la = run_methods(row, H, part, methods, bb_blocks=[0, 1, 2], diagnostics_block=1)
    labels = {k: model.index(s) for k, s in (("00", "000"), ("10", "100"),
                                              ("01", "001"), ("11", "101"))}
    for m in methods:
        Heff = Heffs[m]
        row[f"zeta_{m}"] = None if Heff is None else zz_strength(Heff, labels)
        row[f"g_{m}"] = _elem(Heff, labels["10"], labels["01"])
    if la is not None:
        S_BD = block_diagonal_part(la.labels.vectors, part)
        for k in ZZ_SECTORS:
            row[f"soundness_sector{k}"] = soundness_metric(S_BD, part, k)
    z = row.attempt("oracle", oracles.two_site_zz, w1, wc, b1, bc, g, g12)
    zp = row.attempt("oracle", oracles.two_site_zz, w1, wc, b1, bc, g, g12, printed=True)
    hop = row.attempt("oracle", oracles.two_site_hopping, w1, wc, b1, bc, g, g12)
    row["zeta_oracle"] = None if z is None else z["zeta"]
    row["zeta_oracle_printed"] = None if zp is None else zp["zeta"]
    row["g_oracle"] = None if hop is None else hop["g4"]
    if dyn:
        comp = [labels[k] for k in ("00", "10", "01", "11")]
        dynamics_cells(row, H, Heffs, comp, dyn.get("initial_states", []), model.index, dyn)
    return row


# three-body --------------------------------------------------------------


THREE_BODY_COMP = [f"{i}0{j}0{k}" for i in (0, 1) for j in (0, 1) for k in (0, 1)]


def three_body_model(p):
    """Five-mode chain with the central qubit set by the CSFQ flux map."""
    c = p.get("csfq", {})
    q = csfq_params(float(c.get("C_J", 20.0)), float(c.get("C_S", 100.0)),
                    float(c.get("E_J", 50.0)), float(c.get("alpha", 0.47)),
                    2 * np.pi * float(p["phi"]), int(c.get("k", 0)))
    w1, b1, bc = float(p["w1"]), float(p["b1"]), float(p["bc"])
    w2, b2 = q.omega, q.beta
    wc = min(w1, w2) - float(p.get("coupler_detuning", 0.5))
    g1, g12 = float(p["g1"]), float(p["g12"])
    model = five_mode_chain(w1, w2, w1, wc, wc, b1, b2, b1, bc, g1, g12,
                            levels=int(p.get("levels", 3)), form=p.get("form", "full_dipole"))
    return model, dict(w1=w1, w2=w2, b2=b2, wc=wc, g1=g1, g12=g12)


def three_body_columns(methods, dyn):
    cols = ["w2", "b2", "lambda"] + [f"kappa_{m}" for m in methods]
    cols += [f"kappa_overlap_{m}" for m in methods]
    cols += ["kappa_oracle", "kappa_oracle_printed"]
    return cols + DIAGNOSTICS + dynamics_columns(methods, dyn)


def three_body_point(p, methods, dyn, seed=None, index=0):
    row = Row()
    model, q = three_body_model(p)
    H = build_hamiltonian(model)
    comp = [model.index(s) for s in THREE_BODY_COMP]
    part = BlockPartition.with_remainder([comp], model.dim)
    D12 = q["w1"] - q["w2"]
    row["w2"], row["b2"] = q["w2"], q["b2"]
    A = D12 - q["b2"]
    row["lambda"] = abs(q["g1"] / A) if A else None
    Heffs, _ = run_methods(row, H, part, methods, bb_blocks=[0])
    for m in methods:
        Heff = Heffs[m]
        if Heff is None:
            row[f"kappa_{m}"] = row[f"kappa_overlap_{m}"] = None
            continue
        k, overlap = three_body_kappa(Heff[np.ix_(comp, comp)])
        row[f"kappa_{m}"], row[f"kappa_overlap_{m}"] = k, overlap
    args = (q["g12"], q["g1"], D12, q["w1"] - q["wc"], q["w2"] - q["wc"], q["b2"])
    k = row.attempt("oracle", oracles.kappa_analytic, *args)
    kp = row.attempt("oracle printed", oracles.kappa_analytic, *args, printed=True)
    row["kappa_oracle"] = None if k is None else k[2]
    row["kappa_oracle_printed"] = None if kp is None else kp[2]
    if dyn:
        dynamics_cells(row, H, Heffs, comp, dyn.get("initial_states", []),
                       lambda s: model.index(f"{s[0]}0{s[1]}0{s[2]}"), dyn)
    return row


# random ensembles --------------------------------------------------------


def _instance_index(p, index):
    return int(round(float(p["instance"]))) if "instance" in p else int(index)


def _random_instance(p, seed, index):
    """Random (H, partition) for the bound experiments.

    Without ``coupling`` H is a dense random hermitian matrix split into
    two random blocks. With it, H = diag(0, s, 2s, ...) + coupling * V and
    the blocks are the lower and upper halves of the ladder, so the family
    tends to the identity transform as the coupling goes to zero.
    """
    rng = rng_for(seed, _instance_index(p, index))
    dim = int(rng.integers(int(p.get("dim_min", 4)), int(p.get("dim_max", 16)) + 1))
    coupling = p.get("coupling")
    if coupling is None:
        H = random_hermitian(rng, dim)
        k = int(rng.integers(1, dim))
        order = rng.permutation(dim)
        blocks = [sorted(order[:k].tolist()), sorted(order[k:].tolist())]
    else:
        V = random_hermitian(rng, dim)
        H = np.diag(float(p.get("spacing", 1.0)) * np.arange(dim)).astype(complex)
        H = H + float(coupling) * V
        blocks = [list(range(dim // 2)), list(range(dim // 2, dim))]
    return H, BlockPartition.from_blocks(blocks)


def bound_columns(methods, dyn):
    return ["dim", "distance_sq", "fidelity_bound", "avg_fidelity", "gap"]


def bound_point(p, methods, dyn, seed=0, index=0):
    """Long-time trace fidelity against the bound for one random instance."""
    row = Row()
    H, part = _random_instance(p, seed, index)
    row["dim"] = H.shape[0]
    la = row.attempt("la", least_action_transform, H, part)
    if la is None:
        return row
    row["distance_sq"] = la.distance_sq
    row["fidelity_bound"] = la.fidelity_bound
    F = row.attempt("la", long_time_trace_fidelity, H, la.H_bd)
    row["avg_fidelity"] = F
    row["gap"] = None if F is None else F - la.fidelity_bound
    return row


def symmetry_columns(methods, dyn):
    return ["dim", "input_residual"] + [f"residual_{m}" for m in methods]


def symmetry_point(p, methods, dyn, seed=0, index=0):
    """Commutator residuals (relative to ||H||) of each effective model."""
    row = Row()
    rng = rng_for(seed, _instance_index(p, index))
    dim = int(rng.integers(int(p.get("dim_min", 4)), int(p.get("dim_max", 12)) + 1))
    H, S, part = random_symmetric_instance(rng, dim, coupling=float(p.get("coupling", 0.05)))
    norm = float(np.linalg.norm(H))
    row["dim"] = dim
    row["input_residual"] = residual(H, S.matrix) / norm
    for m in methods:
        res = row.attempt(m, effective_hamiltonian, H, part, m)
        row[f"residual_{m}"] = None if res is None else residual(_heff(res), S.matrix) / norm
    return row


EXPERIMENTS = {
    "compare3": Experiment("compare3", compare3_columns, compare3_point),
    "qcq_sweep": Experiment("qcq_sweep", qcq_columns, qcq_point),
    "rwa": Experiment("rwa", rwa_columns, rwa_point),
    "cr_zx": Experiment("cr_zx", cr_columns, cr_point),
    "zz_sweep": Experiment("zz_sweep", zz_columns, zz_point),
    "three_body": Experiment("three_body", three_body_columns, three_body_point),
    "bound_scatter": Experiment("bound_scatter", bound_columns, bound_point, needs_seed=True),
    "symmetry_demo": Experiment("symmetry_demo", symmetry_columns, symmetry_point,
                                needs_seed=True),
}
