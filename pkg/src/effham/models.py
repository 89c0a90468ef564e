"""Circuit models and analytic parameter maps.

Modes are Duffing oscillators truncated to a few levels,
    H_i = f n + (beta / 2) n (n - 1),
with f and beta ordinary frequencies in GHz. Basis states are ordered
lexicographically with the first mode most significant, so for three
qutrits index 9*n0 + 3*n1 + n2 holds |n0 n1 n2>.
"""

import warnings
from dataclasses import dataclass, field
from functools import reduce
from itertools import product

import numpy as np

from .errors import DimensionCap, NoConvergence, NonPositiveJosephson, ResonantDenominator
from .partition import BlockPartition

DIM_CAP = 4096
COUPLING_FORMS = ("exchange", "full_dipole", "xx")

# CODATA 2018 exact values, truncated to 10 significant digits
ELEMENTARY_CHARGE = 1.602176634e-19
PLANCK = 6.62607015e-34


@dataclass(frozen=True)
class Mode:
    frequency: float
    anharmonicity: float = 0.0
    levels: int = 3
    label: str = ""

    def __post_init__(self):
        if int(self.levels) < 2:
            raise ValueError("a mode needs at least 2 levels")
        if not (np.isfinite(self.frequency) and np.isfinite(self.anharmonicity)):
            raise ValueError("mode parameters must be finite")


@dataclass(frozen=True)
class CouplingSpec:
    """Two-mode coupling.

    exchange:     g (a^dag b + a b^dag)
    full_dipole: -g (a - a^dag)(b - b^dag)
    xx:           g (a + a^dag)(b + b^dag)
    """

    a: int
    b: int
    strength: float
    form: str = "full_dipole"

    def __post_init__(self):
        if self.a == self.b:
            raise ValueError("coupling needs two distinct modes")
        if self.form not in COUPLING_FORMS:
            raise ValueError(f"unknown coupling form {self.form!r}")


@dataclass(frozen=True)
class DriveFrame:
    """Static drive (Omega/2)(a + a^dag) seen in a frame rotating at frame_frequency."""

    driven_mode: int
    amplitude: float
    frame_frequency: float

    def __post_init__(self):
        if self.amplitude < 0:
            raise ValueError("drive amplitude must be non-negative")


@dataclass(frozen=True)
class CircuitModel:
    modes: tuple
    couplings: tuple = ()
    drive: DriveFrame = None
    dim_cap: int = DIM_CAP
    dims: tuple = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "modes", tuple(self.modes))
        object.__setattr__(self, "couplings", tuple(self.couplings))
        n = len(self.modes)
        for c in self.couplings:
            if not (0 <= c.a < n and 0 <= c.b < n):
                raise ValueError(f"coupling {c} refers to a missing mode")
        if self.drive is not None and not 0 <= self.drive.driven_mode < n:
            raise ValueError("drive refers to a missing mode")
        object.__setattr__(self, "dims", tuple(int(m.levels) for m in self.modes))

    @property
    def dim(self):
        return int(np.prod(self.dims))

    def index(self, occupation):
        """Basis index of an occupation tuple or string like '101'."""
        if isinstance(occupation, str):
            occupation = [int(ch) for ch in occupation]
        return int(np.ravel_multi_index(tuple(occupation), self.dims))

    def occupations(self):
        return list(product(*[range(d) for d in self.dims]))

    def excitations(self, modes=None):
        occ = np.array(self.occupations(), dtype=int)
        if modes is not None:
            occ = occ[:, list(modes)]
        return occ.sum(axis=1)


def annihilation(levels):
    return np.diag(np.sqrt(np.arange(1, levels)), k=1).astype(complex)


def embed(op, site, dims):
    mats = [np.eye(d, dtype=complex) for d in dims]
    mats[site] = op
    return reduce(np.kron, mats)


def number_operator(model, modes=None):
    modes = range(len(model.modes)) if modes is None else modes
    N = np.zeros((model.dim, model.dim), dtype=complex)
    for i in modes:
        a = annihilation(model.dims[i])
        N += embed(a.conj().T @ a, i, model.dims)
    return N


def _coupling_term(c, dims):
    a = embed(annihilation(dims[c.a]), c.a, dims)
    b = embed(annihilation(dims[c.b]), c.b, dims)
    ad = a.conj().T
    bd = b.conj().T
    if c.form == "exchange":
        return c.strength * (ad @ b + a @ bd)
    if c.form == "full_dipole":
        return -c.strength * (a - ad) @ (b - bd)
    return c.strength * (a + ad) @ (b + bd)


def build_hamiltonian(model):
    """Compile a CircuitModel into a dense hermitian matrix (GHz)."""
    D = model.dim
    if D > model.dim_cap:
        raise DimensionCap(f"model dimension {D} exceeds cap {model.dim_cap}")
    occ = np.array(model.occupations(), dtype=float)
    diag = np.zeros(D)
    for i, m in enumerate(model.modes):
        n = occ[:, i]
        diag += m.frequency * n + 0.5 * m.anharmonicity * n * (n - 1)
    if model.drive is not None:
        diag -= model.drive.frame_frequency * occ.sum(axis=1)
    H = np.diag(diag).astype(complex)
    for c in model.couplings:
        H += _coupling_term(c, model.dims)
    if model.drive is not None and model.drive.amplitude:
        i = model.drive.driven_mode
        a = embed(annihilation(model.dims[i]), i, model.dims)
        H += 0.5 * model.drive.amplitude * (a + a.conj().T)
    return 0.5 * (H + H.conj().T)


def drop_counter_rotating(model):
    """Same model with every coupling replaced by its exchange part."""
    couplings = [
        CouplingSpec(c.a, c.b, c.strength, "exchange") for c in model.couplings
    ]
    return CircuitModel(model.modes, couplings, model.drive, model.dim_cap)


# partitions -------------------------------------------------------------


def excitation_partition(model, modes=None, max_sectors=None):
    """One block per total excitation number counted over ``modes``."""
    n = model.excitations(modes)
    levels = sorted(set(n.tolist()))
    if max_sectors is not None:
        levels = levels[:max_sectors]
    blocks = [np.flatnonzero(n == k).tolist() for k in levels]
    return BlockPartition.with_remainder(blocks, model.dim)


def coupler_ground_partition(model, coupler_modes):
    """Block 0: every coupler in its ground state; block 1: the rest."""
    occ = np.array(model.occupations(), dtype=int)
    ground = np.all(occ[:, list(coupler_modes)] == 0, axis=1)
    return BlockPartition.with_remainder([np.flatnonzero(ground).tolist()], model.dim)


def computational_partition(model, states):
    """Block 0 holds the listed states (occupation strings or tuples)."""
    idx = [model.index(s) for s in states]
    return BlockPartition.with_remainder([idx], model.dim)


def resolve_partition(model, spec):
    """Partition from a config value: list of lists of indices or occupation
    strings, or the selector dicts {"coupler-ground": [modes]} and
    {"excitation-number": [modes]}."""
    if isinstance(spec, dict):
        if "coupler-ground" in spec:
            return coupler_ground_partition(model, spec["coupler-ground"])
        if "excitation-number" in spec:
            return excitation_partition(model, spec["excitation-number"])
        raise ValueError(f"unknown partition selector {spec}")
    blocks = []
    for b in spec:
        blocks.append([model.index(s) if isinstance(s, str) else int(s) for s in b])
    return BlockPartition.with_remainder(blocks, model.dim)


# concrete models --------------------------------------------------------


def three_level_matrix(w1, w2, wc, g1, g2):
    """Single-excitation Q-C-Q matrix in the order (coupler, Q1, Q2)."""
    return np.array(
        [[wc, g1, g2], [g1, w1, 0.0], [g2, 0.0, w2]], dtype=complex
    )


def qcq_model(w1, w2, wc, b1=0.0, b2=0.0, bc=0.0, g1=0.1, g2=0.1, g12=0.0,
              levels=3, form="full_dipole"):
    """Qubit-coupler-qubit chain with mode order (Q1, C, Q2)."""
    modes = [
        Mode(w1, b1, levels, "Q1"),
        Mode(wc, bc, levels, "C"),
        Mode(w2, b2, levels, "Q2"),
    ]
    couplings = [CouplingSpec(0, 1, g1, form), CouplingSpec(1, 2, g2, form)]
    if g12:
        couplings.append(CouplingSpec(0, 2, g12, form))
    return CircuitModel(modes, couplings)


def cr_model(nu0, nu1, a0, a1, J, omega, nu_d, levels=(4, 3), form="exchange"):
    """Driven two-transmon cross-resonance model in the drive frame.

    Mode 0 is the control (driven), mode 1 the target. The default coupling
    keeps only the exchange part, since in the rotating frame the
    counter-rotating terms are accounted for by ``cr_crw_shifts``.
    """
    modes = [Mode(nu0, a0, levels[0], "control"), Mode(nu1, a1, levels[1], "target")]
    return CircuitModel(
        modes,
        [CouplingSpec(0, 1, J, form)],
        DriveFrame(0, omega, nu_d),
    )


def cr_partition(model):
    """Blocks {00, 01}, {10, 11} and everything else."""
    blocks = [[model.index((0, 0)), model.index((0, 1))],
              [model.index((1, 0)), model.index((1, 1))]]
    return BlockPartition.with_remainder(blocks, model.dim)


def five_mode_chain(w1, w2, w3, wc1, wc2, b1, b2, b3, bc, g1, g12, levels=3,
                    g2=None, g13=0.0, form="full_dipole"):
    """Q1-C1-Q2-C2-Q3 chain, mode order (Q1, C1, Q2, C2, Q3).

    g1 couples every qubit to its neighbouring couplers (g2 defaults to g1
    for the Q2 side), g12 is the direct nearest-neighbour qubit coupling.
    """
    g2 = g1 if g2 is None else g2
    modes = [
        Mode(w1, b1, levels, "Q1"),
        Mode(wc1, bc, levels, "C1"),
        Mode(w2, b2, levels, "Q2"),
        Mode(wc2, bc, levels, "C2"),
        Mode(w3, b3, levels, "Q3"),
    ]
    couplings = [
        CouplingSpec(0, 1, g1, form),
        CouplingSpec(1, 2, g2, form),
        CouplingSpec(2, 3, g2, form),
        CouplingSpec(3, 4, g1, form),
        CouplingSpec(0, 2, g12, form),
        CouplingSpec(2, 4, g12, form),
    ]
    if g13:
        couplings.append(CouplingSpec(0, 4, g13, form))
    return CircuitModel(modes, [c for c in couplings if c.strength])


# analytic parameter maps ------------------------------------------------


@dataclass(frozen=True)
class CSFQParams:
    omega: float
    beta: float
    E_C: float
    E_J_eff: float
    ratio_warning: bool


def charging_energy(C_J, C_S, alpha):
    """E_C in GHz from capacitances in fF, with C_- = alpha C_J + C_S + C_J / 2."""
    C_minus = (alpha * C_J + C_S + 0.5 * C_J) * 1e-15
    return ELEMENTARY_CHARGE**2 / (2.0 * C_minus) / PLANCK / 1e9


def csfq_params(C_J, C_S, E_J, alpha, phi_e1, k=0):
    """Frequency and anharmonicity of a flux-tunable CSFQ at the sweet spot.

    ``phi_e1`` is in radians and the second flux is slaved to it through
    phi_e2 + phi_e1 / 2 = k pi, which gives
    E_J' = E_J [1/2 + (-1)^k alpha cos(phi_e1 / 2)].
    """
    E_C = charging_energy(C_J, C_S, alpha)
    E_Jp = E_J * (0.5 + (-1) ** k * alpha * np.cos(phi_e1 / 2.0))
    if E_Jp <= 0:
        raise NonPositiveJosephson(f"effective Josephson energy {E_Jp:.4g} GHz <= 0")
    omega = np.sqrt(8.0 * E_Jp * E_C) - E_C + 3.0 * E_J * E_C / (8.0 * E_Jp)
    beta = -E_C + 3.0 * E_J * E_C / (8.0 * E_Jp)
    return CSFQParams(float(omega), float(beta), float(E_C), float(E_Jp), bool(E_Jp / E_C < 50))


def direct_coupling_strength(C_jc, C_j, C_c, omega_j, omega_c):
    """g_j ~ 1/2 C_jc / sqrt(C_j C_c) * sqrt(omega_j omega_c)."""
    return 0.5 * C_jc / np.sqrt(C_j * C_c) * np.sqrt(omega_j * omega_c)


def _nonzero(x, name):
    if x == 0:
        raise ResonantDenominator(f"denominator {name} vanishes", where=name, gap=0.0)
    return x


def crw_renormalized_qcq(w1, w2, wc, b1, b2, bc, g1, g2, g12):
    """Counter-rotating renormalization of a Q-C-Q chain.

    Returns a dict with the renormalized frequencies, couplings and the
    second-order decoupled qubit-qubit coupling with and without the
    counter-rotating corrections.
    """
    S1 = _nonzero(w1 + wc, "Sigma1")
    S2 = _nonzero(w2 + wc, "Sigma2")
    S12 = _nonzero(w1 + w2, "Sigma12")
    D1 = _nonzero(w1 - wc, "Delta1")
    D2 = _nonzero(w2 - wc, "Delta2")
    for name, v in (("Sigma1+beta_c", S1 + bc), ("Sigma2+beta_c", S2 + bc),
                    ("Sigma1+beta_1", S1 + b1), ("Sigma12+beta_1", S12 + b1),
                    ("Sigma2+beta_2", S2 + b2), ("Sigma12+beta_2", S12 + b2)):
        _nonzero(v, name)
    wc_t = wc - 2 * g1**2 / (S1 + bc) - 2 * g2**2 / (S2 + bc) - g12**2 / S12
    w1_t = w1 - 2 * g1**2 / (S1 + b1) - g2**2 / S2 - 2 * g12**2 / (S12 + b1)
    w2_t = w2 - g1**2 / S1 - 2 * g2**2 / (S2 + b2) - 2 * g12**2 / (S12 + b2)
    g1_t = g1 - g2 * g12 / S2
    g2_t = g2 - g1 * g12 / S1
    g12_t = g12 - 0.5 * g1 * g2 * (1 / S1 + 1 / S2)
    g_decoup = 0.5 * g1 * g2 * (1 / D1 + 1 / D2 - 1 / S1 - 1 / S2) + g12
    g_decoup_rwa = 0.5 * g1 * g2 * (1 / D1 + 1 / D2) + g12
    return {
        "w1": w1_t, "w2": w2_t, "wc": wc_t,
        "g1": g1_t, "g2": g2_t, "g12": g12_t,
        "g_decoup": g_decoup, "g_decoup_rwa": g_decoup_rwa,
    }


def cr_dressed_from_bare(nu0, nu1, a0, a1, J):
    """Dressed transmon frequencies and anharmonicities from bare ones."""
    D01 = _nonzero(nu0 - nu1, "Delta01")
    S01 = nu0 + nu1
    J2 = J * J
    nu0_t = nu0 + J2 / D01 - 2 * J2 / (S01 + a0)
    nu1_t = nu1 - J2 / D01 - 2 * J2 / (S01 + a1)
    a0_t = (a0 + 2 * J2 * (1 / (D01 + a0) - 1 / D01)
            + J2 * (4 / (S01 + a0) - 3 / (S01 + 2 * a0)))
    a1_t = (a1 + 2 * J2 * (1 / D01 - 1 / (D01 - a1))
            + J2 * (4 / (S01 + a1) - 3 / (S01 + 2 * a1)))
    return nu0_t, nu1_t, a0_t, a1_t


def cr_bare_from_dressed(nu0_t, nu1_t, a0_t, a1_t, J, tol=1e-12, max_iter=100):
    """Invert ``cr_dressed_from_bare`` by fixed-point iteration."""
    target = np.array([nu0_t, nu1_t, a0_t, a1_t], dtype=float)
    bare = target.copy()
    for _ in range(max_iter):
        shift = np.array(cr_dressed_from_bare(*bare, J)) - bare
        new = target - shift
        if np.max(np.abs(new - bare)) < tol:
            return tuple(float(x) for x in new)
        bare = new
    raise NoConvergence(f"bare-parameter inversion did not converge in {max_iter} iterations")


def fit_cr_coupling(dressed, bare, J_max=0.05):
    """Coupling J for which the bare set maps onto the dressed set.

    Least squares over the four dressed-from-bare relations.
    """
    from scipy.optimize import minimize_scalar

    dressed = np.asarray(dressed, dtype=float)

    def cost(J):
        return float(np.sum((np.array(cr_dressed_from_bare(*bare, J)) - dressed) ** 2))

    res = minimize_scalar(cost, bounds=(0.0, J_max), method="bounded",
                          options={"xatol": 1e-10})
    return float(res.x)


@dataclass(frozen=True)
class EBHMParams:
    J: float
    U: float
    mu1: float
    mu2: float
    V: float
    unequal_anharmonicity: bool


def ebhm_map(g_t, beta1_t, beta2_t, w1_t, w2_t, zeta):
    """Two-site extended Bose-Hubbard parameters from the effective model.

    In the frame rotating at the first site's frequency:
    J = -g, U = beta, mu1 = 0, mu2 = -(w2 - w1), V = zeta.
    """
    unequal = abs(beta1_t - beta2_t) > 1e-9
    if unequal:
        warnings.warn("site anharmonicities differ; using their mean for U", stacklevel=2)
    return EBHMParams(
        J=-g_t,
        U=0.5 * (beta1_t + beta2_t),
        mu1=0.0,
        mu2=-(w2_t - w1_t),
        V=zeta,
        unequal_anharmonicity=unequal,
    )


def ebhm_hamiltonian(p, levels=3):
    """Two-site EBHM in the rotating frame, as a matrix on |n1 n2>.

    H = -J (b1^dag b2 + h.c.) + U/2 sum n(n-1) - sum mu_i n_i + V n1 n2
    """
    a = annihilation(levels)
    n = a.conj().T @ a
    I = np.eye(levels)
    b1, b2 = np.kron(a, I), np.kron(I, a)
    n1, n2 = np.kron(n, I), np.kron(I, n)
    H = -p.J * (b1.conj().T @ b2 + b2.conj().T @ b1)
    H = H + 0.5 * p.U * (n1 @ (n1 - np.eye(levels**2)) + n2 @ (n2 - np.eye(levels**2)))
    H = H - p.mu1 * n1 - p.mu2 * n2 + p.V * n1 @ n2
    return H
