"""Closed-form reference formulas.

Each function transcribes published expressions term by term, without
simplification, so that the numerical constructors have an independent
reference. Where a published coefficient disagrees with the expansion it
stands for, the default is the corrected value and ``printed=True`` gives
the published one. All inputs and outputs are ordinary frequencies in GHz.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ResonantDenominator, ZeroDetuning


def _den(x, name):
    if x == 0 or not np.isfinite(x):
        raise ResonantDenominator(f"denominator {name} vanishes", where=name, gap=float(x))
    return x


# three-level Q-C-Q --------------------------------------------------------


def three_level_la_4th(w1, w2, wc, g1, g2):
    """Fourth-order coupling, qubit frequencies and coupler eigenvalue.

    Returns (g, w1, w2, lam) with Delta_i = w_i - wc.
    """
    D1 = w1 - wc
    D2 = w2 - wc
    if D1 == 0 or D2 == 0:
        raise ZeroDetuning("qubit-coupler detuning is zero")
    g = 0.5 * g1 * g2 * (
        (1 / D1 + 1 / D2)
        - (g1**2 / D1 + g2**2 / D2) * (1 / D1**2 + 1 / D2**2)
    )
    w1_t = w1 + g1**2 / D1 - g1**4 / D1**3 - g1**2 * g2**2 / (D1**2 * D2)
    w2_t = w2 + g2**2 / D2 - g2**4 / D2**3 - g1**2 * g2**2 / (D1 * D2**2)
    lam = (wc - g1**2 / D1 - g2**2 / D2
           + (g1**2 / D1**2 + g2**2 / D2**2) * (g1**2 / D1 + g2**2 / D2))
    return g, w1_t, w2_t, lam


def three_level_second_order(w1, w2, wc, g1, g2):
    """Second-order coupling (g1 g2 / 2)(1/D1 + 1/D2), shared by BB and SWT."""
    D1 = w1 - wc
    D2 = w2 - wc
    if D1 == 0 or D2 == 0:
        raise ZeroDetuning("qubit-coupler detuning is zero")
    return 0.5 * g1 * g2 * (1 / D1 + 1 / D2)


def three_level_swt_4th(w1, w2, wc, g1, g2):
    """SWT coupling and frequencies through fourth order.

    The printed fourth-order hopping is the fourth-order piece alone; it is
    added to the second-order coupling so the returned value is cumulative,
    like the printed frequencies.
    """
    D1 = w1 - wc
    D2 = w2 - wc
    if D1 == 0 or D2 == 0:
        raise ZeroDetuning("qubit-coupler detuning is zero")
    g4 = (g1 * g2**3 * D1 * (5 * D1**2 - D1 * D2 + 4 * D2**2)
          + g1**3 * g2 * D2 * (4 * D1**2 - D1 * D2 + 5 * D2**2)) / (-8 * D1**3 * D2**3)
    g = three_level_second_order(w1, w2, wc, g1, g2) + g4
    w1_t = w1 + g1**2 / D1 - g1**4 / D1**3 - g1**2 * g2**2 * (D1 + 3 * D2) / (4 * D1**2 * D2**2)
    w2_t = w2 + g2**2 / D2 - g2**4 / D2**3 - g1**2 * g2**2 * (3 * D1 + D2) / (4 * D1**2 * D2**2)
    return g, w1_t, w2_t


def fft_symmetric_identity(D, g):
    """Eigenvalues of [[D, g, g], [g, 0, 0], [g, 0, 0]] and the coupling.

    D = wc - w1 here (coupler minus qubit). Returns (lam1, lam2, lam3, g_eff)
    with g_eff = -2 g^2 / (D + X).
    """
    X = math.sqrt(8 * g**2 + D**2)
    lam1 = 0.5 * (D + X)
    lam2 = 0.5 * (D - X)
    lam3 = 0.0
    g_eff = -2 * g**2 / _den(D + X, "Delta+X") if g else 0.0
    return lam1, lam2, lam3, g_eff


@dataclass(frozen=True)
class DetunedExpansion:
    lam1: float
    lam2: float
    lam3: float
    alpha1_sq: float
    alpha2_sq: float
    gap23: float
    two_g_correction: float
    two_g: float


def fft_detuned_expansion(D, g, eps):
    """Small-detuning expansion for [[D, g, g], [g, 0, 0], [g, 0, eps]].

    ``two_g_correction`` is 2 g_eff - (lam2 - lam3) through O(eps^2) and
    ``two_g`` the resulting 2 g_eff.
    """
    X = math.sqrt(8 * g**2 + D**2)
    a1 = 4 * g**2 / ((D + X) ** 2 + 8 * g**2)
    a2 = 4 * g**2 / ((D - X) ** 2 + 8 * g**2)
    lam1 = 0.5 * (D + X) + a1 * eps + (a1 * a2 / X + a1 / (D + X)) * eps**2
    lam2 = 0.5 * (D - X) + a2 * eps + (-a1 * a2 / X + a2 / (D - X)) * eps**2
    lam3 = 0.5 * eps - (a1 / (D + X) + a2 / (D - X)) * eps**2
    quad = -a1 * a2 / X + a2 / (D - X) + a1 / (D + X) + a2 / (D - X)
    gap23 = 0.5 * (D - X) + (a2 - 0.5) * eps + quad * eps**2
    corr = 4 * g**2 / (D + X) ** 2 * (2 * a1 - 1) * eps - (a2 - 0.5) * eps - quad * eps**2
    return DetunedExpansion(lam1, lam2, lam3, a1, a2, gap23, corr, gap23 + corr)


def la_coupling_from_lambda(g, lam1, eps):
    """g_eff = -(g^2 / 2)(1/lam1 + 1/(lam1 - eps))."""
    return -0.5 * g**2 * (1 / lam1 + 1 / (lam1 - eps))


# cross-resonance ---------------------------------------------------------


def cr_crw_shifts(nu0, nu1, a0, a1, J):
    """Counter-rotating shifts of transmon frequencies and anharmonicities."""
    S = _den(nu0 + nu1, "Sigma01")
    out = []
    for nu, a in ((nu0, a0), (nu1, a1)):
        nu_p = nu + J**2 / S - 2 * J**2 / _den(S + a, "Sigma01+alpha")
        a_p = (a + 4 * J**2 / (S + a) - 2 * J**2 / S
               - 3 * J**2 / _den(S + 2 * a, "Sigma01+2alpha"))
        out.append((nu_p, a_p))
    (nu0_p, a0_p), (nu1_p, a1_p) = out
    return nu0_p, nu1_p, a0_p, a1_p


def zx_second_order(omega, J, D0d, D01, a0):
    """nu_ZX^(2) = (Omega J / 2)(-1/D0d - 1/D01 + 1/(D0d + a0) + 1/(D01 + a0))."""
    return 0.5 * omega * J * (
        -1 / _den(D0d, "Delta0d") - 1 / _den(D01, "Delta01")
        + 1 / _den(D0d + a0, "Delta0d+alpha0") + 1 / _den(D01 + a0, "Delta01+alpha0")
    )


def zx_routes_h1(omega, J, D0d, D01, a0, S01):
    """The five printed fourth-order amplitudes between |00> and |01>."""
    W, d = omega, {}

    def r(name, f):
        try:
            d[name] = f()
        except ZeroDivisionError:
            raise ResonantDenominator(f"route {name} has a vanishing denominator", where=name)

    r("h1_1 00-10-01-10-01", lambda: W * J**3 / (4 * D01) * (1 / D0d**2 + 1 / D01**2))
    r("h1_2 00-10-01-11-01", lambda: W**3 * J / (16 * D0d) * (1 / (D0d * S01) + 1 / D01**2))
    r("h1_3 00-10-20-11-01", lambda: -W**3 * J / (8 * D0d) * (
        1 / (S01 * (2 * D0d + a0)) + 1 / (D01 * (D0d + D01 + a0))))
    r("h1_4 00-10-20-10-01", lambda: -W**3 * J / 8 * (
        1 / (D0d**2 * (2 * D0d + a0)) + 1 / (D01**2 * (D0d + D01 + a0))))
    r("h1_5 00-10-00-10-01", lambda: W**3 * J / (16 * D0d) * (1 / D0d**2 + 1 / D01**2))
    return d


def zx_routes_h2(omega, J, D0d, D01, D1d, a0, a1, S01, printed=False):
    """Fourth-order amplitudes between |10> and |11>, one entry per route.

    By default routes 11 and 12 carry 1/8 and 1/4 (the published 3/8 and
    3/4 are three times the expansion value) and the four routes that
    revisit |11> are appended. ``printed=True`` returns the twelve routes
    exactly as published.
    """
    W, d = omega, {}
    c11, c12 = (3 / 8, 3 / 4) if printed else (1 / 8, 1 / 4)

    def r(name, f):
        try:
            d[name] = f()
        except ZeroDivisionError:
            raise ResonantDenominator(f"route {name} has a vanishing denominator", where=name)

    r("h2_1 10-01-10-01-11", lambda: -W * J**3 / (4 * D01) * (1 / D0d**2 + 1 / D01**2))
    r("h2_2 10-01-10-20-11", lambda: W * J**3 / (2 * D01) * (
        1 / (D0d * (D01 + a0)) - 1 / (D0d + a0) ** 2))
    r("h2_3 10-01-11-20-11", lambda: W * J**3 / (2 * (D01 + a0)) * (
        1 / D0d**2 - 1 / (D01 * (D0d + a0))))
    r("h2_4 10-01-11-02-11", lambda: W * J**3 / (2 * (D01 - a1)) * (
        1 / (D01 * (D1d + a1 - D01)) - 1 / D0d**2))
    r("h2_5 10-00-10-01-11", lambda: -W**3 * J / (16 * D0d) * (1 / D01**2 + 1 / (D0d * S01)))
    r("h2_6 10-00-10-20-11", lambda: W**3 * J / (8 * D0d) * (
        1 / (S01 * (D01 + a0)) - 1 / (D0d + a0) ** 2))
    r("h2_7 10-20-11-20-11", lambda: W * J**3 / (D01 + a0) * (
        1 / (D0d + a0) ** 2 + 1 / (D01 + a0) ** 2))
    r("h2_8 10-20-11-02-11", lambda: -W * J**3 / (D01 - a1) * (
        1 / ((D0d + a0) * (D1d + a1 - D01)) + 1 / (D01 + a0) ** 2))
    r("h2_9 10-20-30-21-11", lambda: -3 * W**3 * J / (8 * (D0d + a0)) * (
        1 / ((2 * D0d + 3 * a0) * (S01 + a0))
        + 1 / ((D01 + a0) * (2 * D0d + 3 * a0 - D1d))))
    r("h2_10 10-20-30-20-11", lambda: -3 * W**3 * J / 8 * (
        1 / ((D0d + a0) ** 2 * (2 * D0d + 3 * a0))
        + 1 / ((D01 + a0) ** 2 * (2 * D0d + 3 * a0 - D1d))))
    r("h2_11 10-20-10-01-11", lambda: c11 * W**3 * J / (D0d + a0) * (
        1 / D01**2 - 1 / (D0d * (D01 + a0))))
    r("h2_12 10-20-10-20-11", lambda: c12 * W**3 * J / (D0d + a0) * (
        1 / (D0d + a0) ** 2 + 1 / (D01 + a0) ** 2))
    if printed:
        return d
    r("h2_13 10-01-11-01-11", lambda: -W**3 * J / (16 * D0d) * (1 / D0d**2 + 1 / D01**2))
    r("h2_14 10-01-11-21-11", lambda: W**3 * J / (8 * (D0d + a0)) * (
        1 / D0d**2 - 1 / (D01 * (S01 + a0))))
    r("h2_15 10-20-11-21-11", lambda: W**3 * J / (4 * (D0d + a0)) * (
        1 / (D01 + a0) ** 2 + 1 / ((D0d + a0) * (S01 + a0))))
    r("h2_16 10-20-11-01-11", lambda: W**3 * J / (8 * D0d) * (
        1 / (D01 * (D0d + a0)) - 1 / (D01 + a0) ** 2))
    return d


def zx_fourth_order(omega, J, D0d, D01, D1d, a0, a1, S01, printed=False):
    """nu_ZX^(4) = (sum of H1 routes) - (sum of H2 routes).

    The order of the difference matches the second-order rate, so that
    nu_ZX = 2 c_ZX holds at both orders. ``S01`` is passed through to the
    routes that print Sigma_01; in the drive frame the value that
    reproduces the numeric expansion is D0d + D1d.
    """
    h1 = zx_routes_h1(omega, J, D0d, D01, a0, S01)
    h2 = zx_routes_h2(omega, J, D0d, D01, D1d, a0, a1, S01, printed)
    return sum(h1.values()) - sum(h2.values())


# two-site CSFQ simulator -------------------------------------------------


@dataclass(frozen=True)
class TwoSiteIntermediates:
    E000: float
    E100: float
    E010: float
    g1C: float
    g12C: float
    E200: float
    E101: float
    E110: float
    E020: float
    K0: float
    K1: float
    J0: float
    J1: float
    J1c: float
    D1c: float
    D1p: float


def two_site_intermediates(w1, wc, b1, bc, g1, g12, g2=None, printed=False):
    """Counter-rotating dressed energies and couplings of the symmetric
    two-site chain (w2 = w1, b2 = b1, g2 = g1 unless given).

    As printed, E100 and E010 carry a factor 1 on the terms whose virtual
    state doubly occupies one mode; the matrix element there is sqrt(2), so
    the factor is 2, as in ``crw_renormalized_qcq``. ``printed=True`` keeps
    the printed factor.
    """
    g2 = g1 if g2 is None else g2
    f = 1.0 if printed else 2.0
    S1c = _den(w1 + wc, "Sigma1c")
    S12 = _den(2 * w1, "Sigma12")
    E000 = -2 * g1**2 / S1c - g12**2 / S12
    E100 = w1 - f * g1**2 / (S1c + b1) - g2**2 / S1c - f * g12**2 / (S12 + b1)
    E010 = wc - f * g1**2 / (S1c + bc) - f * g2**2 / (S1c + bc) - g12**2 / S12
    g1C = g1 - 0.5 * g2 * g12 * (1 / S1c + 1 / S12)
    g12C = g12 - g1 * g2 / S1c
    E200 = 2 * w1 + b1 - g1**2 / S1c
    E101 = (2 * w1 - 2 * g1**2 / (S1c + b1) - 2 * g2**2 / (S1c + b1)
            - 4 * g12**2 / (S12 + 2 * b1) + g12**2 / S12)
    E110 = (w1 + wc - 4 * g1**2 / (S1c + b1 + bc) - 2 * g2**2 / (S1c + bc)
            - 2 * g12**2 / (S12 + b1) + g1**2 / S1c)
    E020 = 2 * wc + bc - g12**2 / S12
    K0 = g12 + g1 * g2 / S1c - 2 * g1 * g2 / (S1c + bc)
    K1 = math.sqrt(2) * g12 - math.sqrt(2) * g1 * g2 / 2 * (1 / (S1c + b1) + 1 / S1c)
    J0 = (g1 - 2 * g1 * g12 / 2 * (1 / (S1c + b1) + 1 / (S12 + b1))
          + g1 * g12 / 2 * (1 / S12 + 1 / S1c))
    J1 = math.sqrt(2) * g1 - math.sqrt(2) * g1 * g12 / 2 * (1 / S1c + 1 / (S12 + b1))
    J1c = math.sqrt(2) * g1 - math.sqrt(2) * g1 * g12 / 2 * (1 / (S1c + bc) + 1 / S12)
    return TwoSiteIntermediates(
        E000, E100, E010, g1C, g12C, E200, E101, E110, E020, K0, K1, J0, J1, J1c,
        D1c=E100 - E010, D1p=E101 - E110,
    )


def two_site_hopping(w1, wc, b1, bc, g1, g12, printed=False):
    """Effective hopping and dressed one-excitation energies.

    The printed fourth-order hopping already contains the second-order
    term, so ``g4`` is the cumulative value. Returns a dict with g2, g4,
    E10 (dressed |10>) and E00.
    """
    p = two_site_intermediates(w1, wc, b1, bc, g1, g12, printed=printed)
    S1c = w1 + wc
    D = _den(p.D1c, "Delta1c^C")
    g1C = g2C = p.g1C
    g2nd = g12 + g1C * g2C / D - g1 * g1 / S1c
    g4th = g2nd - g1C * g2C * g12 / D**2 - 2 * g1C**4 / D**3
    E10 = p.E100 + g1C**2 / D - g1C**2 * p.g12C / D**2 - 2 * g1C**4 / D**3
    return {"g2": g2nd, "g4": g4th, "E10": E10, "E00": p.E000, "intermediates": p}


def two_site_zz(w1, wc, b1, bc, g1, g12, printed=False):
    """ZZ strength through fourth order and its pieces."""
    p = two_site_intermediates(w1, wc, b1, bc, g1, g12, printed=printed)
    S1c = w1 + wc
    S12 = 2 * w1
    D = _den(p.D1c, "Delta1c^C")
    Dp = _den(p.D1p, "Delta1'")
    d200 = _den(p.E200 - p.E110, "E200-E110")
    d020 = _den(p.E101 - p.E020, "E101-E020")
    if printed:
        crw = -2 * g1**2 / (S1c + b1) - 2 * g12**2 / (S12 + 2 * b1)
    else:
        # the printed pair is E101 - 2 E100 + E000 evaluated with the
        # printed E100; keep the combination and use the corrected energies
        crw = p.E101 - 2 * p.E100 + p.E000
    z2 = crw + 2 * p.J0**2 / Dp - 2 * p.g1C**2 / D
    z3 = (2 * p.J0**2 * p.K0 / Dp**2 + 2 * p.g1C**2 * p.g12C / D**2
          - 2 * p.J0 * p.J1 * p.K1 / (Dp * d200))
    z4 = (4 * p.J0**2 * p.J1c**2 / (Dp**2 * d020)
          - 2 * p.J0**2 * p.J1**2 / (Dp**2 * d200)
          + 4 * p.g1C**4 / D**3)
    return {"zeta2": z2, "zeta3": z3, "zeta4": z4, "zeta": z2 + z3 + z4, "intermediates": p}


def two_site_resonances(w1, wc, b1, bc, g1, g12):
    """Detunings D1 = w1 - wc of the three printed resonance conditions,
    plus the higher-order one at (bc - b1) / 2."""
    S1c = w1 + wc
    S12 = 2 * w1
    r0 = 0.0
    r1 = (-b1 + 2 * g1**2 / S1c - 4 * g1**2 / (S1c + b1 + bc)
          - 2 * g1**2 / (S1c + bc) - 2 * g12**2 / (S12 + b1))
    r2 = 0.5 * bc + 2 * g1**2 / (S1c + b1) + 2 * g12**2 / (S12 + 2 * b1) - g12**2 / S12
    return {"zero": r0, "minus_beta1": r1, "half_betac": r2, "higher_order": 0.5 * (bc - b1)}


# three-body --------------------------------------------------------------


def kappa_analytic(g12, g1, D12, D1c, D2c, b2, printed=False):
    """(kappa110, kappa100, kappa) for the symmetric five-mode chain.

    The computational block holds all eight qubit states with both couplers
    empty, so |010> sits inside it and contributes no second-order hop to
    <100|H|001>. The default drops that term and uses 1/(D1c D2c) for the
    third-order g12 g1^2 routes of kappa110; ``printed=True`` keeps the
    published g12^2/D12 term and the 3/2 coefficient.
    """
    A = _den(D12 - b2, "Delta12-beta2")
    _den(D1c, "Delta1c")
    _den(D2c, "Delta2c")
    _den(D1c + D2c, "Delta1c+Delta2c")
    c3 = 1.5 if printed else 1.0
    k110 = (2 * g12**2 / A
            + g12 * g1**2 * (4 / (A * D1c) + c3 / (D1c * D2c))
            + g1**4 * (1 / (D1c + D2c) * (1 / D1c + 1 / D2c) ** 2
                       + 2 / (D1c**2 * A) - 1 / (D1c * D2c**2)))
    k100 = -g1**2 * g12 / (D1c * D2c) - g1**4 / (D1c**2 * D2c)
    if printed:
        k100 += g12**2 / _den(D12, "Delta12")
    return k110, k100, k110 - k100


ORACLES = {
    "three_level_la_4th": three_level_la_4th,
    "three_level_swt_4th": three_level_swt_4th,
    "fft_symmetric_identity": fft_symmetric_identity,
    "fft_detuned_expansion": fft_detuned_expansion,
    "zx_second_order": zx_second_order,
    "zx_fourth_order": zx_fourth_order,
    "two_site_zz": two_site_zz,
    "two_site_hopping": two_site_hopping,
    "kappa_analytic": kappa_analytic,
    "cr_crw_shifts": cr_crw_shifts,
}
