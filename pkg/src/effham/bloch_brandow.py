"""Perturbative block diagonalization in the Bloch-Brandow formalism.

H = H0 + V with H0 diagonal. For a target block P the resolvent
superoperator maps an operator X to

    (X)_{Ii} = X_{Ii} / (e_i - e_I),   i in P, I outside P,

and is zero elsewhere. Writing R(X) for it, the effective interaction is

    V1 = P V P
    V2 = P V R(V) P
    V3 = P [V R(V R(V)) - V R(R(V) V)] P
    V4 = P [V R(V R(V R(V))) - V R(V R(R(V) V)) - V R(R(V R(V)) V)
            + V R(R(R(V) V) V) - V R(R(V) V R(V))] P

The expansion is non-hermitian; ``bb_effective`` restores hermiticity by
averaging with the adjoint.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ResonantDenominator
from .linalg import check_hermitian

DENOM_TOL = 1e-6
# numerators below this (relative to ||V||) are treated as structural zeros
_ZERO = 1e-14


@dataclass(frozen=True)
class PerturbationSplit:
    H0_diag: np.ndarray
    V: np.ndarray
    partition: object

    @classmethod
    def from_hamiltonian(cls, H, partition):
        """Diagonal of H goes to H0, the rest to V."""
        H = check_hermitian(H)
        diag = np.real(np.diag(H)).copy()
        V = H - np.diag(diag)
        np.fill_diagonal(V, 0.0)
        return cls(H0_diag=diag, V=V, partition=partition)

    @property
    def dim(self):
        return len(self.H0_diag)

    def H0(self):
        return np.diag(self.H0_diag).astype(complex)


class Resolvent:
    """R(X) for one target block, with precomputed denominators."""

    def __init__(self, split, target_block, denom_tol=DENOM_TOL):
        self.split = split
        self.p = split.partition.indices(target_block)
        mask = np.ones(split.dim, dtype=bool)
        mask[self.p] = False
        self.q = np.flatnonzero(mask)
        e = split.H0_diag
        self.gaps = e[self.p][None, :] - e[self.q][:, None]
        self.denom_tol = denom_tol
        self.scale = max(float(np.max(np.abs(split.V))) if split.V.size else 0.0, 1e-300)

    def __call__(self, X):
        out = np.zeros((self.split.dim, self.split.dim), dtype=complex)
        if self.q.size == 0:
            return out
        num = X[np.ix_(self.q, self.p)]
        small = np.abs(self.gaps) <= self.denom_tol
        live = np.abs(num) > _ZERO * self.scale
        bad = small & live
        if np.any(bad):
            a, b = np.argwhere(bad)[0]
            i, I = int(self.p[b]), int(self.q[a])
            gap = float(self.gaps[a, b])
            raise ResonantDenominator(
                f"resonant denominator between P state {i} and Q state {I}: gap {gap:.3e}",
                where=(i, I, gap),
                gap=gap,
            )
        with np.errstate(divide="ignore", invalid="ignore"):
            block = np.where(small, 0.0, num / np.where(small, 1.0, self.gaps))
        out[np.ix_(self.q, self.p)] = block
        return out


def resolvent_apply(X, split, target_block, denom_tol=DENOM_TOL):
    return Resolvent(split, target_block, denom_tol)(np.asarray(X, dtype=complex))


def _restrict(X, p):
    out = np.zeros_like(X)
    out[np.ix_(p, p)] = X[np.ix_(p, p)]
    return out


def v_eff_orders(split, target_block, max_order=4, denom_tol=DENOM_TOL):
    """Orders 1..max_order of the effective interaction on one block.

    Each returned matrix is full size with support on P x P only, and not
    yet hermitized.
    """
    if not 1 <= max_order <= 4:
        raise ValueError("max_order must be between 1 and 4")
    R = Resolvent(split, target_block, denom_tol)
    V = np.asarray(split.V, dtype=complex)
    p = R.p
    orders = [_restrict(V, p)]
    if max_order >= 2:
        rV = R(V)
        orders.append(_restrict(V @ rV, p))
    if max_order >= 3:
        r_VrV = R(V @ rV)
        r_rVV = R(rV @ V)
        orders.append(_restrict(V @ r_VrV - V @ r_rVV, p))
    if max_order >= 4:
        t1 = V @ R(V @ r_VrV)
        t2 = V @ R(V @ r_rVV)
        t3 = V @ R(r_VrV @ V)
        t4 = V @ R(r_rVV @ V)
        t5 = V @ R(rV @ V @ rV)
        orders.append(_restrict(t1 - t2 - t3 + t4 - t5, p))
    return orders


def bb_block(split, target_block, order, hermitize=True, denom_tol=DENOM_TOL):
    """P H0 P plus the summed expansion through ``order`` for one block."""
    p = split.partition.indices(target_block)
    total = _restrict(split.H0(), p)
    for term in v_eff_orders(split, target_block, order, denom_tol):
        total = total + term
    if hermitize:
        total = 0.5 * (total + total.conj().T)
    return total


def bb_effective(split, order, hermitize=True, denom_tol=DENOM_TOL, blocks=None):
    """Block-diagonal BB effective Hamiltonian.

    Every block (or only those listed in ``blocks``) is treated as P against
    its complement; unlisted blocks keep P H P.
    """
    H = np.zeros((split.dim, split.dim), dtype=complex)
    wanted = range(split.partition.n_blocks) if blocks is None else blocks
    full = split.H0() + split.V
    for k in range(split.partition.n_blocks):
        if k in wanted:
            H += bb_block(split, k, order, hermitize, denom_tol)
        else:
            H += _restrict(full, split.partition.indices(k))
    return H


def fourth_order_paths(split, target_block, i, j):
    """Order-4 amplitude <i|V4|j> resolved by intermediate path.

    Returns {(a, b, c): amplitude} for the chain i-a-b-c-j, summing all five
    resolvent terms that share the same intermediate states. The values add
    up to ``v_eff_orders(split, target_block, 4)[3][i, j]``.
    """
    e = split.H0_diag
    V = np.asarray(split.V, dtype=complex)
    in_p = np.zeros(split.dim, dtype=bool)
    in_p[split.partition.indices(target_block)] = True
    out = {}
    nz = [np.flatnonzero(np.abs(V[k]) > 0) for k in range(split.dim)]
    for a in nz[i]:
        if in_p[a]:
            continue
        for b in nz[a]:
            for c in nz[b]:
                w = V[i, a] * V[a, b] * V[b, c] * V[c, j]
                if w == 0:
                    continue
                pb, pc = in_p[b], in_p[c]
                if not pb and not pc:
                    den = 1 / ((e[j] - e[a]) * (e[j] - e[b]) * (e[j] - e[c]))
                elif not pb and pc:
                    den = -1 / ((e[c] - e[b]) * (e[j] - e[b]) * (e[j] - e[a]))
                    den -= 1 / ((e[c] - e[b]) * (e[c] - e[a]) * (e[j] - e[a]))
                elif pb and pc:
                    den = 1 / ((e[b] - e[a]) * (e[c] - e[a]) * (e[j] - e[a]))
                else:
                    den = -1 / ((e[b] - e[a]) * (e[j] - e[c]) * (e[j] - e[a]))
                key = (int(a), int(b), int(c))
                out[key] = out.get(key, 0.0) + w * den
    return out


def symmetric_path_amplitudes(split, target_block, i, j):
    """Hermitized path amplitudes: average of i->j and the reversed j->i path."""
    fwd = fourth_order_paths(split, target_block, i, j)
    bwd = fourth_order_paths(split, target_block, j, i)
    out = {}
    for k, v in fwd.items():
        out[k] = out.get(k, 0.0) + 0.5 * v
    for k, v in bwd.items():
        r = k[::-1]
        out[r] = out.get(r, 0.0) + 0.5 * np.conj(v)
    return out
