"""Dense complex matrix primitives.

All matrices are plain ``numpy.ndarray`` objects of complex dtype. Energies are
ordinary frequencies in GHz and times are in ns, so time evolution carries the
explicit 2*pi factor: U(t) = exp(-i 2 pi H t).
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .errors import NonHermitianInput, SingularBlock

HERMITIAN_TOL = 1e-10


def as_matrix(A):
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    return A


def hermiticity_defect(A):
    A = np.asarray(A)
    return np.linalg.norm(A - A.conj().T)


def is_hermitian(A, tol=HERMITIAN_TOL):
    A = np.asarray(A)
    return hermiticity_defect(A) <= tol * max(1.0, np.linalg.norm(A))


def check_hermitian(A, tol=HERMITIAN_TOL):
    A = as_matrix(A)
    if not is_hermitian(A, tol):
        raise NonHermitianInput(
            f"matrix is not hermitian: ||A - A^H||_F = {hermiticity_defect(A):.3e}"
        )
    return A


def fix_gauge(vectors):
    """Rotate each column so its largest-magnitude entry is real positive.

    Ties go to the lowest row index (``argmax`` returns the first maximum).
    """
    vectors = np.array(vectors, dtype=complex)
    mags = np.abs(vectors)
    # round so near-ties resolve by index instead of by rounding noise
    rows = np.argmax(np.round(mags, 12), axis=0)
    cols = np.arange(vectors.shape[1])
    pivots = vectors[rows, cols]
    phases = np.ones_like(pivots)
    nz = np.abs(pivots) > 0
    phases[nz] = pivots[nz] / np.abs(pivots[nz])
    return vectors / phases[None, :]


@dataclass(frozen=True)
class HermitianEigen:
    values: np.ndarray
    vectors: np.ndarray

    def reconstruct(self):
        return (self.vectors * self.values) @ self.vectors.conj().T


def hermitian_eig(H):
    """Eigendecomposition of a hermitian matrix with ascending eigenvalues."""
    H = check_hermitian(H)
    Hs = 0.5 * (H + H.conj().T)
    values, vectors = sla.eigh(Hs)
    return HermitianEigen(values=values, vectors=fix_gauge(vectors))


def hermitian_function(A, func):
    """Apply a scalar function to a hermitian matrix through its eigenbasis."""
    A = check_hermitian(A)
    w, v = sla.eigh(0.5 * (A + A.conj().T))
    return (v * func(w)) @ v.conj().T


def inv_sqrt_psd(A, rel_tol=1e-10):
    """A^{-1/2} for a hermitian positive definite A.

    Raises SingularBlock when the smallest eigenvalue is not above
    ``rel_tol`` times the largest.
    """
    A = check_hermitian(A, tol=1e-8)
    w, v = sla.eigh(0.5 * (A + A.conj().T))
    top = w.max() if w.size else 0.0
    if w.size and (top <= 0 or w.min() <= rel_tol * top):
        raise SingularBlock(
            f"matrix is singular to tolerance: eigenvalue range [{w.min():.3e}, {top:.3e}]"
        )
    return (v / np.sqrt(w)) @ v.conj().T


def sqrt_psd(A):
    """Principal square root of a hermitian positive semidefinite matrix."""
    return hermitian_function(A, lambda w: np.sqrt(np.clip(w, 0.0, None)))


def evolve_operator(H, t):
    """exp(-i 2 pi H t) with H in GHz and t in ns."""
    H = check_hermitian(H)
    w, v = sla.eigh(0.5 * (H + H.conj().T))
    return (v * np.exp(-2j * np.pi * w * t)) @ v.conj().T


def frobenius_distance(A, B):
    return float(np.linalg.norm(np.asarray(A) - np.asarray(B)))


def commutator(A, B):
    A = np.asarray(A)
    B = np.asarray(B)
    return A @ B - B @ A


def svd(A):
    """Return (U, s, V) with A = U diag(s) V^H."""
    U, s, Vh = np.linalg.svd(np.asarray(A, dtype=complex))
    return U, s, Vh.conj().T


def random_hermitian(rng, dim, scale=1.0):
    X = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return scale * 0.5 * (X + X.conj().T)


def random_unitary(rng, dim):
    X = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    Q, R = np.linalg.qr(X)
    d = np.diag(R)
    return Q * (d / np.abs(d))[None, :]
