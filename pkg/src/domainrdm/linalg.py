"""Dense real-symmetric kernels: eigendecomposition, PSD square root, commutators."""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import DimensionMismatch, MalformedInput, NonSymmetric, NotPSD, Violation

SYM_TOL = 1e-10
CLAMP_TOL = 1e-8


class Spectrum(NamedTuple):
    """Ascending eigenvalues; column k of ``eigenvectors`` pairs with ``eigenvalues[k]``."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self):
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.T


def frozen(a):
    """Float64 copy with the write flag cleared."""
    out = np.array(a, dtype=float, copy=True)
    out.flags.writeable = False
    return out


def asymmetry(a):
    a = np.asarray(a, dtype=float)
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - a.T)))


def as_square(a, name="matrix"):
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise MalformedInput([Violation(
            "MALFORMED", f"{name} must be a non-empty square matrix, got shape {a.shape}")])
    if not np.all(np.isfinite(a)):
        raise MalformedInput([Violation("MALFORMED", f"{name} has non-finite entries")])
    return a


def as_symmetric(a, tol=SYM_TOL, name="matrix"):
    """Return ``a`` as a float array after checking symmetry to ``tol``."""
    a = as_square(a, name)
    dev = asymmetry(a)
    if dev > tol:
        raise NonSymmetric([Violation(
            "NON_SYMMETRIC", f"{name} is not symmetric: max |A - A^T| = {dev:.3e}", dev)])
    return a


def fix_signs(vectors):
    """Flip columns so the largest-magnitude component is positive (first index wins ties)."""
    vectors = np.array(vectors, dtype=float, copy=True)
    if vectors.size == 0:
        return vectors
    idx = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[idx, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    return vectors * signs


def sym_eigen(a, tol=SYM_TOL):
    """Eigendecomposition of a real symmetric matrix with a deterministic sign convention."""
    a = as_symmetric(a, tol)
    w, v = np.linalg.eigh(0.5 * (a + a.T))
    return Spectrum(frozen(w), frozen(fix_signs(v)))


def psd_sqrt(a, clamp_tol=CLAMP_TOL):
    """Positive square root ``V diag(sqrt(max(w, 0))) V^T``.

    Raises NotPSD when an eigenvalue lies below ``-clamp_tol``.
    """
    w, v = sym_eigen(a)
    if w[0] < -clamp_tol:
        raise NotPSD(w[0], clamp_tol)
    root = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.T
    return 0.5 * (root + root.T)


def commutator_norm(a, b):
    """Frobenius norm of ``AB - BA``."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 2:
        raise DimensionMismatch(f"commutator of shapes {a.shape} and {b.shape}")
    return float(np.linalg.norm(a @ b - b @ a))
