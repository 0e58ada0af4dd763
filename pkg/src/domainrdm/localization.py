"""Isopycnic localization of the eigenvectors of a PSD domain matrix.

The occupation-weighted vectors ``w_i = sqrt(n_i) phi_i`` are mixed by an
orthogonal matrix T.  Because T is orthogonal, ``sum_i w_i w_i^T`` is left
unchanged; that sum is the density.  The new occupations are
``n'_i = |w'_i|^2`` and the new orbitals are ``w'_i / sqrt(n'_i)``.  T is
built from Jacobi rotations that maximise

    L = sum_i sum_Omega (n'_i <u'_i|S(Omega)|u'_i>)^2 = sum_i sum_Omega (w'_i^T S w'_i)^2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import LocalizationError, NegativeOccupation, NotRepresentable
from .linalg import Spectrum, frozen, sym_eigen
from .rdm import ZERO_OCC, DomainOverlapSet, DomainRestrictedRDM
from .representability import CHECK_TOL, check

NEGATIVE_TOL = 1e-8
CONV_TOL = 1e-10
MAX_SWEEPS = 100
_GAIN_TOL = 1e-15


@dataclass(frozen=True, eq=False)
class LocalizedOrbitals:
    orbitals: np.ndarray
    occupations: np.ndarray
    functional_value: float
    sweeps_used: int
    converged: bool
    history: tuple = ()

    def density(self):
        return (self.orbitals * self.occupations) @ self.orbitals.T


def _stack(domains):
    if isinstance(domains, DomainOverlapSet):
        return np.array(domains.matrices)
    return np.array([np.asarray(s, dtype=float) for s in domains])


def localization_functional(orbitals, occupations, domains):
    """L for unit-norm orbitals (columns) with the given occupations."""
    s = _stack(domains)
    w = np.asarray(orbitals, dtype=float) * np.sqrt(np.clip(occupations, 0.0, None))
    q = np.einsum("mi,amn,ni->ai", w, s, w)
    return float(np.sum(q * q))


def _functional(w, sw):
    q = np.einsum("mi,ami->ai", w, sw)
    return float(np.sum(q * q))


def _result(w, value, sweeps, converged, history):
    occ = np.einsum("mi,mi->i", w, w)
    live = occ >= ZERO_OCC
    orbitals = np.zeros_like(w)
    orbitals[:, live] = w[:, live] / np.sqrt(occ[live])
    occ = np.where(live, occ, 0.0)
    return LocalizedOrbitals(frozen(orbitals), frozen(occ), value, sweeps, converged, tuple(history))


def _sweep(w, sw):
    k = w.shape[1]
    for i in range(k - 1):
        for j in range(i + 1, k):
            a = w[:, i] @ sw[:, :, i].T
            b = w[:, j] @ sw[:, :, j].T
            c = w[:, i] @ sw[:, :, j].T
            big_a = 0.5 * (a - b)
            q = 0.5 * (big_a @ big_a - c @ c)
            r = big_a @ c
            if 2.0 * (math.hypot(q, r) - q) <= _GAIN_TOL:
                continue
            theta = 0.25 * math.atan2(r, q)
            cs, sn = math.cos(theta), math.sin(theta)
            wi, wj = w[:, i].copy(), w[:, j]
            w[:, i] = cs * wi + sn * wj
            w[:, j] = cs * wj - sn * wi
            swi, swj = sw[:, :, i].copy(), sw[:, :, j]
            sw[:, :, i] = cs * swi + sn * swj
            sw[:, :, j] = cs * swj - sn * swi


def isopycnic_localize(spectrum: Spectrum, domains, conv_tol=CONV_TOL, max_sweeps=MAX_SWEEPS,
                       on_sweep=None) -> LocalizedOrbitals:
    """Localize the eigenvectors of a PSD matrix by an isopycnic transformation.

    Eigenvalues below ``-1e-8`` raise NegativeOccupation: the transformation
    needs ``sqrt(n)``.  Eigenvalues up to ``1e-12`` are dropped.  ``on_sweep``
    is called with the intermediate LocalizedOrbitals after every sweep.
    """
    n, v = (np.asarray(x, dtype=float) for x in spectrum)
    if n.size and n.min() < -NEGATIVE_TOL:
        raise NegativeOccupation(n.min())
    keep = np.flatnonzero(n > ZERO_OCC)
    if keep.size == 0:
        raise LocalizationError("no orbital has a positive occupation")
    keep = keep[np.argsort(-n[keep], kind="stable")]
    w = v[:, keep] * np.sqrt(n[keep])
    sw = np.einsum("amn,ni->ami", _stack(domains), w)

    value = _functional(w, sw)
    history = [value]
    converged = False
    sweeps = 0
    while sweeps < max_sweeps:
        _sweep(w, sw)
        sweeps += 1
        new = _functional(w, sw)
        history.append(new)
        gain, value = new - value, new
        if on_sweep is not None:
            on_sweep(_result(w, value, sweeps, False, history))
        if gain < conv_tol:
            converged = True
            break
    return _result(w, value, sweeps, converged, history)


def localize_matrix(matrix, domains, expected_trace=None, conv_tol=CONV_TOL, max_sweeps=MAX_SWEEPS,
                    check_tol=CHECK_TOL, on_sweep=None) -> LocalizedOrbitals:
    """Check representability, then localize. Non-representable matrices are refused.

    A zero matrix yields an empty orbital set with ``functional_value == 0``.
    """
    report = check(matrix, expected_trace, check_tol)
    if not report.representable:
        raise NotRepresentable(report)
    spectrum = sym_eigen(matrix)
    if np.all(spectrum.eigenvalues <= ZERO_OCC):
        m = spectrum.eigenvectors.shape[0]
        return LocalizedOrbitals(frozen(np.zeros((m, 0))), frozen(np.zeros(0)), 0.0, 0, True, (0.0,))
    return isopycnic_localize(spectrum, domains, conv_tol, max_sweeps, on_sweep)


def localize_domain(dr: DomainRestrictedRDM, domains, conv_tol=CONV_TOL, max_sweeps=MAX_SWEEPS,
                    check_tol=CHECK_TOL, on_sweep=None) -> LocalizedOrbitals:
    return localize_matrix(dr.matrix, domains, dr.population, conv_tol, max_sweeps, check_tol, on_sweep)
