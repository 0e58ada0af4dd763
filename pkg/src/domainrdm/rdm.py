"""Validated 1-RDM, 2-RDM and domain-overlap types.

Conventions (spin-free, closed shell, real orthonormal basis):

* ``OneRDM.matrix[i, j] = sum_s <a+_{is} a_{js}>``, trace N, occupations in [0, 2].
* ``TwoRDM.tensor[i, k, j, l] = 1/2 sum_{s,t} <a+_{is} a+_{kt} a_{lt} a_{js}>``,
  so ``sum_{ik} D2[i,k,i,k] = N(N-1)/2`` and ``sum_k D2[i,k,j,k] = (N-1)/2 D[i,j]``.
* Domain overlap matrices are symmetric, have eigenvalues in [0, 1] and sum
  to the identity.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import MalformedInput, Violation, raise_violations
from .linalg import SYM_TOL, Spectrum, asymmetry, frozen, sym_eigen

TRACE_TOL = 1e-8
BOUND_TOL = 1e-8
ZERO_OCC = 1e-12


class Provenance(str, enum.Enum):
    SYMMETRIC = "SymmetricRestriction"
    DAFH = "DAFH"
    SINGLE_DET_DAFH = "SingleDetDAFH"


@dataclass(frozen=True, eq=False)
class OneRDM:
    matrix: np.ndarray
    n_electrons: int

    @property
    def dim(self):
        return self.matrix.shape[0]

    @cached_property
    def spectrum(self) -> Spectrum:
        return sym_eigen(self.matrix)

    @property
    def occupations(self):
        return self.spectrum.eigenvalues

    @cached_property
    def sqrt(self):
        """Positive square root, computed once and shared by every domain."""
        w, v = self.spectrum
        w = np.where(w < ZERO_OCC, 0.0, w)
        root = (v * np.sqrt(w)) @ v.T
        return frozen(0.5 * (root + root.T))

    def duodempotency_error(self):
        d = self.matrix
        return float(np.linalg.norm(d @ d - 2.0 * d))


@dataclass(frozen=True, eq=False)
class TwoRDM:
    tensor: np.ndarray
    n_electrons: int

    @property
    def dim(self):
        return self.tensor.shape[0]

    def contract(self):
        """``sum_k D2[i,k,j,k]``; equals ``(N-1)/2`` times the 1-RDM."""
        return np.einsum("ikjk->ij", self.tensor)

    def trace(self):
        return float(np.einsum("ikik->", self.tensor))


@dataclass(frozen=True, eq=False)
class DomainOverlapSet:
    labels: tuple
    matrices: tuple

    @property
    def dim(self):
        return self.matrices[0].shape[0]

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(zip(self.labels, self.matrices))

    def __getitem__(self, label):
        return self.matrices[self.labels.index(label)]


@dataclass(frozen=True, eq=False)
class DomainRestrictedRDM:
    domain_label: str
    matrix: np.ndarray
    provenance: Provenance
    population: float

    @cached_property
    def spectrum(self) -> Spectrum:
        return sym_eigen(self.matrix)

    @property
    def trace(self):
        return float(np.trace(self.matrix))


def _matrix_violations(matrix, name):
    """Shape/finiteness/symmetry checks; returns (array or None, violations)."""
    try:
        a = np.asarray(matrix, dtype=float)
    except (TypeError, ValueError) as exc:
        return None, [Violation("MALFORMED", f"{name}: {exc}")]
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        return None, [Violation("MALFORMED", f"{name} must be a non-empty square matrix, got shape {a.shape}")]
    if not np.all(np.isfinite(a)):
        return None, [Violation("MALFORMED", f"{name} has non-finite entries")]
    dev = asymmetry(a)
    if dev > SYM_TOL:
        return a, [Violation("NON_SYMMETRIC", f"{name} is not symmetric: max |A - A^T| = {dev:.3e}", dev)]
    return a, []


def _check_electrons(n):
    if isinstance(n, (bool, np.bool_)) or not isinstance(n, (int, np.integer)) or n < 1:
        raise MalformedInput([Violation("MALFORMED", f"electron count must be a positive integer, got {n!r}")])
    return int(n)


def validate_one_rdm(matrix, n_electrons) -> OneRDM:
    n = _check_electrons(n_electrons)
    a, violations = _matrix_violations(matrix, "1-RDM")
    if a is None:
        raise_violations(violations)
    tr = float(np.trace(a))
    if abs(tr - n) > TRACE_TOL:
        violations.append(Violation("TRACE_MISMATCH", f"1-RDM trace {tr!r} != N = {n}", tr - n))
    w = np.linalg.eigvalsh(0.5 * (a + a.T))
    for x in w:
        if x < -BOUND_TOL or x > 2.0 + BOUND_TOL:
            violations.append(Violation("BOUND_VIOLATION", f"occupation {x!r} outside [0, 2]", float(x)))
    raise_violations(violations)
    return OneRDM(frozen(a), n)


def validate_two_rdm(tensor, one_rdm: OneRDM) -> TwoRDM:
    n = one_rdm.n_electrons
    m = one_rdm.dim
    try:
        t = np.asarray(tensor, dtype=float)
    except (TypeError, ValueError) as exc:
        raise MalformedInput([Violation("MALFORMED", f"2-RDM: {exc}")]) from None
    if t.shape != (m, m, m, m):
        raise MalformedInput([Violation("MALFORMED", f"2-RDM shape {t.shape} does not match 1-RDM dimension {m}")])
    if not np.all(np.isfinite(t)):
        raise MalformedInput([Violation("MALFORMED", "2-RDM has non-finite entries")])
    violations = []
    # D2[i,k,j,l] = D2[k,i,l,j] (particle exchange) and D2[j,l,i,k] (hermiticity)
    for perm, what in (((1, 0, 3, 2), "particle exchange"), ((2, 3, 0, 1), "hermiticity")):
        dev = float(np.max(np.abs(t - t.transpose(perm))))
        if dev > SYM_TOL:
            violations.append(Violation("SYMMETRY_VIOLATION", f"2-RDM breaks {what} symmetry by {dev:.3e}", dev))
    expected = n * (n - 1) / 2.0
    tr = float(np.einsum("ikik->", t))
    if abs(tr - expected) > TRACE_TOL:
        violations.append(Violation("TRACE_MISMATCH", f"2-RDM trace {tr!r} != N(N-1)/2 = {expected!r}", tr - expected))
    dev = float(np.max(np.abs(np.einsum("ikjk->ij", t) - 0.5 * (n - 1) * one_rdm.matrix)))
    if dev > TRACE_TOL:
        violations.append(Violation("CONTRACTION_MISMATCH", f"2-RDM partial trace differs from (N-1)/2 * 1-RDM by {dev:.3e}", dev))
    raise_violations(violations)
    return TwoRDM(frozen(t), n)


def validate_domain_set(matrices, labels=None) -> DomainOverlapSet:
    matrices = list(matrices)
    if labels is None:
        labels = [f"D{k + 1}" for k in range(len(matrices))]
    labels = [str(x) for x in labels]
    if not matrices:
        raise MalformedInput([Violation("MALFORMED", "domain set is empty")])
    if len(labels) != len(matrices):
        raise MalformedInput([Violation("MALFORMED", f"{len(labels)} labels for {len(matrices)} domain matrices")])
    if len(set(labels)) != len(labels):
        raise MalformedInput([Violation("MALFORMED", f"duplicate domain labels in {labels}")])
    arrays, violations = [], []
    for label, s in zip(labels, matrices):
        a, vs = _matrix_violations(s, f"S({label})")
        if a is None:
            raise_violations(vs)
        arrays.append(a)
        violations.extend(vs)
    if len({a.shape for a in arrays}) != 1:
        raise MalformedInput([Violation("MALFORMED", "domain matrices have inconsistent dimensions")])
    for label, a in zip(labels, arrays):
        w = np.linalg.eigvalsh(0.5 * (a + a.T))
        if w[0] < -BOUND_TOL or w[-1] > 1.0 + BOUND_TOL:
            bad = w[0] if w[0] < -BOUND_TOL else w[-1]
            violations.append(Violation("BOUND_VIOLATION", f"S({label}) eigenvalue {bad!r} outside [0, 1]", float(bad)))
    dev = float(np.max(np.abs(sum(arrays) - np.eye(arrays[0].shape[0]))))
    if dev > TRACE_TOL:
        violations.append(Violation("IDENTITY_RESOLUTION", f"domain matrices do not sum to I: max deviation {dev:.3e}", dev))
    # report the identity failure first: it is the defining property of a partition
    violations.sort(key=lambda v: v.code != "IDENTITY_RESOLUTION")
    raise_violations(violations)
    return DomainOverlapSet(tuple(labels), tuple(frozen(a) for a in arrays))


def validate_restriction(label, matrix, provenance, population, one_rdm: OneRDM,
                         domains: DomainOverlapSet) -> DomainRestrictedRDM:
    """Rebuild a stored domain matrix, checking it against its 1-RDM and domain."""
    try:
        provenance = Provenance(provenance)
    except ValueError:
        raise MalformedInput([Violation("MALFORMED", f"unknown provenance {provenance!r}")]) from None
    if label not in domains.labels:
        raise MalformedInput([Violation("MALFORMED", f"domain label {label!r} not in the domain set")])
    a, violations = _matrix_violations(matrix, f"{provenance.value}({label})")
    if a is None:
        raise_violations(violations)
    if a.shape != one_rdm.matrix.shape:
        raise MalformedInput([Violation("MALFORMED", f"domain matrix shape {a.shape} does not match the 1-RDM")])
    expected = float(np.einsum("kl,lk->", one_rdm.matrix, domains[label]))
    if abs(population - expected) > TRACE_TOL:
        violations.append(Violation("TRACE_MISMATCH", f"stored population {population!r} != Tr(D S) = {expected!r}",
                                    population - expected))
    tr = float(np.trace(a))
    if abs(tr - expected) > TRACE_TOL:
        violations.append(Violation("TRACE_MISMATCH", f"trace {tr!r} of {label!r} != Tr(D S) = {expected!r}",
                                    tr - expected))
    raise_violations(violations)
    return DomainRestrictedRDM(label, frozen(a), provenance, float(population))
