"""Representability checks for domain matrices: hermiticity, [0, 2] spectrum, trace."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .dafh import dafh_matrix
from .decomposition import partition
from .errors import DimensionMismatch
from .linalg import SYM_TOL, asymmetry
from .rdm import DomainOverlapSet, DomainRestrictedRDM, OneRDM, TwoRDM

CHECK_TOL = 1e-8


class FindingCode(str, enum.Enum):
    NEGATIVE_EIGENVALUE = "NEGATIVE_EIGENVALUE"
    PAULI_VIOLATION = "PAULI_VIOLATION"
    TRACE_MISMATCH = "TRACE_MISMATCH"
    NON_HERMITIAN = "NON_HERMITIAN"


class Verdict(str, enum.Enum):
    REPRESENTABLE = "REPRESENTABLE"
    NOT_REPRESENTABLE = "NOT_REPRESENTABLE"


@dataclass(frozen=True)
class Finding:
    code: FindingCode
    magnitude: float


@dataclass(frozen=True, eq=False)
class RepresentabilityReport:
    hermiticity_deviation: float
    eigenvalues: np.ndarray
    trace: float
    expected_trace: float | None = None
    findings: tuple = field(default_factory=tuple)
    check_tol: float = CHECK_TOL

    @property
    def min_eigenvalue(self):
        return float(self.eigenvalues[0])

    @property
    def max_eigenvalue(self):
        return float(self.eigenvalues[-1])

    @property
    def verdict(self):
        return Verdict.NOT_REPRESENTABLE if self.findings else Verdict.REPRESENTABLE

    @property
    def representable(self):
        return not self.findings

    def finding(self, code):
        for f in self.findings:
            if f.code == code:
                return f
        return None


def check(matrix, expected_trace=None, check_tol=CHECK_TOL) -> RepresentabilityReport:
    """Classify a candidate domain matrix. Never modifies or repairs it."""
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise DimensionMismatch(f"check needs a square matrix, got shape {m.shape}")
    dev = asymmetry(m)
    w = np.linalg.eigvalsh(0.5 * (m + m.T))
    w.flags.writeable = False
    tr = float(np.trace(m))
    findings = []
    if dev > SYM_TOL:
        findings.append(Finding(FindingCode.NON_HERMITIAN, dev))
    if w[0] < -check_tol:
        findings.append(Finding(FindingCode.NEGATIVE_EIGENVALUE, float(-w[0])))
    if w[-1] > 2.0 + check_tol:
        findings.append(Finding(FindingCode.PAULI_VIOLATION, float(w[-1] - 2.0)))
    if expected_trace is not None and abs(tr - expected_trace) > check_tol:
        findings.append(Finding(FindingCode.TRACE_MISMATCH, abs(tr - expected_trace)))
    return RepresentabilityReport(dev, w, tr, None if expected_trace is None else float(expected_trace),
                                  tuple(findings), float(check_tol))


def check_domain(dr: DomainRestrictedRDM, check_tol=CHECK_TOL) -> RepresentabilityReport:
    return check(dr.matrix, dr.population, check_tol)


@dataclass(frozen=True, eq=False)
class DomainComparison:
    label: str
    symmetric: DomainRestrictedRDM
    dafh: DomainRestrictedRDM
    symmetric_report: RepresentabilityReport
    dafh_report: RepresentabilityReport
    difference_norm: float


def compare_constructions(one_rdm: OneRDM, two_rdm: TwoRDM, domains: DomainOverlapSet,
                          check_tol=CHECK_TOL):
    """Build both domain matrices for every domain and check each one."""
    out = []
    for sym, (label, s) in zip(partition(one_rdm, domains), domains):
        hole = dafh_matrix(one_rdm, two_rdm, s, label)
        out.append(DomainComparison(
            label, sym, hole,
            check_domain(sym, check_tol), check_domain(hole, check_tol),
            float(np.linalg.norm(sym.matrix - hole.matrix))))
    return out
