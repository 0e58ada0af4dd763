"""Domain-averaged hole matrices from the 2-RDM, and the cumulant split.

The hole for a domain with overlap matrix S is

    G_ij = N_S D_ij - 2 sum_kl D2[i,k,j,l] S_lk,     N_S = Tr(D S).

With the 2-RDM normalisation in :mod:`domainrdm.rdm` its trace is N_S, and
for a closed-shell determinant (D^2 = 2D, vanishing cumulant) it collapses
to D S D / 2, which is exactly the symmetric restriction.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotDuodempotent, Violation
from .decomposition import domain_population
from .linalg import as_symmetric, frozen
from .rdm import DomainRestrictedRDM, OneRDM, Provenance, TwoRDM, validate_two_rdm

DUODEMPOTENCY_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class CumulantTensor:
    tensor: np.ndarray

    def norm(self):
        return float(np.linalg.norm(self.tensor))


def _check_pair(one_rdm, two_rdm):
    m = one_rdm.dim
    if two_rdm.tensor.shape != (m, m, m, m):
        raise DimensionMismatch(f"2-RDM shape {two_rdm.tensor.shape} vs 1-RDM dimension {m}")


def _check_duodempotent(one_rdm):
    err = one_rdm.duodempotency_error()
    if err > DUODEMPOTENCY_TOL:
        raise NotDuodempotent([Violation(
            "NOT_DUODEMPOTENT", f"1-RDM is not duodempotent: ||D^2 - 2D||_F = {err:.3e}", err)])


def dafh_matrix(one_rdm: OneRDM, two_rdm: TwoRDM, s, label="domain") -> DomainRestrictedRDM:
    """Hole matrix of one domain. No positivity is implied or enforced."""
    _check_pair(one_rdm, two_rdm)
    s = as_symmetric(s, name=f"S({label})")
    if s.shape != one_rdm.matrix.shape:
        raise DimensionMismatch(f"S({label}) has shape {s.shape}, 1-RDM has {one_rdm.matrix.shape}")
    pop = domain_population(one_rdm, s)
    g = pop * one_rdm.matrix - 2.0 * np.tensordot(two_rdm.tensor, s, axes=([1, 3], [1, 0]))
    return DomainRestrictedRDM(label, frozen(0.5 * (g + g.T)), Provenance.DAFH, pop)


def single_det_dafh(one_rdm: OneRDM, s, label="domain") -> DomainRestrictedRDM:
    _check_duodempotent(one_rdm)
    s = as_symmetric(s, name=f"S({label})")
    if s.shape != one_rdm.matrix.shape:
        raise DimensionMismatch(f"S({label}) has shape {s.shape}, 1-RDM has {one_rdm.matrix.shape}")
    d = one_rdm.matrix
    g = 0.5 * (d @ s @ d)
    return DomainRestrictedRDM(label, frozen(0.5 * (g + g.T)), Provenance.SINGLE_DET_DAFH,
                               domain_population(one_rdm, s))


def single_det_two_rdm(one_rdm: OneRDM) -> TwoRDM:
    """Closed-shell determinant 2-RDM: ``D_ij D_kl / 2 - D_il D_kj / 4``."""
    _check_duodempotent(one_rdm)
    d = one_rdm.matrix
    t = 0.5 * np.einsum("ij,kl->ikjl", d, d) - 0.25 * np.einsum("il,kj->ikjl", d, d)
    return validate_two_rdm(t, one_rdm)


def cumulant(one_rdm: OneRDM, two_rdm: TwoRDM) -> CumulantTensor:
    _check_pair(one_rdm, two_rdm)
    d = one_rdm.matrix
    lam = (two_rdm.tensor
           - 0.5 * np.einsum("ij,kl->ikjl", d, d)
           + 0.25 * np.einsum("il,kj->ikjl", d, d))
    return CumulantTensor(frozen(lam))
