"""Symmetric domain restriction of the 1-RDM: ``D^(1/2) S D^(1/2)``."""
from __future__ import annotations

import numpy as np

from .errors import BoundViolation, DimensionMismatch, MalformedInput, Violation
from .linalg import as_symmetric
from .rdm import BOUND_TOL, ZERO_OCC, DomainOverlapSet, DomainRestrictedRDM, OneRDM, Provenance


def domain_population(one_rdm: OneRDM, s):
    """``Tr(D S)``, the mean electron count in the domain."""
    return float(np.einsum("kl,lk->", one_rdm.matrix, s))


def symmetric_restrict(one_rdm: OneRDM, s, label="domain") -> DomainRestrictedRDM:
    s = as_symmetric(s, name=f"S({label})")
    if s.shape != one_rdm.matrix.shape:
        raise DimensionMismatch(f"S({label}) has shape {s.shape}, 1-RDM has {one_rdm.matrix.shape}")
    root = one_rdm.sqrt
    g = root @ s @ root
    g = 0.5 * (g + g.T)
    g.flags.writeable = False
    return DomainRestrictedRDM(label, g, Provenance.SYMMETRIC, domain_population(one_rdm, s))


def natural_basis_restrict(occupations, s_nat):
    """``sqrt(n_i) S_ij sqrt(n_j)`` for a domain matrix given in the natural-orbital basis."""
    n = np.asarray(occupations, dtype=float)
    s_nat = as_symmetric(s_nat, name="S_nat")
    if n.ndim != 1 or s_nat.shape != (n.size, n.size):
        raise DimensionMismatch(f"{n.size} occupations for a {s_nat.shape} domain matrix")
    if not np.all(np.isfinite(n)):
        raise MalformedInput([Violation("MALFORMED", "occupations must be finite")])
    bad = [Violation("BOUND_VIOLATION", f"occupation {x!r} outside [0, 2]", float(x))
           for x in n if x < -BOUND_TOL or x > 2.0 + BOUND_TOL]
    if bad:
        raise BoundViolation(bad)
    r = np.sqrt(np.where(n < ZERO_OCC, 0.0, n))
    return r[:, None] * s_nat * r[None, :]


def partition(one_rdm: OneRDM, domains: DomainOverlapSet):
    if domains.dim != one_rdm.dim:
        raise DimensionMismatch(f"domains act on dimension {domains.dim}, 1-RDM has {one_rdm.dim}")
    return [symmetric_restrict(one_rdm, s, label) for label, s in domains]
