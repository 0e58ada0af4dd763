"""Commutator table across domains and the population lost by dropping negative eigenvalues."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch
from .linalg import commutator_norm

COMMUTE_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class CommutatorTable:
    labels: tuple
    table: np.ndarray
    max_norm: float

    @property
    def commuting(self):
        return self.max_norm <= COMMUTE_TOL


@dataclass(frozen=True)
class NeglectImpact:
    trace_before: float
    trace_after: float
    population_leak: float


def common_eigenbasis_report(drs) -> CommutatorTable:
    """Pairwise Frobenius norms of ``[G_a, G_b]`` for a list of domain matrices."""
    drs = list(drs)
    if len(drs) < 2:
        raise DimensionMismatch("need at least two domain matrices")
    shapes = {dr.matrix.shape for dr in drs}
    if len(shapes) != 1:
        raise DimensionMismatch(f"domain matrices have different shapes {sorted(shapes)}")
    n = len(drs)
    table = np.zeros((n, n))
    for a in range(n):
        for b in range(a + 1, n):
            table[a, b] = table[b, a] = commutator_norm(drs[a].matrix, drs[b].matrix)
    table.flags.writeable = False
    return CommutatorTable(tuple(dr.domain_label for dr in drs), table, float(table.max()))


def neglect_impact(dr) -> NeglectImpact:
    """What happens to the domain population if negative eigenvalues are discarded."""
    w = dr.spectrum.eigenvalues
    leak = float(np.sum(w[w < 0]))
    after = float(np.sum(w[w > 0]))
    return NeglectImpact(after + leak, after, leak)
