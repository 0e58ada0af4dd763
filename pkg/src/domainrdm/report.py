"""Analysis bundles: everything computed for one system and one domain set."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .dafh import dafh_matrix
from .decomposition import partition
from .diagnostics import COMMUTE_TOL, common_eigenbasis_report, neglect_impact
from .localization import CONV_TOL, MAX_SWEEPS, localize_domain
from .rdm import DomainOverlapSet, OneRDM, Provenance, TwoRDM
from .representability import CHECK_TOL, check_domain


def default_tolerances():
    return {
        "check_tol": CHECK_TOL,
        "conv_tol": CONV_TOL,
        "max_sweeps": MAX_SWEEPS,
        "commute_tol": COMMUTE_TOL,
    }


@dataclass(eq=False)
class AnalysisBundle:
    source: dict
    one_rdm: OneRDM
    domains: DomainOverlapSet
    two_rdm: TwoRDM | None = None
    restrictions: list = field(default_factory=list)
    reports: list = field(default_factory=list)
    localized: dict = field(default_factory=dict)
    diagnostics: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=default_tolerances)
    tool_version: str = __version__

    def by_provenance(self, provenance):
        provenance = Provenance(provenance)
        return [(dr, rep) for dr, rep in zip(self.restrictions, self.reports)
                if dr.provenance == provenance]


def _diagnostics(drs, one_rdm):
    out = {}
    if len(drs) >= 2:
        table = common_eigenbasis_report(drs)
        out["commutator"] = {
            "labels": list(table.labels),
            "table": table.table.tolist(),
            "max_norm": table.max_norm,
            "commuting": table.commuting,
        }
    out["neglect"] = [
        {"label": dr.domain_label, **vars(neglect_impact(dr))} for dr in drs
    ]
    out["partition_deviation"] = float(np.max(np.abs(sum(dr.matrix for dr in drs) - one_rdm.matrix)))
    return out


def build_bundle(one_rdm: OneRDM, domains: DomainOverlapSet, two_rdm: TwoRDM | None = None,
                 source=None, symmetric=True, dafh=False, localize=False,
                 check_tol=CHECK_TOL, conv_tol=CONV_TOL, max_sweeps=MAX_SWEEPS) -> AnalysisBundle:
    """Run the requested constructions over every domain and collect the results.

    ``symmetric`` adds the D^(1/2) S D^(1/2) partition, ``dafh`` the 2-RDM hole
    matrices (requires ``two_rdm``), ``localize`` isopycnic orbitals for each
    symmetric restriction.
    """
    if dafh and two_rdm is None:
        raise ValueError("DAFH matrices need a 2-RDM")
    tolerances = {**default_tolerances(), "check_tol": check_tol, "conv_tol": conv_tol,
                  "max_sweeps": max_sweeps}
    bundle = AnalysisBundle(dict(source or {}), one_rdm, domains, two_rdm, tolerances=tolerances)
    diagnostics = {}
    if symmetric:
        sym = partition(one_rdm, domains)
        reports = [check_domain(dr, check_tol) for dr in sym]
        bundle.restrictions += sym
        bundle.reports += reports
        diagnostics[Provenance.SYMMETRIC.value] = _diagnostics(sym, one_rdm)
        if localize:
            for dr in sym:
                bundle.localized[dr.domain_label] = localize_domain(dr, domains, conv_tol, max_sweeps, check_tol)
    if dafh:
        holes = [dafh_matrix(one_rdm, two_rdm, s, label) for label, s in domains]
        reports = [check_domain(dr, check_tol) for dr in holes]
        bundle.restrictions += holes
        bundle.reports += reports
        diagnostics[Provenance.DAFH.value] = _diagnostics(holes, one_rdm)
    if symmetric and dafh:
        diagnostics["difference_norms"] = {
            label: float(np.linalg.norm(a.matrix - b.matrix))
            for label, a, b in zip(domains.labels, bundle.restrictions[:len(domains)],
                                   bundle.restrictions[len(domains):])
        }
    bundle.diagnostics = diagnostics
    return bundle
