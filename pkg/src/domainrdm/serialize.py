"""Versioned JSON file format for matrices, systems, domain sets, reports and bundles.

Every document is a JSON object with ``schema_version`` and ``kind``.  Arrays
are stored as ``{"shape": [...], "data": [...]}`` in row-major order.  Floats
are written with Python's shortest round-trip repr, so reading a file back
reproduces every float64 bit for bit.  A 2-RDM is stored as an m**4 array in
index order (i, k, j, l), i.e. ``D2[i,k,j,l] = 1/2 sum_{s,t} <a+_is a+_kt a_lt a_js>``.
"""
from __future__ import annotations

import json
import math
from pathlib import Path
from typing import NamedTuple

import numpy as np

from . import __version__
from .errors import ParseError, SchemaVersionMismatch
from .localization import LocalizedOrbitals
from .linalg import frozen
from .rdm import (OneRDM, TwoRDM, validate_domain_set, validate_one_rdm,
                  validate_restriction, validate_two_rdm)
from .report import AnalysisBundle
from .representability import Finding, FindingCode, RepresentabilityReport, Verdict

SCHEMA_VERSION = "1"
KINDS = ("matrix", "system", "domains", "report", "localized", "bundle")
CONVENTIONS = {
    "one_rdm": "D[i,j] = sum_s <a+_is a_js>, trace N, spin-free closed shell",
    "two_rdm": "D2[i,k,j,l] = 1/2 sum_{s,t} <a+_is a+_kt a_lt a_js>, trace N(N-1)/2",
    "two_rdm_index_order": "i,k,j,l",
}


class System(NamedTuple):
    one_rdm: OneRDM
    two_rdm: TwoRDM | None
    source: dict
    ground_energy: float | None = None
    warnings: tuple = ()


# -- arrays ---------------------------------------------------------------

def encode_array(a):
    a = np.asarray(a, dtype=float)
    return {"shape": list(a.shape), "data": a.ravel().tolist()}


def decode_array(obj, ndim=None, what="array"):
    if not isinstance(obj, dict) or "shape" not in obj or "data" not in obj:
        raise ParseError(f"{what}: expected an object with 'shape' and 'data'")
    shape, data = obj["shape"], obj["data"]
    if not isinstance(shape, list) or not all(isinstance(x, int) and x >= 0 for x in shape):
        raise ParseError(f"{what}: bad shape {shape!r}")
    if ndim is not None and len(shape) != ndim:
        raise ParseError(f"{what}: expected {ndim} dimensions, got shape {shape}")
    if not isinstance(data, list) or len(data) != math.prod(shape):
        raise ParseError(f"{what}: shape {shape} needs {math.prod(shape)} values")
    if not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in data):
        raise ParseError(f"{what}: data must be numbers")
    return np.array(data, dtype=float).reshape(shape)


# -- documents -------------------------------------------------------------

def _doc(kind, **body):
    return {"schema_version": SCHEMA_VERSION, "kind": kind, "tool_version": __version__, **body}


def dumps(doc):
    return json.dumps(doc, indent=1, allow_nan=False) + "\n"


def loads(text, kind=None, path=None):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg} (column {exc.colno})", path, exc.lineno) from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be a JSON object", path)
    version = doc.get("schema_version")
    if version is None:
        raise ParseError("missing schema_version", path)
    if version != SCHEMA_VERSION:
        raise SchemaVersionMismatch(f"schema_version {version!r} is not supported (expected {SCHEMA_VERSION!r})", path)
    if doc.get("kind") not in KINDS:
        raise ParseError(f"unknown document kind {doc.get('kind')!r}", path)
    if kind is not None and doc["kind"] != kind:
        raise ParseError(f"expected a {kind!r} document, found {doc['kind']!r}", path)
    return doc


def save(path, doc):
    Path(path).write_text(dumps(doc))


def load(path, kind=None):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", path) from None
    return loads(text, kind, path)


def _get(doc, key, what):
    try:
        return doc[key]
    except (KeyError, TypeError):
        raise ParseError(f"{what}: missing field {key!r}") from None


def _number(x, what, optional=False):
    if x is None and optional:
        return None
    if not isinstance(x, (int, float)) or isinstance(x, bool):
        raise ParseError(f"{what}: expected a number, got {x!r}")
    return float(x)


# -- single matrices -------------------------------------------------------

def matrix_to_doc(matrix, expected_trace=None, label=None):
    return _doc("matrix", label=label, expected_trace=expected_trace, matrix=encode_array(matrix))


def doc_to_matrix(doc):
    """Returns ``(matrix, expected_trace, label)``."""
    m = decode_array(_get(doc, "matrix", "matrix document"), 2, "matrix")
    return m, _number(doc.get("expected_trace"), "expected_trace", optional=True), doc.get("label")


# -- systems and domain sets ----------------------------------------------

def _one_rdm_dict(one_rdm):
    return {"n_electrons": one_rdm.n_electrons, "matrix": encode_array(one_rdm.matrix)}


def _two_rdm_dict(two_rdm):
    if two_rdm is None:
        return None
    return {"index_order": CONVENTIONS["two_rdm_index_order"], "tensor": encode_array(two_rdm.tensor)}


def _read_rdms(doc, what):
    one = _get(doc, "one_rdm", what)
    n = _get(one, "n_electrons", "one_rdm")
    one_rdm = validate_one_rdm(decode_array(_get(one, "matrix", "one_rdm"), 2, "one_rdm"), n)
    two = doc.get("two_rdm")
    two_rdm = None
    if two is not None:
        if two.get("index_order", CONVENTIONS["two_rdm_index_order"]) != CONVENTIONS["two_rdm_index_order"]:
            raise ParseError(f"two_rdm: unsupported index order {two.get('index_order')!r}")
        two_rdm = validate_two_rdm(decode_array(_get(two, "tensor", "two_rdm"), 4, "two_rdm"), one_rdm)
    return one_rdm, two_rdm


def system_to_doc(one_rdm, two_rdm=None, source=None, ground_energy=None, warnings=()):
    return _doc("system", conventions=CONVENTIONS, source=dict(source or {}),
                ground_energy=ground_energy, warnings=list(warnings),
                one_rdm=_one_rdm_dict(one_rdm), two_rdm=_two_rdm_dict(two_rdm))


def doc_to_system(doc):
    one_rdm, two_rdm = _read_rdms(doc, "system")
    return System(one_rdm, two_rdm, dict(doc.get("source") or {}),
                  _number(doc.get("ground_energy"), "ground_energy", optional=True),
                  tuple(doc.get("warnings") or ()))


def _domains_dict(domains):
    return {"labels": list(domains.labels), "matrices": [encode_array(s) for s in domains.matrices]}


def _read_domains(obj):
    labels = _get(obj, "labels", "domains")
    mats = _get(obj, "matrices", "domains")
    if not isinstance(labels, list) or not isinstance(mats, list):
        raise ParseError("domains: 'labels' and 'matrices' must be lists")
    return validate_domain_set([decode_array(s, 2, f"S({lab})") for lab, s in zip(labels, mats)], labels)


def domains_to_doc(domains):
    return _doc("domains", **_domains_dict(domains))


def doc_to_domains(doc):
    return _read_domains(doc)


# -- reports and localized orbitals ---------------------------------------

def report_to_dict(report: RepresentabilityReport):
    return {
        "verdict": report.verdict.value,
        "hermiticity_deviation": report.hermiticity_deviation,
        "eigenvalues": report.eigenvalues.tolist(),
        "min_eigenvalue": report.min_eigenvalue,
        "max_eigenvalue": report.max_eigenvalue,
        "trace": report.trace,
        "expected_trace": report.expected_trace,
        "check_tol": report.check_tol,
        "findings": [{"code": f.code.value, "magnitude": f.magnitude} for f in report.findings],
    }


def dict_to_report(obj) -> RepresentabilityReport:
    try:
        findings = tuple(Finding(FindingCode(f["code"]), _number(f["magnitude"], "finding magnitude"))
                         for f in _get(obj, "findings", "report"))
        report = RepresentabilityReport(
            _number(_get(obj, "hermiticity_deviation", "report"), "hermiticity_deviation"),
            frozen([_number(x, "eigenvalue") for x in _get(obj, "eigenvalues", "report")]),
            _number(_get(obj, "trace", "report"), "trace"),
            _number(obj.get("expected_trace"), "expected_trace", optional=True),
            findings,
            _number(obj.get("check_tol", 1e-8), "check_tol"),
        )
        verdict = Verdict(_get(obj, "verdict", "report"))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"report: {exc}") from None
    if verdict != report.verdict:
        raise ParseError(f"report: verdict {verdict.value} inconsistent with its findings")
    return report


def localized_to_dict(lo: LocalizedOrbitals):
    return {
        "orbitals": encode_array(lo.orbitals),
        "occupations": lo.occupations.tolist(),
        "functional_value": lo.functional_value,
        "sweeps_used": lo.sweeps_used,
        "converged": lo.converged,
        "history": list(lo.history),
    }


def dict_to_localized(obj) -> LocalizedOrbitals:
    orbitals = decode_array(_get(obj, "orbitals", "localized"), 2, "orbitals")
    occ = np.array([_number(x, "occupation") for x in _get(obj, "occupations", "localized")])
    if occ.size != orbitals.shape[1]:
        raise ParseError(f"localized: {occ.size} occupations for {orbitals.shape[1]} orbitals")
    return LocalizedOrbitals(
        frozen(orbitals), frozen(occ),
        _number(_get(obj, "functional_value", "localized"), "functional_value"),
        int(_get(obj, "sweeps_used", "localized")),
        bool(_get(obj, "converged", "localized")),
        tuple(_number(x, "history") for x in obj.get("history", [])),
    )


def localized_to_doc(lo, label=None):
    return _doc("localized", label=label, **localized_to_dict(lo))


def report_to_doc(report, label=None):
    return _doc("report", label=label, **report_to_dict(report))


# -- bundles ----------------------------------------------------------------

def bundle_to_doc(bundle: AnalysisBundle):
    results = [{
        "label": dr.domain_label,
        "provenance": dr.provenance.value,
        "population": dr.population,
        "matrix": encode_array(dr.matrix),
        "report": report_to_dict(rep),
    } for dr, rep in zip(bundle.restrictions, bundle.reports)]
    return _doc(
        "bundle",
        conventions=CONVENTIONS,
        bundle_tool_version=bundle.tool_version,
        tolerances=bundle.tolerances,
        source=bundle.source,
        one_rdm=_one_rdm_dict(bundle.one_rdm),
        two_rdm=_two_rdm_dict(bundle.two_rdm),
        domains=_domains_dict(bundle.domains),
        results=results,
        localized={k: localized_to_dict(v) for k, v in bundle.localized.items()},
        diagnostics=bundle.diagnostics,
    )


def doc_to_bundle(doc) -> AnalysisBundle:
    """Rebuild a bundle; every embedded matrix goes back through its validator."""
    one_rdm, two_rdm = _read_rdms(doc, "bundle")
    domains = _read_domains(_get(doc, "domains", "bundle"))
    restrictions, reports = [], []
    for item in _get(doc, "results", "bundle"):
        restrictions.append(validate_restriction(
            _get(item, "label", "result"),
            decode_array(_get(item, "matrix", "result"), 2, "result matrix"),
            _get(item, "provenance", "result"),
            _number(_get(item, "population", "result"), "population"),
            one_rdm, domains))
        reports.append(dict_to_report(_get(item, "report", "result")))
    localized = {k: dict_to_localized(v) for k, v in (doc.get("localized") or {}).items()}
    return AnalysisBundle(
        source=dict(doc.get("source") or {}),
        one_rdm=one_rdm,
        domains=domains,
        two_rdm=two_rdm,
        restrictions=restrictions,
        reports=reports,
        localized=localized,
        diagnostics=doc.get("diagnostics") or {},
        tolerances=doc.get("tolerances") or {},
        tool_version=doc.get("bundle_tool_version", doc.get("tool_version", "")),
    )


def save_bundle(path, bundle):
    save(path, bundle_to_doc(bundle))


def load_bundle(path) -> AnalysisBundle:
    return doc_to_bundle(load(path, "bundle"))
