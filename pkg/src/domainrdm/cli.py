"""Command-line front end.

Exit codes: 0 success, 1 malformed input, 2 validation failure,
3 matrix not representable (``check``), 4 localization refused.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

import numpy as np

from . import __version__, serialize
from .errors import (DimensionMismatch, LocalizationError, MalformedInput, ParseError,
                     ValidationError)
from .localization import CONV_TOL, MAX_SWEEPS, localize_matrix
from .models import HubbardSpec, hubbard_fci, parse_site_blocks, site_domains
from .report import build_bundle
from .representability import CHECK_TOL, check

log = logging.getLogger("domainrdm")

EXIT_OK = 0
EXIT_MALFORMED = 1
EXIT_INVALID = 2
EXIT_NOT_REPRESENTABLE = 3
EXIT_LOCALIZATION_REFUSED = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 means validation failure here
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _emit(doc, out):
    if out:
        serialize.save(out, doc)
        log.info("wrote %s", out)


def _domains(args, dim):
    if args.domains:
        domains = serialize.doc_to_domains(serialize.load(args.domains, "domains"))
    elif args.site_blocks:
        domains = site_domains(dim, parse_site_blocks(args.site_blocks))
    else:
        raise UsageError("one of --domains or --site-blocks is required")
    if domains.dim != dim:
        raise DimensionMismatch(f"domains act on dimension {domains.dim}, the system has {dim}")
    return domains


def _print_table(rows, header):
    widths = [max(len(str(r[i])) for r in [header] + rows) for i in range(len(header))]
    for r in [header] + rows:
        print("  ".join(str(x).ljust(w) for x, w in zip(r, widths)).rstrip())


def _summarize(bundle):
    rows = []
    for dr, rep in zip(bundle.restrictions, bundle.reports):
        codes = ",".join(f"{f.code.value}:{f.magnitude:.3g}" for f in rep.findings) or "-"
        rows.append([dr.domain_label, dr.provenance.value, f"{dr.population:.6f}",
                     f"{rep.min_eigenvalue:.6f}", f"{rep.max_eigenvalue:.6f}", rep.verdict.value, codes])
    _print_table(rows, ["domain", "construction", "population", "min_eig", "max_eig", "verdict", "findings"])
    ok = True
    for prov, block in bundle.diagnostics.items():
        if not isinstance(block, dict) or "partition_deviation" not in block:
            continue
        dev = block["partition_deviation"]
        passed = dev < 1e-8
        ok &= passed
        print(f"{prov} sum check: max |sum_domains - D| = {dev:.3e}  {'PASS' if passed else 'FAIL'}")
        if "commutator" in block:
            c = block["commutator"]
            print(f"{prov} max commutator norm = {c['max_norm']:.6e}  "
                  f"({'common eigenbasis' if c['commuting'] else 'no common eigenbasis'})")
        tol = bundle.tolerances.get("check_tol", CHECK_TOL)
        leaks = [n for n in block["neglect"] if n["population_leak"] < -tol]
        for n in leaks:
            print(f"{prov} {n['label']}: dropping negative eigenvalues loses {-n['population_leak']:.6e} electrons")
    for label, norm in bundle.diagnostics.get("difference_norms", {}).items():
        print(f"||G_sym - G_dafh||_F [{label}] = {norm:.6e}")
    return ok


def cmd_model(args):
    spec = HubbardSpec(args.sites, args.electrons, args.t, args.u,
                       "periodic" if args.periodic else "open")
    res = hubbard_fci(spec)
    source = {"model": "hubbard", "n_sites": spec.n_sites, "n_electrons": spec.n_electrons,
              "t": spec.t, "u": spec.u, "boundary": spec.boundary}
    doc = serialize.system_to_doc(res.one_rdm, res.two_rdm, source, res.ground_energy, res.warnings)
    if args.out:
        _emit(doc, args.out)
        print(f"ground energy {res.ground_energy:.12f}; occupations "
              + " ".join(f"{x:.6f}" for x in res.one_rdm.occupations[::-1]))
    else:
        sys.stdout.write(serialize.dumps(doc))
    return EXIT_OK


def _analysis(args, symmetric, dafh, localize=False):
    system = serialize.doc_to_system(serialize.load(args.system, "system"))
    if dafh and system.two_rdm is None:
        raise MalformedInput([], f"{args.system}: no 2-RDM stored; DAFH matrices need one")
    domains = _domains(args, system.one_rdm.dim)
    source = dict(system.source, system_file=str(args.system))
    bundle = build_bundle(system.one_rdm, domains, system.two_rdm, source, symmetric=symmetric,
                          dafh=dafh, localize=localize, check_tol=args.check_tol,
                          conv_tol=getattr(args, "conv_tol", CONV_TOL),
                          max_sweeps=getattr(args, "max_sweeps", MAX_SWEEPS))
    ok = _summarize(bundle)
    _emit(serialize.bundle_to_doc(bundle), args.out)
    if symmetric and not all(rep.representable for dr, rep in bundle.by_provenance("SymmetricRestriction")):
        ok = False
    return EXIT_OK if ok else EXIT_INVALID


def cmd_decompose(args):
    return _analysis(args, symmetric=True, dafh=False, localize=args.localize)


def cmd_dafh(args):
    return _analysis(args, symmetric=False, dafh=True)


def cmd_compare(args):
    return _analysis(args, symmetric=True, dafh=True)


def cmd_check(args):
    matrix, stored_trace, label = serialize.doc_to_matrix(serialize.load(args.matrix, "matrix"))
    expected = args.expected_trace if args.expected_trace is not None else stored_trace
    report = check(matrix, expected, args.tol)
    doc = serialize.report_to_doc(report, label)
    sys.stdout.write(serialize.dumps(doc))
    _emit(doc, args.out)
    return EXIT_OK if report.representable else EXIT_NOT_REPRESENTABLE


def cmd_localize(args):
    matrix, expected, label = serialize.doc_to_matrix(serialize.load(args.input, "matrix"))
    domains = _domains(args, matrix.shape[0])
    lo = localize_matrix(matrix, domains, expected, args.conv_tol, args.max_sweeps, args.check_tol)
    print(f"{lo.orbitals.shape[1]} orbitals, L = {lo.functional_value:.10f}, "
          f"sweeps {lo.sweeps_used}, {'converged' if lo.converged else 'NOT converged'}")
    print("occupations " + " ".join(f"{x:.6f}" for x in lo.occupations))
    _emit(serialize.localized_to_doc(lo, label), args.out)
    return EXIT_OK


def build_parser():
    p = _Parser(prog="domainrdm", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    m = sub.add_parser("model", help="exact Hubbard-chain ground state and its RDMs")
    m.add_argument("--sites", type=int, required=True)
    m.add_argument("--electrons", type=int, required=True)
    m.add_argument("--t", type=float, default=1.0)
    m.add_argument("--u", type=float, default=0.0)
    m.add_argument("--periodic", action="store_true")
    m.add_argument("--out")
    m.set_defaults(func=cmd_model)

    def domain_args(q):
        g = q.add_mutually_exclusive_group()
        g.add_argument("--domains", help="domains file")
        g.add_argument("--site-blocks", help="site blocks, e.g. '1,2;3-4' (1-based)")

    for name, func, helptext in (
            ("decompose", cmd_decompose, "symmetric domain restriction of the 1-RDM"),
            ("dafh", cmd_dafh, "domain-averaged hole matrices from the 2-RDM"),
            ("compare", cmd_compare, "both constructions side by side with diagnostics")):
        q = sub.add_parser(name, help=helptext)
        q.add_argument("--system", required=True)
        domain_args(q)
        q.add_argument("--check-tol", type=float, default=CHECK_TOL)
        q.add_argument("--out")
        if name == "decompose":
            q.add_argument("--localize", action="store_true",
                           help="also localize each domain matrix isopycnically")
            q.add_argument("--conv-tol", type=float, default=CONV_TOL)
            q.add_argument("--max-sweeps", type=int, default=MAX_SWEEPS)
        q.set_defaults(func=func)

    c = sub.add_parser("check", help="representability report for one matrix")
    c.add_argument("--matrix", required=True)
    c.add_argument("--expected-trace", type=float)
    c.add_argument("--tol", type=float, default=CHECK_TOL)
    c.add_argument("--out")
    c.set_defaults(func=cmd_check)

    lo = sub.add_parser("localize", help="isopycnic localization of a PSD domain matrix")
    lo.add_argument("--input", required=True)
    domain_args(lo)
    lo.add_argument("--conv-tol", type=float, default=CONV_TOL)
    lo.add_argument("--max-sweeps", type=int, default=MAX_SWEEPS)
    lo.add_argument("--check-tol", type=float, default=CHECK_TOL)
    lo.add_argument("--out")
    lo.set_defaults(func=cmd_localize)
    return p


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(name)s: %(message)s")
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_MALFORMED
    except (ParseError, MalformedInput, DimensionMismatch) as exc:
        print(f"malformed input: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except ValidationError as exc:
        print(f"validation failed: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except LocalizationError as exc:
        print(f"localization refused: {exc}", file=sys.stderr)
        return EXIT_LOCALIZATION_REFUSED
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
