"""Exactly solvable reference systems: Hubbard chains by full CI, and closed-shell determinants.

Spin orbitals are numbered ``2*site + spin`` (spin 0 = up).  A determinant is
an integer bit string over these modes; creation operators act in ascending
mode order, so the fermionic sign of ``a_p`` is ``(-1)**popcount(bits below p)``.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

import numpy as np

from .dafh import single_det_two_rdm
from .errors import (InvalidPartition, MalformedInput, NonOrthonormal, TooLarge, Violation)
from .linalg import fix_signs
from .rdm import OneRDM, TwoRDM, validate_domain_set, validate_one_rdm, validate_two_rdm

log = logging.getLogger(__name__)

MAX_SITES = 8
MAX_DIM = 4900
DEGENERACY_TOL = 1e-8


@dataclass(frozen=True)
class HubbardSpec:
    n_sites: int
    n_electrons: int
    t: float = 1.0
    u: float = 0.0
    boundary: str = "open"

    def __post_init__(self):
        bad = []
        if not isinstance(self.n_sites, (int, np.integer)) or self.n_sites < 2:
            bad.append(f"n_sites must be an integer >= 2, got {self.n_sites!r}")
        if not isinstance(self.n_electrons, (int, np.integer)) or self.n_electrons < 2 \
                or self.n_electrons % 2:
            bad.append(f"n_electrons must be a positive even integer, got {self.n_electrons!r}")
        elif isinstance(self.n_sites, (int, np.integer)) and self.n_electrons > 2 * self.n_sites:
            bad.append(f"{self.n_electrons} electrons do not fit on {self.n_sites} sites")
        if not self.t > 0:
            bad.append(f"hopping t must be > 0, got {self.t!r}")
        if not self.u >= 0:
            bad.append(f"interaction U must be >= 0, got {self.u!r}")
        if self.boundary not in ("open", "periodic"):
            bad.append(f"boundary must be 'open' or 'periodic', got {self.boundary!r}")
        if bad:
            raise MalformedInput([Violation("MALFORMED", msg) for msg in bad])
        if self.n_sites > MAX_SITES or self.dim > MAX_DIM:
            raise TooLarge([Violation(
                "TOO_LARGE", f"{self.n_sites} sites / dimension {self.dim} exceeds the dense-FCI guard "
                f"({MAX_SITES} sites, {MAX_DIM} determinants)", float(self.dim))])

    @property
    def dim(self):
        return comb(self.n_sites, self.n_electrons // 2) ** 2

    def bonds(self):
        pairs = [(i, i + 1) for i in range(self.n_sites - 1)]
        if self.boundary == "periodic" and self.n_sites > 2:
            pairs.append((self.n_sites - 1, 0))
        return pairs


@dataclass(frozen=True, eq=False)
class HubbardResult:
    spec: HubbardSpec
    ground_energy: float
    one_rdm: OneRDM
    two_rdm: TwoRDM
    gap: float
    warnings: tuple = field(default_factory=tuple)


def hopping_matrix(spec: HubbardSpec):
    h = np.zeros((spec.n_sites, spec.n_sites))
    for i, j in spec.bonds():
        h[i, j] = h[j, i] = -spec.t
    return h


def rdm_energy(spec: HubbardSpec, one_rdm: OneRDM, two_rdm: TwoRDM):
    """Energy from the RDMs: ``sum h_ij D_ij + U sum_i D2[i,i,i,i]``."""
    h = hopping_matrix(spec)
    onsite = np.einsum("iiii->", two_rdm.tensor)
    return float(np.sum(h * one_rdm.matrix) + spec.u * onsite)


def _sector(n_sites, n_up, n_dn):
    ups = [sum(1 << (2 * i) for i in c) for c in combinations(range(n_sites), n_up)]
    dns = [sum(1 << (2 * i + 1) for i in c) for c in combinations(range(n_sites), n_dn)]
    return np.array(sorted(u | d for u in ups for d in dns), dtype=np.int64)


def _annihilate(strings, p):
    bit = np.int64(1) << p
    hit = (strings & bit) != 0
    sign = 1 - 2 * (np.bitwise_count(strings & (bit - 1)) & 1).astype(np.int64)
    return hit, sign, strings ^ bit


def _create(strings, p):
    bit = np.int64(1) << p
    hit = (strings & bit) == 0
    sign = 1 - 2 * (np.bitwise_count(strings & (bit - 1)) & 1).astype(np.int64)
    return hit, sign, strings | bit


def _hamiltonian(spec, strings):
    dim = strings.size
    h = np.zeros((dim, dim))
    cols = np.arange(dim)
    for i, j in spec.bonds():
        for s in range(2):
            p, q = 2 * i + s, 2 * j + s
            for dst, src in ((p, q), (q, p)):
                hit1, sign1, mid = _annihilate(strings, src)
                hit2, sign2, out = _create(mid, dst)
                ok = hit1 & hit2
                rows = np.searchsorted(strings, out[ok])
                np.add.at(h, (rows, cols[ok]), -spec.t * (sign1 * sign2)[ok])
    up = np.zeros(dim, dtype=np.int64)
    for i in range(spec.n_sites):
        up += ((strings >> (2 * i)) & 1) & ((strings >> (2 * i + 1)) & 1)
    h[cols, cols] += spec.u * up
    return h


def _lowered(strings, psi, modes):
    """Vectors ``a_{modes[-1]} ... a_{modes[0]} psi`` for every mode tuple, on a shared basis."""
    parts = []
    for ms in modes:
        hit = np.ones(strings.size, dtype=bool)
        sign = np.ones(strings.size, dtype=np.int64)
        cur = strings
        for p in ms:
            h, sg, cur = _annihilate(cur, p)
            hit &= h
            sign *= sg
        parts.append((hit, sign, cur))
    targets = np.unique(np.concatenate([cur[hit] for hit, _, cur in parts]))
    out = np.zeros((len(modes), targets.size))
    for row, (hit, sign, cur) in enumerate(parts):
        out[row, np.searchsorted(targets, cur[hit])] = (sign * psi)[hit]
    return out


def _spin_free_rdms(n_sites, strings, psi):
    nmode = 2 * n_sites
    u = _lowered(strings, psi, [(p,) for p in range(nmode)])
    gamma = (u @ u.T).reshape(n_sites, 2, n_sites, 2)
    d1 = np.einsum("isjs->ij", gamma)
    # row (r, s) holds a_s a_r psi, so v[(p,q)] . v[(r,s)] = <a+_p a+_q a_s a_r>
    pairs = [(r, s) for r in range(nmode) for s in range(nmode)]
    v = _lowered(strings, psi, pairs)
    gamma2 = (v @ v.T).reshape((n_sites, 2) * 4)
    d2 = 0.5 * np.einsum("asbtcsdt->abcd", gamma2)
    return d1, d2


def hubbard_fci(spec: HubbardSpec) -> HubbardResult:
    """Exact S_z = 0 ground state of a Hubbard chain and its spin-free RDMs."""
    half = spec.n_electrons // 2
    strings = _sector(spec.n_sites, half, half)
    w, v = np.linalg.eigh(_hamiltonian(spec, strings))
    psi = fix_signs(v[:, :1])[:, 0]
    gap = float(w[1] - w[0]) if w.size > 1 else float("inf")
    warnings = []
    if gap < DEGENERACY_TOL:
        msg = f"ground state is degenerate (gap {gap:.2e}); using the lowest-index eigenvector"
        log.warning(msg)
        warnings.append(msg)
    d1, d2 = _spin_free_rdms(spec.n_sites, strings, psi)
    d1 = 0.5 * (d1 + d1.T)
    d2 = 0.5 * (d2 + d2.transpose(2, 3, 0, 1))
    one = validate_one_rdm(d1, spec.n_electrons)
    two = validate_two_rdm(d2, one)
    return HubbardResult(spec, float(w[0]), one, two, gap, tuple(warnings))


def parse_site_blocks(text):
    """``"1,2;3-4"`` -> ``[[1, 2], [3, 4]]`` (1-based sites)."""
    blocks = []
    for chunk in text.split(";"):
        sites = []
        for item in chunk.split(","):
            item = item.strip()
            if not item:
                continue
            try:
                if "-" in item:
                    lo, hi = (int(x) for x in item.split("-", 1))
                    sites.extend(range(lo, hi + 1))
                else:
                    sites.append(int(item))
            except ValueError:
                raise MalformedInput([Violation("MALFORMED", f"bad site block entry {item!r} in {text!r}")]) from None
        blocks.append(sites)
    return blocks


def site_domains(n_sites, blocks):
    """Diagonal 0/1 projectors onto disjoint site blocks that cover ``1..n_sites``."""
    seen = []
    for b in blocks:
        seen.extend(b)
    bad = []
    if any(len(b) == 0 for b in blocks):
        bad.append("empty site block")
    out_of_range = sorted({x for x in seen if not 1 <= x <= n_sites})
    if out_of_range:
        bad.append(f"sites {out_of_range} outside 1..{n_sites}")
    dup = sorted({x for x in seen if seen.count(x) > 1})
    if dup:
        bad.append(f"sites {dup} appear in more than one block")
    missing = sorted(set(range(1, n_sites + 1)) - set(seen))
    if missing:
        bad.append(f"sites {missing} are not covered")
    if bad:
        raise InvalidPartition([Violation("INVALID_PARTITION", msg) for msg in bad])
    mats, labels = [], []
    for b in blocks:
        s = np.zeros((n_sites, n_sites))
        idx = [x - 1 for x in b]
        s[idx, idx] = 1.0
        mats.append(s)
        labels.append(",".join(str(x) for x in b))
    return validate_domain_set(mats, labels)


def single_det_system(coeffs):
    """1- and 2-RDM of the closed-shell determinant with occupied orbitals ``coeffs`` (columns)."""
    c = np.asarray(coeffs, dtype=float)
    if c.ndim == 1:
        c = c[:, None]
    dev = float(np.max(np.abs(c.T @ c - np.eye(c.shape[1])))) if c.size else 0.0
    if c.ndim != 2 or c.shape[1] < 1 or dev > 1e-10:
        raise NonOrthonormal([Violation("NON_ORTHONORMAL", f"orbital columns are not orthonormal (dev {dev:.2e})", dev)])
    one = validate_one_rdm(2.0 * c @ c.T, 2 * c.shape[1])
    return one, single_det_two_rdm(one)
