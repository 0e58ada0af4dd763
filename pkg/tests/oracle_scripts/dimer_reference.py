"""Brute-force reference numbers for small open Hubbard chains (t=1).

Independent of the package: the Hamiltonian is built in the full Fock space
from Jordan-Wigner matrices, the matrix square root comes from
scipy.linalg.sqrtm, and every contraction is an explicit Python loop.

Run:  python3 tests/oracle_scripts/dimer_reference.py

The printed values are frozen into tests/test_reference_values.py.
"""
from itertools import product

import numpy as np
import scipy.linalg


def annihilator(p, nmode):
    z = np.diag([1.0, -1.0])
    low = np.array([[0.0, 1.0], [0.0, 0.0]])  # |0><1| in (empty, occupied) basis
    eye = np.eye(2)
    out = np.array([[1.0]])
    for op in [z] * p + [low] + [eye] * (nmode - p - 1):
        out = np.kron(out, op)
    return out


def ground_state(nsite, nelec, u, t=1.0):
    nmode = 2 * nsite  # mode index = 2*site + spin, spin 0 = up
    a = [annihilator(p, nmode) for p in range(nmode)]
    ad = [x.T for x in a]
    h = np.zeros((2 ** nmode, 2 ** nmode))
    for i in range(nsite - 1):
        for s in range(2):
            p, q = 2 * i + s, 2 * (i + 1) + s
            h -= t * (ad[p] @ a[q] + ad[q] @ a[p])
    for i in range(nsite):
        h += u * (ad[2 * i] @ a[2 * i] @ ad[2 * i + 1] @ a[2 * i + 1])
    n_op = sum(ad[p] @ a[p] for p in range(nmode))
    sz = sum(ad[2 * i] @ a[2 * i] - ad[2 * i + 1] @ a[2 * i + 1] for i in range(nsite))
    keep = [k for k in range(2 ** nmode)
            if abs(n_op[k, k] - nelec) < 1e-12 and abs(sz[k, k]) < 1e-12]
    w, v = np.linalg.eigh(h[np.ix_(keep, keep)])
    psi = np.zeros(2 ** nmode)
    psi[keep] = v[:, 0]
    return w[0], psi, a, ad


def rdms(nsite, psi, a, ad):
    d1 = np.zeros((nsite, nsite))
    for i, j in product(range(nsite), repeat=2):
        for s in range(2):
            d1[i, j] += psi @ ad[2 * i + s] @ a[2 * j + s] @ psi
    d2 = np.zeros((nsite,) * 4)
    for i, k, j, l in product(range(nsite), repeat=4):
        acc = 0.0
        for s, tau in product(range(2), repeat=2):
            acc += psi @ ad[2 * i + s] @ ad[2 * k + tau] @ a[2 * l + tau] @ a[2 * j + s] @ psi
        d2[i, k, j, l] = 0.5 * acc
    return d1, d2


def analyse(nsite, nelec, u, domains, title):
    e0, psi, a, ad = ground_state(nsite, nelec, u)
    d1, d2 = rdms(nsite, psi, a, ad)
    root = np.real(scipy.linalg.sqrtm(d1))
    sym, hole = [], []
    for s in domains:
        sym.append(root @ s @ root)
        pop = sum(d1[k, l] * s[l, k] for k in range(nsite) for l in range(nsite))
        g = np.zeros((nsite, nsite))
        for i, j in product(range(nsite), repeat=2):
            acc = 0.0
            for k, l in product(range(nsite), repeat=2):
                acc += d2[i, k, j, l] * s[l, k]
            g[i, j] = pop * d1[i, j] - 2.0 * acc
        hole.append(g)
    lam = np.zeros_like(d2)
    for i, k, j, l in product(range(nsite), repeat=4):
        lam[i, k, j, l] = d2[i, k, j, l] - 0.5 * d1[i, j] * d1[k, l] + 0.25 * d1[i, l] * d1[k, j]

    print(f"== {title}: L={nsite} N={nelec} U={u!r}")
    print(f"ground_energy   = {e0:.17g}")
    print(f"cumulant_norm   = {np.linalg.norm(lam):.17g}")
    for idx, (gs, gd) in enumerate(zip(sym, hole)):
        print(f"domain {idx}: ||G_sym - G_dafh||_F = {np.linalg.norm(gs - gd):.17g}")
        print(f"domain {idx}: dafh eigenvalues     = {np.linalg.eigvalsh(gd).tolist()!r}")
    if len(sym) == 2:
        comm = sym[0] @ sym[1] - sym[1] @ sym[0]
        print(f"commutator_norm = {np.linalg.norm(comm):.17g}")


def main():
    sites2 = [np.diag([1.0, 0.0]), np.diag([0.0, 1.0])]
    analyse(2, 2, 4.0, sites2, "dimer, site domains")
    analyse(2, 2, 0.0, sites2, "dimer U=0, site domains")
    fuzzy = np.array([[0.5, 0.3], [0.3, 0.5]])
    analyse(2, 2, 4.0, [fuzzy, np.eye(2) - fuzzy], "dimer, fuzzy domains")
    blocks4 = [np.diag([1.0, 1.0, 0.0, 0.0]), np.diag([0.0, 0.0, 1.0, 1.0])]
    analyse(4, 4, 2.0, blocks4, "chain, blocks {1,2},{3,4}")


if __name__ == "__main__":
    main()
