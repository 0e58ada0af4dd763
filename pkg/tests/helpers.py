import numpy as np


def random_orthogonal(m, rng):
    q, r = np.linalg.qr(rng.standard_normal((m, m)))
    return q * np.sign(np.diag(r))


def random_psd(m, rng, lo=0.0, hi=2.0):
    q = random_orthogonal(m, rng)
    return (q * rng.uniform(lo, hi, m)) @ q.T


def _sqrt_psd(a):
    w, v = np.linalg.eigh(a)
    return (v * np.sqrt(np.clip(w, 0, None))) @ v.T


def random_domain_set(m, n_domains, rng):
    """Non-commuting fuzzy domains: nested splits X, sqrt(I-X) Y sqrt(I-X), ... of the identity."""
    mats = []
    rest = np.eye(m)
    for _ in range(n_domains - 1):
        x = random_psd(m, rng, 0.0, 1.0)
        r = _sqrt_psd(rest)
        mats.append(r @ x @ r)
        rest = r @ (np.eye(m) - x) @ r
    mats.append(rest)
    return [0.5 * (s + s.T) for s in mats]


def random_occupied(m, nocc, rng):
    return random_orthogonal(m, rng)[:, :nocc]


def random_occupations(m, n, rng):
    """Occupations in (0, 2) summing to n: 2*sigmoid(z + mu) with mu found by bisection."""
    z = rng.standard_normal(m) * 2
    lo, hi = -60.0, 60.0
    for _ in range(200):
        mu = 0.5 * (lo + hi)
        if np.sum(2 / (1 + np.exp(-(z + mu)))) < n:
            lo = mu
        else:
            hi = mu
    occ = 2 / (1 + np.exp(-(z + 0.5 * (lo + hi))))
    return occ * (n / occ.sum())


def random_one_rdm_matrix(m, n, rng):
    q = random_orthogonal(m, rng)
    d = (q * random_occupations(m, n, rng)) @ q.T
    return 0.5 * (d + d.T)


def site_block_partitions(n_sites):
    """1-, 2- and (if n_sites >= 3) 3-block contiguous partitions of 1..n_sites."""
    sites = list(range(1, n_sites + 1))
    half = n_sites // 2
    out = [[sites], [sites[:half], sites[half:]]]
    if n_sites >= 3:
        third = max(1, n_sites // 3)
        out.append([sites[:third], sites[third:2 * third], sites[2 * third:]])
    return out


def grid_oracle(occupations, vectors, domains, points=721):
    """Brute-force max of L over 2x2 rotations T(theta), theta on a grid over [-pi/4, pi/4].

    Uses the defining formulas directly: n'_i = sum_j n_j T_ji^2 and
    phi'_i = n'_i^(-1/2) sum_j phi_j n_j^(1/2) T_ji.
    """
    n = np.asarray(occupations, dtype=float)
    phi = np.asarray(vectors, dtype=float)
    best = -np.inf
    for theta in np.linspace(-np.pi / 4, np.pi / 4, points):
        c, s = np.cos(theta), np.sin(theta)
        t = np.array([[c, -s], [s, c]])
        total = 0.0
        for i in range(2):
            n_new = sum(n[j] * t[j, i] ** 2 for j in range(2))
            u = sum(phi[:, j] * np.sqrt(n[j]) * t[j, i] for j in range(2)) / np.sqrt(n_new)
            for sm in domains:
                total += (n_new * (u @ sm @ u)) ** 2
        best = max(best, total)
    return best
