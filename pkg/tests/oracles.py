"""Independent reference computations used as test oracles.

Nothing here calls into cohdetect's contraction, permutation or eigensolver
code; numpy.linalg is used as the external eigen-oracle.
"""

import itertools

import numpy as np


def flat_index(digits, dims):
    idx = 0
    for d, n in zip(digits, dims):
        idx = idx * n + d
    return idx


def brute_force_multicopy(factors, rho, dims, copies):
    """``Tr(O rho^{(x)k})`` by enumerating nonzero witness entries.

    ``factors`` is a list of ``(W, [(copy, subsystem), ...])`` with ``W`` a
    dense array over the listed slots (leftmost slot most significant).
    """
    parties = len(dims)
    entry_lists = []
    for w, slots in factors:
        wd = [dims[s] for _, s in slots]
        nz = []
        for r, c in zip(*np.nonzero(np.abs(w) > 0)):
            rd = np.unravel_index(r, wd)
            cd = np.unravel_index(c, wd)
            nz.append((w[r, c], slots, rd, cd))
        entry_lists.append(nz)
    total = 0j
    for combo in itertools.product(*entry_lists):
        row = {}
        col = {}
        coef = 1 + 0j
        for val, slots, rd, cd in combo:
            coef *= val
            for slot, a, b in zip(slots, rd, cd):
                row[slot] = int(a)
                col[slot] = int(b)
        prod = coef
        for c in range(copies):
            ci = flat_index([col[(c, s)] for s in range(parties)], dims)
            ri = flat_index([row[(c, s)] for s in range(parties)], dims)
            prod *= rho[ci, ri]
            if prod == 0:
                break
        total += prod
    return total


def elementary_symmetric(values, k):
    """Direct sum over k-subsets."""
    if k == 0:
        return 1.0
    return float(sum(np.prod(c) for c in itertools.combinations(values, k)))


def qubit_E_grid(rho, points=10_001):
    """min over q of 0.5 * ||rho - diag(q, 1-q)||_1 on a uniform grid."""
    p = rho[0, 0].real
    c = abs(rho[0, 1])
    q = np.linspace(0.0, 1.0, points)
    # eigenvalues of [[p-q, c], [c*, q-p]] are +-sqrt((p-q)^2 + |c|^2)
    return float(np.min(np.sqrt((p - q) ** 2 + c**2)))


def partial_transpose_by_entries(a, m, n):
    """Element-wise partial transpose on B: out[(i,j),(k,l)] = a[(i,l),(k,j)]."""
    out = np.zeros_like(a)
    for i in range(m):
        for j in range(n):
            for k in range(m):
                for l in range(n):
                    out[i * n + j, k * n + l] = a[i * n + l, k * n + j]
    return out


def random_hermitian(n, rng, scale=1.0):
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return scale * (g + g.conj().T) / 2
