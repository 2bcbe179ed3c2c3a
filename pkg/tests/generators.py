"""Random instances for property tests: zero-diagonal witnesses and valid wirings."""

import numpy as np

from cohdetect.multicopy import Wiring
from cohdetect.states import random_diagonal
from cohdetect.witness import NULL, Witness


def random_null_witness(dims, rng):
    n = int(np.prod(dims))
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    h = (g + g.conj().T) / 2
    np.fill_diagonal(h, 0)
    return Witness(h, tuple(dims), NULL)


def random_null_instance(rng, max_copies=3, max_slots=6):
    """(diagonal state, wiring) with every factor zero-diagonal and slots a random bijection."""
    while True:
        parties = int(rng.integers(1, 4))
        copies = int(rng.integers(1, max_copies + 1))
        if parties * copies <= max_slots:
            break
    dims = tuple(int(d) for d in rng.choice([2, 3], size=parties))
    slots = [(c, s) for c in range(copies) for s in range(parties)]
    order = rng.permutation(len(slots))
    slots = [slots[i] for i in order]
    factors = []
    while slots:
        size = int(rng.integers(1, min(3, len(slots)) + 1))
        chunk, slots = slots[:size], slots[size:]
        w = random_null_witness([dims[s] for _, s in chunk], rng)
        factors.append((w, chunk))
    rho = random_diagonal(int(np.prod(dims)), int(rng.integers(2**31)), dims)
    return rho, Wiring.build(copies, factors)
