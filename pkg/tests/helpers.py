import numpy as np


def random_state(rng, d):
    """Random full-rank density matrix."""
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    r = a @ a.conj().T
    return r / np.trace(r)
