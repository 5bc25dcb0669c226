import numpy as np
import pytest

from detqm.linalg import StateVector
from detqm.spectral import compose, spectral_decompose


def random_hermitian(rng, dim):
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (m + m.conj().T) / 2


def random_unit_vector(rng, dim):
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return StateVector(v / np.linalg.norm(v))


def random_unitary(rng, dim):
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(m)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_commuting_composite(rng, dim, n_parts=2, max_distinct=None):
    """Observables sharing a random eigenbasis, hence pairwise commuting."""
    if max_distinct is None:
        max_distinct = dim
    u = random_unitary(rng, dim)
    parts = []
    for _ in range(n_parts):
        k = rng.integers(1, max_distinct + 1)
        values = np.sort(rng.choice(np.arange(-4.0, 5.0), size=k, replace=False))
        diag = values[rng.integers(0, k, size=dim)]
        # make sure every chosen value actually appears
        diag[:k] = values
        m = u @ np.diag(diag.astype(complex)) @ u.conj().T
        parts.append(spectral_decompose((m + m.conj().T) / 2))
    return compose(parts)


@pytest.fixture
def rng():
    return np.random.default_rng(20260823)
