"""Shared test helpers."""

import numpy as np
import pytest

from gsicdetect.states import DensityMatrix


@pytest.fixture
def random_state():
    """Factory for seeded random mixed states on local_dim**parties levels."""

    def make(local_dim: int, parties: int, rng, rank: int | None = None):
        dim = local_dim ** parties
        rank = dim if rank is None else rank
        weights = rng.random(rank)
        weights /= weights.sum()
        mat = np.zeros((dim, dim), dtype=complex)
        for w in weights:
            vec = rng.normal(size=dim) + 1j * rng.normal(size=dim)
            vec /= np.linalg.norm(vec)
            mat += w * np.outer(vec, vec.conj())
        mat = 0.5 * (mat + mat.conj().T)
        return DensityMatrix.from_matrix(mat, local_dim, parties)

    return make
