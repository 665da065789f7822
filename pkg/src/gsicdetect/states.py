"""Density matrices, reference state families and tensor utilities.

All multi-party matrices use the row-major tensor convention: the first
factor is the most significant index, matching numpy.kron.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import reduce
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

HERM_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-10


@dataclass(frozen=True)
class DensityMatrix:
    """A state of `parties` qudits of equal local dimension.

    matrix has shape (local_dim**parties, local_dim**parties).  label is
    free text used in reports.
    """

    local_dim: int
    parties: int
    matrix: np.ndarray
    label: str = ""

    @classmethod
    def from_matrix(cls, matrix: np.ndarray, local_dim: int, parties: int,
                    label: str = "") -> "DensityMatrix":
        """Wrap and validate a raw matrix as a density matrix."""
        mat = np.asarray(matrix, dtype=complex)
        dim = local_dim ** parties
        if local_dim < 2 or parties < 1:
            raise ValueError(
                f"need local dimension >= 2 and parties >= 1, got "
                f"{local_dim} and {parties}")
        if mat.shape != (dim, dim):
            raise ValueError(f"matrix has shape {mat.shape}, expected ({dim}, {dim})")
        herm = float(np.abs(mat - mat.conj().T).max())
        if herm > HERM_TOL:
            raise ValueError(f"matrix is not Hermitian, deviation {herm:.3e}")
        tr = complex(np.trace(mat))
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValueError(f"matrix has trace {tr}, expected 1")
        min_eig = float(np.linalg.eigvalsh(mat)[0].real)
        if min_eig < -PSD_TOL:
            raise ValueError(f"matrix has negative eigenvalue {min_eig:.3e}")
        return cls(local_dim=local_dim, parties=parties, matrix=mat, label=label)


def _max_entangled_vector(d: int) -> np.ndarray:
    vec = np.zeros(d * d, dtype=complex)
    vec[:: d + 1] = 1.0 / np.sqrt(d)
    return vec


def max_entangled(d: int) -> DensityMatrix:
    """Projector onto the canonical maximally entangled two-qudit vector."""
    if d < 2:
        raise ValueError(f"need dimension >= 2, got {d}")
    vec = _max_entangled_vector(d)
    return DensityMatrix(local_dim=d, parties=2,
                         matrix=np.outer(vec, vec.conj()),
                         label=f"maxent-d{d}")


def isotropic(d: int, alpha: float) -> DensityMatrix:
    """Mixture of the maximally entangled state with white noise.

    rho = alpha * maxent + (1 - alpha) * I / d**2 with alpha in [0, 1].
    Separable exactly up to alpha = 1/(d + 1).
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"mixing weight must lie in [0, 1], got {alpha}")
    if d < 2:
        raise ValueError(f"need dimension >= 2, got {d}")
    mat = alpha * max_entangled(d).matrix \
        + (1.0 - alpha) * np.eye(d * d, dtype=complex) / (d * d)
    return DensityMatrix(local_dim=d, parties=2, matrix=mat,
                         label=f"isotropic-d{d}-alpha{alpha:g}")


def weyl_operator(d: int, s: int, t: int) -> np.ndarray:
    """Discrete phase-shift unitary sum_j w**(j*s) |j><j + t mod d|."""
    if d < 2:
        raise ValueError(f"need dimension >= 2, got {d}")
    if not (0 <= s < d and 0 <= t < d):
        raise ValueError(f"labels must lie in 0..{d - 1}, got ({s}, {t})")
    u = np.zeros((d, d), dtype=complex)
    phases = np.exp(2j * np.pi * s * np.arange(d) / d)
    for j in range(d):
        u[j, (j + t) % d] = phases[j]
    return u


def _bell_vector(d: int, s: int, t: int) -> np.ndarray:
    # (U_{s,t} (x) I) |phi+> written as the flattened matrix U / sqrt(d)
    return weyl_operator(d, s, t).reshape(-1) / np.sqrt(d)


def bell_diagonal(d: int, weights: Mapping[tuple[int, int], float]) -> DensityMatrix:
    """Mixture of the d**2 generalized Bell projectors.

    weights maps (s, t) labels to probabilities; omitted labels carry
    weight zero.  The weights must be nonnegative and sum to 1 within
    1e-12.
    """
    if d < 2:
        raise ValueError(f"need dimension >= 2, got {d}")
    total = 0.0
    mat = np.zeros((d * d, d * d), dtype=complex)
    for (s, t), p in weights.items():
        if not (0 <= s < d and 0 <= t < d):
            raise ValueError(f"label ({s}, {t}) out of range for dimension {d}")
        if p < 0:
            raise ValueError(f"negative weight {p} for label ({s}, {t})")
        vec = _bell_vector(d, s, t)
        mat += p * np.outer(vec, vec.conj())
        total += p
    if abs(total - 1.0) > 1e-12:
        raise ValueError(f"weights sum to {total}, expected 1")
    c = max(weights.values())
    return DensityMatrix(local_dim=d, parties=2, matrix=mat,
                         label=f"belldiag-d{d}-c{c:g}")


def diagonal_mixture(d: int, a1: float,
                     tail: Sequence[float] | None = None) -> DensityMatrix:
    """Maximally entangled fraction plus classically correlated diagonal.

    rho = a1 * maxent + sum over offsets delta = 1..d-1 and k = 0..d-1 of
    (w_delta / d) |k><k| (x) |k+delta mod d><k+delta mod d|.  By default
    the tail weights w_delta are all equal to (1 - a1)/(d - 1); a custom
    tail of length d - 1 summing to 1 - a1 may be supplied.
    """
    if d < 2:
        raise ValueError(f"need dimension >= 2, got {d}")
    if not 0.0 <= a1 <= 1.0:
        raise ValueError(f"entangled weight must lie in [0, 1], got {a1}")
    if tail is None:
        tail = np.full(d - 1, (1.0 - a1) / (d - 1))
    else:
        tail = np.asarray(tail, dtype=float)
        if tail.shape != (d - 1,):
            raise ValueError(f"tail needs {d - 1} weights, got shape {tail.shape}")
        if np.any(tail < 0):
            raise ValueError("tail weights must be nonnegative")
        if abs(a1 + tail.sum() - 1.0) > 1e-12:
            raise ValueError(
                f"weights sum to {a1 + tail.sum()}, expected 1")
    mat = a1 * max_entangled(d).matrix
    for delta in range(1, d):
        w = tail[delta - 1] / d
        for k in range(d):
            m = (k + delta) % d
            mat[k * d + m, k * d + m] += w
    return DensityMatrix(local_dim=d, parties=2, matrix=mat,
                         label=f"diagmix-d{d}-a1{a1:g}")


def random_separable(d: int, parties: int, terms: int, seed: int) -> DensityMatrix:
    """Seeded random mixture of pure product states.

    Each term is a product of independent Gaussian random unit vectors;
    the mixing weights are uniform draws normalized to 1.  The output is
    fully separable by construction and deterministic per seed.
    """
    if d < 2 or parties < 2 or terms < 1:
        raise ValueError(
            f"need dimension >= 2, parties >= 2 and terms >= 1, got "
            f"{d}, {parties}, {terms}")
    rng = np.random.default_rng(seed)
    weights = rng.random(terms)
    weights /= weights.sum()
    dim = d ** parties
    mat = np.zeros((dim, dim), dtype=complex)
    for w in weights:
        factors = rng.normal(size=(parties, d)) + 1j * rng.normal(size=(parties, d))
        factors /= np.linalg.norm(factors, axis=1, keepdims=True)
        vec = reduce(np.kron, factors)
        mat += w * np.outer(vec, vec.conj())
    mat = 0.5 * (mat + mat.conj().T)
    return DensityMatrix(local_dim=d, parties=parties, matrix=mat,
                         label=f"randsep-d{d}-n{parties}-seed{seed}")


def tensor(ops: Sequence[np.ndarray]) -> np.ndarray:
    """Kronecker product of a sequence of matrices, first factor most significant."""
    mats = [np.asarray(op) for op in ops]
    if not mats:
        raise ValueError("tensor needs at least one factor")
    return reduce(np.kron, mats)


def partial_transpose(rho: DensityMatrix, party: int) -> np.ndarray:
    """Transpose one party of a multi-party density matrix.

    party is a zero-based index.  The result is returned as a plain
    matrix because it is generally not positive semidefinite.
    """
    n = rho.parties
    if not 0 <= party < n:
        raise ValueError(f"party index {party} out of range for {n} parties")
    d = rho.local_dim
    tens = rho.matrix.reshape((d,) * (2 * n))
    swapped = tens.swapaxes(party, n + party)
    return swapped.reshape(d ** n, d ** n)


def write_state(rho: DensityMatrix, path: str | Path) -> None:
    """Serialize a density matrix to JSON."""
    entries = [[float(z.real), float(z.imag)]
               for z in np.asarray(rho.matrix).reshape(-1)]
    payload = {"local_dim": rho.local_dim, "parties": rho.parties,
               "matrix": entries}
    Path(path).write_text(json.dumps(payload))


def read_state(path: str | Path) -> DensityMatrix:
    """Load a density matrix from JSON and re-validate it."""
    payload = json.loads(Path(path).read_text())
    try:
        local_dim = int(payload["local_dim"])
        parties = int(payload["parties"])
        flat = np.array([complex(re, im) for re, im in payload["matrix"]],
                        dtype=complex)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed state file {path}: {exc}") from exc
    dim = local_dim ** parties
    if flat.shape != (dim * dim,):
        raise ValueError(
            f"state file {path} holds {flat.shape[0]} entries, expected {dim * dim}")
    return DensityMatrix.from_matrix(flat.reshape(dim, dim), local_dim, parties,
                                     label=f"file:{Path(path).name}")
