"""Entanglement tests built on symmetric informationally complete measurements.

The bipartite test pairs one measurement per party, sums the matched
outcome correlations

    J = sum_j Tr((P_j (x) Q_j) rho)

and compares against the separable ceiling (a*d**2 + 1)/(d*(d + 1)),
which any separable state obeys whenever both sets share the purity a.
A value above the ceiling certifies entanglement; a value below it is
inconclusive.  The multipartite variant averages the per-party ceilings
and tolerates different purities per party.
"""

from __future__ import annotations

import string
from dataclasses import dataclass

import numpy as np

from .errors import NumericIntegrityError
from .gsic import GsicSet, conjugate_gsic, construct_gsic, max_feasible_t
from .operator_basis import OperatorBasis, gell_mann_basis
from .states import DensityMatrix, isotropic

IMAG_TOL = 1e-8
DECISION_MARGIN = 1e-9
RANGE_SLACK = 1e-12

ENTANGLED_DETECTED = "ENTANGLED_DETECTED"
INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class DetectionReport:
    """Outcome of one entanglement test."""

    state_label: str
    dim: int
    parties: int
    t: float
    a: float
    j_value: float
    bound: float
    margin: float
    verdict: str


def _require_real(value: complex, what: str) -> float:
    if abs(value.imag) > IMAG_TOL:
        raise NumericIntegrityError(
            f"{what} has imaginary residue {value.imag:.3e}")
    return float(value.real)


def j_bipartite(rho: DensityMatrix, p: GsicSet, q: GsicSet) -> float:
    """Matched-outcome correlation sum of two equal-purity measurements."""
    if rho.parties != 2:
        raise ValueError(f"need a two-party state, got {rho.parties} parties")
    d = rho.local_dim
    if p.dim != d or q.dim != d:
        raise ValueError(
            f"measurement dimensions ({p.dim}, {q.dim}) do not match the "
            f"state dimension {d}")
    if abs(p.a - q.a) > 1e-12:
        raise ValueError(
            f"the two sets must share the purity parameter, got "
            f"{p.a} and {q.a}")
    rho4 = rho.matrix.reshape(d, d, d, d)
    total = np.einsum("aij,akl,jlik->", p.operators, q.operators, rho4)
    return _require_real(total, "correlation sum")


def bipartite_bound(d: int, a: float) -> float:
    """Separable ceiling of the bipartite correlation sum."""
    if d < 2:
        raise ValueError(f"need dimension >= 2, got {d}")
    if a < 1.0 / d**3 - RANGE_SLACK or a > 1.0 / d**2 + RANGE_SLACK:
        raise ValueError(
            f"purity {a} outside the admissible range "
            f"[{1.0 / d**3}, {1.0 / d**2}] for dimension {d}")
    return (a * d * d + 1.0) / (d * (d + 1.0))


def detect_bipartite(rho: DensityMatrix, p: GsicSet, q: GsicSet) -> DetectionReport:
    """Evaluate the bipartite test and wrap the outcome in a report."""
    j = j_bipartite(rho, p, q)
    bound = bipartite_bound(p.dim, p.a)
    margin = j - bound
    verdict = ENTANGLED_DETECTED if margin > DECISION_MARGIN else INCONCLUSIVE
    return DetectionReport(state_label=rho.label, dim=p.dim, parties=2,
                           t=p.t, a=p.a, j_value=j, bound=bound,
                           margin=margin, verdict=verdict)


def j_multipartite(rho: DensityMatrix, sets: list[GsicSet]) -> float:
    """Matched-outcome correlation sum with one measurement per party."""
    n = rho.parties
    if n < 2:
        raise ValueError(f"need at least two parties, got {n}")
    if len(sets) != n:
        raise ValueError(f"state has {n} parties but {len(sets)} sets were given")
    d = rho.local_dim
    for g in sets:
        if g.dim != d:
            raise ValueError(
                f"measurement dimension {g.dim} does not match the state "
                f"dimension {d}")
    rows = string.ascii_lowercase[:n]
    cols = string.ascii_lowercase[n:2 * n]
    subscript = ",".join(f"Z{rows[i]}{cols[i]}" for i in range(n)) \
        + "," + cols + rows + "->"
    tens = rho.matrix.reshape((d,) * (2 * n))
    total = np.einsum(subscript, *[g.operators for g in sets], tens)
    return _require_real(total, "correlation sum")


def multipartite_bound(d: int, a_values: list[float]) -> float:
    """Fully separable ceiling: the mean of the per-party ceilings."""
    if d < 2:
        raise ValueError(f"need dimension >= 2, got {d}")
    if len(a_values) < 2:
        raise ValueError(f"need at least two purities, got {len(a_values)}")
    for a in a_values:
        if a < 1.0 / d**3 - RANGE_SLACK or a > 1.0 / d**2 + RANGE_SLACK:
            raise ValueError(
                f"purity {a} outside the admissible range "
                f"[{1.0 / d**3}, {1.0 / d**2}] for dimension {d}")
    terms = [(a * d * d + 1.0) / (d * (d + 1.0)) for a in a_values]
    return sum(terms) / len(terms)


def correlation_matrix(rho: DensityMatrix, basis: OperatorBasis) -> np.ndarray:
    """Two-body correlation coefficients of a bipartite state.

    Entry (j, k) is Tr(rho F_j (x) F_k) / 2, the expansion coefficient
    of rho over the generator products when the generators are scaled to
    the conventional normalization Tr(lambda**2) = 2.  Any separable
    state keeps the trace of this matrix at or below (d - 1)/(2d).
    """
    if rho.parties != 2:
        raise ValueError(f"need a two-party state, got {rho.parties} parties")
    d = rho.local_dim
    if basis.dim != d:
        raise ValueError(
            f"basis dimension {basis.dim} does not match the state "
            f"dimension {d}")
    rho4 = rho.matrix.reshape(d, d, d, d)
    raw = np.einsum("aij,bkl,jlik->ab", basis.generators, basis.generators, rho4)
    residue = float(np.abs(raw.imag).max())
    if residue > 1e-10:
        raise NumericIntegrityError(
            f"correlation matrix has imaginary residue {residue:.3e}")
    return 0.5 * raw.real


def trace_t_bound(d: int) -> float:
    """Separable ceiling of the correlation-matrix trace."""
    if d < 2:
        raise ValueError(f"need dimension >= 2, got {d}")
    return (d - 1.0) / (2.0 * d)


def isotropic_threshold_scan(d: int, t: float, steps: int) -> float:
    """Noise level where the test starts flagging isotropic states.

    Scans the mixing weight over a grid of the given size, then refines
    the crossing of the correlation sum through the separable ceiling by
    bisection.  The exact crossing sits at 1/(d + 1) for every feasible
    t > 0.
    """
    if steps < 10:
        raise ValueError(f"need at least 10 grid steps, got {steps}")
    if t <= 0:
        raise ValueError(f"need a positive mixing parameter, got {t}")
    basis = gell_mann_basis(d)
    p = construct_gsic(basis, t)
    q = conjugate_gsic(p)
    bound = bipartite_bound(d, p.a)

    def margin(alpha: float) -> float:
        return j_bipartite(isotropic(d, alpha), p, q) - bound

    grid = np.linspace(0.0, 1.0, steps)
    margins = [margin(alpha) for alpha in grid]
    crossing = None
    for i in range(1, steps):
        if margins[i - 1] <= 0.0 < margins[i]:
            crossing = (grid[i - 1], grid[i])
            break
    if crossing is None:
        raise ValueError(
            f"no crossing found on the grid for d = {d}, t = {t}")
    lo, hi = crossing
    while hi - lo > 1e-10:
        mid = 0.5 * (lo + hi)
        if margin(mid) > 0.0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def default_pair(d: int, t: float | None = None) -> tuple[GsicSet, GsicSet]:
    """Measurement and its conjugate on the Gell-Mann basis."""
    basis = gell_mann_basis(d)
    if t is None:
        t = max_feasible_t(basis)
    p = construct_gsic(basis, t)
    return p, conjugate_gsic(p)
