"""Symmetric informationally complete measurements with tunable purity.

A set of d**2 positive operators P_j summing to the identity is built
from an orthonormal traceless Hermitian basis {F_a} and one mixing
parameter t:

    P_j     = I/d**2 + t * (F - d*(d+1)*F_j)    for j < d**2 - 1
    P_last  = I/d**2 + t * (d+1) * F

where F is the sum of all generators.  Every member has trace 1/d, the
pairwise traces are uniform, and the common purity is

    a = 1/d**3 + t**2 * (d-1) * (d+1)**3

which sweeps from the fully degenerate value 1/d**3 at t = 0 up to at
most 1/d**2, the rank-one limit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple

import numpy as np

from .errors import InfeasibleParameterError
from .operator_basis import OperatorBasis, ValidationOutcome, gell_mann_basis
from .states import DensityMatrix

PSD_TOL = 1e-10


@dataclass(frozen=True)
class GsicSet:
    """A symmetric informationally complete measurement.

    operators has shape (d**2, d, d); a is the common purity Tr(P_j**2)
    and t the mixing parameter the set was built with.
    """

    dim: int
    t: float
    a: float
    operators: np.ndarray
    basis_id: str


class FeasibleT(NamedTuple):
    t: float
    cap: str  # "positivity" or "a-max"


def purity_from_t(d: int, t: float) -> float:
    """Common purity of the measurement built at mixing parameter t."""
    return 1.0 / d**3 + t * t * (d - 1.0) * (d + 1.0) ** 3


def _operators(basis: OperatorBasis, t: float) -> np.ndarray:
    d = basis.dim
    f_sum = basis.basis_sum
    eye = np.eye(d, dtype=complex) / d**2
    ops = np.empty((d * d, d, d), dtype=complex)
    ops[:-1] = eye + t * (f_sum - d * (d + 1.0) * basis.generators)
    ops[-1] = eye + t * (d + 1.0) * f_sum
    return ops


def construct_gsic(basis: OperatorBasis, t: float) -> GsicSet:
    """Build the measurement at mixing parameter t.

    Raises InfeasibleParameterError when some operator acquires an
    eigenvalue below -1e-10; the exception carries the offending
    operator index and the eigenvalue.
    """
    if t < 0:
        raise ValueError(f"mixing parameter must be nonnegative, got {t}")
    d = basis.dim
    ops = _operators(basis, t)
    smallest = np.array([np.linalg.eigvalsh(op)[0].real for op in ops])
    worst = int(np.argmin(smallest))
    if smallest[worst] < -PSD_TOL:
        raise InfeasibleParameterError(
            f"t = {t} is infeasible: operator {worst} of {d * d} has "
            f"eigenvalue {smallest[worst]:.3e}",
            index=worst, eigenvalue=float(smallest[worst]))
    return GsicSet(dim=d, t=float(t), a=purity_from_t(d, t), operators=ops,
                   basis_id=basis.basis_id)


def _min_eigenvalue(basis: OperatorBasis, t: float) -> float:
    ops = _operators(basis, t)
    return min(float(np.linalg.eigvalsh(op)[0].real) for op in ops)


def feasible_t(basis: OperatorBasis) -> FeasibleT:
    """Largest usable mixing parameter and the constraint that caps it.

    The positivity of every operator bounds t from above, and so does
    the purity ceiling a <= 1/d**2.  Whichever bound binds first wins;
    the positivity boundary is located by bisection to 1e-12.
    """
    d = basis.dim
    t_purity = (d * (d + 1.0)) ** -1.5
    # -1e-13 absorbs eigensolver noise without accepting real violations
    if _min_eigenvalue(basis, t_purity) >= -1e-13:
        return FeasibleT(t=t_purity, cap="a-max")
    lo, hi = 0.0, t_purity
    while hi - lo > 1e-12:
        mid = 0.5 * (lo + hi)
        if _min_eigenvalue(basis, mid) >= -1e-13:
            lo = mid
        else:
            hi = mid
    return FeasibleT(t=lo, cap="positivity")


def max_feasible_t(basis: OperatorBasis) -> float:
    """Largest t for which every operator stays PSD and a <= 1/d**2."""
    return feasible_t(basis).t


def conjugate_gsic(g: GsicSet) -> GsicSet:
    """Entrywise complex conjugate of a measurement.

    The conjugate set has the same trace statistics and the same purity,
    and is the canonical partner in the two-sided entanglement tests.
    """
    return GsicSet(dim=g.dim, t=g.t, a=g.a, operators=g.operators.conj(),
                   basis_id=g.basis_id + ":conj")


def validate_gsic(g: GsicSet, tol: float = 1e-10) -> ValidationOutcome:
    """Check the defining properties of a measurement set.

    Deviations reported: hermiticity, completeness (sum to identity),
    operator traces against 1/d, common purity against a, pairwise
    traces against (1 - d*a)/(d*(d**2 - 1)), the PSD floor, and the
    admissible purity range.
    """
    ops = np.asarray(g.operators)
    d = g.dim
    want = (d * d, d, d)
    if ops.shape != want:
        raise ValueError(f"operator array has shape {ops.shape}, expected {want}")
    herm = float(np.abs(ops - ops.conj().transpose(0, 2, 1)).max())
    completeness = float(np.abs(ops.sum(axis=0) - np.eye(d)).max())
    traces = np.einsum("aii->a", ops)
    op_trace = float(np.abs(traces - 1.0 / d).max())
    gram = np.einsum("aij,bji->ab", ops, ops).real
    purity = float(np.abs(np.diag(gram) - g.a).max())
    cross_target = (1.0 - d * g.a) / (d * (d * d - 1.0))
    off = gram - np.diag(np.diag(gram))
    cross = float(np.abs(off - cross_target * (1.0 - np.eye(d * d))).max())
    min_eig = min(float(np.linalg.eigvalsh(op)[0].real) for op in ops)
    psd = max(0.0, -min_eig)
    a_range = max(0.0, 1.0 / d**3 - g.a, g.a - 1.0 / d**2)
    deviations = {
        "hermiticity": herm,
        "completeness": completeness,
        "operator_trace": op_trace,
        "purity": purity,
        "cross_trace": cross,
        "psd": psd,
        "a_range": a_range,
    }
    return ValidationOutcome(deviations=deviations, tolerance=tol,
                             passed=max(deviations.values()) <= tol)


def index_of_coincidence(rho: DensityMatrix, g: GsicSet) -> float:
    """Sum of squared outcome probabilities of the measurement on rho.

    Computed by direct summation of Tr(P_j rho)**2 over all outcomes.
    """
    if rho.parties != 1 or rho.local_dim != g.dim:
        raise ValueError(
            f"need a single system of dimension {g.dim}, got "
            f"{rho.parties} parties of dimension {rho.local_dim}")
    probs = np.einsum("aij,ji->a", g.operators, rho.matrix).real
    return float(np.sum(probs * probs))


def write_gsic(g: GsicSet, path: str | Path) -> None:
    """Serialize a measurement set to JSON."""
    ops = [[[float(z.real), float(z.imag)] for z in op.reshape(-1)]
           for op in np.asarray(g.operators)]
    payload = {"d": g.dim, "t": g.t, "a": g.a, "basis_id": g.basis_id,
               "operators": ops}
    Path(path).write_text(json.dumps(payload))


def read_gsic(path: str | Path) -> GsicSet:
    """Load a measurement set from JSON and re-validate it."""
    payload = json.loads(Path(path).read_text())
    try:
        d = int(payload["d"])
        t = float(payload["t"])
        a = float(payload["a"])
        basis_id = str(payload["basis_id"])
        raw = payload["operators"]
        ops = np.array([[complex(re, im) for re, im in op] for op in raw],
                       dtype=complex)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed measurement file {path}: {exc}") from exc
    if ops.shape != (d * d, d * d):
        raise ValueError(
            f"measurement file {path} holds {ops.shape} entries, "
            f"expected ({d * d}, {d * d})")
    g = GsicSet(dim=d, t=t, a=a, operators=ops.reshape(d * d, d, d),
                basis_id=basis_id)
    outcome = validate_gsic(g)
    if not outcome.passed:
        worst = max(outcome.deviations, key=outcome.deviations.get)
        raise ValueError(
            f"measurement file {path} fails validation: {worst} deviates "
            f"by {outcome.deviations[worst]:.3e}")
    return g


def default_gsic(d: int, t: float | None = None) -> GsicSet:
    """Convenience constructor on the Gell-Mann basis.

    With t omitted the largest feasible mixing parameter is used.
    """
    basis = gell_mann_basis(d)
    if t is None:
        t = max_feasible_t(basis)
    return construct_gsic(basis, t)
