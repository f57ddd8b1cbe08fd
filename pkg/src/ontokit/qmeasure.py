"""Quantum measures and decoherence functionals on finite spaces.

Quantum measures relax Kolmogorov additivity to the three-set sum rule
while keeping positivity and normalisation; decoherence functionals are
Hermitian, bi-additive, strongly positive set functions whose diagonal is
always a quantum measure.  Only validators and the diagonal construction
are provided: composition of quantum-measure-valued kernels is left alone
on purpose, since no sound integration theory backs it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import InvalidFunctionalError, TooLargeError
from .kernels import FiniteSpace

MAX_POINTS = 16
DIRECT_TRIPLE_LIMIT = 10


@dataclass(frozen=True, eq=False)
class QuantumMeasure:
    """Set function on the power set, indexed by bitmask over the points."""

    space: FiniteSpace
    values: np.ndarray

    def __post_init__(self):
        if self.space.size > MAX_POINTS:
            raise TooLargeError(f"at most {MAX_POINTS} points supported, got {self.space.size}")
        v = np.asarray(self.values, dtype=float).reshape(-1)
        if v.size != 2 ** self.space.size:
            raise ValueError(
                f"expected {2 ** self.space.size} subset values, got {v.size}"
            )
        if not np.all(np.isfinite(v)):
            raise ValueError("subset values contain NaN or Inf")
        object.__setattr__(self, "values", v)

    def value(self, mask: int) -> float:
        return float(self.values[mask])


@dataclass(frozen=True, eq=False)
class DecoherenceFunctional:
    """Two-argument set function, stored on singletons and extended
    bi-additively: D(U, V) = sum over x in U, y in V of the matrix entry."""

    space: FiniteSpace
    matrix: np.ndarray

    def __post_init__(self):
        if self.space.size > MAX_POINTS:
            raise TooLargeError(f"at most {MAX_POINTS} points supported, got {self.space.size}")
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (self.space.size, self.space.size):
            raise ValueError("singleton matrix shape must match the space")
        if not np.all(np.isfinite(m.view(float))):
            raise ValueError("functional contains NaN or Inf")
        object.__setattr__(self, "matrix", m)

    def value(self, mask_u: int, mask_v: int) -> complex:
        iu = [i for i in range(self.space.size) if (mask_u >> i) & 1]
        iv = [i for i in range(self.space.size) if (mask_v >> i) & 1]
        if not iu or not iv:
            return 0j
        return complex(self.matrix[np.ix_(iu, iv)].sum())


@dataclass
class QuantumMeasureReport:
    tolerance: float
    normalisation_error: float = 0.0
    positivity_violations: list = field(default_factory=list)
    range_violations: list = field(default_factory=list)
    sum_rule_violations: list = field(default_factory=list)
    triple_check: str = "direct"

    @property
    def clean(self) -> bool:
        return (
            self.normalisation_error <= self.tolerance
            and not self.positivity_violations
            and not self.range_violations
            and not self.sum_rule_violations
        )


def _pair_table(q: QuantumMeasure) -> np.ndarray:
    """Interference table d[x, y] = mu({x, y}) - mu({x}) - mu({y}) for x != y,
    d[x, x] = mu({x})."""
    n = q.space.size
    d = np.zeros((n, n))
    for x in range(n):
        d[x, x] = q.value(1 << x)
        for y in range(x + 1, n):
            d[x, y] = d[y, x] = q.value((1 << x) | (1 << y)) - d[x, x] - q.value(1 << y)
    return d


def validate_quantum_measure(q: QuantumMeasure, tol: float = 1e-9) -> QuantumMeasureReport:
    """Positivity, range, normalisation, and the three-set quantum sum rule.

    For up to 10 points all pairwise-disjoint triples are enumerated
    directly (4^n assignments).  Beyond that the check switches to the
    equivalent pairwise reconstruction: the sum rule for all disjoint
    triples holds iff every subset value equals the sum of its singleton
    values plus its pairwise interference terms.
    """
    n = q.space.size
    full = (1 << n) - 1
    report = QuantumMeasureReport(tolerance=tol)
    report.normalisation_error = abs(q.value(full) - 1.0)
    for mask in range(1 << n):
        v = q.value(mask)
        if v < -tol:
            report.positivity_violations.append({"mask": mask, "value": v})
        if v > 1.0 + tol:
            report.range_violations.append({"mask": mask, "value": v})
    if n <= DIRECT_TRIPLE_LIMIT:
        values = q.values
        for u in range(1 << n):
            rest_u = full & ~u
            v = rest_u
            while True:
                rest_uv = rest_u & ~v
                w = rest_uv
                while True:
                    lhs = values[u | v | w]
                    rhs = (
                        values[u | v] + values[u | w] + values[v | w]
                        - values[u] - values[v] - values[w]
                    )
                    if abs(lhs - rhs) > tol:
                        report.sum_rule_violations.append(
                            {"u": u, "v": v, "w": w, "lhs": float(lhs), "rhs": float(rhs)}
                        )
                    if w == 0:
                        break
                    w = (w - 1) & rest_uv
                if v == 0:
                    break
                v = (v - 1) & rest_u
    else:
        report.triple_check = "pairwise-reconstruction"
        d = _pair_table(q)
        for mask in range(1 << n):
            idx = [i for i in range(n) if (mask >> i) & 1]
            if len(idx) < 3:
                continue
            sub = d[np.ix_(idx, idx)]
            recon = float(np.triu(sub, 1).sum() + np.trace(sub))
            if abs(q.value(mask) - recon) > tol:
                report.sum_rule_violations.append(
                    {"mask": mask, "lhs": q.value(mask), "rhs": recon}
                )
    return report


@dataclass
class DecoherenceReport:
    tolerance: float
    hermitian_error: float = 0.0
    normalisation_error: float = 0.0
    min_eigenvalue: float = 0.0

    @property
    def clean(self) -> bool:
        return (
            self.hermitian_error <= self.tolerance
            and self.normalisation_error <= self.tolerance
            and self.min_eigenvalue >= -self.tolerance
        )


def validate_decoherence(d: DecoherenceFunctional, tol: float = 1e-9) -> DecoherenceReport:
    """Hermiticity, normalisation D(all, all) = 1, and strong positivity of
    the singleton matrix (any subset-family matrix is a congruence of it,
    so positive semidefiniteness transfers)."""
    m = d.matrix
    report = DecoherenceReport(tolerance=tol)
    report.hermitian_error = linalg.max_abs(m - m.conj().T)
    report.normalisation_error = abs(complex(m.sum()) - 1.0)
    if report.hermitian_error <= tol:
        sym = (m + m.conj().T) / 2
        report.min_eigenvalue = float(linalg.hermitian_eigenvalues(sym)[0])
    else:
        report.min_eigenvalue = float("-inf")
    return report


def measure_from_decoherence(d: DecoherenceFunctional, tol: float = 1e-9) -> QuantumMeasure:
    """The diagonal mu(U) = D(U, U); the functional is validated first."""
    check = validate_decoherence(d, tol)
    if not check.clean:
        raise InvalidFunctionalError(
            f"functional invalid: hermitian {check.hermitian_error:.3e}, "
            f"normalisation {check.normalisation_error:.3e}, "
            f"min eigenvalue {check.min_eigenvalue:.3e}"
        )
    n = d.space.size
    ones = ((np.arange(1 << n)[:, None] >> np.arange(n)) & 1).astype(float)
    values = np.einsum("si,ij,sj->s", ones, d.matrix.real, ones)
    skew = np.einsum("si,ij,sj->s", ones, d.matrix.imag, ones)
    if float(np.max(np.abs(skew))) > tol:
        raise InvalidFunctionalError("diagonal values are not real")
    return QuantumMeasure(d.space, values)


def double_slit_functional(space: FiniteSpace, amplitudes) -> DecoherenceFunctional:
    """Rank-1 functional D({x},{y}) = psi_x psi_y^*, rescaled so the total
    interference sum is 1 (the normalisation the definition demands)."""
    psi = np.asarray(amplitudes, dtype=complex).reshape(-1)
    if psi.size != space.size:
        raise ValueError("amplitude count must match the space")
    total = complex(psi.sum())
    if abs(total) < 1e-12:
        raise InvalidFunctionalError("amplitudes interfere to zero total; cannot normalise")
    psi = psi / abs(total)
    return DecoherenceFunctional(space, np.outer(psi, psi.conj()))
