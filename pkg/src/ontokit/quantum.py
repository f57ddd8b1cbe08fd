"""Finite-dimensional quantum states, channels, and measurements.

The source operational category: density matrices as states, completely
positive maps in Kraus form as morphisms, projective and two-outcome
measurements, and Born-rule evaluation.  Channels are kept in Kraus form
throughout; transfer-matrix representations live in :mod:`ontokit.wigner`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import DimMismatchError, NotHermitianError

DENSITY_TOL = 1e-9
KRAUS_SUM_TOL = 1e-9
GRAM_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, positive semidefinite, unit-trace matrix."""

    matrix: np.ndarray

    def __post_init__(self):
        m = linalg.as_matrix(self.matrix)
        if m.shape[0] != m.shape[1]:
            raise DimMismatchError("density matrix must be square")
        if not linalg.is_hermitian(m, DENSITY_TOL):
            raise NotHermitianError("density matrix is not Hermitian")
        if abs(np.trace(m).real - 1.0) > DENSITY_TOL or abs(np.trace(m).imag) > DENSITY_TOL:
            raise ValueError(f"trace {np.trace(m)!r} deviates from 1")
        lo = linalg.hermitian_eigenvalues(m, herm_tol=DENSITY_TOL)[0]
        if lo < -DENSITY_TOL:
            raise ValueError(f"negative eigenvalue {lo:.3e}")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def from_ket(cls, psi) -> "DensityMatrix":
        """Rank-1 projector of a unit vector; skips the spectrum check."""
        k = linalg.as_ket(psi)
        obj = object.__new__(cls)
        object.__setattr__(obj, "matrix", np.outer(k, k.conj()))
        return obj

    @classmethod
    def maximally_mixed(cls, dim: int) -> "DensityMatrix":
        return cls(np.eye(dim) / dim)


@dataclass(frozen=True, eq=False)
class Channel:
    """Completely positive map in Kraus form.

    When ``trace_preserving`` the Kraus operators resolve the identity;
    otherwise the map may only be trace non-increasing (sub-normalised
    branches are allowed and flagged).
    """

    kraus: tuple[np.ndarray, ...]
    trace_preserving: bool = True

    def __post_init__(self):
        ops = tuple(linalg.as_matrix(k) for k in self.kraus)
        if not ops:
            raise ValueError("channel needs at least one Kraus operator")
        shape = ops[0].shape
        if any(k.shape != shape for k in ops):
            raise DimMismatchError("all Kraus operators must share one shape")
        total = np.zeros((shape[1], shape[1]), dtype=complex)
        for k in ops:
            total += k.conj().T @ k
        if self.trace_preserving:
            err = linalg.max_abs(total - np.eye(shape[1]))
            if err > KRAUS_SUM_TOL:
                raise ValueError(f"Kraus sum deviates from identity by {err:.3e}")
        else:
            top = linalg.hermitian_eigenvalues(total, herm_tol=KRAUS_SUM_TOL)[-1]
            if top > 1.0 + KRAUS_SUM_TOL:
                raise ValueError(f"Kraus sum exceeds identity: max eigenvalue {top:.6f}")
        object.__setattr__(self, "kraus", ops)

    @property
    def in_dim(self) -> int:
        return self.kraus[0].shape[1]

    @property
    def out_dim(self) -> int:
        return self.kraus[0].shape[0]

    @classmethod
    def identity(cls, dim: int) -> "Channel":
        return cls((np.eye(dim, dtype=complex),))

    @classmethod
    def from_unitary(cls, u) -> "Channel":
        return cls((linalg.as_matrix(u),))

    @classmethod
    def depolarizing(cls, dim: int) -> "Channel":
        """Completely depolarizing: every input goes to I/dim."""
        ops = []
        for i in range(dim):
            for j in range(dim):
                k = np.zeros((dim, dim), dtype=complex)
                k[i, j] = 1.0 / np.sqrt(dim)
                ops.append(k)
        return cls(tuple(ops))


@dataclass(frozen=True, eq=False)
class ProjectiveMeasurement:
    """Orthonormal family of outcome vectors (rows of ``vectors``)."""

    vectors: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vectors, dtype=complex)
        if v.ndim != 2:
            raise DimMismatchError("vectors must be a 2-d array (outcomes, dim)")
        gram = v.conj() @ v.T
        err = linalg.max_abs(gram - np.eye(v.shape[0]))
        if err > GRAM_TOL:
            raise ValueError(f"outcome vectors are not orthonormal: Gram error {err:.3e}")
        object.__setattr__(self, "vectors", v)

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    @property
    def n_outcomes(self) -> int:
        return self.vectors.shape[0]

    def projector(self, k: int) -> np.ndarray:
        v = self.vectors[k]
        return np.outer(v, v.conj())

    @classmethod
    def computational(cls, dim: int) -> "ProjectiveMeasurement":
        return cls(np.eye(dim, dtype=complex))


@dataclass(frozen=True, eq=False)
class TwoOutcomeMeasurement:
    """Effect operator E with 0 <= E <= I; outcome 0 fires with Tr(E rho)."""

    effect: np.ndarray

    def __post_init__(self):
        e = linalg.as_matrix(self.effect)
        if not linalg.is_hermitian(e, DENSITY_TOL):
            raise NotHermitianError("effect must be Hermitian")
        w = linalg.hermitian_eigenvalues(e, herm_tol=DENSITY_TOL)
        if w[0] < -DENSITY_TOL or w[-1] > 1.0 + DENSITY_TOL:
            raise ValueError(f"effect spectrum [{w[0]:.3e}, {w[-1]:.6f}] not within [0, 1]")
        object.__setattr__(self, "effect", e)

    @property
    def dim(self) -> int:
        return self.effect.shape[0]


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def overlap(psi, phi) -> complex:
    """Inner product <psi|phi>, conjugate-linear in the first argument."""
    a = linalg.as_ket(psi)
    b = linalg.as_ket(phi)
    if a.size != b.size:
        raise DimMismatchError("kets have different dimensions")
    return complex(np.vdot(a, b))


def born(state: DensityMatrix, m: ProjectiveMeasurement, k: int) -> float:
    """Probability of outcome ``k`` (0-based), clamped to [0, 1]."""
    if state.dim != m.dim:
        raise DimMismatchError("state and measurement dimensions differ")
    if not 0 <= k < m.n_outcomes:
        raise IndexError(f"outcome index {k} out of range")
    v = m.vectors[k]
    p = float(np.real(np.vdot(v, state.matrix @ v)))
    if p < -DENSITY_TOL or p > 1.0 + DENSITY_TOL:
        raise ValueError(f"Born probability {p!r} outside [0, 1] beyond tolerance")
    return min(max(p, 0.0), 1.0)


def effect_probability(state: DensityMatrix, m: TwoOutcomeMeasurement) -> float:
    """Probability of the effect outcome, Tr(E rho)."""
    if state.dim != m.dim:
        raise DimMismatchError("state and effect dimensions differ")
    p = float(np.trace(m.effect @ state.matrix).real)
    return min(max(p, 0.0), 1.0)


def apply_channel(ch: Channel, state: DensityMatrix) -> DensityMatrix:
    """Kraus action; output revalidated when the channel is trace preserving."""
    if ch.in_dim != state.dim:
        raise DimMismatchError("channel input dimension does not match state")
    out = np.zeros((ch.out_dim, ch.out_dim), dtype=complex)
    for k in ch.kraus:
        out += k @ state.matrix @ k.conj().T
    if ch.trace_preserving:
        return DensityMatrix(out)
    obj = object.__new__(DensityMatrix)
    object.__setattr__(obj, "matrix", out)
    return obj


def compose(g: Channel, f: Channel) -> Channel:
    """Sequential composition g after f; Kraus sets multiply pairwise."""
    if f.out_dim != g.in_dim:
        raise DimMismatchError(
            f"cannot compose: f outputs dim {f.out_dim}, g expects {g.in_dim}"
        )
    ops = tuple(kg @ kf for kg in g.kraus for kf in f.kraus)
    return Channel(ops, trace_preserving=f.trace_preserving and g.trace_preserving)


def tensor(f: Channel, g: Channel) -> Channel:
    """Parallel composition; Kraus sets combine by Kronecker product."""
    ops = tuple(np.kron(kf, kg) for kf in f.kraus for kg in g.kraus)
    return Channel(ops, trace_preserving=f.trace_preserving and g.trace_preserving)


def dual_state_quantum(psi) -> TwoOutcomeMeasurement:
    """The measurement induced by a state: effect is its projector."""
    k = linalg.as_ket(psi)
    return TwoOutcomeMeasurement(np.outer(k, k.conj()))


def preparation_channel(state: DensityMatrix) -> Channel:
    """State as a channel from the trivial system C."""
    w, v = linalg.hermitian_eigensystem(state.matrix, herm_tol=DENSITY_TOL)
    ops = []
    for p, col in zip(w, v.T):
        if p > 1e-14:
            ops.append(np.sqrt(p) * col[:, None])
    return Channel(tuple(ops))


def measurement_channel(m: TwoOutcomeMeasurement) -> Channel:
    """Two-outcome measurement as a channel into the diagonal 2x2 algebra.

    Output is always diagonal: diag(Tr(E rho), Tr((I-E) rho)).
    """
    ops = []
    for row, eff in ((0, m.effect), (1, np.eye(m.dim) - m.effect)):
        w, v = linalg.hermitian_eigensystem(eff, herm_tol=DENSITY_TOL)
        for p, col in zip(w, v.T):
            if p > 1e-14:
                k = np.zeros((2, m.dim), dtype=complex)
                k[row] = np.sqrt(p) * col.conj()
                ops.append(k)
    return Channel(tuple(ops))
