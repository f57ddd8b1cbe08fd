"""Finite measurable spaces with Markov and signed Markov kernels.

Spaces are finite label lists carrying the full power set as sigma-algebra.
A kernel is stored column-stochastic: entry ``(i, j)`` is the signed mass
the kernel sends from source point ``j`` to target point ``i``, so kernel
composition is a plain matrix product acting on the left.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import SignedUnsupportedError, SpaceMismatchError, WrongSpaceError

COLUMN_SUM_TOL = 1e-9
NONNEG_TOL = 1e-9
SUPPORT_EPS = 1e-12


@dataclass(frozen=True)
class FiniteSpace:
    """Finite set of distinct point labels; sigma-algebra is the power set."""

    points: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(str(p) for p in self.points))
        if not self.points:
            raise ValueError("a finite space needs at least one point")
        if len(set(self.points)) != len(self.points):
            raise ValueError("point labels must be distinct")

    @property
    def size(self) -> int:
        return len(self.points)

    def index(self, label: str) -> int:
        return self.points.index(label)


UNIT_SPACE = FiniteSpace(("*",))
TWO = FiniteSpace(("0", "1"))


def product_space(x: FiniteSpace, y: FiniteSpace) -> FiniteSpace:
    """Cartesian product, left factor major (lexicographic)."""
    return FiniteSpace(tuple(f"({a},{b})" for a in x.points for b in y.points))


@dataclass(frozen=True, eq=False)
class SignedKernel:
    """Signed Markov kernel between finite spaces.

    ``matrix`` has shape ``(|target|, |source|)``; every column sums to 1.
    ``entry_bound`` is the allowed pointwise range: the Markov case and
    kernels between like frames satisfy ``|entry| <= 1``, but images of
    measurement channels under the Wigner functor can legitimately exceed
    that (up to the ratio of frame constants), so the bound is a parameter
    rather than a hard-coded 1.
    """

    source: FiniteSpace
    target: FiniteSpace
    matrix: np.ndarray
    entry_bound: float = 1.0
    markov: bool = field(init=False)

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        if m.shape != (self.target.size, self.source.size):
            raise SpaceMismatchError(
                f"kernel matrix shape {m.shape} does not match "
                f"({self.target.size}, {self.source.size})"
            )
        if not np.all(np.isfinite(m)):
            raise ValueError("kernel matrix contains NaN or Inf")
        col_err = float(np.max(np.abs(m.sum(axis=0) - 1.0)))
        if col_err > COLUMN_SUM_TOL:
            raise ValueError(f"column sums deviate from 1 by {col_err:.3e}")
        if float(np.max(np.abs(m))) > self.entry_bound + NONNEG_TOL:
            raise ValueError(
                f"entry magnitude {np.max(np.abs(m)):.6f} exceeds bound {self.entry_bound}"
            )
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "markov", bool(np.min(m) >= -NONNEG_TOL))


@dataclass(frozen=True, eq=False)
class Distribution:
    """Normalised signed weight vector over a finite space."""

    space: FiniteSpace
    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float).reshape(-1)
        if w.size != self.space.size:
            raise SpaceMismatchError("weight vector length does not match space")
        if not np.all(np.isfinite(w)):
            raise ValueError("weights contain NaN or Inf")
        if abs(w.sum() - 1.0) > COLUMN_SUM_TOL:
            raise ValueError(f"weights sum to {w.sum()!r}, expected 1")
        object.__setattr__(self, "weights", w)

    @property
    def is_probability(self) -> bool:
        return bool(np.min(self.weights) >= -NONNEG_TOL)


@dataclass(frozen=True, eq=False)
class ResponseFunction:
    """Measurable function into [0, 1]: one measurement outcome's response."""

    space: FiniteSpace
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float).reshape(-1)
        if v.size != self.space.size:
            raise SpaceMismatchError("response length does not match space")
        if np.min(v) < -NONNEG_TOL or np.max(v) > 1.0 + NONNEG_TOL:
            raise ValueError("response values must lie in [0, 1]")
        object.__setattr__(self, "values", v)


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def identity_kernel(space: FiniteSpace) -> SignedKernel:
    """Dirac identities of kernel composition."""
    return SignedKernel(space, space, np.eye(space.size))


def point_mass(space: FiniteSpace, label: str) -> Distribution:
    w = np.zeros(space.size)
    w[space.index(label)] = 1.0
    return Distribution(space, w)


def uniform(space: FiniteSpace) -> Distribution:
    return Distribution(space, np.full(space.size, 1.0 / space.size))


def distribution_as_kernel(mu: Distribution) -> SignedKernel:
    """A state is a kernel from the one-point space."""
    bound = max(1.0, float(np.max(np.abs(mu.weights))))
    return SignedKernel(UNIT_SPACE, mu.space, mu.weights[:, None], entry_bound=bound)


def response_as_kernel(chi: ResponseFunction) -> SignedKernel:
    """A measurement is a kernel into the distinguished two-point space."""
    return SignedKernel(chi.space, TWO, np.vstack([chi.values, 1.0 - chi.values]))


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def kcompose(g: SignedKernel, f: SignedKernel) -> SignedKernel:
    """Kernel composition by integration: plain matrix product."""
    if f.target != g.source:
        raise SpaceMismatchError("codomain of f must equal domain of g")
    m = g.matrix @ f.matrix
    bound = max(1.0, float(np.max(np.abs(m))))
    return SignedKernel(f.source, g.target, m, entry_bound=bound)


def ktensor(f: SignedKernel, g: SignedKernel) -> SignedKernel:
    """Monoidal product: Kronecker product on matrices, product spaces."""
    m = np.kron(f.matrix, g.matrix)
    bound = max(1.0, float(np.max(np.abs(m))))
    return SignedKernel(
        product_space(f.source, g.source),
        product_space(f.target, g.target),
        m,
        entry_bound=bound,
    )


def dtensor(mu: Distribution, nu: Distribution) -> Distribution:
    """Product distribution on the product space."""
    return Distribution(product_space(mu.space, nu.space), np.kron(mu.weights, nu.weights))


def apply_kernel(f: SignedKernel, mu: Distribution) -> Distribution:
    if mu.space != f.source:
        raise SpaceMismatchError("distribution space does not match kernel domain")
    return Distribution(f.target, f.matrix @ mu.weights)


def evaluate(p: Distribution) -> float:
    """Evaluation of an abstract probability: weight of the point '0'."""
    if p.space != TWO:
        raise WrongSpaceError(f"evaluation requires the space {TWO.points}, got {p.space.points}")
    return float(p.weights[0])


def variational_distance(mu: Distribution, nu: Distribution) -> float:
    """sup over events of |mu(U) - nu(U)|.

    For normalised weight vectors the difference sums to zero, so the sup
    equals both the total positive part and the total negative part.
    """
    if mu.space != nu.space:
        raise SpaceMismatchError("distributions live on different spaces")
    diff = mu.weights - nu.weights
    return float(max(diff[diff > 0].sum() if np.any(diff > 0) else 0.0,
                     -diff[diff < 0].sum() if np.any(diff < 0) else 0.0))


def support(mu: Distribution, eps: float = SUPPORT_EPS) -> tuple[str, ...]:
    """Points carrying mass above ``eps``; probability distributions only."""
    if not mu.is_probability:
        raise SignedUnsupportedError("support of a signed distribution is not defined")
    return tuple(p for p, w in zip(mu.space.points, mu.weights) if w > eps)


def support_mask(mu: Distribution, eps: float = SUPPORT_EPS) -> np.ndarray:
    if not mu.is_probability:
        raise SignedUnsupportedError("support of a signed distribution is not defined")
    return mu.weights > eps


def dual_state_kernel(mu: Distribution) -> ResponseFunction:
    """The measurement induced by a state via singleton evaluation."""
    if not mu.is_probability:
        raise SignedUnsupportedError("duality is defined for probability states only")
    return ResponseFunction(mu.space, np.clip(mu.weights, 0.0, 1.0))
