"""Anti-distinguishability decisions and the PBR pipeline.

A measurement response ``chi`` anti-distinguishes a designated member of an
ensemble when it never fires on that member while collecting total weight 1
from the rest.  On finite spaces with responses in ``[0,1]`` this is a box
LP with two equality constraints, decided here exactly:

* all-probability ensembles reduce to a support computation (the measure
  pair is anti-distinguishable iff the complement of the target's support
  carries enough weight), and
* signed ensembles are decided by exhaustive vertex enumeration, since any
  vertex of the feasible polytope has at most two fractional coordinates.

The module also houses the quantum side: the four-outcome entangled
measurement on two qubits, the two-Kraus compression channel sending a
tensor-power pair onto {|0>, |+>}, and the end-to-end demonstration that
the resulting four product states are anti-distinguished.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from . import linalg
from .errors import (
    BadOverlapError,
    DimMismatchError,
    SignedUnsupportedError,
    SpaceMismatchError,
    TooLargeError,
    VerificationFailedError,
)
from .kernels import Distribution, ResponseFunction, SUPPORT_EPS, support_mask
from .quantum import Channel, DensityMatrix, ProjectiveMeasurement, apply_channel, born, overlap
from .sampling import rng_for

CERT_RESIDUAL_TOL = 1e-7
FEAS_TOL = 1e-9
VERTEX_MAX_POINTS = 16
MAX_COMPRESSION_DIM = 2048

INV_SQRT2 = 1.0 / np.sqrt(2.0)


@dataclass(frozen=True)
class AntidistProblem:
    """Ensemble of states on a common space plus the index to rule out."""

    ensemble: tuple[Distribution, ...]
    target: int

    def __post_init__(self):
        if not self.ensemble:
            raise ValueError("ensemble must be nonempty")
        space = self.ensemble[0].space
        if any(d.space != space for d in self.ensemble):
            raise SpaceMismatchError("ensemble members live on different spaces")
        if not 0 <= self.target < len(self.ensemble):
            raise IndexError("target index out of range")
        object.__setattr__(self, "ensemble", tuple(self.ensemble))


@dataclass(frozen=True)
class AntidistCertificate:
    """Feasible response with its residuals (weight on target, weight on rest)."""

    response: ResponseFunction
    residuals: tuple[float, float]

    def __post_init__(self):
        r0, r1 = self.residuals
        if abs(r0) > CERT_RESIDUAL_TOL or abs(r1 - 1.0) > CERT_RESIDUAL_TOL:
            raise ValueError(f"certificate residuals {self.residuals} exceed tolerance")


def _residuals(chi: np.ndarray, a: np.ndarray, b: np.ndarray) -> tuple[float, float]:
    return float(chi @ a), float(chi @ b)


def _certificate(chi: np.ndarray, problem: AntidistProblem,
                 a: np.ndarray, b: np.ndarray) -> AntidistCertificate:
    chi = np.clip(chi, 0.0, 1.0)
    return AntidistCertificate(
        response=ResponseFunction(problem.ensemble[0].space, chi),
        residuals=_residuals(chi, a, b),
    )


def _support_decision(a: np.ndarray, b: np.ndarray, eps: float) -> Optional[np.ndarray]:
    """Exact decision for nonnegative ensembles.

    chi must vanish on supp(target), so the best it can collect from the
    rest is the complement mass; feasible iff that reaches 1.
    """
    free = a <= eps
    capacity = float(b[free].sum())
    if capacity < 1.0 - FEAS_TOL:
        return None
    chi = np.zeros_like(a)
    chi[free] = min(1.0, 1.0 / capacity)
    return chi


def _bit_patterns(m: int) -> np.ndarray:
    if m == 0:
        return np.zeros((1, 0))
    return ((np.arange(2 ** m)[:, None] >> np.arange(m)) & 1).astype(float)


def _vertex_decision(a: np.ndarray, b: np.ndarray) -> Optional[np.ndarray]:
    """Exhaustive vertex enumeration for the signed case.

    Any vertex of {chi in [0,1]^k : chi.a = 0, chi.b = 1} has at most two
    coordinates strictly between the bounds, and when exactly two are
    fractional their 2x2 constraint block is nonsingular.  Enumerating all
    bound patterns for 0, 1, and 2 free coordinates is therefore complete.
    """
    k = a.size
    if k > VERTEX_MAX_POINTS:
        raise TooLargeError(
            f"signed vertex enumeration supports at most {VERTEX_MAX_POINTS} points, got {k}"
        )

    def _check(chi: np.ndarray) -> Optional[np.ndarray]:
        r0, r1 = _residuals(chi, a, b)
        if abs(r0) <= FEAS_TOL and abs(r1 - 1.0) <= FEAS_TOL:
            return chi
        return None

    # no fractional coordinates
    pats = _bit_patterns(k)
    hits = np.flatnonzero(
        (np.abs(pats @ a) <= FEAS_TOL) & (np.abs(pats @ b - 1.0) <= FEAS_TOL)
    )
    if hits.size:
        return pats[hits[0]].copy()

    # one fractional coordinate
    pats = _bit_patterns(k - 1)
    for i in range(k):
        rest = np.array([j for j in range(k) if j != i])
        sa = pats @ a[rest]
        sb = pats @ b[rest]
        for coef, target_vec in ((a[i], -sa), (b[i], 1.0 - sb)):
            if abs(coef) < 1e-13:
                continue
            x = target_vec / coef
            ok = (x >= -FEAS_TOL) & (x <= 1.0 + FEAS_TOL)
            for idx in np.flatnonzero(ok):
                chi = np.zeros(k)
                chi[rest] = pats[idx]
                chi[i] = min(max(x[idx], 0.0), 1.0)
                found = _check(chi)
                if found is not None:
                    return found

    # two fractional coordinates
    pats = _bit_patterns(k - 2)
    for i, j in combinations(range(k), 2):
        det = a[i] * b[j] - a[j] * b[i]
        if abs(det) < 1e-13:
            continue
        rest = np.array([t for t in range(k) if t not in (i, j)])
        rhs0 = -(pats @ a[rest])
        rhs1 = 1.0 - (pats @ b[rest])
        x = (b[j] * rhs0 - a[j] * rhs1) / det
        y = (-b[i] * rhs0 + a[i] * rhs1) / det
        ok = (
            (x >= -FEAS_TOL) & (x <= 1.0 + FEAS_TOL)
            & (y >= -FEAS_TOL) & (y <= 1.0 + FEAS_TOL)
        )
        for idx in np.flatnonzero(ok):
            chi = np.zeros(k)
            chi[rest] = pats[idx]
            chi[i] = min(max(x[idx], 0.0), 1.0)
            chi[j] = min(max(y[idx], 0.0), 1.0)
            found = _check(chi)
            if found is not None:
                return found
    return None


def antidist_classical(
    problem: AntidistProblem, method: str = "auto", eps: float = SUPPORT_EPS
) -> Optional[AntidistCertificate]:
    """Decide anti-distinguishability of the target; None means REFUTED."""
    a = problem.ensemble[problem.target].weights
    b = np.zeros_like(a)
    for i, d in enumerate(problem.ensemble):
        if i != problem.target:
            b = b + d.weights
    all_probability = all(d.is_probability for d in problem.ensemble)
    if method == "auto":
        method = "support" if all_probability else "vertex"
    if method == "support":
        if not all_probability:
            raise SignedUnsupportedError("support decision requires probability ensembles")
        chi = _support_decision(a, b, eps)
    elif method == "vertex":
        chi = _vertex_decision(a, b)
    else:
        raise ValueError(f"unknown method {method!r}")
    if chi is None:
        return None
    return _certificate(chi, problem, a, b)


def antidist_family(
    ensemble: Sequence[Distribution], method: str = "auto"
) -> list[Optional[AntidistCertificate]]:
    """Decide every member; the family is anti-distinguishable iff all succeed."""
    ensemble = tuple(ensemble)
    return [
        antidist_classical(AntidistProblem(ensemble, i), method=method)
        for i in range(len(ensemble))
    ]


def antidist_partition(
    ensemble: Sequence[Distribution], eps: float = SUPPORT_EPS
) -> Optional[list[ResponseFunction]]:
    """Single-measurement form: a partition of unity whose k-th outcome
    never fires on the k-th member.

    This is the notion the product-state argument actually consumes: it is
    feasible iff no point lies in every member's support, in which case the
    greedy assignment of each point to the first member avoiding it is a
    valid certificate.
    """
    ensemble = tuple(ensemble)
    if not ensemble:
        raise ValueError("ensemble must be nonempty")
    space = ensemble[0].space
    if any(d.space != space for d in ensemble):
        raise SpaceMismatchError("ensemble members live on different spaces")
    masks = [support_mask(d, eps) for d in ensemble]
    responses = np.zeros((len(ensemble), space.size))
    for lam in range(space.size):
        avoiding = [k for k, m in enumerate(masks) if not m[lam]]
        if not avoiding:
            return None
        responses[avoiding[0], lam] = 1.0
    return [ResponseFunction(space, row) for row in responses]


# ---------------------------------------------------------------------------
# quantum side
# ---------------------------------------------------------------------------

def antidist_quantum_check(
    states: Sequence[DensityMatrix],
    m: ProjectiveMeasurement,
    assignment: Sequence[int],
    tol: float = 1e-9,
) -> bool:
    """True iff each state's assigned outcome never occurs on it."""
    if len(assignment) != len(states):
        raise ValueError("assignment must cover every state")
    return all(
        born(state, m, k) <= tol for state, k in zip(states, assignment)
    )


def pbr_measurement() -> ProjectiveMeasurement:
    """The entangled four-outcome basis on two qubits used by the PBR argument."""
    z0 = np.array([1, 0], dtype=complex)
    z1 = np.array([0, 1], dtype=complex)
    plus = (z0 + z1) * INV_SQRT2
    minus = (z0 - z1) * INV_SQRT2
    vecs = np.array(
        [
            (np.kron(z0, z1) + np.kron(z1, z0)) * INV_SQRT2,
            (np.kron(z0, minus) + np.kron(z1, plus)) * INV_SQRT2,
            (np.kron(plus, z1) + np.kron(minus, z0)) * INV_SQRT2,
            (np.kron(plus, minus) + np.kron(minus, plus)) * INV_SQRT2,
        ]
    )
    gram_err = linalg.max_abs(vecs.conj() @ vecs.T - np.eye(4))
    if gram_err > 1e-10:
        raise VerificationFailedError(f"PBR basis Gram error {gram_err:.3e}")
    return ProjectiveMeasurement(vecs)


@dataclass(frozen=True)
class CompressionResult:
    """Compression channel with its verification data."""

    channel: Channel
    n: int
    gamma: float
    parametrization: str
    psi_n: np.ndarray
    phi_n: np.ndarray
    output_psi: DensityMatrix
    output_phi: DensityMatrix
    residual_psi: float
    residual_phi: float


def _tensor_power(psi: np.ndarray, n: int) -> np.ndarray:
    out = psi
    for _ in range(n - 1):
        out = np.kron(out, psi)
    return out


def smallest_compression_power(overlap_mod: float) -> int:
    """Least n with overlap^n <= 1/sqrt(2)."""
    if not 0.0 < overlap_mod < 1.0:
        raise BadOverlapError(f"overlap modulus {overlap_mod!r} must be in (0, 1)")
    n = 1
    while overlap_mod ** n > INV_SQRT2 + 1e-12:
        n += 1
    return n


def compression_channel(
    psi, phi, n: Optional[int] = None, tol: float = 1e-8
) -> CompressionResult:
    """Channel mapping the pair (psi^n, phi^n) onto (|0><0|, |+><+|).

    The two-Kraus map K0 = |0><0| + t |1><1|, K1 = sqrt((1-t^2)/2)(|0>+|1>)<1|
    acts on the 2-dimensional span of the tensor powers; the rest of the
    input space is dumped onto |0> by extra Kraus branches so the channel is
    exactly trace preserving.  The parameter t is ambiguous between reading
    the overlap gamma as an angle (t = tan gamma) and as a sine
    (t = tan arcsin gamma); both are tried and the one passing the output
    verification is kept, with the choice recorded in the result.
    """
    psi = linalg.as_ket(psi)
    phi = linalg.as_ket(phi)
    if psi.size != phi.size:
        raise DimMismatchError("states must share a dimension")
    g0 = abs(overlap(psi, phi))
    if g0 < 1e-10 or g0 > 1.0 - 1e-10:
        raise BadOverlapError(f"|<psi|phi>| = {g0!r} must lie strictly inside (0, 1)")
    if n is None:
        n = smallest_compression_power(g0)
    elif n < 1 or g0 ** n > INV_SQRT2 + 1e-12:
        raise BadOverlapError(f"n = {n} leaves overlap {g0 ** max(n, 1):.6f} above 1/sqrt(2)")
    dim = psi.size ** n
    if dim > MAX_COMPRESSION_DIM:
        raise TooLargeError(
            f"compression at n = {n} needs dimension {dim} > {MAX_COMPRESSION_DIM}; "
            "overlap is too close to 1"
        )

    psi_n = _tensor_power(psi, n)
    phi_n = _tensor_power(phi, n)
    c = np.vdot(psi_n, phi_n)
    gamma = abs(c)
    u0 = np.exp(1j * np.angle(c)) * psi_n
    u1 = phi_n - gamma * u0
    u1 = u1 / np.linalg.norm(u1)
    w = np.vstack([u0.conj(), u1.conj()])
    q, _ = np.linalg.qr(np.hstack([u0[:, None], u1[:, None], np.eye(dim, dtype=complex)]))
    complement = q[:, 2:dim]

    proj0 = DensityMatrix.from_ket([1, 0])
    proj_plus = DensityMatrix.from_ket([INV_SQRT2, INV_SQRT2])
    rho_psi = DensityMatrix.from_ket(psi_n)
    rho_phi = DensityMatrix.from_ket(phi_n)

    candidates = (
        ("tan_gamma", float(np.tan(gamma))),
        ("tan_arcsin_gamma", float(gamma / np.sqrt(1.0 - gamma * gamma))),
    )
    failures = []
    for name, t in candidates:
        if not 0.0 <= t <= 1.0 + 1e-12:
            failures.append(f"{name}: t = {t:.6f} outside [0, 1]")
            continue
        t = min(t, 1.0)
        k0 = np.array([[1.0, 0.0], [0.0, t]], dtype=complex)
        k1 = np.sqrt((1.0 - t * t) / 2.0) * np.array([[0.0, 1.0], [0.0, 1.0]], dtype=complex)
        dump = np.array([[1.0], [0.0]], dtype=complex)
        kraus = [k0 @ w, k1 @ w]
        kraus += [dump @ complement[:, j].conj()[None, :] for j in range(dim - 2)]
        channel = Channel(tuple(kraus))
        out_psi = apply_channel(channel, rho_psi)
        out_phi = apply_channel(channel, rho_phi)
        res_psi = linalg.max_abs(out_psi.matrix - proj0.matrix)
        res_phi = linalg.max_abs(out_phi.matrix - proj_plus.matrix)
        if res_psi <= tol and res_phi <= tol:
            return CompressionResult(
                channel=channel,
                n=n,
                gamma=gamma,
                parametrization=name,
                psi_n=psi_n,
                phi_n=phi_n,
                output_psi=out_psi,
                output_phi=out_phi,
                residual_psi=float(res_psi),
                residual_phi=float(res_phi),
            )
        failures.append(f"{name}: residuals ({res_psi:.3e}, {res_phi:.3e})")
    raise VerificationFailedError(
        "no parametrization reproduced (|0><0|, |+><+|): " + "; ".join(failures)
    )


PBR_PAIR_LABELS = ("psi.psi", "psi.phi", "phi.psi", "phi.phi")


@dataclass(frozen=True)
class PbrReport:
    """End-to-end PBR pipeline record."""

    overlap: float
    n: int
    gamma: float
    parametrization: str
    pair_labels: tuple[str, ...]
    table: np.ndarray
    assigned_probabilities: tuple[float, ...]
    max_assigned: float
    anti_distinguished: bool
    compression_residuals: tuple[float, float]

    @property
    def passed(self) -> bool:
        return self.anti_distinguished


def pbr_demo(psi, phi, n: Optional[int] = None, tol: float = 1e-8) -> PbrReport:
    """Compress, tensor the pair, and verify the four-outcome exclusion."""
    comp = compression_channel(psi, phi, n=n)
    pair_states = [
        DensityMatrix(np.kron(x.matrix, y.matrix))
        for x in (comp.output_psi, comp.output_phi)
        for y in (comp.output_psi, comp.output_phi)
    ]
    m = pbr_measurement()
    assignment = (0, 1, 2, 3)
    table = np.array(
        [[born(s, m, k) for k in range(4)] for s in pair_states]
    )
    assigned = tuple(float(table[j, assignment[j]]) for j in range(4))
    return PbrReport(
        overlap=float(abs(overlap(psi, phi))),
        n=comp.n,
        gamma=comp.gamma,
        parametrization=comp.parametrization,
        pair_labels=PBR_PAIR_LABELS,
        table=table,
        assigned_probabilities=assigned,
        max_assigned=float(max(assigned)),
        anti_distinguished=antidist_quantum_check(pair_states, m, assignment, tol=tol),
        compression_residuals=(comp.residual_psi, comp.residual_phi),
    )


# ---------------------------------------------------------------------------
# property suite for the product-state arguments
# ---------------------------------------------------------------------------

@dataclass
class LemmaSuiteReport:
    trials: int
    seed: int
    violations: list = field(default_factory=list)
    counters: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations


def _random_support_distribution(rng: np.random.Generator, space) -> Distribution:
    """Random distribution with a random support and entries bounded below.

    Weights on the support are at least 0.05 before normalisation so that
    support computations are far from the 1e-12 threshold.
    """
    size = space.size
    while True:
        mask = rng.random(size) < 0.6
        if mask.any():
            break
    w = np.zeros(size)
    w[mask] = rng.uniform(0.05, 1.0, int(mask.sum()))
    return Distribution(space, w / w.sum())


def lemma_suite(trials: int, seed: int) -> LemmaSuiteReport:
    """Randomised checks of the product-state anti-distinguishability facts.

    Per trial, for a random pair (phi, psi) of probability distributions on
    a space of up to 5 points:

    * n-fold powers, n in {2, 3}: if the pair of product measures is
      anti-distinguishable, so is the base pair;
    * four-member product family: if some partition measurement
      anti-distinguishes {phi x phi, phi x psi, psi x phi, psi x psi}
      member-wise, the base pair is anti-distinguishable;
    * overlap persistence: D(mu, nu) < 1 implies D(mu x mu, nu x nu) < 1.
    """
    from .kernels import FiniteSpace, dtensor, variational_distance

    report = LemmaSuiteReport(trials=trials, seed=seed)
    counts = {
        "power_family_certified": 0,
        "power_family_refuted": 0,
        "product_partition_certified": 0,
        "product_partition_refuted": 0,
        "overlap_pairs": 0,
    }
    spaces = {k: FiniteSpace(tuple(f"x{i}" for i in range(k))) for k in range(2, 6)}

    def pair_certified(a: Distribution, b: Distribution) -> bool:
        res = antidist_family((a, b))
        return all(r is not None for r in res)

    for trial in range(trials):
        rng = rng_for(seed, trial)
        space = spaces[int(rng.integers(2, 6))]
        phi = _random_support_distribution(rng, space)
        psi = _random_support_distribution(rng, space)
        base_ok = pair_certified(phi, psi)

        phi_pow, psi_pow = phi, psi
        for n in (2, 3):
            phi_pow = dtensor(phi_pow, phi)
            psi_pow = dtensor(psi_pow, psi)
            fam_ok = pair_certified(phi_pow, psi_pow)
            counts["power_family_certified" if fam_ok else "power_family_refuted"] += 1
            if fam_ok and not base_ok:
                report.violations.append(
                    {"trial": trial, "kind": f"power_n{n}", "detail": "family certified, base refuted"}
                )

        family = (
            dtensor(phi, phi), dtensor(phi, psi), dtensor(psi, phi), dtensor(psi, psi),
        )
        partition = antidist_partition(family)
        counts[
            "product_partition_certified" if partition is not None else "product_partition_refuted"
        ] += 1
        if partition is not None and not base_ok:
            report.violations.append(
                {"trial": trial, "kind": "product_family", "detail": "partition certified, base refuted"}
            )

        d_base = variational_distance(phi, psi)
        if d_base < 1.0 - 1e-9:
            counts["overlap_pairs"] += 1
            d_prod = variational_distance(dtensor(phi, phi), dtensor(psi, psi))
            if d_prod >= 1.0 - 1e-9:
                report.violations.append(
                    {"trial": trial, "kind": "overlap_persistence",
                     "detail": f"D base {d_base:.6f} but D product {d_prod:.12f}"}
                )

    report.counters = counts
    return report
