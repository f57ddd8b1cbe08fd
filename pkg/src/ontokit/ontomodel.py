"""Ontological-model data format, validators, and functor-fragment checks.

A finite ontological model pins down an ontic space, one distribution per
catalogued state, and one response function per measurement outcome; the
validator replays every Born probability by direct summation.  Functor
fragments are finite tables of (channel, kernel) pairs checked for
composition, identity, evaluation preservation, and equivariance under a
tabulated action.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import MissingActionError, MissingMorphismError, SpaceMismatchError
from .kernels import (
    TWO,
    UNIT_SPACE,
    Distribution,
    FiniteSpace,
    ResponseFunction,
    SignedKernel,
    evaluate,
    kcompose,
    point_mass,
    support_mask,
    variational_distance,
)
from .quantum import Channel, DensityMatrix, ProjectiveMeasurement, apply_channel, born, compose, overlap

STRICT_MARGIN = 1e-9


@dataclass(frozen=True, eq=False)
class OntModel:
    """Finite restriction of an ontological theory.

    ``states`` catalogues (label, ket) pairs; ``distributions`` maps each
    label to its ontic distribution; ``measurements`` pairs a projective
    measurement with one response function per outcome.
    """

    ontic: FiniteSpace
    states: tuple[tuple[str, np.ndarray], ...]
    distributions: dict[str, Distribution]
    measurements: tuple[tuple[ProjectiveMeasurement, tuple[ResponseFunction, ...]], ...]

    def __post_init__(self):
        labels = [lab for lab, _ in self.states]
        if len(set(labels)) != len(labels):
            raise ValueError("state labels must be distinct")
        for lab in labels:
            if lab not in self.distributions:
                raise ValueError(f"state {lab!r} has no distribution")
            mu = self.distributions[lab]
            if mu.space != self.ontic:
                raise SpaceMismatchError(f"distribution for {lab!r} lives off the ontic space")
            if not mu.is_probability:
                raise ValueError(f"distribution for {lab!r} is signed")
        for m, responses in self.measurements:
            if len(responses) != m.n_outcomes:
                raise ValueError("each outcome needs exactly one response function")
            for xi in responses:
                if xi.space != self.ontic:
                    raise SpaceMismatchError("response function lives off the ontic space")


@dataclass
class ModelValidation:
    tolerance: float
    born_violations: list = field(default_factory=list)
    sum_rule_violations: list = field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not self.born_violations and not self.sum_rule_violations


def validate_model(model: OntModel, tol: float = 1e-7) -> ModelValidation:
    """Replay every (state, measurement, outcome) Born probability and the
    pointwise response sum rule; list what deviates beyond ``tol``."""
    report = ModelValidation(tolerance=tol)
    for mi, (m, responses) in enumerate(model.measurements):
        totals = np.sum([xi.values for xi in responses], axis=0)
        for li, lam in enumerate(model.ontic.points):
            if abs(totals[li] - 1.0) > tol:
                report.sum_rule_violations.append(
                    {"measurement": mi, "point": lam, "total": float(totals[li])}
                )
        for label, ket in model.states:
            mu = model.distributions[label]
            rho = DensityMatrix.from_ket(ket)
            for k in range(m.n_outcomes):
                reproduced = float(responses[k].values @ mu.weights)
                expected = born(rho, m, k)
                if abs(reproduced - expected) > tol:
                    report.born_violations.append(
                        {
                            "state": label,
                            "measurement": mi,
                            "outcome": k,
                            "reproduced": reproduced,
                            "expected": expected,
                        }
                    )
    return report


@dataclass
class Classification:
    kind: str
    witness: Optional[tuple[str, str]] = None
    witness_overlap: Optional[float] = None
    witness_distance: Optional[float] = None


def classify_model(model: OntModel) -> Classification:
    """Epistemic iff some catalogue pair overlaps (strictly between 0 and 1)
    while its ontic distributions have variational distance below 1."""
    for i, (la, ka) in enumerate(model.states):
        for lb, kb in model.states[i + 1:]:
            ov = abs(overlap(ka, kb))
            if not (STRICT_MARGIN < ov < 1.0 - STRICT_MARGIN):
                continue
            d = variational_distance(model.distributions[la], model.distributions[lb])
            if d < 1.0 - STRICT_MARGIN:
                return Classification(
                    kind="epistemic", witness=(la, lb),
                    witness_overlap=float(ov), witness_distance=float(d),
                )
    return Classification(kind="ontic")


@dataclass
class MaximalPredicates:
    maximally_epistemic: bool
    maximally_nontrivial: bool
    epistemic_violations: list = field(default_factory=list)
    nontrivial_violations: list = field(default_factory=list)


def maximal_predicates(model: OntModel, tol: float = 1e-7) -> MaximalPredicates:
    """Check mu_psi(supp mu_phi) = |<phi|psi>|^2 over all ordered pairs, and
    the if-and-only-if between orthogonality and vanishing support mass."""
    me, mn = [], []
    for la, ka in model.states:
        mu_a = model.distributions[la]
        for lb, kb in model.states:
            mask_b = support_mask(model.distributions[lb])
            mass = float(mu_a.weights[mask_b].sum())
            ov_sq = float(abs(overlap(kb, ka)) ** 2)
            if abs(mass - ov_sq) > tol:
                me.append({"psi": la, "phi": lb, "support_mass": mass, "born": ov_sq})
            if (ov_sq <= tol) != (mass <= tol):
                mn.append({"psi": la, "phi": lb, "support_mass": mass, "born": ov_sq})
    return MaximalPredicates(
        maximally_epistemic=not me,
        maximally_nontrivial=not mn,
        epistemic_violations=me,
        nontrivial_violations=mn,
    )


def dirac_restriction_model(
    catalog: Sequence[tuple[str, np.ndarray]],
    measurements: Sequence[ProjectiveMeasurement],
) -> OntModel:
    """The Hilbert-space restatement on a finite catalogue: the ontic space
    is the catalogue itself, each state sits at its own point, and responses
    are the Born probabilities evaluated at each point."""
    catalog = tuple((str(lab), np.asarray(k, dtype=complex)) for lab, k in catalog)
    ontic = FiniteSpace(tuple(lab for lab, _ in catalog))
    distributions = {lab: point_mass(ontic, lab) for lab, _ in catalog}
    packed = []
    for m in measurements:
        responses = tuple(
            ResponseFunction(
                ontic,
                [born(DensityMatrix.from_ket(k), m, out) for _, k in catalog],
            )
            for out in range(m.n_outcomes)
        )
        packed.append((m, responses))
    return OntModel(ontic, catalog, distributions, tuple(packed))


# ---------------------------------------------------------------------------
# operational-model (functor fragment) checking
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FunctorFragment:
    """Finite table of a functor: named channels with their kernel images.

    The unit object must map to the one-point space and the distinguishing
    object to the two-point space; both are fixed here by construction.
    """

    channels: dict[str, Channel]
    kernels: dict[str, SignedKernel]
    unit_space: FiniteSpace = UNIT_SPACE
    distinguished_space: FiniteSpace = TWO

    def __post_init__(self):
        if self.unit_space.size != 1:
            raise SpaceMismatchError("F(I) must be the one-point space")
        if self.distinguished_space.size != 2:
            raise SpaceMismatchError("F(2) must be the two-point space")
        missing = set(self.channels) ^ set(self.kernels)
        if missing:
            raise MissingMorphismError(f"unpaired morphism names: {sorted(missing)}")

    def pair(self, name: str) -> tuple[Channel, SignedKernel]:
        if name not in self.channels:
            raise MissingMorphismError(f"no morphism named {name!r}")
        return self.channels[name], self.kernels[name]


@dataclass
class OperationalModelReport:
    tolerance: float
    composition_violations: list = field(default_factory=list)
    identity_violations: list = field(default_factory=list)
    evaluation_violations: list = field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not (
            self.composition_violations
            or self.identity_violations
            or self.evaluation_violations
        )


def _quantum_probability(meas: Channel, state: Channel) -> float:
    """Born probability of outcome 0 through a state/measurement composite
    ending at the diagonal 2x2 algebra."""
    composite = compose(meas, state)
    trivial = DensityMatrix(np.eye(1, dtype=complex))
    out = apply_channel(composite, trivial)
    return float(out.matrix[0, 0].real)


def check_operational_model(
    frag: FunctorFragment,
    composition_tests: Sequence[tuple[str, str, str]] = (),
    identity_names: Sequence[str] = (),
    evaluation_tests: Sequence[tuple[str, str]] = (),
    tol: float = 1e-8,
) -> OperationalModelReport:
    """Verify functor laws on the tabulated fragment.

    ``composition_tests`` lists (g, f, gf) name triples with gf the table
    entry for the quantum-side composite; ``identity_names`` must map to
    identity kernels; ``evaluation_tests`` lists (measurement, state) pairs
    whose kernel-side evaluation must reproduce the Born probability.
    """
    report = OperationalModelReport(tolerance=tol)
    for g_name, f_name, gf_name in composition_tests:
        _, kg = frag.pair(g_name)
        _, kf = frag.pair(f_name)
        _, kgf = frag.pair(gf_name)
        err = float(np.max(np.abs(kgf.matrix - kcompose(kg, kf).matrix)))
        if err > tol:
            report.composition_violations.append(
                {"g": g_name, "f": f_name, "gf": gf_name, "error": err}
            )
    for name in identity_names:
        _, k = frag.pair(name)
        if k.source != k.target:
            report.identity_violations.append({"name": name, "error": "endpoints differ"})
            continue
        err = float(np.max(np.abs(k.matrix - np.eye(k.source.size))))
        if err > tol:
            report.identity_violations.append({"name": name, "error": err})
    for meas_name, state_name in evaluation_tests:
        ch_m, k_m = frag.pair(meas_name)
        ch_s, k_s = frag.pair(state_name)
        if k_s.source != frag.unit_space or k_m.target != frag.distinguished_space:
            report.evaluation_violations.append(
                {"measurement": meas_name, "state": state_name,
                 "error": "not a state/measurement composite into 2"}
            )
            continue
        quantum_p = _quantum_probability(ch_m, ch_s)
        composite = kcompose(k_m, k_s)
        classical_p = evaluate(Distribution(TWO, composite.matrix[:, 0]))
        if abs(quantum_p - classical_p) > tol:
            report.evaluation_violations.append(
                {"measurement": meas_name, "state": state_name,
                 "quantum": quantum_p, "classical": classical_p}
            )
    return report


@dataclass(frozen=True)
class ActionTable:
    """Pointwise action of channels on measurable sets, given on singletons
    and extended by unions: maps (channel name, point label) to a label set."""

    actions: dict[str, dict[str, tuple[str, ...]]]

    def image(self, channel_name: str, point: str) -> tuple[str, ...]:
        try:
            return self.actions[channel_name][point]
        except KeyError as exc:
            raise MissingActionError(
                f"no tabulated action for channel {channel_name!r} at point {point!r}"
            ) from exc


@dataclass
class EquivarianceReport:
    tolerance: float
    violations: list = field(default_factory=list)
    checked: int = 0

    @property
    def clean(self) -> bool:
        return not self.violations


def check_equivariance(
    frag: FunctorFragment,
    action: ActionTable,
    state_names: Sequence[str],
    channel_names: Sequence[str],
    tol: float = 1e-8,
) -> EquivarianceReport:
    """Verify F(f . psi)({u}) = F(psi)(f . {u}) for tabulated singletons."""
    report = EquivarianceReport(tolerance=tol)
    for s_name in state_names:
        _, ks = frag.pair(s_name)
        if ks.source != frag.unit_space:
            raise SpaceMismatchError(f"{s_name!r} is not a state (source is not F(I))")
        state_weights = ks.matrix[:, 0]
        for c_name in channel_names:
            _, kf = frag.pair(c_name)
            if kf.source != ks.target:
                raise SpaceMismatchError(f"channel {c_name!r} does not act on {s_name!r}")
            pushed = kf.matrix @ state_weights
            for i, label in enumerate(kf.target.points):
                members = action.image(c_name, label)
                rhs = float(
                    sum(state_weights[ks.target.index(lab)] for lab in members)
                )
                report.checked += 1
                if abs(pushed[i] - rhs) > tol:
                    report.violations.append(
                        {"state": s_name, "channel": c_name, "point": label,
                         "lhs": float(pushed[i]), "rhs": rhs}
                    )
    return report
