"""Seeded random generators for states, channels, and trial ensembles.

All randomness in the toolkit flows through Philox, a counter-based PRNG,
keyed deterministically from ``(seed, stream...)`` so that trial batches
are reproducible and safely parallelisable per stream.
"""

from __future__ import annotations

import numpy as np

from . import linalg
from .quantum import Channel, DensityMatrix, TwoOutcomeMeasurement


def rng_for(seed: int, *stream: int) -> np.random.Generator:
    """Deterministic generator for a named stream of a seed."""
    seq = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(s) for s in stream))
    return np.random.Generator(np.random.Philox(seq))


def random_ket(rng: np.random.Generator, dim: int) -> np.ndarray:
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def random_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_density(rng: np.random.Generator, dim: int) -> DensityMatrix:
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    m = g @ g.conj().T
    return DensityMatrix(m / np.trace(m).real)


def random_effect(rng: np.random.Generator, dim: int) -> TwoOutcomeMeasurement:
    u = random_unitary(rng, dim)
    eigs = rng.uniform(0.0, 1.0, dim)
    return TwoOutcomeMeasurement(u @ np.diag(eigs) @ u.conj().T)


def random_cptp_channel(
    rng: np.random.Generator, in_dim: int, out_dim: int, n_kraus: int = 3
) -> Channel:
    """Random trace-preserving CP map: Gaussian Kraus set, renormalised."""
    raw = [
        rng.normal(size=(out_dim, in_dim)) + 1j * rng.normal(size=(out_dim, in_dim))
        for _ in range(n_kraus)
    ]
    total = sum(k.conj().T @ k for k in raw)
    w, v = linalg.hermitian_eigensystem(total)
    inv_sqrt = v @ np.diag(1.0 / np.sqrt(w)) @ v.conj().T
    return Channel(tuple(k @ inv_sqrt for k in raw))


def random_nonorthogonal_pair(
    rng: np.random.Generator, dim: int, lo: float, hi: float
) -> tuple[np.ndarray, np.ndarray, float]:
    """Pair of kets with |<psi|phi>| drawn uniformly from [lo, hi].

    Constructed rather than rejection-sampled: phi = g e^{i beta} psi + ...
    with a Haar direction in the orthocomplement, so the overlap modulus is
    exact by construction.
    """
    if not 0.0 < lo <= hi < 1.0:
        raise ValueError("need 0 < lo <= hi < 1")
    psi = random_ket(rng, dim)
    g = float(rng.uniform(lo, hi))
    beta = float(rng.uniform(0.0, 2.0 * np.pi))
    raw = random_ket(rng, dim)
    perp = raw - np.vdot(psi, raw) * psi
    while np.linalg.norm(perp) < 1e-8:
        raw = random_ket(rng, dim)
        perp = raw - np.vdot(psi, raw) * psi
    perp = perp / np.linalg.norm(perp)
    phi = g * np.exp(1j * beta) * psi + np.sqrt(1.0 - g * g) * perp
    return psi, phi / np.linalg.norm(phi), g


def random_orthogonal_pair(
    rng: np.random.Generator, dim: int
) -> tuple[np.ndarray, np.ndarray]:
    """Haar ket plus a Haar direction of its orthocomplement."""
    psi = random_ket(rng, dim)
    raw = random_ket(rng, dim)
    perp = raw - np.vdot(psi, raw) * psi
    while np.linalg.norm(perp) < 1e-8:
        raw = random_ket(rng, dim)
        perp = raw - np.vdot(psi, raw) * psi
    return psi, perp / np.linalg.norm(perp)
