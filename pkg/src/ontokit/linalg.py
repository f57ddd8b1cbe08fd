"""Dense complex linear algebra at desk scale.

Everything in the toolkit runs through this module: matrices are plain
``numpy`` arrays of ``complex128``, kets are one-dimensional unit vectors.
All dimensions in play are tiny (at most a few hundred), so the Hermitian
eigensolver is a cyclic Jacobi iteration rather than anything clever.
"""

from __future__ import annotations

import numpy as np

from .errors import DimMismatchError, NotHermitianError

# Default comparison tolerances: structural identities should hold to
# STRUCT_TOL, derived floating-point quantities to DERIVED_TOL.
STRUCT_TOL = 1e-12
DERIVED_TOL = 1e-9

KET_NORM_TOL = 1e-10
HERMITIAN_TOL = 1e-9


def as_matrix(a) -> np.ndarray:
    """Coerce to a finite 2-d complex array."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise DimMismatchError(f"expected a 2-d matrix, got shape {m.shape}")
    if not (np.all(np.isfinite(m.real)) and np.all(np.isfinite(m.imag))):
        raise ValueError("matrix contains NaN or Inf entries")
    return m


def as_ket(v, norm_tol: float = KET_NORM_TOL) -> np.ndarray:
    """Coerce to a finite 1-d complex unit vector."""
    k = np.asarray(v, dtype=complex).reshape(-1)
    if k.size < 1:
        raise DimMismatchError("ket must have at least one amplitude")
    if not (np.all(np.isfinite(k.real)) and np.all(np.isfinite(k.imag))):
        raise ValueError("ket contains NaN or Inf amplitudes")
    nrm = np.linalg.norm(k)
    if abs(nrm - 1.0) > norm_tol:
        raise ValueError(f"ket norm {nrm!r} deviates from 1 beyond {norm_tol}")
    return k


def max_abs(a) -> float:
    """Largest entrywise modulus; the workhorse comparison metric."""
    return float(np.max(np.abs(np.asarray(a))))


def kron(a, b) -> np.ndarray:
    """Kronecker product; dimensions multiply."""
    return np.kron(as_matrix(a), as_matrix(b))


def dagger(a) -> np.ndarray:
    """Conjugate transpose."""
    return as_matrix(a).conj().T


def is_hermitian(a, tol: float = HERMITIAN_TOL) -> bool:
    m = as_matrix(a)
    return m.shape[0] == m.shape[1] and max_abs(m - m.conj().T) <= tol


def _require_hermitian(a, tol: float) -> np.ndarray:
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise NotHermitianError(f"matrix must be square, got shape {m.shape}")
    dev = max_abs(m - m.conj().T)
    if dev > tol:
        raise NotHermitianError(f"max |a - a^dag| = {dev:.3e} exceeds {tol}")
    return m


def hermitian_eigensystem(
    a, off_tol: float = STRUCT_TOL, herm_tol: float = HERMITIAN_TOL, max_sweeps: int = 100
) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and eigenvectors of a Hermitian matrix.

    Cyclic Jacobi with complex plane rotations, iterated until the
    off-diagonal Frobenius norm drops below ``off_tol``.  Returns
    ``(w, V)`` with ``a = V @ diag(w) @ V^dag`` and ``V`` unitary.
    """
    A = _require_hermitian(a, herm_tol).copy()
    A = (A + A.conj().T) / 2
    n = A.shape[0]
    V = np.eye(n, dtype=complex)
    for _ in range(max_sweeps):
        # off-diagonal Frobenius norm, computed directly (the difference of
        # total and diagonal norms cancels catastrophically)
        hollow = A - np.diag(np.diag(A))
        off = float(np.linalg.norm(hollow))
        if off <= off_tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                r = abs(apq)
                if r < 1e-300:
                    continue
                phi = np.angle(apq)
                diff = A[q, q].real - A[p, p].real
                if abs(diff) < 1e-300:
                    t = 1.0
                else:
                    theta = diff / (2 * r)
                    t = np.sign(theta) / (abs(theta) + np.hypot(1.0, theta))
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                rot = np.array(
                    [[c, s * np.exp(1j * phi)], [-s * np.exp(-1j * phi), c]],
                    dtype=complex,
                )
                A[:, [p, q]] = A[:, [p, q]] @ rot
                A[[p, q], :] = rot.conj().T @ A[[p, q], :]
                V[:, [p, q]] = V[:, [p, q]] @ rot
        A = (A + A.conj().T) / 2
    else:
        raise RuntimeError(
            f"Jacobi iteration did not reach off-norm {off_tol} in {max_sweeps} sweeps"
        )
    w = np.diag(A).real.copy()
    order = np.argsort(w, kind="stable")
    return w[order], V[:, order]


def hermitian_eigenvalues(
    a, off_tol: float = STRUCT_TOL, herm_tol: float = HERMITIAN_TOL
) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix in nondecreasing order."""
    w, _ = hermitian_eigensystem(a, off_tol=off_tol, herm_tol=herm_tol)
    return w


def trace_norm(a, herm_tol: float = HERMITIAN_TOL) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    return float(np.sum(np.abs(hermitian_eigenvalues(a, herm_tol=herm_tol))))
