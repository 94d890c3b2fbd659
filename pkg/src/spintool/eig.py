"""Hermitian eigensolver built on cyclic complex Jacobi rotations.

The solver repeatedly annihilates off-diagonal pivots a[p, q] with 2 x 2
unitary rotations until the off-diagonal Frobenius mass falls below a
relative threshold.  It is deliberately self-contained: diagonalization is
the load-bearing step of the isospectrality certificates, so it must not
rest on an opaque library call.

Rotation construction for pivot (p, q), p < q
---------------------------------------------
Write the pivot entry as a[p, q] = b * exp(i*phi) with b > 0.  The principal
2 x 2 submatrix is unitarily similar to a real symmetric one, so the real
Jacobi angle formulas apply after stripping the phase:

    tau = (a[q, q] - a[p, p]) / (2 b)          (both diagonals are real)
    t   = sign(tau) / (|tau| + sqrt(1 + tau^2))    (tan of the angle,
          the root with |angle| <= pi/4; tau = 0 gives t = 1)
    c   = 1 / sqrt(1 + t^2),   s = t * c

and the applied rotation, J = [[c, s], [-s*e, c*e]] with e = exp(-i*phi),
zeroes a[p, q] exactly in the update A <- J^H A J while preserving
hermiticity and the eigenvalues.  Each rotation removes 2 b^2 from the
squared off-diagonal mass, which forces convergence; cyclic row-major
pivot order makes runs deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import (
    DEFAULT_TOL,
    NumericalError,
    ShapeError,
    frobenius_norm,
    require_hermitian,
)

__all__ = [
    "ConvergenceError",
    "EigDecomposition",
    "hermitian_eig",
    "verify_eigenpair",
]

DEFAULT_MAX_SWEEPS = 100


class ConvergenceError(NumericalError):
    """The sweep budget ran out before the off-diagonal mass fell below tol."""


@dataclass(frozen=True)
class EigDecomposition:
    """Result of a Hermitian diagonalization.

    ``values`` are real and ascending; column k of ``vectors`` is the
    eigenvector for ``values[k]``, normalized with its largest-magnitude
    component made real and positive (first such index on ties), so repeat
    runs return bit-identical output.  ``residual`` is the largest
    euclidean norm of M v - lambda v over all returned pairs, measured
    against the original input.  ``sweeps`` counts completed Jacobi sweeps.
    """

    values: np.ndarray
    vectors: np.ndarray
    residual: float
    sweeps: int

    @property
    def dimension(self) -> int:
        return self.values.shape[0]


def _offdiag_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - np.diag(np.diagonal(a))))


def hermitian_eig(
    m: np.ndarray,
    tol: float = DEFAULT_TOL,
    max_sweeps: int = DEFAULT_MAX_SWEEPS,
) -> EigDecomposition:
    """Diagonalize a Hermitian matrix with cyclic complex Jacobi sweeps.

    Stops once the off-diagonal Frobenius norm is <= tol * ||m||_F; raises
    :class:`ConvergenceError` if that does not happen within ``max_sweeps``
    full sweeps.  Pivots already below the stop threshold scaled by 1/(10 n)
    are skipped; the convergence check always measures the true remaining
    off-diagonal mass, so skipping never masks a miss.  Inputs within the
    hermiticity tolerance are symmetrized once on entry; the reported
    residual is still taken against the original matrix.
    """
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ShapeError(f"eigensolver needs a square matrix, got shape {m.shape}")
    if not np.isfinite(m).all():
        raise ValueError("matrix entries must be finite")
    if not tol > 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    if max_sweeps < 0:
        raise ValueError(f"max_sweeps must be non-negative, got {max_sweeps}")
    require_hermitian(m, tol)

    n = m.shape[0]
    a = np.array(m, dtype=np.complex128)
    a = (a + a.conj().T) / 2.0
    v = np.eye(n, dtype=np.complex128)
    stop = tol * frobenius_norm(m)
    skip = stop / (10.0 * n)
    sweeps = 0

    while _offdiag_norm(a) > stop:
        if sweeps >= max_sweeps:
            raise ConvergenceError(
                f"off-diagonal norm {_offdiag_norm(a):.3e} still above "
                f"{stop:.3e} after {max_sweeps} sweeps"
            )
        for p in range(n - 1):
            for q in range(p + 1, n):
                pivot = a[p, q]
                b = abs(pivot)
                if b <= skip:
                    continue
                tau = (a[q, q].real - a[p, p].real) / (2.0 * b)
                t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                e = pivot.conjugate() / b
                rot = np.array([[c, s], [-s * e, c * e]], dtype=np.complex128)
                a[[p, q], :] = rot.conj().T @ a[[p, q], :]
                a[:, [p, q]] = a[:, [p, q]] @ rot
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                v[:, [p, q]] = v[:, [p, q]] @ rot
        sweeps += 1

    values = np.diagonal(a).real.copy()
    order = np.argsort(values, kind="stable")
    values = values[order]
    vectors = v[:, order].copy()
    for k in range(n):
        col = vectors[:, k]
        lead = int(np.argmax(np.abs(col)))
        mag = abs(col[lead])
        if mag > 0.0:
            vectors[:, k] = col * (col[lead].conjugate() / mag)
    if n:
        deltas = m @ vectors - vectors * values[np.newaxis, :]
        residual = float(np.max(np.linalg.norm(deltas, axis=0)))
    else:
        residual = 0.0
    values.flags.writeable = False
    vectors.flags.writeable = False
    return EigDecomposition(values=values, vectors=vectors, residual=residual, sweeps=sweeps)


def verify_eigenpair(m: np.ndarray, vector: np.ndarray, value: float) -> float:
    """Scale-free residual ||M v - value * v|| / ||v|| of a claimed pair."""
    m = np.asarray(m)
    vector = np.asarray(vector, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {m.shape}")
    if vector.ndim != 1 or vector.shape[0] != m.shape[0]:
        raise ShapeError(
            f"vector shape {vector.shape} does not match matrix {m.shape}"
        )
    norm = float(np.linalg.norm(vector))
    if norm == 0.0:
        raise ValueError("eigenvector must be non-zero")
    return float(np.linalg.norm(m @ vector - value * vector)) / norm
