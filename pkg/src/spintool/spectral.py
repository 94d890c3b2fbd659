"""Spectral analysis: power-trace moments, clustering, and isospectrality.

Two independent routes feed the isospectrality certificate.  The direct
route diagonalizes both operators and compares clustered spectra; that
comparison is the verdict of record.  The moment route compares traces of
matrix powers, which corroborates the verdict without any diagonalization.

Trace magnitudes grow like ||M||^k, so every moment comparison is scaled
per power by max(1, r)^k with r the spectral radius; a fixed absolute
tolerance would be unsatisfiable at high powers, where double-precision
rounding alone produces absolute errors far above any fixed bound.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .eig import DEFAULT_MAX_SWEEPS, hermitian_eig
from .linalg import (
    DEFAULT_TOL,
    NumericalError,
    ShapeError,
    frobenius_norm,
    require_hermitian,
)
from .spin import HalfInteger

__all__ = [
    "Spectrum",
    "MomentReport",
    "IsospectralReport",
    "moments",
    "newton_check",
    "cluster_spectrum",
    "closed_form_spectrum",
    "default_cluster_tol",
    "spectra_match",
    "certify_isospectral",
]

MOMENT_TOL = 1e-8


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues grouped into degenerate clusters.

    ``clusters`` holds (value, multiplicity) pairs with values ascending and
    consecutive values separated by more than ``cluster_tol``; multiplicities
    sum to ``dimension``.
    """

    clusters: tuple[tuple[float, int], ...]
    cluster_tol: float
    dimension: int

    @property
    def values(self) -> tuple[float, ...]:
        return tuple(value for value, _ in self.clusters)

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(count for _, count in self.clusters)


@dataclass(frozen=True)
class MomentReport:
    """Power-trace comparison between two operators.

    ``max_abs_diff`` is the largest per-power difference after dividing
    power k by scale^k, so ``passed`` holds exactly when
    ``max_abs_diff <= tol``; the raw trace sequences are kept alongside.
    The prefix fields repeat the comparison over the first ``prefix_len``
    powers when a prefix was requested.
    """

    powers: tuple[int, ...]
    traces_a: tuple[float, ...]
    traces_b: tuple[float, ...]
    scale: float
    max_abs_diff: float
    tol: float
    passed: bool
    prefix_len: int | None = None
    prefix_max_abs_diff: float | None = None
    prefix_passed: bool | None = None


@dataclass(frozen=True)
class IsospectralReport:
    """Combined direct and moment evidence for two operators.

    ``spectra_equal`` comes from the clustered spectra alone and is the
    verdict of record; the moment report corroborates it.
    """

    dimension: int
    spectrum_a: Spectrum
    spectrum_b: Spectrum
    spectra_equal: bool
    moments: MomentReport
    residual_a: float
    residual_b: float

    @property
    def verdict(self) -> bool:
        return self.spectra_equal and self.moments.passed


def moments(m: np.ndarray, kmax: int) -> np.ndarray:
    """Traces of m^k for k = 1..kmax, by iterated multiplication.

    The input must be Hermitian within 1e-10 per dimension, so every trace
    is real up to rounding; the imaginary residue of each trace is checked
    against 1e-8 * dim * max(1, ||m||_F)^k and anything larger raises
    :class:`NumericalError`, as does a trace overflowing double precision.
    """
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ShapeError(f"moments need a square matrix, got shape {m.shape}")
    if kmax < 1:
        raise ValueError(f"kmax must be at least 1, got {kmax}")
    require_hermitian(m, 1e-10)
    n = m.shape[0]
    scale = max(1.0, frobenius_norm(m))
    out = np.empty(kmax, dtype=np.float64)
    power = m
    for k in range(1, kmax + 1):
        t = complex(np.trace(power))
        if not (np.isfinite(t.real) and np.isfinite(t.imag)):
            raise NumericalError(
                f"trace of power {k} overflowed double precision; lower kmax"
            )
        if abs(t.imag) > 1e-8 * n * scale**k:
            raise NumericalError(
                f"trace of power {k} has imaginary part {t.imag:.3e} "
                "beyond the hermiticity drift bound"
            )
        out[k - 1] = t.real
        if k < kmax:
            power = power @ m
    out.flags.writeable = False
    return out


def newton_check(values, traces, tol: float = MOMENT_TOL) -> bool:
    """Check sum_i values_i^k == traces[k-1] for every provided power.

    The comparison at power k is made within tol * len(values) * r^k where
    r = max(1, max |value|), matching how trace magnitudes grow.
    """
    values = np.asarray(values, dtype=np.float64)
    traces = np.asarray(traces, dtype=np.float64)
    if values.ndim != 1 or traces.ndim != 1:
        raise ShapeError("values and traces must be 1-D")
    if values.size == 0 or traces.size == 0:
        raise ValueError("values and traces must be non-empty")
    dim = values.size
    radius = max(1.0, float(np.max(np.abs(values))))
    for k in range(1, traces.size + 1):
        power_sum = float(np.sum(values**k))
        if abs(power_sum - traces[k - 1]) > tol * dim * radius**k:
            return False
    return True


def cluster_spectrum(values, cluster_tol: float) -> Spectrum:
    """Group an ascending eigenvalue list into degeneracy clusters.

    A value joins the current cluster when it sits within ``cluster_tol``
    of the cluster's running mean; otherwise it opens a new cluster.  For
    well-separated spectra this reproduces exact multiplicities.
    """
    values = np.asarray(values, dtype=np.float64)
    if values.ndim != 1 or values.size == 0:
        raise ShapeError("expected a non-empty 1-D value list")
    if not np.isfinite(values).all():
        raise ValueError("values must be finite")
    if not cluster_tol > 0.0:
        raise ValueError(f"cluster_tol must be positive, got {cluster_tol}")
    if np.any(np.diff(values) < 0.0):
        raise ValueError("values must be ascending")
    clusters: list[tuple[float, int]] = []
    mean = float(values[0])
    count = 1
    for v in values[1:]:
        v = float(v)
        if v - mean <= cluster_tol:
            count += 1
            mean += (v - mean) / count
        else:
            clusters.append((mean, count))
            mean = v
            count = 1
    clusters.append((mean, count))
    return Spectrum(
        clusters=tuple(clusters),
        cluster_tol=cluster_tol,
        dimension=int(values.size),
    )


def closed_form_spectrum(s: HalfInteger) -> Spectrum:
    """Exact spectrum of the aligned exchange operator for spin s.

    Coupling two spin-s sites gives total-spin sectors j = 0..2s, and on
    each sector the operator equals (j(j+1) - 2s(s+1)) / 2 with
    multiplicity 2j+1.  All values are dyadic rationals, hence exact.
    """
    casimir = s.twice * (s.twice + 2) / 4.0
    clusters = tuple(
        (j * (j + 1) / 2.0 - casimir, 2 * j + 1) for j in range(s.twice + 1)
    )
    return Spectrum(clusters=clusters, cluster_tol=0.0, dimension=s.dimension**2)


def default_cluster_tol(m: np.ndarray) -> float:
    """Degeneracy resolution used when none is given: 1e-9 * max(1, ||m||_F)."""
    return 1e-9 * max(1.0, frobenius_norm(m))


def spectra_match(a: Spectrum, b: Spectrum, value_tol: float | None = None) -> bool:
    """True when cluster counts, multiplicities, and values all agree.

    Values compare within ``value_tol``; when omitted, the looser of the
    two cluster tolerances is used.
    """
    if value_tol is None:
        value_tol = max(a.cluster_tol, b.cluster_tol)
    if a.dimension != b.dimension or len(a.clusters) != len(b.clusters):
        return False
    for (va, ma), (vb, mb) in zip(a.clusters, b.clusters):
        if ma != mb or abs(va - vb) > value_tol:
            return False
    return True


def certify_isospectral(
    a: np.ndarray,
    b: np.ndarray,
    kmax: int | None = None,
    tol: float = MOMENT_TOL,
    cluster_tol: float | None = None,
    prefix: int | None = None,
    eig_tol: float = DEFAULT_TOL,
    max_sweeps: int = DEFAULT_MAX_SWEEPS,
) -> IsospectralReport:
    """Certify that two Hermitian operators share a spectrum.

    Diagonalizes both operators, compares clustered spectra (values within
    the cluster tolerance, multiplicities exactly), and independently
    compares trace moments for k = 1..kmax (default: the full dimension).
    ``prefix`` additionally reports the comparison restricted to the first
    so-many powers; the verdict never rests on the prefix alone.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ShapeError(f"expected square matrices, got shape {a.shape}")
    if a.shape != b.shape:
        raise ShapeError(f"dimension mismatch: {a.shape} vs {b.shape}")
    n = a.shape[0]
    if kmax is None:
        kmax = n
    if kmax < 1:
        raise ValueError(f"kmax must be at least 1, got {kmax}")
    if prefix is not None and not 1 <= prefix <= kmax:
        raise ValueError(f"prefix must lie in 1..kmax, got {prefix}")

    dec_a = hermitian_eig(a, eig_tol, max_sweeps)
    dec_b = hermitian_eig(b, eig_tol, max_sweeps)
    if cluster_tol is None:
        cluster_tol = max(default_cluster_tol(a), default_cluster_tol(b))
    spectrum_a = cluster_spectrum(dec_a.values, cluster_tol)
    spectrum_b = cluster_spectrum(dec_b.values, cluster_tol)
    equal = spectra_match(spectrum_a, spectrum_b, value_tol=cluster_tol)

    traces_a = moments(a, kmax)
    traces_b = moments(b, kmax)
    radius = max(
        1.0,
        float(np.max(np.abs(dec_a.values))),
        float(np.max(np.abs(dec_b.values))),
    )
    powers = np.arange(1, kmax + 1)
    scaled = np.abs(traces_a - traces_b) / radius**powers.astype(np.float64)
    max_abs_diff = float(np.max(scaled))
    threshold = tol * n
    prefix_diff = float(np.max(scaled[:prefix])) if prefix is not None else None
    report = MomentReport(
        powers=tuple(int(k) for k in powers),
        traces_a=tuple(float(t) for t in traces_a),
        traces_b=tuple(float(t) for t in traces_b),
        scale=radius,
        max_abs_diff=max_abs_diff,
        tol=threshold,
        passed=max_abs_diff <= threshold,
        prefix_len=prefix,
        prefix_max_abs_diff=prefix_diff,
        prefix_passed=None if prefix_diff is None else prefix_diff <= threshold,
    )
    return IsospectralReport(
        dimension=n,
        spectrum_a=spectrum_a,
        spectrum_b=spectrum_b,
        spectra_equal=equal,
        moments=report,
        residual_a=dec_a.residual,
        residual_b=dec_b.residual,
    )
