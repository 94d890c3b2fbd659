import numpy as np
import pytest

from spintool.hamiltonians import build_cyclic, build_heisenberg
from spintool.linalg import HermiticityError, ShapeError
from spintool.spectral import (
    certify_isospectral,
    closed_form_spectrum,
    cluster_spectrum,
    default_cluster_tol,
    moments,
    newton_check,
    spectra_match,
)
from spintool.spin import HalfInteger


def test_moments_spin_half_golden():
    # eigenvalues (-3/4, 1/4 x3) give power sums 0, 3/4, -3/8, 21/64
    h = build_heisenberg(HalfInteger(1)).matrix
    np.testing.assert_allclose(
        moments(h, 4), [0.0, 0.75, -0.375, 0.328125], atol=1e-15
    )


def test_moments_match_matrix_power_oracle():
    rng = np.random.default_rng(31)
    r = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    m = (r + r.conj().T) / 2.0
    got = moments(m, 5)
    expected = [float(np.trace(np.linalg.matrix_power(m, k)).real) for k in range(1, 6)]
    np.testing.assert_allclose(got, expected, rtol=1e-12, atol=1e-12)


def test_moments_identity():
    np.testing.assert_array_equal(moments(np.eye(3, dtype=complex), 3), [3.0, 3.0, 3.0])


def test_moments_guards():
    with pytest.raises(HermiticityError):
        moments(np.array([[0, 1], [0, 0]], dtype=complex), 2)
    with pytest.raises(ValueError):
        moments(np.eye(2, dtype=complex), 0)
    with pytest.raises(ShapeError):
        moments(np.ones((2, 3)), 2)


def test_newton_check_accepts_true_pairs():
    assert newton_check([1.0, 1.0], [2.0, 2.0, 2.0])
    assert newton_check([-0.75, 0.25, 0.25, 0.25], [0.0, 0.75, -0.375, 0.328125])


def test_newton_check_rejects_false_pairs():
    assert not newton_check([1.0, 2.0], [3.0, 4.0])


def test_newton_check_guards():
    with pytest.raises(ValueError):
        newton_check([], [1.0])
    with pytest.raises(ShapeError):
        newton_check([[1.0]], [1.0])


def test_cluster_spectrum_groups_degeneracies():
    spectrum = cluster_spectrum([1.0, 1.0, 1.0, 2.0], 0.5)
    assert spectrum.clusters == ((1.0, 3), (2.0, 1))
    assert spectrum.dimension == 4
    assert spectrum.values == (1.0, 2.0)
    assert spectrum.multiplicities == (3, 1)


def test_cluster_spectrum_running_mean():
    spectrum = cluster_spectrum([0.0, 1e-10, 1.0], 1e-9)
    assert spectrum.clusters[0] == (pytest.approx(5e-11), 2)
    assert spectrum.clusters[1] == (1.0, 1)


def test_cluster_spectrum_singleton_and_guards():
    assert cluster_spectrum([4.0], 1e-9).clusters == ((4.0, 1),)
    with pytest.raises(ValueError):
        cluster_spectrum([2.0, 1.0], 1e-9)
    with pytest.raises(ValueError):
        cluster_spectrum([1.0], 0.0)
    with pytest.raises(ShapeError):
        cluster_spectrum([], 1e-9)


def test_cluster_separation_invariant():
    spectrum = cluster_spectrum([0.0, 0.3, 0.7, 1.2], 0.5)
    gaps = np.diff(spectrum.values)
    assert (gaps > spectrum.cluster_tol).all()
    assert sum(spectrum.multiplicities) == spectrum.dimension


@pytest.mark.parametrize(
    "twice, expected",
    [
        (1, ((-0.75, 1), (0.25, 3))),
        (2, ((-2.0, 1), (-1.0, 3), (1.0, 5))),
        (3, ((-3.75, 1), (-2.75, 3), (-0.75, 5), (2.25, 7))),
        (4, ((-6.0, 1), (-5.0, 3), (-3.0, 5), (0.0, 7), (4.0, 9))),
    ],
)
def test_closed_form_tables(twice, expected):
    spectrum = closed_form_spectrum(HalfInteger(twice))
    assert spectrum.clusters == expected
    assert spectrum.dimension == (twice + 1) ** 2
    assert sum(spectrum.multiplicities) == spectrum.dimension


def test_default_cluster_tol_floor():
    h = build_heisenberg(HalfInteger(1)).matrix
    # ||H|| < 1 for spin 1/2, so the floor of the scale applies
    assert default_cluster_tol(h) == 1e-9


def test_spectra_match_cases():
    a = cluster_spectrum([0.0, 1.0], 1e-9)
    b = cluster_spectrum([1e-11, 1.0], 1e-9)
    assert spectra_match(a, b)
    c = cluster_spectrum([0.0, 1.0, 1.0], 1e-9)
    assert not spectra_match(a, c)
    assert not spectra_match(a, cluster_spectrum([0.5, 1.0], 1e-9))


def test_certify_spin_half_golden():
    h = build_heisenberg(HalfInteger(1)).matrix
    k = build_cyclic(HalfInteger(1)).matrix
    report = certify_isospectral(h, k, kmax=4, prefix=2)
    assert report.spectra_equal
    assert report.verdict
    assert report.moments.passed
    assert report.moments.prefix_len == 2
    assert report.moments.prefix_passed
    assert report.moments.powers == (1, 2, 3, 4)
    np.testing.assert_allclose(report.moments.traces_a, [0.0, 0.75, -0.375, 0.328125], atol=1e-15)
    np.testing.assert_allclose(report.moments.traces_b, [0.0, 0.75, -0.375, 0.328125], atol=1e-15)
    assert report.spectrum_a.multiplicities == (1, 3)
    assert spectra_match(report.spectrum_a, closed_form_spectrum(HalfInteger(1)), value_tol=1e-9)


def test_certify_detects_different_spectra():
    a = np.diag([1.0, -1.0]).astype(complex)
    b = np.diag([1.0, 1.0]).astype(complex)
    report = certify_isospectral(a, b)
    assert not report.spectra_equal
    assert not report.moments.passed
    assert not report.verdict
    assert report.moments.traces_a[0] == 0.0
    assert report.moments.traces_b[0] == 2.0


def test_certify_reflexive():
    m = build_cyclic(HalfInteger(2)).matrix
    report = certify_isospectral(m, m)
    assert report.verdict
    assert report.moments.max_abs_diff == 0.0


def test_certify_guards():
    eye2 = np.eye(2, dtype=complex)
    with pytest.raises(ShapeError):
        certify_isospectral(eye2, np.eye(3, dtype=complex))
    with pytest.raises(ValueError):
        certify_isospectral(eye2, eye2, kmax=0)
    with pytest.raises(ValueError):
        certify_isospectral(eye2, eye2, kmax=2, prefix=3)


@pytest.mark.parametrize("twice", [1, 2, 3, 5])
def test_exchange_pair_certificates(twice, spin_cache):
    entry = spin_cache(twice)
    cert = entry.cert
    dim = (twice + 1) ** 2
    assert cert.dimension == dim
    assert cert.spectra_equal
    assert cert.verdict
    assert cert.moments.prefix_len == twice + 1
    assert cert.moments.prefix_passed
    assert len(cert.moments.powers) == dim
    assert spectra_match(
        cert.spectrum_a, closed_form_spectrum(entry.s), value_tol=1e-9
    )


@pytest.mark.parametrize("twice", [1, 2, 3, 6])
def test_newton_identities_on_computed_spectra(twice, spin_cache):
    entry = spin_cache(twice)
    for dec, traces in (
        (entry.dec_h, entry.cert.moments.traces_a),
        (entry.dec_k, entry.cert.moments.traces_b),
    ):
        assert newton_check(dec.values, traces)


def test_moment_report_pass_iff_bound():
    h = build_heisenberg(HalfInteger(2)).matrix
    k = build_cyclic(HalfInteger(2)).matrix
    report = certify_isospectral(h, k, kmax=9).moments
    assert report.passed == (report.max_abs_diff <= report.tol)
    assert report.scale >= 1.0
    assert len(report.traces_a) == len(report.traces_b) == len(report.powers)
