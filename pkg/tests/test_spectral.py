import numpy as np
import pytest

from mobcorr import (
    certify_sup,
    certify_sup_auto,
    decay_scan,
    mertens,
    phase_profile,
    quad_phase_sum,
    sieve_mobius,
)
from mobcorr.errors import CertificateUnavailableError, GridResolutionError


@pytest.fixture(scope="module")
def mu():
    return sieve_mobius(10**4)


def test_grid_matches_direct_evaluation(mu):
    N, M = 100, 512
    profile = phase_profile(mu, N, M)
    n = np.arange(1, N + 1)
    coeffs = mu.values[1 : N + 1].astype(np.float64)
    for k in (0, 1, 7, 255):
        direct = np.sum(coeffs * np.exp(2j * np.pi * n * k / M))
        assert abs(profile.samples[k] - direct) <= 1e-9


def test_zero_frequency_is_mertens(mu):
    for N in (100, 1000):
        profile = phase_profile(mu, N)
        assert profile.samples[0].real == pytest.approx(float(mertens(mu, N)), abs=1e-9)
        assert profile.samples[0].imag == pytest.approx(0.0, abs=1e-9)


def test_parseval_on_grid(mu):
    N, M = 64, 256
    profile = phase_profile(mu, N, M)
    coeffs = mu.values[1 : N + 1].astype(np.float64)
    lhs = float(np.sum(np.abs(profile.samples) ** 2)) / M
    rhs = float(np.sum(coeffs**2))
    assert lhs == pytest.approx(rhs, rel=1e-12)


def test_conjugate_symmetry_real_input(mu):
    profile = phase_profile(mu, 50, 256)
    s = profile.samples
    assert np.max(np.abs(s[1:] - np.conj(s[1:][::-1]))) <= 1e-9


def test_single_delta_sequence():
    # A(1) = 1, rest 0: |S(t)| = 1 everywhere, bracket collapses to [1, 1]
    a = np.zeros(16)
    a[0] = 1.0
    profile = certify_sup_auto(a, 16)
    assert profile.refined_sup_lower == pytest.approx(1.0, abs=1e-12)
    assert profile.certified_sup_upper == pytest.approx(1.0, abs=1e-12)


def test_all_ones_sup_is_N_exactly():
    N = 100
    profile = certify_sup_auto(np.ones(N), N)
    assert profile.certified_sup_upper == N  # l1 certificate is sharp here
    assert profile.refined_sup_lower == pytest.approx(N, rel=1e-12)


def test_bracket_contains_grid_max(mu):
    for N in (100, 1000):
        profile = certify_sup_auto(mu, N)
        assert profile.refined_sup_lower >= profile.grid_max - 1e-12
        assert profile.certified_sup_upper >= profile.refined_sup_lower
        assert profile.certified_sup_upper / profile.refined_sup_lower <= 1.05


def test_bracket_regression(mu):
    profile = certify_sup_auto(mu, 10**4)
    assert profile.refined_sup_lower == pytest.approx(320.92, abs=0.5)
    assert profile.certified_sup_upper == pytest.approx(330.82, abs=0.5)


def test_grid_and_certificate_errors(mu):
    with pytest.raises(GridResolutionError):
        phase_profile(mu, 100, 150)
    profile = phase_profile(mu, 100, 256)
    profile.M = 200  # below pi * N, Bernstein factor would be negative
    with pytest.raises(CertificateUnavailableError):
        certify_sup(profile)


def test_decay_scan_rows(mu):
    rows = decay_scan(mu, [100, 1000], [0.5, 1.0])
    assert [r.N for r in rows] == [100, 1000]
    for r in rows:
        assert r.sup_norm == pytest.approx(r.sup_upper / r.N)
        assert set(r.ratios) == {0.5, 1.0}
        assert r.ratios[1.0] == pytest.approx(r.sup_norm * np.log(r.N))


def test_quad_phase_sum(mu):
    N = 500
    val = quad_phase_sum(mu, N, 0.0, 0.25)
    n = np.arange(1, N + 1)
    direct = abs(np.sum(mu.values[1 : N + 1] * np.exp(2j * np.pi * 0.25 * n))) / N
    assert val == pytest.approx(direct, abs=1e-10)
    # alpha = beta = 0 collapses to |Mertens| / N
    assert quad_phase_sum(mu, N, 0.0, 0.0) == pytest.approx(
        abs(float(mertens(mu, N))) / N, abs=1e-12)
    assert 0.0 <= quad_phase_sum(mu, N, 0.3178, 0.771) <= 1.0
