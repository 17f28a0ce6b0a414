"""Weighted exponential sums S_N(t) = sum_{n<=N} A(n) e^{2 pi i n t} on phase
grids, with certified suprema.

The upper bound is the Bernstein bracket grid_max / (1 - pi*N/M): a degree-N
trigonometric polynomial has |d|S|/dt| <= 2*pi*N*sup|S|, so the sup can
overshoot the best grid sample by at most (spacing/2) * 2*pi*N * sup.  The
lower bound comes from golden-section refinement of |S| around the top grid
cells, evaluated directly (not via the grid).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .correlation import _coeffs
from .errors import CertificateUnavailableError, GridResolutionError
from .sieve import ArithSequence

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def _next_pow2(n: int) -> int:
    return 1 << max(int(n) - 1, 0).bit_length()


@dataclass
class PhaseProfile:
    N: int
    M: int
    samples: np.ndarray = field(repr=False)  # S_N(k/M), k = 0..M-1
    grid_max: float = 0.0
    coeffs: np.ndarray = field(default=None, repr=False)  # A(1..N), kept for refinement
    refined_sup_lower: float | None = None
    certified_sup_upper: float | None = None


def phase_profile(seq, N: int, M: int | None = None) -> PhaseProfile:
    """Evaluate S_N on the uniform grid t = k/M via a zero-padded transform."""
    coeffs = _coeffs(seq, N)
    if M is None:
        M = _next_pow2(8 * N)
    if M < 2 * N + 1:
        raise GridResolutionError(f"grid M={M} too small, need M >= 2N+1 = {2 * N + 1}")
    buf = np.zeros(M, dtype=np.complex128)
    buf[1 : N + 1] = coeffs
    samples = np.fft.ifft(buf) * M  # ifft carries the e^{+2 pi i n k / M} kernel
    grid_max = float(np.max(np.abs(samples)))
    return PhaseProfile(N, M, samples, grid_max, np.asarray(coeffs, dtype=np.complex128))


def _abs_S(coeffs: np.ndarray, t: float) -> float:
    n = np.arange(1, len(coeffs) + 1, dtype=np.float64)
    return float(abs(np.sum(coeffs * np.exp(2j * np.pi * n * t))))


def _golden_max(fun, a: float, b: float, iters: int) -> float:
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = fun(c), fun(d)
    for _ in range(iters):
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = fun(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = fun(d)
    return max(fc, fd)


def certify_sup(
    profile: PhaseProfile, top_cells: int = 8, gss_iters: int = 40
) -> tuple[float, float]:
    """Certified bracket (refined_sup_lower, certified_sup_upper) of sup_t |S_N(t)|."""
    N, M = profile.N, profile.M
    if M <= math.pi * N:
        raise CertificateUnavailableError(
            f"Bernstein certificate needs M > pi*N; got M={M}, N={N}"
        )
    # the l1 norm of the coefficients is itself a certificate and caps the
    # Bernstein bound when the grid maximum is already extremal (all-ones case)
    l1 = float(np.sum(np.abs(profile.coeffs)))
    upper = min(profile.grid_max / (1.0 - math.pi * N / M), l1)
    mags = np.abs(profile.samples)
    top = np.argsort(mags)[-top_cells:]
    best = profile.grid_max
    for k in sorted(int(k) for k in top):
        a, b = (k - 1) / M, (k + 1) / M
        best = max(best, _golden_max(lambda t: _abs_S(profile.coeffs, t), a, b, gss_iters))
    best = min(best, upper)  # direct evaluation can overshoot the l1 cap by rounding
    profile.refined_sup_lower = best
    profile.certified_sup_upper = upper
    return best, upper


def certify_sup_auto(
    seq,
    N: int,
    target_ratio: float = 1.05,
    max_doublings: int = 6,
    M: int | None = None,
    m_cap: int = 1 << 26,
) -> PhaseProfile:
    """Certify with grid doubling until upper/lower <= target_ratio (or budget spent)."""
    profile = phase_profile(seq, N, M)
    lower, upper = certify_sup(profile)
    for _ in range(max_doublings):
        if (lower > 0 and upper / lower <= target_ratio) or 2 * profile.M > m_cap:
            break
        profile = phase_profile(profile.coeffs, N, 2 * profile.M)
        lower, upper = certify_sup(profile)
    return profile


@dataclass
class DecayRow:
    N: int
    sup_lower: float
    sup_upper: float
    sup_norm: float  # certified_sup_upper / N
    ratios: dict[float, float]  # eps -> sup_norm * ln(N)^eps


def decay_scan(seq, n_grid, eps_list, target_ratio: float = 1.05) -> list[DecayRow]:
    rows = []
    for N in n_grid:
        N = int(N)
        profile = certify_sup_auto(seq, N, target_ratio=target_ratio)
        sup_norm = profile.certified_sup_upper / N
        ratios = {float(e): sup_norm * math.log(N) ** e for e in eps_list}
        rows.append(
            DecayRow(N, profile.refined_sup_lower, profile.certified_sup_upper, sup_norm, ratios)
        )
    return rows


def quad_phase_sum(seq, N: int, alpha: float, beta: float) -> float:
    """(1/N) |sum_{n<=N} A(n) e^{2 pi i (alpha n^2 + beta n)}|."""
    coeffs = _coeffs(seq, N)
    n = np.arange(1, N + 1, dtype=np.float64)
    phase = (alpha * n * n + beta * n) % 1.0
    return float(abs(np.sum(coeffs * np.exp(2j * np.pi * phase)))) / N
