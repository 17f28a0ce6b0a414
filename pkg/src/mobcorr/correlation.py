"""Self-correlations c_{n,N}, Cesaro means, geometric scans, Chowla sums,
cubic averages, the Cauchy-Schwarz/Parseval bound chain and windowed sums.

Every fast (FFT) path has a definitional counterpart that evaluates the sum
directly; tests compare the two.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .sieve import ArithSequence


def _next_pow2(n: int) -> int:
    return 1 << max(int(n) - 1, 0).bit_length()


def _coeffs(seq: ArithSequence | np.ndarray, upto: int) -> np.ndarray:
    """Values A(1..upto) as a float/complex vector."""
    if isinstance(seq, ArithSequence):
        if seq.n_max < upto:
            raise ValueError(f"sequence covers n <= {seq.n_max}, need n <= {upto}")
        vals = seq.values[1 : upto + 1]
    else:
        vals = np.asarray(seq)
        if len(vals) < upto:
            raise ValueError(f"sequence has {len(vals)} entries, need {upto}")
        vals = vals[:upto]
    if np.iscomplexobj(vals):
        return vals.astype(np.complex128)
    return vals.astype(np.float64)


def _source_kind(seq) -> str:
    return seq.kind if isinstance(seq, ArithSequence) else "custom"


@dataclass
class CorrelationTable:
    N: int
    coeffs: np.ndarray = field(repr=False)  # c_{n,N} for n = 0..N
    source_kind: str = "custom"
    method: str = "naive"


def naive_correlate(seq, N: int) -> CorrelationTable:
    """c_{n,N} = (1/N) sum_{m<=N} A(m) A(m+n) by direct window products, n = 0..N."""
    full = _coeffs(seq, 2 * N)
    a = full[:N]
    # windows[n] = A(1+n .. N+n); the matmul is the literal double sum
    windows = sliding_window_view(full, N)[: N + 1]
    c = windows @ a / N
    return CorrelationTable(N, c, _source_kind(seq), "naive")


def fft_correlate(seq, N: int) -> CorrelationTable:
    """Same table via zero-padded FFT cross-correlation of A(1..N) with A(1..2N)."""
    full = _coeffs(seq, 2 * N)
    a = full[:N]
    L = _next_pow2(4 * N + 1)
    if np.iscomplexobj(full):
        # conj twice keeps the definitional (conjugate-free) product
        r = np.fft.ifft(np.conj(np.fft.fft(np.conj(a), L)) * np.fft.fft(full, L))
    else:
        r = np.fft.irfft(np.conj(np.fft.rfft(a, L)) * np.fft.rfft(full, L), L)
    c = r[: N + 1] / N
    return CorrelationTable(N, c, _source_kind(seq), "fft")


@dataclass
class CesaroReport:
    N: int
    D: float
    fitted_ratios: dict[float, float]  # eps -> D * ln(N)^eps


def cesaro_abs_mean(table: CorrelationTable, eps_list=(0.5, 1.0, 2.0)) -> CesaroReport:
    """D = (1/N) sum_{n=1}^{N} |c_{n,N}|; n = 0 excluded."""
    if len(table.coeffs) != table.N + 1:
        raise ValueError("incomplete correlation table")
    D = float(np.mean(np.abs(table.coeffs[1:])))
    ratios = {float(e): D * math.log(table.N) ** e for e in eps_list}
    return CesaroReport(table.N, D, ratios)


@dataclass
class NullWitness:
    l: int
    delta: float
    m: int
    n: int
    corr_abs: float


@dataclass
class GeometricScan:
    rho: float
    m_max: int
    lengths: list[int]  # [rho^m] for m = 1..m_max
    terms: list[float]  # D([rho^m])
    partial_sums: list[float]
    null_subseq: list[NullWitness]
    insufficient: list[float]  # deltas with no witness at this range


def geometric_scan(seq, rho: float, m_max: int, delta_schedule) -> GeometricScan:
    """D along N = [rho^m] plus the first-tail/first-small-coefficient witness search.

    For each delta_l the witness is the first m whose tail sum
    sum_{m' >= m} D([rho^m']) (over the computed range) drops below delta_l,
    paired with the first n >= 1 with |c_{n,[rho^m]}| < delta_l.
    """
    if rho <= 1:
        raise ValueError("rho must be > 1")
    lengths = [int(rho**m) for m in range(1, m_max + 1)]
    n_max = seq.n_max if isinstance(seq, ArithSequence) else len(seq)
    if 2 * lengths[-1] > n_max:
        raise ValueError(f"[rho^m_max]={lengths[-1]} needs n_max >= {2 * lengths[-1]}")

    tables = [fft_correlate(seq, n) for n in lengths]
    terms = [cesaro_abs_mean(t).D for t in tables]
    partial = list(np.cumsum(terms))
    total = partial[-1]

    witnesses: list[NullWitness] = []
    insufficient: list[float] = []
    for l, delta in enumerate(delta_schedule, start=1):
        found = None
        for i in range(m_max):
            tail = total - (partial[i - 1] if i > 0 else 0.0)
            if tail < delta:
                absc = np.abs(tables[i].coeffs[1:])
                hits = np.nonzero(absc < delta)[0]
                if hits.size:
                    n = int(hits[0]) + 1
                    found = NullWitness(l, float(delta), i + 1, n, float(absc[n - 1]))
                break
        if found is None:
            insufficient.append(float(delta))
        else:
            witnesses.append(found)
    return GeometricScan(rho, m_max, lengths, terms, partial, witnesses, insufficient)


@dataclass
class ChowlaSpec:
    """Shifts a_1 < ... < a_r and exponents i_0..i_r in {1,2}, not all 2."""

    shifts: tuple[int, ...]
    exponents: tuple[int, ...]

    def __post_init__(self):
        self.shifts = tuple(int(a) for a in self.shifts)
        self.exponents = tuple(int(i) for i in self.exponents)
        if any(a <= 0 for a in self.shifts):
            raise ValueError("shifts must be positive")
        if any(b <= a for a, b in zip(self.shifts, self.shifts[1:])):
            raise ValueError("shifts must be strictly increasing")
        if len(self.exponents) != len(self.shifts) + 1:
            raise ValueError("need one exponent per factor (r + 1 of them)")
        if any(i not in (1, 2) for i in self.exponents):
            raise ValueError("exponents must be 1 or 2")
        if all(i == 2 for i in self.exponents):
            raise ValueError("exponents must not all equal 2")


def chowla_sum(spec: ChowlaSpec, seq, N: int) -> float:
    """(1/N) sum_{n<=N} prod_s A(n + a_s)^{i_s} with a_0 = 0."""
    a_r = spec.shifts[-1] if spec.shifts else 0
    full = _coeffs(seq, N + a_r)
    prod = np.ones(N, dtype=full.dtype)
    for shift, exp in zip((0,) + spec.shifts, spec.exponents):
        factor = full[shift : shift + N]
        prod = prod * (factor if exp == 1 else factor * factor)
    return float(np.mean(prod))


def cubic_average(seq, N: int) -> float:
    """(1/N^2) sum_{n,m=1}^{N} A(n)A(m)A(n+m), via one self-convolution."""
    full = _coeffs(seq, 2 * N)
    if np.iscomplexobj(full):
        raise ValueError("cubic_average takes real-valued sequences")
    a = full[:N]
    L = _next_pow2(2 * N)
    w = np.fft.irfft(np.fft.rfft(a, L) ** 2, L)
    # w[j] = sum_{n+m=j+2} A(n)A(m) for j = 0..2N-2 (positions of k = n+m)
    total = np.sum(full[1 : 2 * N] * w[: 2 * N - 1])
    return float(total) / N**2


def cubic_average_naive(seq, N: int) -> float:
    """Double-loop oracle for cubic_average; O(N^2) memory, small N only."""
    full = _coeffs(seq, 2 * N)
    if np.iscomplexobj(full):
        raise ValueError("cubic_average_naive takes real-valued sequences")
    a = full[:N]
    idx = np.add.outer(np.arange(N), np.arange(N)) + 1  # position of A(n+m)
    total = np.sum(np.outer(a, a) * full[idx])
    return float(total) / N**2


@dataclass
class BoundChainRecord:
    """Quantities of the Cauchy-Schwarz + Parseval-Bessel chain at lambda = 1, f2 = f3 = 1."""

    N: int
    L: float  # Cesaro mean of |c_{n,N}|
    sup_lower: float  # certified bracket of sup_t |(1/N) S_N(t)|
    sup_upper: float
    density: float  # (1/N) sum_{p<=2N} |A(p)|
    tight_rhs: float  # sup_upper * sqrt(density)
    rhs: float  # sqrt(2) * tight_rhs
    holds: bool


def bound_chain(seq, N: int, target_ratio: float = 1.05) -> BoundChainRecord:
    from .spectral import certify_sup_auto

    L = cesaro_abs_mean(fft_correlate(seq, N)).D
    profile = certify_sup_auto(seq, N, target_ratio=target_ratio)
    sup_lower = profile.refined_sup_lower / N
    sup_upper = profile.certified_sup_upper / N
    full = _coeffs(seq, 2 * N)
    density = float(np.sum(np.abs(full))) / N
    tight = sup_upper * math.sqrt(density)
    rhs = math.sqrt(2.0) * tight
    return BoundChainRecord(
        N, L, sup_lower, sup_upper, density, tight, rhs, L <= rhs + 1e-12
    )


def mrt_window_sum(seq, N: int, H: int) -> float:
    """(1/(H N)) sum_{h=1}^{H} |sum_{n<=N} A(n)A(n+h)|."""
    if not 10 <= H <= N:
        raise ValueError("need 10 <= H <= N")
    full = _coeffs(seq, N + H)
    a = full[:N]
    L = _next_pow2(2 * (N + H))
    if np.iscomplexobj(full):
        r = np.fft.ifft(np.conj(np.fft.fft(np.conj(a), L)) * np.fft.fft(full, L))
    else:
        r = np.fft.irfft(np.conj(np.fft.rfft(a, L)) * np.fft.rfft(full, L), L)
    return float(np.sum(np.abs(r[1 : H + 1]))) / (H * N)


def mrt_window_sum_naive(seq, N: int, H: int) -> float:
    """Direct-loop oracle for mrt_window_sum."""
    if not 10 <= H <= N:
        raise ValueError("need 10 <= H <= N")
    full = _coeffs(seq, N + H)
    a = full[:N]
    total = 0.0
    for h in range(1, H + 1):
        total += abs(np.dot(a, full[h : h + N]))
    return total / (H * N)
