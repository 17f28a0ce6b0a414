"""Torus systems (rotation, affine skew) and weighted ergodic quantities:
Birkhoff averages, the order-2 cubic weighted average, Wiener-Wintner sups,
the prime-pair criterion quantity and the van der Corput inequality.

Orbits are evaluated by closed form, never by iterating the one-step map, so
there is no accumulated rounding at large n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .correlation import _coeffs, _next_pow2
from .errors import CapacityError
from .sieve import primes_up_to
from .spectral import certify_sup_auto


@dataclass(frozen=True)
class TorusRotation:
    """x -> x + alpha mod 1 on the circle."""

    alpha: float
    dimension: int = 1

    def orbit(self, x0, ns: np.ndarray) -> np.ndarray:
        x0 = float(np.atleast_1d(x0)[0])
        return ((x0 + ns.astype(np.float64) * self.alpha) % 1.0)[:, None]


@dataclass(frozen=True)
class AffineSkew:
    """(x, y) -> (x + alpha, y + 2x + alpha) mod 1; orbits carry quadratic phases.

    The n-th iterate is (x0 + n*alpha, y0 + 2n*x0 + n^2*alpha).  The quadratic
    term overflows float64 mantissa headroom long before n = 10^4, so the
    reduction mod 1 is done in exact integer arithmetic on the dyadic
    representations of alpha and the start point.
    """

    alpha: float
    dimension: int = 2

    def orbit(self, x0, ns: np.ndarray) -> np.ndarray:
        x0f, y0f = (float(v) for v in x0)
        fa, fx, fy = Fraction(self.alpha), Fraction(x0f), Fraction(y0f)
        scale = max(fa.denominator, fx.denominator, fy.denominator)
        a = fa.numerator * (scale // fa.denominator)
        x_int = fx.numerator * (scale // fx.denominator)
        y_int = fy.numerator * (scale // fy.denominator)
        xs = np.empty(len(ns))
        ys = np.empty(len(ns))
        for i, n in enumerate(int(v) for v in ns):
            xs[i] = ((x_int + n * a) % scale) / scale
            ys[i] = ((y_int + 2 * n * x_int + n * n * a) % scale) / scale
        return np.stack([xs, ys], axis=1)


def orbit_value(system, x0, n: int):
    """n-th iterate of the start point, closed form."""
    if n < 0:
        raise ValueError("n must be >= 0")
    pt = system.orbit(x0, np.array([n], dtype=np.int64))[0]
    return float(pt[0]) if system.dimension == 1 else tuple(float(v) for v in pt)


@dataclass(frozen=True)
class Observable:
    """Finite linear combination of torus characters e^{2 pi i <k, x>}."""

    terms: tuple[tuple[complex, tuple[int, ...]], ...]

    @classmethod
    def character(cls, *k: int) -> "Observable":
        return cls(((1.0 + 0.0j, tuple(int(v) for v in k)),))

    @classmethod
    def one(cls, dimension: int = 1) -> "Observable":
        return cls.character(*([0] * dimension))

    def sup_bound(self) -> float:
        return float(sum(abs(c) for c, _ in self.terms))

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        out = np.zeros(len(points), dtype=np.complex128)
        for coeff, k in self.terms:
            out += coeff * np.exp(2j * np.pi * (points @ np.asarray(k, dtype=np.float64)))
        return out


def _orbit_values(f: Observable, system, x0, ns: np.ndarray) -> np.ndarray:
    return f.evaluate(system.orbit(x0, np.asarray(ns, dtype=np.int64)))


def weighted_birkhoff(seq, f: Observable, system, x0, N: int) -> complex:
    """(1/N) sum_{n<=N} A(n) f(T^n x0)."""
    a = _coeffs(seq, N)
    ns = np.arange(1, N + 1)
    return complex(np.mean(a * _orbit_values(f, system, x0, ns)))


def cubic_weighted_average(
    seq, fs, systems, x0, N: int, method: str = "fft", x0s=None
) -> complex:
    """(1/N^2) sum_{n,m<=N} A(n)A(m)A(n+m) f1(T1^n x) f2(T2^m x) f3(T3^{n+m} x).

    ``x0`` is the start point shared by the three systems; pass ``x0s`` (a
    3-tuple of points) instead when the systems have different dimensions.
    The fast path groups k = n + m and convolves the two weighted orbit
    sequences; the naive path is the literal double sum.
    """
    f1, f2, f3 = fs
    t1, t2, t3 = systems
    x1, x2, x3 = x0s if x0s is not None else (x0, x0, x0)
    full = _coeffs(seq, 2 * N)
    ns = np.arange(1, N + 1)
    b1 = full[:N] * _orbit_values(f1, t1, x1, ns)
    b2 = full[:N] * _orbit_values(f2, t2, x2, ns)
    ks = np.arange(2, 2 * N + 1)
    b3 = full[1 : 2 * N] * _orbit_values(f3, t3, x3, ks)
    if method == "fft":
        L = _next_pow2(2 * N)
        w = np.fft.ifft(np.fft.fft(b1, L) * np.fft.fft(b2, L))
        total = np.sum(b3 * w[: 2 * N - 1])
    elif method == "naive":
        idx = np.add.outer(np.arange(N), np.arange(N))  # position of k=n+m in b3
        total = np.sum(np.outer(b1, b2) * b3[idx])
    else:
        raise ValueError(f"unknown method {method!r}")
    return complex(total) / N**2


def ww_sup(seq, f: Observable, system, x0, N: int, target_ratio: float = 1.05):
    """Certified bracket of sup_t |(1/N) sum A(n) f(T^n x0) e^{2 pi i n t}|."""
    a = _coeffs(seq, N)
    ns = np.arange(1, N + 1)
    b = a * _orbit_values(f, system, x0, ns)
    profile = certify_sup_auto(b, N, target_ratio=target_ratio)
    return profile.refined_sup_lower / N, profile.certified_sup_upper / N


@dataclass
class PrimePairResult:
    p: int
    q: int
    sup_lower: float
    sup_upper: float


@dataclass
class KbszReport:
    epsilon: float
    prime_bound: float  # exp(1/epsilon)
    pairs: list[PrimePairResult] = field(default_factory=list)
    max_sup: float | None = None
    bound: float = 0.0  # 2 sqrt(eps log 1/eps)
    hypothesis_met: bool | None = None


def kbsz_quantity(
    f: Observable,
    system,
    x0,
    epsilon: float,
    N: int,
    prime_cap: int = 200,
    target_ratio: float = 1.05,
) -> KbszReport:
    """Prime-pair sups sup_t |(1/N) sum_n f(T^{pn}x) f(T^{qn}x) e^{2 pi i n (p-q) t}|.

    The product f(T^{pn}x) f(T^{qn}x) is symmetric in (p, q) and the sup over t
    is invariant under t -> -t, so unordered pairs p < q suffice.  The phase
    substitution t' = (p-q) t leaves the sup unchanged (full period covered),
    so each pair reduces to a certified sup over the plain sequence c_n.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be > 0")
    if f.sup_bound() > 1.0 + 1e-12:
        raise ValueError("observable must satisfy ||f||_inf <= 1")
    bound = 2.0 * math.sqrt(epsilon * math.log(1.0 / epsilon)) if epsilon < 1 else 0.0
    limit = math.exp(1.0 / epsilon)
    report = KbszReport(epsilon, limit, bound=bound)
    if limit < 3:
        return report
    primes = [int(p) for p in primes_up_to(int(limit))]
    if len(primes) > prime_cap:
        raise CapacityError(
            f"exp(1/epsilon) ~ {limit:.1f} admits {len(primes)} primes, cap is {prime_cap}"
        )
    ns = np.arange(1, N + 1)
    for i, p in enumerate(primes):
        for q in primes[i + 1 :]:
            c = _orbit_values(f, system, x0, p * ns) * _orbit_values(f, system, x0, q * ns)
            profile = certify_sup_auto(c, N, target_ratio=target_ratio)
            report.pairs.append(
                PrimePairResult(
                    p, q, profile.refined_sup_lower / N, profile.certified_sup_upper / N
                )
            )
    if report.pairs:
        report.max_sup = max(r.sup_upper for r in report.pairs)
        report.hypothesis_met = report.max_sup < epsilon
    return report


def vdc_check(u, H: int) -> tuple[float, float]:
    """Both sides of van der Corput's inequality for u_0..u_{N-1}; lhs <= rhs always."""
    u = np.asarray(u, dtype=np.complex128)
    N = len(u)
    if not 0 <= H <= N - 1:
        raise ValueError("need 0 <= H <= N-1")
    lhs = abs(np.mean(u)) ** 2
    rhs = (N + H) / (N**2 * (H + 1)) * float(np.sum(np.abs(u) ** 2))
    shift_part = 0.0
    for h in range(1, H + 1):
        corr = np.sum(u[h:] * np.conj(u[: N - h]))
        shift_part += (H + 1 - h) * corr.real
    rhs += 2.0 * (N + H) / (N**2 * (H + 1) ** 2) * shift_part
    return float(lhs), float(rhs)
