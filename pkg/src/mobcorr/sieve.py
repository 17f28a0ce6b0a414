"""Exact sieved values of Omega, Liouville lambda and Mobius mu on [1, n_max].

The sieve runs over fixed-size segments: for every prime p <= sqrt(n_max) it
adds the multiplicity of p to Omega and divides p out of a residual copy of
the segment; whatever residual exceeds 1 afterwards is a single large prime
factor.  All arithmetic is integer, so the output is independent of the
segmentation.

A per-integer trial-division oracle is kept deliberately separate from the
sieve so the two can be compared in tests.
"""

from __future__ import annotations

import math
import os
import struct
import tempfile
import zlib
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    CacheChecksumError,
    CacheFormatError,
    CacheTruncatedError,
    CacheVersionError,
    CapacityError,
)

KINDS = ("mobius", "liouville", "omega", "custom")

_CACHE_MAGIC = b"MBLB"
_CACHE_VERSION = 1
_KIND_CODES = {"mobius": 0, "liouville": 1, "omega": 2}
_CODE_KINDS = {v: k for k, v in _KIND_CODES.items()}

# Rough per-integer working-set estimate: two persistent int8/bool arrays plus
# one int64 segment copy amortised over the budget check.
_BYTES_PER_ENTRY = 12


@dataclass
class SieveConfig:
    n_max: int = 0
    segment_size: int = 1 << 20
    cache_path: str | None = None
    memory_budget_bytes: int = 4 << 30
    omega_one_is_one: bool = False


@dataclass
class ArithSequence:
    """Dense integer-indexed sequence; ``values[n]`` is defined for 1 <= n <= n_max.

    ``values`` has length ``n_max + 1`` with index 0 unused (kept zero).
    Sieved kinds store int8; ``custom`` may hold float or complex entries.
    """

    kind: str
    n_max: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown sequence kind {self.kind!r}")
        if self.n_max < 1:
            raise ValueError("n_max must be >= 1")
        if len(self.values) != self.n_max + 1:
            raise ValueError("values must have length n_max + 1")

    def __getitem__(self, n: int):
        return self.values[n]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ArithSequence)
            and self.kind == other.kind
            and self.n_max == other.n_max
            and np.array_equal(self.values, other.values)
        )


def primes_up_to(n: int) -> np.ndarray:
    """All primes <= n, via a plain Eratosthenes sieve."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.nonzero(flags)[0].astype(np.int64)


def _check_budget(n_max: int, config: SieveConfig) -> None:
    need = (n_max + 1) * _BYTES_PER_ENTRY
    if need > config.memory_budget_bytes:
        raise CapacityError(
            f"sieving to n_max={n_max} needs ~{need} bytes, "
            f"budget is {config.memory_budget_bytes}"
        )


def _sieve_core(n_max: int, config: SieveConfig) -> tuple[np.ndarray, np.ndarray]:
    """Return (omega, squarefree) arrays of length n_max + 1."""
    _check_budget(n_max, config)
    omega = np.zeros(n_max + 1, dtype=np.int8)
    squarefree = np.ones(n_max + 1, dtype=bool)
    squarefree[0] = False

    primes = primes_up_to(math.isqrt(n_max))
    seg = max(int(config.segment_size), 1)
    for lo in range(1, n_max + 1, seg):
        hi = min(lo + seg - 1, n_max)
        rem = np.arange(lo, hi + 1, dtype=np.int64)
        om = np.zeros(hi - lo + 1, dtype=np.int64)
        for p in primes:
            p = int(p)
            if p * p > hi:
                break
            q = p
            while q <= hi:
                start = ((lo + q - 1) // q) * q
                if start > hi:
                    break
                sl = slice(start - lo, hi - lo + 1, q)
                om[sl] += 1
                rem[sl] //= p
                if q > hi // p:
                    break
                q *= p
            q2 = p * p
            start = ((lo + q2 - 1) // q2) * q2
            if start <= hi:
                squarefree[start : hi + 1 : q2] = False
        om[rem > 1] += 1
        omega[lo : hi + 1] = om.astype(np.int8)

    omega[0] = 0
    if config.omega_one_is_one:
        omega[1] = 1
    return omega, squarefree


def sieve_omega(n_max: int, config: SieveConfig | None = None) -> ArithSequence:
    """Omega(n) = number of prime factors counted with multiplicity; Omega(1) = 0."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    config = config or SieveConfig()
    omega, _ = _sieve_core(n_max, config)
    return ArithSequence("omega", n_max, omega)


def sieve_liouville(n_max: int, config: SieveConfig | None = None) -> ArithSequence:
    """lambda(n) = (-1)^Omega(n); lambda(1) = +1 under the default convention."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    config = config or SieveConfig()
    omega, _ = _sieve_core(n_max, config)
    lam = np.where(omega & 1, -1, 1).astype(np.int8)
    lam[0] = 0
    return ArithSequence("liouville", n_max, lam)


def sieve_mobius(n_max: int, config: SieveConfig | None = None) -> ArithSequence:
    """mu(1) = 1; mu(n) = 0 on non-squarefree n; mu(n) = lambda(n) otherwise."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    config = config or SieveConfig()
    omega, squarefree = _sieve_core(n_max, config)
    lam = np.where(omega & 1, -1, 1).astype(np.int8)
    mu = np.where(squarefree, lam, 0).astype(np.int8)
    mu[0] = 0
    mu[1] = 1  # fixed by definition regardless of the Omega(1) convention
    return ArithSequence("mobius", n_max, mu)


def sieve_kind(kind: str, n_max: int, config: SieveConfig | None = None) -> ArithSequence:
    if kind == "mobius":
        return sieve_mobius(n_max, config)
    if kind == "liouville":
        return sieve_liouville(n_max, config)
    if kind == "omega":
        return sieve_omega(n_max, config)
    raise ValueError(f"cannot sieve kind {kind!r}")


def brute_force_oracle(n: int, omega_one_is_one: bool = False) -> tuple[int, int, int]:
    """Trial-division (omega, mu, lambda) for a single integer, independent of the sieve."""
    if not 1 <= n <= 10**7:
        raise ValueError("oracle range is 1 <= n <= 10^7")
    m = n
    omega = 0
    squarefree = True
    d = 2
    while d * d <= m:
        if m % d == 0:
            mult = 0
            while m % d == 0:
                m //= d
                mult += 1
            omega += mult
            if mult > 1:
                squarefree = False
        d += 1 if d == 2 else 2
    if m > 1:
        omega += 1
    if n == 1 and omega_one_is_one:
        omega = 1
    lam = -1 if omega % 2 else 1
    if n == 1:
        mu = 1
    elif squarefree:
        mu = lam
    else:
        mu = 0
    return omega, mu, lam


def mertens(seq: ArithSequence, n: int) -> int:
    """Partial sum of mu up to n."""
    if seq.kind != "mobius":
        raise ValueError("mertens needs a mobius sequence")
    if n > seq.n_max:
        raise ValueError(f"n={n} exceeds n_max={seq.n_max}")
    return int(np.sum(seq.values[1 : n + 1], dtype=np.int64))


def dirichlet_partial(seq: ArithSequence, s: float, n: int) -> float:
    """Partial Dirichlet sum sum_{k<=n} seq[k] / k^s for real s > 1."""
    if s <= 1:
        raise ValueError("dirichlet_partial needs s > 1")
    if n > seq.n_max:
        raise ValueError(f"n={n} exceeds n_max={seq.n_max}")
    k = np.arange(1, n + 1, dtype=np.float64)
    return float(np.sum(seq.values[1 : n + 1] / k**s))


def squarefree_density(seq: ArithSequence, n: int) -> float:
    """Fraction of 1 <= k <= n with mu(k) != 0."""
    if seq.kind != "mobius":
        raise ValueError("squarefree_density needs a mobius sequence")
    if n > seq.n_max:
        raise ValueError(f"n={n} exceeds n_max={seq.n_max}")
    return float(np.count_nonzero(seq.values[1 : n + 1])) / n


def cache_checksum(seq: ArithSequence) -> int:
    """CRC-32 of the raw value block as stored in the cache format."""
    return zlib.crc32(seq.values[1:].astype(np.int8).tobytes())


def save_cache(seq: ArithSequence, path: str) -> None:
    """Write the binary cache: magic, version u16, kind u8, n_max u64 LE, int8 values, CRC-32."""
    if seq.kind not in _KIND_CODES:
        raise ValueError(f"kind {seq.kind!r} is not cacheable")
    body = seq.values[1:].astype(np.int8).tobytes()
    header = _CACHE_MAGIC + struct.pack(
        "<HBQ", _CACHE_VERSION, _KIND_CODES[seq.kind], seq.n_max
    )
    crc = struct.pack("<I", zlib.crc32(body))
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(os.path.abspath(path)) or ".")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(header)
            fh.write(body)
            fh.write(crc)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_cache(path: str) -> ArithSequence:
    with open(path, "rb") as fh:
        data = fh.read()
    if len(data) < 15:
        raise CacheTruncatedError(f"{path}: file shorter than header")
    if data[:4] != _CACHE_MAGIC:
        raise CacheFormatError(f"{path}: bad magic bytes {data[:4]!r}")
    version, kind_code, n_max = struct.unpack("<HBQ", data[4:15])
    if version != _CACHE_VERSION:
        raise CacheVersionError(f"{path}: version {version}, expected {_CACHE_VERSION}")
    if kind_code not in _CODE_KINDS:
        raise CacheFormatError(f"{path}: unknown kind code {kind_code}")
    expected = 15 + n_max + 4
    if len(data) < expected:
        raise CacheTruncatedError(f"{path}: {len(data)} bytes, expected {expected}")
    body = data[15 : 15 + n_max]
    (crc,) = struct.unpack("<I", data[15 + n_max : 15 + n_max + 4])
    if zlib.crc32(body) != crc:
        raise CacheChecksumError(f"{path}: CRC mismatch")
    values = np.zeros(n_max + 1, dtype=np.int8)
    values[1:] = np.frombuffer(body, dtype=np.int8)
    return ArithSequence(_CODE_KINDS[kind_code], int(n_max), values)
