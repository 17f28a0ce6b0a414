"""Experiment orchestration: sequence caching, deterministic CSV/JSON emission,
an append-only run log, and the cross-oracle verification suites."""

from __future__ import annotations

import dataclasses
import json
import os
import tempfile
import time
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .correlation import (
    cesaro_abs_mean,
    cubic_average,
    cubic_average_naive,
    fft_correlate,
    naive_correlate,
)
from .dynamics import (
    AffineSkew,
    Observable,
    TorusRotation,
    cubic_weighted_average,
    vdc_check,
)
from .gowers import gowers_norm
from .sieve import (
    ArithSequence,
    SieveConfig,
    brute_force_oracle,
    cache_checksum,
    load_cache,
    save_cache,
    sieve_kind,
)


def atomic_write_bytes(path: str, data: bytes) -> None:
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(os.path.abspath(path)) or ".")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def fmt_float(x: float) -> str:
    """17-significant-digit decimal, stable across runs."""
    return format(float(x), ".17g")


def fmt_eps(eps: float) -> str:
    return format(eps, "g")


def write_csv(path: str, header: list[str], rows: list[list]) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(
            ",".join(fmt_float(v) if isinstance(v, float) else str(v) for v in row)
        )
    atomic_write_bytes(path, ("\n".join(lines) + "\n").encode())


def write_json(path: str, obj) -> None:
    atomic_write_bytes(
        path, (json.dumps(obj, indent=2, sort_keys=True) + "\n").encode()
    )


@dataclass
class ExperimentRecord:
    command: str
    config: dict
    started: float
    finished: float
    outputs: list[str]
    version: str = __version__
    cache_checksum: int | None = None

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)


def append_runlog(out_dir: str, record: ExperimentRecord) -> None:
    os.makedirs(out_dir, exist_ok=True)
    with open(os.path.join(out_dir, "run_log.jsonl"), "a") as fh:
        fh.write(json.dumps(record.as_dict(), sort_keys=True) + "\n")


def get_sequence(
    kind: str, n_max: int, cache_dir: str | None = None, config: SieveConfig | None = None
) -> ArithSequence:
    """Load a cached sieve covering n_max, else sieve (and cache) fresh."""
    if cache_dir:
        os.makedirs(cache_dir, exist_ok=True)
        path = os.path.join(cache_dir, f"{kind}_{n_max}.cache")
        if os.path.exists(path):
            return load_cache(path)
        seq = sieve_kind(kind, n_max, config)
        save_cache(seq, path)
        return seq
    return sieve_kind(kind, n_max, config)


def track_run(command: str, config: dict, outputs: list[str], out_dir: str,
              seq: ArithSequence | None = None, started: float | None = None) -> ExperimentRecord:
    record = ExperimentRecord(
        command=command,
        config=config,
        started=started if started is not None else time.time(),
        finished=time.time(),
        outputs=outputs,
        cache_checksum=cache_checksum(seq) if seq is not None else None,
    )
    append_runlog(out_dir, record)
    return record


# ---------------------------------------------------------------------------
# Cross-oracle verification suites


@dataclass
class SuiteResult:
    name: str
    passed: bool
    max_deviation: float
    detail: str = ""


@dataclass
class VerifyReport:
    passed: bool
    suites: list[SuiteResult] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "suites": [dataclasses.asdict(s) for s in self.suites],
        }


def verify(
    scan_limit: int = 20000,
    corr_n: int = 1024,
    cubic_n: int = 256,
    gowers_n: int = 512,
    vdc_draws: int = 100,
    seed: int = 0,
    fault_injection: str | None = None,
) -> VerifyReport:
    """Run every dual-route check at a configurable budget; failures are data."""
    if scan_limit < 1 or corr_n < 4 or cubic_n < 4 or gowers_n < 4:
        raise ValueError("verification budget fields must be positive")
    rng = np.random.default_rng(seed)
    suites: list[SuiteResult] = []

    # sieve vs trial division
    n_max = max(scan_limit, 2 * corr_n, 2 * cubic_n)
    mu = sieve_kind("mobius", n_max)
    lam = sieve_kind("liouville", n_max)
    om = sieve_kind("omega", n_max)
    if fault_injection == "sieve_sign_flip":
        mu = ArithSequence("mobius", mu.n_max, mu.values.copy())
        idx = scan_limit // 2
        while mu.values[idx] == 0:
            idx += 1
        mu.values[idx] = -mu.values[idx]
    bad = 0
    for n in range(1, scan_limit + 1):
        o, m, l = brute_force_oracle(n)
        if o != om.values[n] or m != mu.values[n] or l != lam.values[n]:
            bad += 1
    suites.append(SuiteResult("sieve_vs_trial_division", bad == 0, float(bad),
                              f"scanned n <= {scan_limit}"))

    # FFT vs naive correlation
    dev = 0.0
    for seq in (mu, lam):
        dev = max(dev, float(np.max(np.abs(
            fft_correlate(seq, corr_n).coeffs - naive_correlate(seq, corr_n).coeffs))))
    for _ in range(5):
        rnd = rng.choice([-1.0, 1.0], size=2 * corr_n)
        dev = max(dev, float(np.max(np.abs(
            fft_correlate(rnd, corr_n).coeffs - naive_correlate(rnd, corr_n).coeffs))))
    suites.append(SuiteResult("fft_vs_naive_correlation", dev <= 1e-10, dev))

    # cubic convolution vs double loop, plain and weighted
    dev = 0.0
    for seq in (mu, lam):
        dev = max(dev, abs(cubic_average(seq, cubic_n) - cubic_average_naive(seq, cubic_n)))
    for _ in range(3):
        alpha = float(rng.uniform(0.1, 0.9))
        systems = (TorusRotation(alpha), TorusRotation(alpha * 0.7), AffineSkew(alpha))
        fs = (Observable.character(1), Observable.character(1), Observable.character(0, 1))
        x0s = (0.25, 0.5, (0.1, 0.2))
        fast = cubic_weighted_average(mu, fs, systems, None, cubic_n, "fft", x0s=x0s)
        slow = cubic_weighted_average(mu, fs, systems, None, cubic_n, "naive", x0s=x0s)
        dev = max(dev, abs(fast - slow))
    suites.append(SuiteResult("cubic_fast_vs_double_loop", dev <= 1e-9, dev))

    # Gowers inductive vs Fourier at k = 2
    dev = 0.0
    for _ in range(5):
        rnd = rng.choice([-1.0, 1.0], size=gowers_n)
        dev = max(dev, abs(gowers_norm(rnd, gowers_n, 2, "inductive").value
                           - gowers_norm(rnd, gowers_n, 2, "fourier").value))
    suites.append(SuiteResult("gowers_inductive_vs_fourier", dev <= 1e-8, dev))

    # van der Corput property sweep
    worst = -np.inf
    n = 257
    for _ in range(vdc_draws):
        u = rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n)
        for H in (0, 1, int(np.sqrt(n)), n - 1):
            lhs, rhs = vdc_check(u, H)
            worst = max(worst, lhs - rhs)
    suites.append(SuiteResult("vdc_inequality_sweep", worst <= 1e-12, float(worst)))

    return VerifyReport(all(s.passed for s in suites), suites)
