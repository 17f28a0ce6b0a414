"""Command-line front end.

Every command writes machine-readable CSV/JSON artifacts and appends one
JSON-lines record to ``run_log.jsonl`` in the output directory.  Outputs are
deterministic for a fixed config, cache and ``--seed``.

Exit codes: 0 success, 2 config error, 3 capacity error, 4 verification
failure.
"""

from __future__ import annotations

import argparse
import math
import sys
import time

import numpy as np

from . import __version__
from .correlation import (
    ChowlaSpec,
    cesaro_abs_mean,
    chowla_sum,
    cubic_average,
    fft_correlate,
    geometric_scan,
    naive_correlate,
)
from .dynamics import (
    Observable,
    TorusRotation,
    cubic_weighted_average,
    kbsz_quantity,
    vdc_check,
)
from .errors import CapacityError, ConfigError, MobcorrError
from .gowers import gowers_norm
from .runner import (
    fmt_eps,
    get_sequence,
    save_cache,
    track_run,
    verify,
    write_csv,
    write_json,
)
from .sieve import SieveConfig
from .spectral import decay_scan, quad_phase_sum


def _parse_grid(text: str) -> list[int]:
    try:
        return [int(float(tok)) for tok in text.split(",") if tok]
    except ValueError as exc:
        raise ConfigError(f"bad numeric list {text!r}") from exc


def _parse_floats(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok]
    except ValueError as exc:
        raise ConfigError(f"bad float list {text!r}") from exc


def _out_path(args, name: str) -> str:
    import os

    os.makedirs(args.out_dir, exist_ok=True)
    return name if name.startswith("/") else f"{args.out_dir}/{name}"


def _sieve_config(args) -> SieveConfig:
    return SieveConfig(memory_budget_bytes=args.memory_budget)


def _sequence(args, kind: str, n_max: int):
    return get_sequence(kind, n_max, args.cache_dir, _sieve_config(args))


def cmd_sieve(args) -> list[str]:
    seq = get_sequence(args.kind, args.nmax, None, _sieve_config(args))
    out = _out_path(args, args.out)
    save_cache(seq, out)
    return [out]


def cmd_corr(args) -> list[str]:
    seq = _sequence(args, args.kind, 2 * args.N)
    table = (naive_correlate if args.method == "naive" else fft_correlate)(seq, args.N)
    out = _out_path(args, args.out)
    write_csv(out, ["n", "c"], [[n, float(c)] for n, c in enumerate(table.coeffs)])
    return [out]


def cmd_cesaro(args) -> list[str]:
    grid = _parse_grid(args.ngrid)
    eps = _parse_floats(args.eps)
    seq = _sequence(args, args.kind, 2 * max(grid))
    rows = []
    for N in grid:
        rep = cesaro_abs_mean(fft_correlate(seq, N), eps)
        rows.append([N, rep.D] + [rep.fitted_ratios[e] for e in eps])
    out = _out_path(args, args.out)
    write_csv(out, ["N", "D"] + [f"ratio_eps_{fmt_eps(e)}" for e in eps], rows)
    return [out]


def cmd_geom(args) -> list[str]:
    deltas = _parse_floats(args.deltas)
    seq = _sequence(args, args.kind, 2 * int(args.rho**args.mmax))
    scan = geometric_scan(seq, args.rho, args.mmax, deltas)
    out = _out_path(args, args.out)
    rows = [
        [m + 1, scan.lengths[m], scan.terms[m], scan.partial_sums[m]]
        for m in range(args.mmax)
    ]
    write_csv(out, ["m", "rhopow", "D", "partial_sum"], rows)
    outputs = [out]
    if args.witness_out:
        wout = _out_path(args, args.witness_out)
        write_json(
            wout,
            {
                "rho": scan.rho,
                "witnesses": [
                    {"l": w.l, "delta": w.delta, "m": w.m, "n": w.n, "corr_abs": w.corr_abs}
                    for w in scan.null_subseq
                ],
                "insufficient_range": scan.insufficient,
            },
        )
        outputs.append(wout)
    return outputs


def cmd_chowla(args) -> list[str]:
    shifts = tuple(_parse_grid(args.shifts)) if args.shifts else ()
    spec = ChowlaSpec(shifts, tuple(_parse_grid(args.exponents)))
    n_max = args.N + (shifts[-1] if shifts else 0)
    seq = _sequence(args, args.kind, n_max)
    value = chowla_sum(spec, seq, args.N)
    out = _out_path(args, args.out)
    write_json(out, {"N": args.N, "shifts": list(shifts),
                     "exponents": list(spec.exponents), "value": value})
    return [out]


def cmd_cubic(args) -> list[str]:
    seq = _sequence(args, args.kind, 2 * args.N)
    value = cubic_average(seq, args.N)
    out = _out_path(args, args.out)
    write_json(out, {"N": args.N, "kind": args.kind, "value": value})
    return [out]


def cmd_expsum(args) -> list[str]:
    grid = _parse_grid(args.ngrid)
    eps = _parse_floats(args.eps)
    seq = _sequence(args, args.kind, max(grid))
    rows = decay_scan(seq, grid, eps, target_ratio=args.target_ratio)
    out = _out_path(args, args.out)
    write_csv(
        out,
        ["N", "sup_lower", "sup_upper", "sup_norm"]
        + [f"ratio_eps_{fmt_eps(e)}" for e in eps],
        [[r.N, r.sup_lower, r.sup_upper, r.sup_norm] + [r.ratios[e] for e in eps]
         for r in rows],
    )
    return [out]


def cmd_quadphase(args) -> list[str]:
    seq = _sequence(args, args.kind, args.N)
    value = quad_phase_sum(seq, args.N, args.alpha, args.beta)
    out = _out_path(args, args.out)
    write_json(out, {"N": args.N, "alpha": args.alpha, "beta": args.beta, "value": value})
    return [out]


def cmd_gowers(args) -> list[str]:
    seq = _sequence(args, args.kind, args.N)
    res = gowers_norm(seq, args.N, args.k, args.method)
    out = _out_path(args, args.out)
    write_json(out, {"N": res.N, "k": res.k, "method": res.method, "value": res.value})
    return [out]


def cmd_dynamics(args) -> list[str]:
    if args.action != "cubic":
        raise ConfigError(f"unknown dynamics action {args.action!r}")
    chars = _parse_grid(args.chars)
    if len(chars) != 3:
        raise ConfigError("--chars needs exactly three character indices")
    seq = _sequence(args, args.weights, 2 * args.N)
    systems = tuple(TorusRotation(args.alpha) for _ in range(3))
    fs = tuple(Observable.character(k) for k in chars)
    value = cubic_weighted_average(seq, fs, systems, args.x0, args.N)
    out = _out_path(args, args.out)
    write_csv(out, ["N", "re", "im", "abs"],
              [[args.N, value.real, value.imag, abs(value)]])
    return [out]


def cmd_kbsz(args) -> list[str]:
    system = TorusRotation(args.alpha)
    f = Observable.character(args.char)
    report = kbsz_quantity(f, system, args.x0, args.epsilon, args.N,
                           prime_cap=args.prime_cap)
    out = _out_path(args, args.out)
    write_json(
        out,
        {
            "epsilon": report.epsilon,
            "pairs": [
                {"p": r.p, "q": r.q, "sup_lower": r.sup_lower, "sup_upper": r.sup_upper}
                for r in report.pairs
            ],
            "max_sup": report.max_sup,
            "bound": report.bound,
            "hypothesis_met": report.hypothesis_met,
        },
    )
    return [out]


def cmd_vdc(args) -> list[str]:
    rng = np.random.default_rng(args.seed)
    u = rng.uniform(-1, 1, args.N) + 1j * rng.uniform(-1, 1, args.N)
    lhs, rhs = vdc_check(u, args.H)
    out = _out_path(args, args.out)
    write_json(out, {"N": args.N, "H": args.H, "seed": args.seed,
                     "lhs": lhs, "rhs": rhs, "holds": lhs <= rhs + 1e-12})
    return [out]


def cmd_verify(args) -> list[str]:
    report = verify(seed=args.seed, fault_injection=args.fault_injection)
    out = _out_path(args, args.out)
    write_json(out, report.as_dict())
    if not report.passed:
        raise _VerificationFailed(out)
    return [out]


class _VerificationFailed(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mobcorr", description=__doc__)
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--threads", type=int, default=1, help="worker threads (advisory)")
    p.add_argument("--cache-dir", default=None, help="directory for sieve caches")
    p.add_argument("--out-dir", default=".", help="directory for output artifacts")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized inputs")
    p.add_argument("--memory-budget", type=int, default=4 << 30,
                   help="sieve memory budget in bytes")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        sp = sub.add_parser(name, **kw)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("sieve", cmd_sieve, help="sieve a sequence and write its binary cache")
    sp.add_argument("--kind", required=True, choices=["mobius", "liouville", "omega"])
    sp.add_argument("--nmax", type=lambda s: int(float(s)), required=True)
    sp.add_argument("--out", required=True)

    sp = add("corr", cmd_corr, help="self-correlation table c_{n,N}")
    sp.add_argument("--kind", required=True, choices=["mobius", "liouville"])
    sp.add_argument("--N", type=lambda s: int(float(s)), required=True)
    sp.add_argument("--method", default="fft", choices=["fft", "naive"])
    sp.add_argument("--out", default="corr.csv")

    sp = add("cesaro", cmd_cesaro, help="Cesaro means D(N) over an N grid")
    sp.add_argument("--kind", required=True, choices=["mobius", "liouville"])
    sp.add_argument("--ngrid", required=True)
    sp.add_argument("--eps", default="0.5,1,2")
    sp.add_argument("--out", default="cesaro.csv")

    sp = add("geom", cmd_geom, help="geometric scan of D([rho^m]) with null witnesses")
    sp.add_argument("--kind", required=True, choices=["mobius", "liouville"])
    sp.add_argument("--rho", type=float, default=2.0)
    sp.add_argument("--mmax", type=int, required=True)
    sp.add_argument("--deltas", default="0.5,0.25,0.125")
    sp.add_argument("--out", default="geom.csv")
    sp.add_argument("--witness-out", default="geom_witnesses.json")

    sp = add("chowla", cmd_chowla, help="multiple self-correlation sum")
    sp.add_argument("--kind", required=True, choices=["mobius", "liouville"])
    sp.add_argument("--N", type=lambda s: int(float(s)), required=True)
    sp.add_argument("--shifts", default="")
    sp.add_argument("--exponents", default="1")
    sp.add_argument("--out", default="chowla.json")

    sp = add("cubic", cmd_cubic, help="cubic average of the pure weight")
    sp.add_argument("--kind", required=True, choices=["mobius", "liouville"])
    sp.add_argument("--N", type=lambda s: int(float(s)), required=True)
    sp.add_argument("--out", default="cubic.json")

    sp = add("expsum", cmd_expsum, help="certified sup of S_N(t) over an N grid")
    sp.add_argument("--kind", required=True, choices=["mobius", "liouville"])
    sp.add_argument("--ngrid", required=True)
    sp.add_argument("--eps", default="0.5,1,2")
    sp.add_argument("--target-ratio", type=float, default=1.05)
    sp.add_argument("--out", default="expsum.csv")

    sp = add("quadphase", cmd_quadphase, help="quadratic-phase weighted sum")
    sp.add_argument("--kind", required=True, choices=["mobius", "liouville"])
    sp.add_argument("--N", type=lambda s: int(float(s)), required=True)
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--beta", type=float, default=0.0)
    sp.add_argument("--out", default="quadphase.json")

    sp = add("gowers", cmd_gowers, help="finite Gowers norm on Z/N")
    sp.add_argument("--kind", required=True, choices=["mobius", "liouville"])
    sp.add_argument("--N", type=lambda s: int(float(s)), required=True)
    sp.add_argument("--k", type=int, default=2, choices=[1, 2, 3])
    sp.add_argument("--method", default="inductive", choices=["inductive", "fourier"])
    sp.add_argument("--out", default="gowers.json")

    sp = add("dynamics", cmd_dynamics, help="weighted ergodic averages on torus systems")
    sp.add_argument("action", choices=["cubic"])
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--weights", required=True, choices=["mobius", "liouville"])
    sp.add_argument("--N", type=lambda s: int(float(s)), required=True)
    sp.add_argument("--chars", default="1,1,1")
    sp.add_argument("--x0", type=float, default=0.0)
    sp.add_argument("--out", default="dynamics_cubic.csv")

    sp = add("kbsz", cmd_kbsz, help="prime-pair criterion quantity")
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--char", type=int, default=1)
    sp.add_argument("--epsilon", type=float, required=True)
    sp.add_argument("--N", type=lambda s: int(float(s)), required=True)
    sp.add_argument("--x0", type=float, default=0.0)
    sp.add_argument("--prime-cap", type=int, default=200)
    sp.add_argument("--out", default="kbsz.json")

    sp = add("vdc", cmd_vdc, help="van der Corput inequality on a seeded random input")
    sp.add_argument("--N", type=lambda s: int(float(s)), default=512)
    sp.add_argument("--H", type=int, default=8)
    sp.add_argument("--out", default="vdc.json")

    sp = add("verify", cmd_verify, help="run the cross-oracle verification suites")
    sp.add_argument("--fault-injection", default=None,
                    choices=[None, "sieve_sign_flip"])
    sp.add_argument("--out", default="verify.json")

    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    started = time.time()
    try:
        outputs = args.fn(args)
    except _VerificationFailed as exc:
        print(f"verification failed, report at {exc.args[0]}", file=sys.stderr)
        return 4
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return 3
    except (ConfigError, ValueError, MobcorrError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    config = {k: v for k, v in vars(args).items() if k != "fn"}
    track_run(args.command, config, outputs, args.out_dir, started=started)
    for out in outputs:
        print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
