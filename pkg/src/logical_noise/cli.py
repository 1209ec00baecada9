"""Command-line front end: channel computation, rate sweeps, thresholds,
the large-chain grid, and the self-validation suite."""
from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import replace
from pathlib import Path

from . import __version__
from .channels import (
    NoiseKind,
    dump_channel_csv,
    effective_channel_1q,
    effective_channel_2q,
    sweep_channel_csv,
)
from .codes import CODE_NAMES, CodeParseError, CodeValidationError, get_code, parse_code_file
from .decoder import Strategy, build_table, dump_table_csv
from .repeater import (
    Encoding,
    RepeaterParams,
    Scheme,
    catalog_encoding,
    large_chain_grid,
    secret_key_rate,
    threshold_mu,
)

RATES_COLUMNS = [
    "L_km", "L0_km", "p_link", "tau_s", "alpha", "mu_eff", "mu0_eff",
    "wait_steps", "dephasing_factor", "e_z", "e_x", "skf", "raw_hz",
    "skr_hz", "mc_stderr",
]


def _fmt(x) -> str:
    if x is None:
        return ""
    return format(x, ".12g")


def _open_out(path: str | None):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", newline=""), True


def _resolve_encoding(name: str) -> Encoding | None:
    if name == "none":
        return None
    if name in CODE_NAMES:
        return catalog_encoding(name)
    text = Path(name).read_text(encoding="utf-8")
    return Encoding.for_code(parse_code_file(text, name=Path(name).stem))


def _parse_lengths(spec: str) -> list[float]:
    """Either comma-separated values or an inclusive start:stop:step range."""
    if ":" in spec:
        parts = spec.split(":")
        if len(parts) != 3:
            raise ValueError("length range must be start:stop:step")
        start, stop, step = (float(v) for v in parts)
        if step <= 0 or stop < start:
            raise ValueError("length range must be increasing with positive step")
        out = []
        v = start
        while v <= stop + 1e-9:
            out.append(round(v, 9))
            v += step
        return out
    return [float(v) for v in spec.split(",") if v]


def _parse_sweep(spec: str) -> list[float]:
    parts = spec.split(":")
    if len(parts) != 3:
        raise ValueError("sweep must be start:stop:count")
    start, stop = float(parts[0]), float(parts[1])
    count = int(parts[2])
    if count < 2 or stop <= start:
        raise ValueError("sweep needs count >= 2 and stop > start")
    step = (stop - start) / (count - 1)
    return [start + i * step for i in range(count)]


def cmd_channel(args) -> int:
    code = get_code(args.code) if args.code in CODE_NAMES else _parse_code_arg(args.code)
    strategy = Strategy.from_name(args.strategy)
    kind = NoiseKind.from_name(args.noise)
    table = build_table(code, strategy)
    if args.dump_table:
        with open(args.dump_table, "w", newline="") as fh:
            dump_table_csv(table, fh)
    if kind is NoiseKind.DEPOLARIZING_2Q:
        channel = effective_channel_2q(code, table)
        items = [(a + b, poly) for (a, b), poly in channel.lambdas.items()]
    else:
        channel = effective_channel_1q(code, table, kind)
        items = list(channel.as_dict().items())
    out, close = _open_out(args.out)
    try:
        if args.sweep:
            sweep_channel_csv(channel, out, _parse_sweep(args.sweep))
        elif args.out is not None:
            dump_channel_csv(channel, out, eval_p=args.eval_p)
        if out is sys.stdout or args.out is None:
            print(f"# code={code.name} noise={kind.value} strategy={strategy.value}")
            for name, poly in items:
                line = f"lambda_{name} = {poly!r}"
                if args.eval_p is not None:
                    line += f"   [at p={args.eval_p:g}: {poly(args.eval_p):.12g}]"
                print(line)
    finally:
        if close:
            out.close()
    return 0


def _parse_code_arg(spec: str):
    path = Path(spec)
    if not path.exists():
        raise KeyError(f"unknown code {spec!r} and no such file")
    return parse_code_file(path.read_text(encoding="utf-8"), name=path.stem)


def cmd_rates(args) -> int:
    encoding = _resolve_encoding(args.encode)
    scheme = Scheme.from_name(args.scheme)
    lengths = _parse_lengths(args.length)
    base = RepeaterParams(
        n_segments=args.segments,
        length_km=lengths[0],
        p0=args.p0,
        t_c=args.tc,
        mu=args.mu,
        mu0=args.mu0,
        tau_clock=args.clock,
        cutoff=args.cutoff,
        encoding=encoding,
        scheme=scheme,
        mc_samples=args.samples,
        mc_seed=args.seed,
    )
    out, close = _open_out(args.out)
    try:
        writer = csv.writer(out)
        writer.writerow(RATES_COLUMNS)
        for length in lengths:
            params = replace(base, length_km=length)
            r = secret_key_rate(params)
            writer.writerow([
                _fmt(length), _fmt(params.l0_km), _fmt(r.p_link),
                _fmt(r.tau_seconds), _fmt(r.alpha), _fmt(r.mu_eff),
                _fmt(r.mu0_eff), _fmt(r.avg_wait_steps),
                _fmt(r.dephasing_factor), _fmt(r.e_z_bar), _fmt(r.e_x_bar),
                _fmt(r.skf), _fmt(r.raw_rate_hz), _fmt(r.skr_hz),
                _fmt(r.mc_standard_error),
            ])
    finally:
        if close:
            out.close()
    return 0


def cmd_threshold(args) -> int:
    encoding = _resolve_encoding(args.encode)
    mu = threshold_mu(args.segments, encoding)
    print(f"{mu:.4f}")
    return 0


def cmd_table1(args) -> int:
    cells = large_chain_grid(args.length)
    out, close = _open_out(args.out)
    try:
        writer = csv.writer(out)
        writer.writerow(["encoding", "mu", "tc_s", "n_segments", "raw_hz", "skf", "skr_hz"])
        for c in cells:
            writer.writerow([
                c.encoding_name, _fmt(c.mu), _fmt(c.t_c), c.n_segments,
                _fmt(c.raw_rate_hz), _fmt(c.skf), _fmt(c.skr_hz),
            ])
    finally:
        if close:
            out.close()
    return 0


def cmd_validate(args) -> int:
    import numpy as np

    from .channels import effective_channel_2q_naive
    from .oracle import oracle_channel_numeric
    from .repeater import exact2_dephasing, swap_asap_mc

    failures = 0

    def check(label: str, ok: bool, detail: str = ""):
        nonlocal failures
        status = "PASS" if ok else "FAIL"
        print(f"[{status}] {label}" + (f"  ({detail})" if detail else ""))
        if not ok:
            failures += 1

    for name in ("bit3", "five", "steane"):
        code = get_code(name)
        for strategy in Strategy:
            table = build_table(code, strategy)
            for kind in (NoiseKind.DEPHASING_1Q, NoiseKind.DEPOLARIZING_1Q):
                ch = effective_channel_1q(code, table, kind)
                p = 0.05
                ora = oracle_channel_numeric(code, table, kind, p)
                eng = [ch.lambda_i(p), ch.lambda_x(p), ch.lambda_y(p), ch.lambda_z(p)]
                err = max(abs(a - b) for a, b in zip(ora, eng))
                check(
                    f"state-picture oracle vs engine: {name}/{strategy.value}/{kind.value}",
                    err <= 1e-10,
                    f"max |diff| = {err:.2e}",
                )

    bit3 = get_code("bit3")
    table = build_table(bit3, Strategy.MIN_WEIGHT_PAULI)
    agg = effective_channel_2q(bit3, table)
    naive = effective_channel_2q_naive(bit3, table)
    check(
        "two-qubit aggregation vs naive double sum (bit3)",
        all(naive[k] == agg[k] for k in agg.lambdas),
    )

    rng_ok = True
    for p in (0.3, 0.7):
        for alpha in (0.05, 0.2):
            est = swap_asap_mc(2, p, alpha, samples=200_000, seed=1234)
            exact = exact2_dephasing(p, alpha)
            if abs(est.value - exact) > 3.0 * est.stderr:
                rng_ok = False
    check("two-segment Monte Carlo vs exact series (3 sigma)", rng_ok)

    print(f"{'OK' if failures == 0 else 'FAILED'}: {failures} failing check(s)")
    return 0 if failures == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="logical-noise",
        description=(
            "Effective logical Pauli channels for stabilizer-encoded memories "
            "and secret-key rates for memory-corrected repeater chains."
        ),
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("channel", help="exact logical channel of a code")
    p.add_argument("--code", required=True,
                   help=f"one of {', '.join(CODE_NAMES)} or a code file")
    p.add_argument("--noise", default="dephasing",
                   choices=[k.value for k in NoiseKind])
    p.add_argument("--strategy", default="standard",
                   choices=[s.value for s in Strategy])
    p.add_argument("--eval-p", type=float, default=None,
                   help="also evaluate each weight at this p")
    p.add_argument("--sweep", default=None, metavar="START:STOP:COUNT",
                   help="write evaluated weights on a p grid instead of coefficients")
    p.add_argument("--dump-table", default=None, metavar="CSV",
                   help="also dump the syndrome table")
    p.add_argument("--out", default=None, metavar="CSV")
    p.set_defaults(func=cmd_channel)

    p = sub.add_parser("rates", help="secret key rate sweep over total length")
    p.add_argument("--segments", type=int, required=True)
    p.add_argument("--length", required=True,
                   help="km; comma-separated values or start:stop:step")
    p.add_argument("--p0", type=float, default=1.0)
    p.add_argument("--mu", type=float, default=1.0)
    p.add_argument("--mu0", type=float, default=None)
    p.add_argument("--tc", type=float, required=True, help="seconds")
    p.add_argument("--clock", type=float, default=1e-6, help="seconds")
    p.add_argument("--cutoff", type=int, default=None)
    p.add_argument("--encode", default="none",
                   help="none, a catalog code name, or a code file")
    p.add_argument("--scheme", default="sequential",
                   choices=[s.value for s in Scheme])
    p.add_argument("--samples", type=int, default=10**6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, metavar="CSV")
    p.set_defaults(func=cmd_rates)

    p = sub.add_parser("threshold", help="minimal mu for a nonzero key fraction")
    p.add_argument("--segments", type=int, required=True)
    p.add_argument("--encode", default="none")
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("table1", help="large-chain comparison grid at fixed length")
    p.add_argument("--length", type=float, default=800.0)
    p.add_argument("--out", default=None, metavar="CSV")
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("validate", help="run the self-validation suite")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CodeParseError, CodeValidationError) as exc:
        print(f"error: invalid code definition: {exc}", file=sys.stderr)
        return 3
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return 4
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
