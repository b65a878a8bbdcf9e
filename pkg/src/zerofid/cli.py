"""Command-line interface.

Subcommands: verify (spectral + bound checks), fidelity (report for a named
or serialized channel), estimate (shot-based zero-fidelity), sweep (bounds
grid to CSV + figure), feasible-range. Exit codes: 0 success, 1 validation
error, 2 computation or check failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
import time

from . import bounds, channels, fidelity, frame, verify

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAILURE = 2


class _Parser(argparse.ArgumentParser):
    """argparse with the validation-error exit code this tool promises."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _qubit_count(value: str) -> int:
    n = int(value)
    if not 1 <= n <= channels.MAX_QUBITS:
        raise argparse.ArgumentTypeError(
            f"qubit count must be between 1 and {channels.MAX_QUBITS}, got {n}"
        )
    return n


def _positive_int(value: str) -> int:
    v = int(value)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def parse_grid(spec: str) -> list[float]:
    """Grid spec: 'start:end:step' (endpoints inclusive within half a step)
    or a comma-separated list of values."""
    spec = spec.strip()
    if not spec:
        raise ValueError("empty grid spec")
    if ":" in spec:
        parts = spec.split(":")
        if len(parts) != 3:
            raise ValueError(f"grid spec must be start:end:step, got {spec!r}")
        start, end, step = (float(p) for p in parts)
        if step <= 0:
            raise ValueError(f"grid step must be positive, got {step}")
        values = []
        v = start
        while v <= end + step / 2:
            values.append(round(v, 12))
            v += step
        if not values:
            raise ValueError(f"grid spec {spec!r} produces no points")
        return values
    return [float(p) for p in spec.split(",") if p.strip()]


def _add_channel_spec(parser: _Parser) -> None:
    sub = parser.add_subparsers(dest="channel_kind", required=True, metavar="CHANNEL",
                            parser_class=_Parser)
    dep = sub.add_parser("depolarizing", help="depolarizing channel")
    dep.add_argument("--p", type=float, required=True, help="depolarizing strength in [0, 1]")
    rnd = sub.add_parser("random", help="seeded random CPTP channel")
    rnd.add_argument("--env-dim", type=_positive_int, required=True)
    rnd.add_argument("--seed", type=int, default=0)
    fil = sub.add_parser("file", help="channel from a JSON Choi file")
    fil.add_argument("path")


def _build_channel(args) -> channels.Channel:
    if args.channel_kind == "depolarizing":
        return channels.depolarizing(args.n, args.p)
    if args.channel_kind == "random":
        return channels.random_cptp(args.n, args.env_dim, args.seed)
    c = channels.load_channel(args.path)
    if c.n != args.n:
        raise ValueError(f"channel file is for n={c.n}, but --n {args.n} was requested")
    report = channels.validate_cptp(c, 1e-8)
    if not report.passed:
        raise ValueError(
            f"channel file fails CPTP validation: min eigenvalue "
            f"{report.min_eigenvalue:.3e}, marginal deviation "
            f"{report.trace_pres_deviation:.3e}"
        )
    return c


def _write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if out:
        _write_atomic(out, text)
    else:
        sys.stdout.write(text)


def cmd_verify(args) -> int:
    results = verify.run_verification(
        n_max=args.n_max,
        channels=args.channels,
        seed=args.seed,
        tol=args.tol,
        corrupt_frame=args.corrupt_frame,
    )
    failures = [r for r in results if not r.passed]
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name}  [{r.detail}]")
    print(f"{len(results) - len(failures)}/{len(results)} checks passed")
    return EXIT_OK if not failures else EXIT_FAILURE


def cmd_fidelity(args) -> int:
    c = _build_channel(args)
    op = frame.frame_operator(args.n)
    f0_direct = fidelity.zero_fidelity_direct(c)
    f0_choi = fidelity.zero_fidelity_choi(c, op)
    f = fidelity.process_fidelity(c)
    lower, upper = fidelity.fidelity_bounds(f0_direct)
    _emit(
        {
            "n": args.n,
            "f0": f0_direct,
            "f0_choi_route": f0_choi,
            "route_deviation": abs(f0_direct - f0_choi),
            "f": f,
            "f_avg": fidelity.average_fidelity(c),
            "lower_bound": lower,
            "upper_bound": upper,
        },
        args.out,
    )
    return EXIT_OK


def cmd_estimate(args) -> int:
    c = _build_channel(args)
    est = fidelity.estimate_zero_fidelity(c, args.shots, args.estimator_seed)
    lower, upper = fidelity.fidelity_bounds(est.mean)
    _emit(
        {
            "mean": est.mean,
            "std_error": est.std_error,
            "shots": est.shots,
            "seed": est.seed,
            "exact_f0": fidelity.zero_fidelity_direct(c),
            "lower_bound_from_estimate": lower,
            "upper_bound_from_estimate": upper,
        },
        args.out,
    )
    return EXIT_OK


def cmd_sweep(args) -> int:
    n_values = [_qubit_count(v) for v in args.n.split(",") if v.strip()]
    f0_grid = parse_grid(args.f0)
    if not n_values:
        raise ValueError("no qubit counts given")
    # fail on an unwritable destination before any solve starts
    out_dir = os.path.dirname(os.path.abspath(args.out)) or "."
    if not os.path.isdir(out_dir) or not os.access(out_dir, os.W_OK):
        raise OSError(f"output directory {out_dir!r} is not writable")

    start = time.time()
    rows = bounds.sweep(n_values, f0_grid)
    _write_atomic(args.out, bounds.format_csv(rows))
    failures = sum(
        1 for r in rows if not (r.min_status == "solved" and r.max_status == "solved")
    )
    plot_path = None
    if not args.no_plot:
        from . import plotting

        plot_path = args.plot_out or os.path.splitext(args.out)[0] + ".png"
        plotting.plot_bounds(rows, plot_path)
    elapsed = time.time() - start
    print(f"wrote {len(rows)} rows to {args.out}"
          + (f" and figure to {plot_path}" if plot_path else ""))
    print(f"{failures} unsolved cells, {elapsed:.1f} s")
    return EXIT_OK if failures == 0 else EXIT_FAILURE


def cmd_feasible_range(args) -> int:
    f0_min, f0_max = bounds.feasible_f0_range(args.n)
    _emit({"n": args.n, "f0_min": f0_min, "f0_max": f0_max}, args.out)
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="zerofid", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND",
                            parser_class=_Parser)

    ver = sub.add_parser("verify", help="run the spectral and bound checks")
    ver.add_argument("--n-max", type=_qubit_count, default=2)
    ver.add_argument("--channels", type=_positive_int, default=200)
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--tol", type=float, default=1e-9)
    ver.add_argument(
        "--corrupt-frame", action="store_true",
        help="debug: inject an index error into the frame operator so checks must fail",
    )
    ver.set_defaults(func=cmd_verify)

    fid = sub.add_parser("fidelity", help="fidelity report for one channel")
    fid.add_argument("--n", type=_qubit_count, required=True)
    fid.add_argument("--out", default=None, help="write JSON here instead of stdout")
    _add_channel_spec(fid)
    fid.set_defaults(func=cmd_fidelity)

    est = sub.add_parser("estimate", help="shot-based zero-fidelity estimate")
    est.add_argument("--n", type=_qubit_count, required=True)
    est.add_argument("--shots", type=_positive_int, required=True)
    est.add_argument("--estimator-seed", type=int, default=0,
                     help="seed for the sampling (channel seed is set per channel spec)")
    est.add_argument("--out", default=None)
    _add_channel_spec(est)
    est.set_defaults(func=cmd_estimate)

    swp = sub.add_parser("sweep", help="bounds grid to CSV (+ figure)")
    swp.add_argument("--n", required=True, help="comma-separated qubit counts, e.g. 1,2")
    swp.add_argument("--f0", required=True,
                     help="grid spec start:end:step or comma-separated values")
    swp.add_argument("--out", required=True, help="CSV output path")
    swp.add_argument("--no-plot", action="store_true", help="skip the figure")
    swp.add_argument("--plot-out", default=None,
                     help="figure path (default: CSV path with .png)")
    swp.set_defaults(func=cmd_sweep)

    rng = sub.add_parser("feasible-range", help="attainable zero-fidelity interval")
    rng.add_argument("--n", type=_qubit_count, required=True)
    rng.add_argument("--out", default=None)
    rng.set_defaults(func=cmd_feasible_range)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
