"""Command-line harness.

Subcommands: count-l, count-s, count-n, jn, lower-bound, doubly,
expsum-moment, expsum-verify, scaling, verify.

Exit codes: 0 success, 1 property failure, 2 usage, 3 work budget
exceeded, 4 exact-arithmetic capacity exceeded.

Flag precedence: command line over `--config` key=value file; the
FAREYLAB_WORKERS environment variable is honored only when neither sets
the worker count.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from pathlib import Path

from . import counting, expsum, lcm_filter
from .cache import ResultCache, result_line
from .errors import CapacityError, DomainError, ResourceError, UsageError
from .records import CountRecord
from .scaling import (
    SCALING_CSV_COLUMNS,
    parse_h_grid,
    scaling_experiment,
)
from .suites import SUITES, run_suite

EXIT_OK = 0
EXIT_PROPERTY_FAILURE = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_CAPACITY = 4

ENV_WORKERS = "FAREYLAB_WORKERS"

CONFIG_KEYS = {
    "n": int,
    "h": int,
    "method": str,
    "bounds": str,
    "coeffs": str,
    "box0": str,
    "box": str,
    "q": int,
    "a": int,
    "u": int,
    "v": int,
    "moment": int,
    "h_grid": str,
    "quantity": str,
    "suite": str,
    "instances": int,
    "seed": int,
    "workers": int,
    "budget": int,
    "out": str,
    "cache": str,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fareylab",
        description="Exact counting and exponential-sum experiments "
        "for unit-sum equations over bounded-height fractions.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p: argparse.ArgumentParser):
        p.add_argument("--out", type=str, default=None, help="CSV output path")
        p.add_argument("--plot", action="store_true",
                       help="render a figure next to --out")
        p.add_argument("--cache", type=str, default=None, help="JSONL result cache")
        p.add_argument("--config", type=str, default=None,
                       help="key=value file; flags take precedence")
        p.add_argument("--workers", type=int, default=None)
        p.add_argument("--budget", type=int, default=None,
                       help="maximum candidates examined")

    p = sub.add_parser("count-l", help="count unit-sum tuples L_n(H)")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--h", type=int, default=None)
    p.add_argument("--method", choices=("brute", "naive", "fast"), default=None)
    common(p)

    p = sub.add_parser("count-s", help="count stochastic matrices S_n(H) = L_n(H)^n")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--h", type=int, default=None)
    p.add_argument("--method", choices=("brute", "naive", "fast"), default=None)
    common(p)

    p = sub.add_parser("count-n", help="count box-constrained linear equation solutions")
    p.add_argument("--coeffs", type=str, default=None, help="a0,a1,...,an")
    p.add_argument("--box0", type=str, default=None, help="off:len,... (denominators)")
    p.add_argument("--box", type=str, default=None, help="off:len,... (numerators)")
    p.add_argument("--method", choices=("brute", "solver"), default=None)
    common(p)

    p = sub.add_parser("jn", help="count admissible denominator vectors")
    p.add_argument("--bounds", type=str, default=None, help="R1,...,Rn")
    common(p)

    p = sub.add_parser("lower-bound", help="shared-denominator solution construction")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--h", type=int, default=None)
    p.add_argument("--emit-solutions", action="store_true")
    common(p)

    p = sub.add_parser("doubly", help="doubly stochastic matrix counts")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--h", type=int, default=None)
    p.add_argument("--method", choices=("brute", "construction"), default=None)
    common(p)

    p = sub.add_parser("expsum-moment", help="prime-window moment of ratio sums")
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--a", type=int, default=None)
    p.add_argument("--moment", type=int, default=None, help="moment order n")
    p.add_argument("--u", type=int, default=None, help="column extent U")
    p.add_argument("--v", type=int, default=None, help="row extent V")
    p.add_argument("--domain", choices=("rectangle", "triangle"), default="rectangle")
    common(p)

    p = sub.add_parser("expsum-verify", help="orthogonality identity spot checks")
    p.add_argument("--instances", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    common(p)

    p = sub.add_parser("scaling", help="growth experiment with log-log fit")
    p.add_argument("--quantity", choices=("l", "s", "j"), default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--h-grid", dest="h_grid", type=str, default=None,
                   help="start:stop:factor or comma list")
    p.add_argument("--method", choices=("brute", "naive", "fast"), default=None)
    common(p)

    p = sub.add_parser("verify", help="run a named property suite")
    p.add_argument("--suite", choices=tuple(SUITES) + ("all",), default=None)
    common(p)

    return parser


def _load_config(path: str) -> dict:
    values: dict = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, _, value = line.partition("=")
        key = key.strip().replace("-", "_")
        if key not in CONFIG_KEYS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            values[key] = CONFIG_KEYS[key](value.strip())
        except ValueError as exc:
            raise UsageError(f"{path}:{lineno}: bad value for {key}: {exc}") from exc
    return values


def _resolve(args: argparse.Namespace) -> argparse.Namespace:
    """Apply config-file and environment fallbacks to unset flags."""
    config = _load_config(args.config) if getattr(args, "config", None) else {}
    for key, value in config.items():
        if getattr(args, key, None) is None:
            setattr(args, key, value)
    if getattr(args, "workers", None) is None:
        env = os.environ.get(ENV_WORKERS)
        if env is not None:
            try:
                args.workers = int(env)
            except ValueError as exc:
                raise UsageError(f"bad {ENV_WORKERS} value {env!r}") from exc
    if getattr(args, "workers", None) is None:
        args.workers = 1
    if args.workers < 1:
        raise UsageError("workers must be at least 1")
    return args


def _require(args: argparse.Namespace, *names: str) -> None:
    for name in names:
        if getattr(args, name, None) is None:
            raise UsageError(f"--{name.replace('_', '-')} is required")


def _parse_int_list(text: str, what: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.split(","))
    except ValueError as exc:
        raise UsageError(f"bad {what} {text!r}: {exc}") from exc


def _parse_box(text: str) -> counting.IntegerBox:
    offsets = []
    lengths = []
    for tok in text.split(","):
        if ":" not in tok:
            raise UsageError(f"box component {tok!r} must be off:len")
        off, _, ln = tok.partition(":")
        try:
            offsets.append(int(off))
            lengths.append(int(ln))
        except ValueError as exc:
            raise UsageError(f"bad box component {tok!r}: {exc}") from exc
    return counting.IntegerBox(tuple(offsets), tuple(lengths))


def _write_csv(path: str, header: list[str], rows: list[list]) -> None:
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def _plot_path(out: str) -> Path:
    return Path(out).with_suffix(".png")


def _emit_count(args, subcommand: str, params: dict, compute) -> dict:
    """Serve from the warm cache or compute; print and CSV-write the line.

    ``compute`` is a thunk returning a CountRecord, only called on a
    cache miss.
    """
    cache = ResultCache(args.cache) if args.cache else None
    line = cache.lookup(subcommand, params) if cache is not None else None
    if line is None:
        rec: CountRecord = compute()
        line = result_line(
            subcommand, params, {"count": rec.count},
            rec.candidates_examined, rec.elapsed_ms,
        )
        if cache is not None:
            cache.store(line)
    pieces = [f"{k}={v}" for k, v in params.items()]
    print(
        f"{subcommand} {' '.join(pieces)} -> count={line['outputs']['count']} "
        f"candidates={line['candidates_examined']} "
        f"elapsed_ms={line['elapsed_ms']:.3f}"
    )
    if args.out:
        header = list(params) + ["count", "candidates_examined", "elapsed_ms"]
        row = [
            ",".join(map(str, v)) if isinstance(v, (tuple, list)) else v
            for v in params.values()
        ]
        row += [
            line["outputs"]["count"],
            line["candidates_examined"],
            repr(line["elapsed_ms"]),
        ]
        _write_csv(args.out, header, [row])
    return line


def _cmd_count_l(args) -> int:
    _require(args, "n", "h")
    method = args.method or "fast"
    _emit_count(
        args, "count-l", {"n": args.n, "h": args.h, "method": method},
        lambda: counting.count_L(
            args.n, args.h, method, workers=args.workers, budget=args.budget
        ),
    )
    return EXIT_OK


def _cmd_count_s(args) -> int:
    _require(args, "n", "h")
    method = args.method or "fast"
    _emit_count(
        args, "count-s", {"n": args.n, "h": args.h, "method": method},
        lambda: counting.count_S(
            args.n, args.h, method, workers=args.workers, budget=args.budget
        ),
    )
    return EXIT_OK


def _cmd_count_n(args) -> int:
    _require(args, "coeffs", "box0", "box")
    values = _parse_int_list(args.coeffs, "coefficients")
    if len(values) < 2:
        raise UsageError("--coeffs needs a0 plus at least one coefficient")
    coeffs = counting.CoefficientVector(values[0], values[1:])
    box0 = _parse_box(args.box0)
    box = _parse_box(args.box)
    method = args.method or "brute"

    def compute():
        if method == "brute":
            return counting.count_N_brute(
                coeffs, box0, box, workers=args.workers, budget=args.budget
            )
        return counting.count_N_fast(coeffs, box0, box, budget=args.budget)

    params = {
        "coeffs": args.coeffs,
        "box0": args.box0,
        "box": args.box,
        "method": method,
    }
    _emit_count(args, "count-n", params, compute)
    return EXIT_OK


def _cmd_jn(args) -> int:
    _require(args, "bounds")
    bounds = _parse_int_list(args.bounds, "bounds")
    _emit_count(
        args, "jn", {"bounds": args.bounds},
        lambda: lcm_filter.count_J(bounds, workers=args.workers, budget=args.budget),
    )
    return EXIT_OK


def _cmd_lower_bound(args) -> int:
    _require(args, "n", "h")
    _emit_count(
        args, "lower-bound", {"n": args.n, "h": args.h},
        lambda: counting.lower_bound_construction(args.n, args.h, budget=args.budget),
    )
    if args.emit_solutions:
        rows = [
            [str(f) for f in tup]
            for tup in counting.iter_lower_bound_solutions(args.n, args.h)
        ]
        if args.out:
            sol_path = Path(args.out).with_name(Path(args.out).stem + "_solutions.csv")
            _write_csv(
                str(sol_path), [f"alpha_{j+1}" for j in range(args.n)], rows
            )
            print(f"solutions -> {sol_path}")
        else:
            for row in rows:
                print(",".join(row))
    return EXIT_OK


def _cmd_doubly(args) -> int:
    _require(args, "n", "h")
    method = args.method or "brute"

    def compute():
        if method == "brute":
            return counting.count_doubly_brute(
                args.n, args.h, workers=args.workers, budget=args.budget
            )
        return counting.doubly_lower_construction(args.n, args.h, budget=args.budget)

    _emit_count(args, "doubly", {"n": args.n, "h": args.h, "method": method}, compute)
    return EXIT_OK


def _cmd_expsum_moment(args) -> int:
    _require(args, "q", "a", "moment", "u", "v")
    if args.domain == "triangle":
        dom = expsum.ColumnDomain.right_triangle(args.u, args.v)
    else:
        dom = expsum.ColumnDomain.rectangle(args.u, args.v)
    stats = expsum.moment_over_primes(
        args.a, args.q, args.moment, dom, workers=args.workers
    )
    params = {
        "q": args.q, "a": args.a, "moment": args.moment,
        "u": args.u, "v": args.v, "domain": args.domain,
    }
    outputs = {
        "total": stats.total,
        "bound_reference": stats.bound_reference,
        "ratio": stats.ratio,
    }
    cache = ResultCache(args.cache) if args.cache else None
    line = cache.lookup("expsum-moment", params) if cache else None
    if line is None:
        line = result_line("expsum-moment", params, outputs, stats.q, 0.0)
        if cache is not None:
            cache.store(line)
    print(
        f"expsum-moment q={args.q} a={args.a} n={args.moment} U={args.u} V={args.v} "
        f"-> total={stats.total:.6g} bound={stats.bound_reference:.6g} "
        f"ratio={stats.ratio:.6g}"
    )
    if args.out:
        _write_csv(args.out, expsum.MOMENT_CSV_COLUMNS, [stats.csv_row()])
        if args.plot:
            from .plots import save_moment_figure

            print(f"figure -> {save_moment_figure(stats, _plot_path(args.out))}")
    return EXIT_OK


def _cmd_expsum_verify(args) -> int:
    instances = args.instances if args.instances is not None else 100
    seed = args.seed if args.seed is not None else 701
    worst = 0.0
    failures = 0
    for coeffs, p, box0, box in expsum.random_orthogonality_instances(
        instances, seed=seed
    ):
        m = expsum.congruence_count(coeffs, p, box0, box)
        res = expsum.orthogonality_check(coeffs, p, box0, box)
        worst = max(worst, res)
        if res >= 1e-6 * max(1, m):
            failures += 1
    status = "PASS" if failures == 0 else "FAIL"
    print(
        f"{status} orthogonality identity: {instances} instances, "
        f"worst residual {worst:.3e}"
    )
    return EXIT_OK if failures == 0 else EXIT_PROPERTY_FAILURE


def _cmd_scaling(args) -> int:
    _require(args, "quantity", "n", "h_grid")
    method = args.method or "fast"
    grid = parse_h_grid(args.h_grid)
    rows, fit = scaling_experiment(
        args.quantity, args.n, grid, method,
        workers=args.workers, budget=args.budget,
    )
    print(
        f"scaling quantity={args.quantity} n={args.n} method={method} "
        f"grid={grid} -> slope={fit.slope:.4f} intercept={fit.intercept:.4f} "
        f"residual={fit.residual:.4g}"
    )
    for row in rows:
        print(
            f"  H={row.h} count={row.count} candidates={row.candidates_examined} "
            f"elapsed_ms={row.elapsed_ms:.3f}"
        )
    if args.out:
        _write_csv(args.out, SCALING_CSV_COLUMNS, [r.csv_row() for r in rows])
        if args.plot:
            from .plots import save_scaling_figure

            print(f"figure -> {save_scaling_figure(rows, fit, _plot_path(args.out))}")
    if args.cache:
        cache = ResultCache(args.cache)
        params = {
            "quantity": args.quantity, "n": args.n,
            "h_grid": args.h_grid, "method": method,
        }
        line = cache.lookup("scaling", params)
        if line is None:
            line = result_line(
                "scaling",
                params,
                {
                    "slope": fit.slope,
                    "intercept": fit.intercept,
                    "residual": fit.residual,
                    "counts": [r.count for r in rows],
                },
                sum(r.candidates_examined for r in rows),
                sum(r.elapsed_ms for r in rows),
            )
            cache.store(line)
    return EXIT_OK


def _cmd_verify(args) -> int:
    names = list(SUITES) if args.suite in (None, "all") else [args.suite]
    any_failed = False
    for name in names:
        checks = run_suite(name)
        for check in checks:
            status = "PASS" if check.passed else "FAIL"
            print(f"{status} [{name}] {check.name}: {check.detail}")
            any_failed |= not check.passed
    return EXIT_PROPERTY_FAILURE if any_failed else EXIT_OK


HANDLERS = {
    "count-l": _cmd_count_l,
    "count-s": _cmd_count_s,
    "count-n": _cmd_count_n,
    "jn": _cmd_jn,
    "lower-bound": _cmd_lower_bound,
    "doubly": _cmd_doubly,
    "expsum-moment": _cmd_expsum_moment,
    "expsum-verify": _cmd_expsum_verify,
    "scaling": _cmd_scaling,
    "verify": _cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        args = _resolve(args)
        return HANDLERS[args.subcommand](args)
    except (UsageError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceError as exc:
        print(f"budget error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (CapacityError, MemoryError, OverflowError) as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY


def entrypoint() -> None:
    raise SystemExit(main())
