"""Command-line interface.

Subcommands: ``generate`` (zoned instances from flexible-job-shop base
data), ``solve`` (one instance, one formulation, CSV report row plus a
validated schedule file), ``validate`` (independent schedule check),
``bench`` (campaign grids to CSV), ``gantt`` (SVG rendering).

Exit status: 0 success, 1 usage/config error, 2 I/O or parse error,
3 infeasible (or failed validation), 4 internal-invariant failure.
"""

from __future__ import annotations

import argparse
import sys

from . import bench as bench_mod
from . import instance_io
from .engine import SolverConfig
from .formulations import solve_with_acceleration
from .gantt import render_svg
from .model import validate_instance
from .verify import validate_schedule

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_INFEASIBLE = 3
EXIT_INTERNAL = 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_IO) from exc


def _write(path: str, content: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(content)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc}", EXIT_IO) from exc


def _load_instance(path: str):
    try:
        instance = instance_io.parse_instance(_read(path))
    except instance_io.ParseError as exc:
        raise CliError(f"{path}: {exc}", EXIT_IO) from exc
    errors = validate_instance(instance)
    if errors:
        raise CliError(f"{path}: invalid instance: {'; '.join(errors)}", EXIT_IO)
    return instance


def _parse_layout(text: str) -> tuple[tuple[int, ...], ...]:
    lines = [
        line.split("#", 1)[0].strip()
        for line in text.splitlines()
        if line.split("#", 1)[0].strip()
    ]
    if not lines:
        raise instance_io.ParseError("empty layout file")
    n = int(lines[0])
    if len(lines) != n + 1:
        raise instance_io.ParseError(f"layout declares {n} rows, found {len(lines) - 1}")
    rows = []
    for line in lines[1:]:
        row = tuple(int(tok) for tok in line.split())
        if len(row) != n:
            raise instance_io.ParseError(f"layout row has {len(row)} entries, expected {n}")
        rows.append(row)
    return tuple(rows)


def cmd_generate(args: argparse.Namespace) -> int:
    try:
        base = instance_io.parse_flexible_jobshop(_read(args.base))
        layout = None
        if args.base_layout:
            layout = _parse_layout(_read(args.base_layout))
    except instance_io.ParseError as exc:
        raise CliError(str(exc), EXIT_IO) from exc
    try:
        config = instance_io.GenConfig(
            base_instance=base,
            zones=args.zones,
            transbots=args.transbots,
            seed=args.seed,
            scale=args.scale,
            handoff_time_range=tuple(args.handoff_range),
            layout_time_range=tuple(args.layout_range),
            base_layout=layout,
        )
        instance = instance_io.generate_instance(config)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_USAGE) from exc
    _write(args.out, instance_io.serialize_instance(instance))
    print(
        f"{args.out}: jobs={len(instance.jobs)} operations={len(instance.operations)} "
        f"machines={len(instance.machine_ids)} zones={len(instance.zones)} "
        f"transbots={len(instance.transbots)}"
    )
    return EXIT_OK


def cmd_solve(args: argparse.Namespace) -> int:
    instance = _load_instance(args.instance)
    config = SolverConfig(
        time_limit=args.time_limit, workers=args.workers, seed=args.seed
    )
    schedule, report = solve_with_acceleration(
        instance,
        args.model,
        config,
        accelerate=args.warm_start == "on",
        initial_deadhead=args.initial_deadhead == "on",
    )
    cmax = "" if report.objective is None else str(report.objective)
    print(
        f"{args.instance},{args.model},{cmax},{report.bound},{report.status},"
        f"{report.runtime_seconds:.2f},{report.node_count}"
    )
    if report.status == "Infeasible":
        return EXIT_INFEASIBLE
    if schedule is not None:
        violations = validate_schedule(
            instance, schedule, initial_deadhead=args.initial_deadhead == "on"
        )
        if violations:
            print(
                "internal error: solver emitted an invalid schedule:\n  "
                + "\n  ".join(f"{v.kind.value}: {v.detail}" for v in violations),
                file=sys.stderr,
            )
            return EXIT_INTERNAL
        if args.out:
            _write(args.out, instance_io.serialize_schedule(schedule, instance))
    return EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    instance = _load_instance(args.instance)
    try:
        schedule = instance_io.parse_schedule(_read(args.schedule))
    except instance_io.ParseError as exc:
        raise CliError(f"{args.schedule}: {exc}", EXIT_IO) from exc
    unknown = [o for o in schedule.op_assign if not 0 <= o < len(instance.operations)]
    if unknown:
        raise CliError(
            f"{args.schedule}: unknown operation ids {sorted(unknown)}", EXIT_IO
        )
    violations = validate_schedule(
        instance, schedule, initial_deadhead=args.initial_deadhead == "on"
    )
    for violation in violations:
        print(f"{violation.kind.value}: {violation.detail}")
    return EXIT_INFEASIBLE if violations else EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    instances = tuple((path, _load_instance(path)) for path in args.instances)
    try:
        spec = bench_mod.BenchSpec(
            instances=instances,
            formulations=tuple(args.models.split(",")),
            zones=tuple(args.zones or ()),
            transbots=tuple(args.transbots or ()),
            layout_seeds=tuple(args.layout_seeds or ()),
            time_limit=args.time_limit,
            workers=args.workers,
            seed=args.seed,
            repetitions=args.repetitions,
            accelerate=args.warm_start == "on",
            initial_deadhead=args.initial_deadhead == "on",
        )
    except ValueError as exc:
        raise CliError(str(exc), EXIT_USAGE) from exc
    lines = bench_mod.run_campaign(spec)
    output = "\n".join(lines) + "\n"
    if args.out:
        _write(args.out, output)
    else:
        sys.stdout.write(output)
    return EXIT_OK


def cmd_gantt(args: argparse.Namespace) -> int:
    instance = _load_instance(args.instance)
    try:
        schedule = instance_io.parse_schedule(_read(args.schedule))
    except instance_io.ParseError as exc:
        raise CliError(f"{args.schedule}: {exc}", EXIT_IO) from exc
    violations = validate_schedule(
        instance, schedule, initial_deadhead=args.initial_deadhead == "on"
    )
    if violations:
        print(
            "refusing to render an invalid schedule:\n  "
            + "\n  ".join(f"{v.kind.value}: {v.detail}" for v in violations),
            file=sys.stderr,
        )
        return EXIT_INFEASIBLE
    _write(args.out, render_svg(instance, schedule))
    print(f"wrote {args.out}")
    return EXIT_OK


def _on_off(value: str) -> str:
    if value not in ("on", "off"):
        raise argparse.ArgumentTypeError("expected 'on' or 'off'")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zoneshop",
        description="Zoned flexible-job-shop solver with transfer robots",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="generate a zoned instance")
    p.add_argument("--base", required=True, help="flexible-job-shop base file")
    p.add_argument("--zones", type=int, required=True)
    p.add_argument("--transbots", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--scale", choices=("small", "medium"), default="small")
    p.add_argument("--base-layout", help="stocker+machine travel matrix (small scale)")
    p.add_argument("--handoff-range", type=int, nargs=2, default=(2, 8))
    p.add_argument("--layout-range", type=int, nargs=2, default=(20, 40))
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("solve", help="solve one instance")
    p.add_argument("instance")
    p.add_argument("--model", choices=("arc", "embedded"), default="embedded")
    p.add_argument("--time-limit", type=float, default=600.0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--warm-start", type=_on_off, default="on")
    p.add_argument("--initial-deadhead", type=_on_off, default="on")
    p.add_argument("--out", help="schedule output file")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("validate", help="validate a schedule against an instance")
    p.add_argument("instance")
    p.add_argument("schedule")
    p.add_argument("--initial-deadhead", type=_on_off, default="on")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("bench", help="run a benchmark campaign")
    p.add_argument("--instances", nargs="+", required=True)
    p.add_argument("--models", default="arc,embedded")
    p.add_argument("--zones", type=int, nargs="*")
    p.add_argument("--transbots", type=int, nargs="*")
    p.add_argument("--layout-seeds", type=int, nargs="*")
    p.add_argument("--time-limit", type=float, default=600.0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--repetitions", type=int, default=1)
    p.add_argument("--warm-start", type=_on_off, default="on")
    p.add_argument("--initial-deadhead", type=_on_off, default="on")
    p.add_argument("--out", help="CSV output file (default: stdout)")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("gantt", help="render a schedule as SVG")
    p.add_argument("instance")
    p.add_argument("schedule")
    p.add_argument("--initial-deadhead", type=_on_off, default="on")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gantt)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except CliError as exc:
        print(str(exc), file=sys.stderr)
        return exc.code
    except Exception as exc:  # internal-invariant failure
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
