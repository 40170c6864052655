"""Run the paper-shaped benchmark campaigns and write CSV files.

Campaigns:
  small   - the ten small instances at their native 2 zones / 2 transbots,
            arc vs. embedded vs. relaxation
  zoning  - zoning impact: 1/2/4 zones with 4 transbots, embedded model
  medium  - la01-class variants, embedded model (feasibility-oriented)

Usage: python3 scripts/run_benchmarks.py [small|zoning|medium ...]
         [--time-limit S] [--workers N] [--out-dir results]
"""

from __future__ import annotations

import argparse
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from zoneshop.bench import BenchSpec, run_campaign
from zoneshop.instance_io import parse_instance

ROOT = pathlib.Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"


def _load(pattern: str):
    paths = sorted(FIXTURES.glob(pattern))
    if not paths:
        raise SystemExit(f"no fixtures match {pattern}")
    return tuple((p.stem, parse_instance(p.read_text())) for p in paths)


def build_spec(name: str, time_limit: float, workers: int) -> BenchSpec:
    if name == "small":
        return BenchSpec(
            instances=_load("small/*.txt"),
            formulations=("arc", "embedded", "relax"),
            time_limit=time_limit,
            workers=workers,
        )
    if name == "zoning":
        return BenchSpec(
            instances=_load("small/*.txt"),
            formulations=("embedded",),
            zones=(1, 2, 4),
            transbots=(4,),
            time_limit=time_limit,
            workers=workers,
        )
    if name == "medium":
        return BenchSpec(
            instances=_load("medium/*.txt"),
            formulations=("embedded",),
            time_limit=time_limit,
            workers=workers,
        )
    raise SystemExit(f"unknown campaign {name!r}")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "campaigns", nargs="*", default=["small"],
        choices=["small", "zoning", "medium"],
    )
    parser.add_argument("--time-limit", type=float, default=600.0)
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--out-dir", default=str(ROOT / "results"))
    args = parser.parse_args()

    out_dir = pathlib.Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for name in args.campaigns:
        spec = build_spec(name, args.time_limit, args.workers)
        lines = run_campaign(spec)
        out = out_dir / f"{name}.csv"
        out.write_text("\n".join(lines) + "\n")
        print(f"wrote {out} ({len(lines)} lines)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
