"""Regenerate every fixture file deterministically.

The published small benchmark files this project's experiments were
modeled on are not redistributable here, so the small suite consists of
synthetic stand-ins of comparable shape (3-4 jobs x 3 operations, 5-6
machines, machine flexibility 2).  Medium fixtures are la01-class shapes
(10 jobs x 5 operations, 5 machines) in four flexibility variants.

Usage: python3 scripts/make_fixtures.py [--check]
  --check  verify the files on disk match regeneration byte for byte
"""

from __future__ import annotations

import argparse
import pathlib
import random
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from zoneshop.instance_io import (
    FlexibleJobShop,
    GenConfig,
    generate_instance,
    serialize_instance,
)
from zoneshop.verify import fixture_tiny1

ROOT = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def small_base(i: int) -> tuple[FlexibleJobShop, tuple[tuple[int, ...], ...]]:
    """Stand-in i (1-based): jobs, eligibility, and a symmetric
    stocker+machine base layout, all from one seeded generator."""
    rng = random.Random(1000 + i)
    njobs = 3 + (i % 2)
    nops = 3
    nm = 5 + (i % 2)
    jobs = []
    for _ in range(njobs):
        ops = []
        for _ in range(nops):
            alts = rng.sample(range(nm), 2)
            ops.append({m: rng.randint(5, 20) for m in alts})
        jobs.append(tuple(ops))
    fjs = FlexibleJobShop(num_machines=nm, jobs=tuple(jobs))
    upper = tuple(
        tuple(0 if a == b else rng.randint(4, 10) for b in range(nm + 1))
        for a in range(nm + 1)
    )
    layout = tuple(
        tuple(0 if a == b else upper[min(a, b)][max(a, b)] for b in range(nm + 1))
        for a in range(nm + 1)
    )
    return fjs, layout


def medium_base(variant: str) -> FlexibleJobShop:
    """la01-class shape: 10 jobs x 5 operations on 5 machines, with
    flexibility depending on the variant."""
    alts_per_op = {"sdata": 1, "edata": 2, "rdata": 2, "vdata": 3}[variant]
    rng = random.Random(hash_variant(variant))
    jobs = []
    for _ in range(10):
        ops = []
        for _ in range(5):
            k = alts_per_op if variant != "edata" else rng.choice([1, 2])
            alts = rng.sample(range(5), k)
            ops.append({m: rng.randint(5, 99) for m in alts})
        jobs.append(tuple(ops))
    return FlexibleJobShop(num_machines=5, jobs=tuple(jobs))


def hash_variant(variant: str) -> int:
    return 5000 + sum(ord(c) for c in variant)


def fjs_text(fjs: FlexibleJobShop) -> str:
    lines = [f"{len(fjs.jobs)} {fjs.num_machines}"]
    for ops in fjs.jobs:
        tokens = [str(len(ops))]
        for elig in ops:
            tokens.append(str(len(elig)))
            for m, p in sorted(elig.items()):
                tokens.extend([str(m + 1), str(p)])
        lines.append(" ".join(tokens))
    return "\n".join(lines) + "\n"


def layout_text(layout: tuple[tuple[int, ...], ...]) -> str:
    lines = [str(len(layout))]
    lines.extend(" ".join(str(t) for t in row) for row in layout)
    return "\n".join(lines) + "\n"


def build_all() -> dict[pathlib.Path, str]:
    files: dict[pathlib.Path, str] = {}
    files[ROOT / "tiny1.txt"] = serialize_instance(fixture_tiny1())
    for i in range(1, 11):
        fjs, layout = small_base(i)
        name = f"fjsp{i:02d}"
        files[ROOT / "base" / f"{name}.fjs"] = fjs_text(fjs)
        files[ROOT / "base" / f"{name}.layout"] = layout_text(layout)
        config = GenConfig(
            base_instance=fjs,
            zones=2,
            transbots=2,
            seed=2000 + i,
            scale="small",
            base_layout=layout,
        )
        files[ROOT / "small" / f"{name}.txt"] = serialize_instance(
            generate_instance(config)
        )
    for variant in ("sdata", "edata", "rdata", "vdata"):
        fjs = medium_base(variant)
        files[ROOT / "base" / f"la01_{variant}.fjs"] = fjs_text(fjs)
        config = GenConfig(
            base_instance=fjs,
            zones=2,
            transbots=2,
            seed=hash_variant(variant),
            scale="medium",
        )
        files[ROOT / "medium" / f"la01_{variant}.txt"] = serialize_instance(
            generate_instance(config)
        )
    return files


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--check", action="store_true")
    args = parser.parse_args()
    files = build_all()
    bad = 0
    for path, content in sorted(files.items()):
        if args.check:
            on_disk = path.read_text() if path.exists() else None
            if on_disk != content:
                print(f"MISMATCH {path}")
                bad += 1
            continue
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(content)
        print(f"wrote {path}")
    if args.check and not bad:
        print(f"all {len(files)} fixture files match")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
