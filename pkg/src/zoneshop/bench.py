"""Benchmark campaigns over instance sets and configuration grids.

A campaign crosses instance files with formulations, zone/transbot
grids, and layout seeds, solves every cell under a shared time limit,
and emits deterministic CSV rows plus exact-arithmetic average rows.
Zone/transbot grid cells re-zone the parsed instance cyclically (the
travel matrix is kept); layout-seed cells resample the whole travel
matrix uniformly, mirroring the medium-scale layout scheme.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .engine import SolverConfig, solve
from .formulations import build_fjsp_relaxation, solve_with_acceleration
from .model import Instance, Station, StationKind, Transbot, Zone

CSV_HEADER = (
    "instance,model,zones,transbots,layout_seed,repetition,seed,"
    "cmax,bound,status,seconds,nodes"
)


@dataclass(frozen=True)
class BenchSpec:
    instances: tuple[tuple[str, Instance], ...]  # (name, parsed instance)
    formulations: tuple[str, ...]  # subset of {"arc", "embedded", "relax"}
    zones: tuple[int, ...] = ()  # empty: keep each instance's own zoning
    transbots: tuple[int, ...] = ()
    layout_seeds: tuple[int, ...] = ()  # empty: keep each instance's layout
    layout_range: tuple[int, int] = (20, 40)
    time_limit: float = 600.0
    workers: int = 1
    seed: int = 0
    repetitions: int = 1
    accelerate: bool = True
    initial_deadhead: bool = True

    def __post_init__(self) -> None:
        if not self.instances:
            raise ValueError("empty instance set")
        if not self.formulations:
            raise ValueError("empty formulation set")
        unknown = set(self.formulations) - {"arc", "embedded", "relax"}
        if unknown:
            raise ValueError(f"unknown formulations: {sorted(unknown)}")


def rezone_instance(instance: Instance, zones: int, transbots: int) -> Instance:
    """Reassign machines and transbots to ``zones`` zones cyclically in
    index order, keeping stations and travel times."""
    if transbots < zones:
        raise ValueError("need at least as many transbots as zones")
    machines = sorted(instance.machine_ids)
    machine_zone = {m: (i % zones) + 1 for i, m in enumerate(machines)}
    stations = tuple(
        Station(id=s.id, kind=s.kind, zone=machine_zone.get(s.id))
        if s.kind is StationKind.MACHINE
        else s
        for s in instance.stations
    )
    bots = tuple(
        Transbot(id=v, zone=(v % zones) + 1, initial_station=instance.stocker)
        for v in range(transbots)
    )
    zone_set = tuple(
        Zone(
            id=z,
            machines=frozenset(m for m, zz in machine_zone.items() if zz == z),
            transbots=frozenset(v.id for v in bots if v.zone == z),
        )
        for z in range(1, zones + 1)
    )
    return Instance(
        stations=stations,
        zones=zone_set,
        transbots=bots,
        jobs=instance.jobs,
        operations=instance.operations,
        travel=instance.travel,
    )


def relayout_instance(
    instance: Instance, seed: int, time_range: tuple[int, int] = (20, 40)
) -> Instance:
    """Resample the full symmetric travel matrix uniformly from
    ``time_range`` (upper triangle row by row, diagonal zero)."""
    rng = random.Random(seed)
    n = len(instance.travel)
    lo, hi = time_range
    travel = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            t = rng.randint(lo, hi)
            travel[i][j] = t
            travel[j][i] = t
    return Instance(
        stations=instance.stations,
        zones=instance.zones,
        transbots=instance.transbots,
        jobs=instance.jobs,
        operations=instance.operations,
        travel=tuple(tuple(row) for row in travel),
    )


@dataclass
class BenchRow:
    instance: str
    model: str
    zones: int
    transbots: int
    layout_seed: int | None
    repetition: int
    seed: int
    cmax: int | None
    bound: int
    status: str
    seconds: float
    nodes: int

    def csv(self) -> str:
        return ",".join(
            [
                self.instance,
                self.model,
                str(self.zones),
                str(self.transbots),
                "" if self.layout_seed is None else str(self.layout_seed),
                str(self.repetition),
                str(self.seed),
                "" if self.cmax is None else str(self.cmax),
                str(self.bound),
                self.status,
                f"{self.seconds:.2f}",
                str(self.nodes),
            ]
        )


def _solve_cell(
    spec: BenchSpec, name: str, instance: Instance, model: str, seed: int
) -> tuple[int | None, int, str, float, int]:
    config = SolverConfig(
        time_limit=spec.time_limit, workers=spec.workers, seed=seed
    )
    t0 = time.monotonic()
    if model == "relax":
        report = solve(build_fjsp_relaxation(instance), config)
    else:
        _, report = solve_with_acceleration(
            instance,
            model,
            config,
            accelerate=spec.accelerate,
            initial_deadhead=spec.initial_deadhead,
        )
    return (
        report.objective,
        report.bound,
        report.status,
        time.monotonic() - t0,
        report.node_count,
    )


def run_campaign(spec: BenchSpec) -> list[str]:
    """All CSV lines of a campaign: header, one row per grid cell in
    deterministic order, then per-configuration average and
    solved-to-optimality summary rows."""
    rows: list[BenchRow] = []
    zone_grid = spec.zones or (None,)
    bot_grid = spec.transbots or (None,)
    layout_grid = spec.layout_seeds or (None,)
    for name, base in spec.instances:
        for z in zone_grid:
            for v in bot_grid:
                inst = base
                zones = z if z is not None else len(base.zones)
                bots = v if v is not None else len(base.transbots)
                if z is not None or v is not None:
                    inst = rezone_instance(base, zones, bots)
                for layout_seed in layout_grid:
                    cell = (
                        inst
                        if layout_seed is None
                        else relayout_instance(inst, layout_seed, spec.layout_range)
                    )
                    for model in spec.formulations:
                        for rep in range(spec.repetitions):
                            seed = spec.seed + rep
                            try:
                                cmax, bound, status, secs, nodes = _solve_cell(
                                    spec, name, cell, model, seed
                                )
                            except Exception:
                                cmax, bound, status, secs, nodes = (
                                    None,
                                    0,
                                    "Error",
                                    0.0,
                                    0,
                                )
                            rows.append(
                                BenchRow(
                                    instance=name,
                                    model=model,
                                    zones=zones,
                                    transbots=bots,
                                    layout_seed=layout_seed,
                                    repetition=rep,
                                    seed=seed,
                                    cmax=cmax,
                                    bound=bound,
                                    status=status,
                                    seconds=secs,
                                    nodes=nodes,
                                )
                            )

    lines = [CSV_HEADER]
    lines.extend(row.csv() for row in rows)

    # exact-arithmetic averages per configuration across instances
    groups: dict[tuple, list[BenchRow]] = {}
    for row in rows:
        groups.setdefault(
            (row.model, row.zones, row.transbots, row.layout_seed), []
        ).append(row)
    for key in sorted(
        groups, key=lambda k: (k[0], k[1], k[2], -1 if k[3] is None else k[3])
    ):
        model, zones, bots, layout_seed = key
        group = groups[key]
        solved = [row for row in group if row.cmax is not None]
        optimal = sum(1 for row in group if row.status == "Optimal")
        if solved:
            avg = Fraction(sum(row.cmax for row in solved), len(solved))
            avg_text = str(avg.numerator) if avg.denominator == 1 else f"{avg.numerator}/{avg.denominator}"
        else:
            avg_text = ""
        lines.append(
            ",".join(
                [
                    "average",
                    model,
                    str(zones),
                    str(bots),
                    "" if layout_seed is None else str(layout_seed),
                    "",
                    "",
                    avg_text,
                    "",
                    f"optimal={optimal}/{len(group)}",
                    "",
                    "",
                ]
            )
        )
    return lines
