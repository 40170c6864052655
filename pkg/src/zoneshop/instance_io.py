"""Instance parsing, generation, and canonical serialization.

Canonical instance format (line-oriented, integer tokens, ``#`` comments,
named sections in fixed order)::

    STATIONS
    <id> <machine|stocker|handoff> <zone|->
    ZONES
    <id> machines <m...> transbots <v...>
    TRANSBOTS
    <id> <zone> <initial station>
    JOBS
    <job> <op> <order> <k> <machine> <time> ...   # k eligibility pairs
    TRAVEL
    <n>
    <n rows of n integers>

Schedules serialize as one ``op`` record per operation and one ``leg``
record per transfer leg, sorted by start time.

Generation is deterministic: a fixed (seed, config) pair always yields
the same instance.  The PRNG is the Mersenne Twister (MT19937) as
exposed by Python's ``random.Random``, drawing one ``randint`` per
sampled matrix entry in documented order (small scale: handoff row by
station index; medium scale: upper triangle row by row).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .model import (
    Instance,
    LegAssignment,
    OpAssignment,
    Operation,
    Schedule,
    Station,
    StationKind,
    Transbot,
    Zone,
)


class ParseError(ValueError):
    pass


@dataclass(frozen=True)
class FlexibleJobShop:
    """Classical flexible-job-shop data: jobs of operations, each with a
    machine->processing-time eligibility map (0-based machine indices)."""

    num_machines: int
    jobs: tuple[tuple[dict[int, int], ...], ...]


@dataclass(frozen=True)
class GenConfig:
    base_instance: FlexibleJobShop
    zones: int
    transbots: int
    seed: int
    scale: str  # "small" | "medium"
    handoff_time_range: tuple[int, int] = (2, 8)
    layout_time_range: tuple[int, int] = (20, 40)
    base_layout: tuple[tuple[int, ...], ...] | None = None  # stocker+machines, small scale

    def __post_init__(self) -> None:
        if self.zones < 1 or self.transbots < 1:
            raise ValueError("zones and transbots must be positive")
        if self.transbots < self.zones:
            raise ValueError("need at least as many transbots as zones")
        if self.scale not in ("small", "medium"):
            raise ValueError(f"unknown scale {self.scale!r}")
        for lo, hi in (self.handoff_time_range, self.layout_time_range):
            if lo < 0 or hi < lo:
                raise ValueError("time ranges must be nonempty and nonnegative")
        if self.scale == "small" and self.base_layout is None:
            raise ValueError("small scale requires a base layout matrix")


def parse_flexible_jobshop(text: str) -> FlexibleJobShop:
    """Whitespace-delimited benchmark text: header ``numJobs numMachines``,
    then per job ``numOps {numAlts {machine time} x numAlts} x numOps``
    with 1-based machine indices in the file."""
    tokens = text.split()
    pos = 0

    def take(what: str) -> int:
        nonlocal pos
        if pos >= len(tokens):
            raise ParseError(f"truncated input while reading {what}")
        tok = tokens[pos]
        pos += 1
        try:
            return int(tok)
        except ValueError:
            raise ParseError(f"non-integer token {tok!r} while reading {what}") from None

    num_jobs = take("job count")
    num_machines = take("machine count")
    jobs: list[tuple[dict[int, int], ...]] = []
    for j in range(num_jobs):
        num_ops = take(f"operation count of job {j}")
        ops: list[dict[int, int]] = []
        for o in range(num_ops):
            num_alts = take(f"alternative count of job {j} op {o}")
            if num_alts < 1:
                raise ParseError(f"job {j} op {o} has zero alternatives")
            elig: dict[int, int] = {}
            for _ in range(num_alts):
                machine = take("machine index")
                time = take("processing time")
                if not 1 <= machine <= num_machines:
                    raise ParseError(
                        f"machine index {machine} out of range 1..{num_machines}"
                    )
                elig[machine - 1] = time
            ops.append(elig)
        jobs.append(tuple(ops))
    if pos != len(tokens):
        raise ParseError(f"{len(tokens) - pos} unexpected trailing tokens")
    return FlexibleJobShop(num_machines=num_machines, jobs=tuple(jobs))


def generate_instance(config: GenConfig) -> Instance:
    """Zoned instance from classical flexible-job-shop data.

    Station ids: 0 = stocker, 1..M = machines in base order, M+1 =
    handoff.  Machine index i (0-based) goes to zone (i mod zones)+1;
    transbots cyclically likewise, all starting at the stocker.
    """
    base = config.base_instance
    m = base.num_machines
    handoff_id = m + 1
    rng = random.Random(config.seed)

    n = m + 2
    travel = [[0] * n for _ in range(n)]
    if config.scale == "small":
        layout = config.base_layout
        assert layout is not None
        if len(layout) != m + 1 or any(len(row) != m + 1 for row in layout):
            raise ValueError("base layout must cover the stocker and every machine")
        for i in range(m + 1):
            for j in range(m + 1):
                travel[i][j] = layout[i][j]
        lo, hi = config.handoff_time_range
        for s in range(m + 1):
            t = rng.randint(lo, hi)
            travel[s][handoff_id] = t
            travel[handoff_id][s] = t
    else:
        lo, hi = config.layout_time_range
        for i in range(n):
            for j in range(i + 1, n):
                t = rng.randint(lo, hi)
                travel[i][j] = t
                travel[j][i] = t
    for i in range(n):
        travel[i][i] = 0

    stations = [Station(id=0, kind=StationKind.STOCKER)]
    machine_zone: dict[int, int] = {}
    for i in range(m):
        zone = (i % config.zones) + 1
        machine_zone[i + 1] = zone
        stations.append(Station(id=i + 1, kind=StationKind.MACHINE, zone=zone))
    stations.append(Station(id=handoff_id, kind=StationKind.HANDOFF))

    transbots = tuple(
        Transbot(id=v, zone=(v % config.zones) + 1, initial_station=0)
        for v in range(config.transbots)
    )
    zones = tuple(
        Zone(
            id=z,
            machines=frozenset(s for s, zz in machine_zone.items() if zz == z),
            transbots=frozenset(v.id for v in transbots if v.zone == z),
        )
        for z in range(1, config.zones + 1)
    )

    operations: list[Operation] = []
    jobs: list[tuple[int, ...]] = []
    for j, ops in enumerate(base.jobs):
        ids = []
        for k, elig in enumerate(ops):
            op = Operation(
                id=len(operations),
                job=j,
                order_index=k + 1,
                eligibility={machine + 1: time for machine, time in sorted(elig.items())},
            )
            operations.append(op)
            ids.append(op.id)
        jobs.append(tuple(ids))

    return Instance(
        stations=tuple(stations),
        zones=zones,
        transbots=transbots,
        jobs=tuple(jobs),
        operations=tuple(operations),
        travel=tuple(tuple(row) for row in travel),
    )


# --------------------------------------------------------------- canonical IO

_KIND_NAMES = {
    StationKind.MACHINE: "machine",
    StationKind.STOCKER: "stocker",
    StationKind.HANDOFF: "handoff",
}
_KIND_BY_NAME = {name: kind for kind, name in _KIND_NAMES.items()}
_SECTIONS = ("STATIONS", "ZONES", "TRANSBOTS", "JOBS", "TRAVEL")


def serialize_instance(instance: Instance) -> str:
    lines = ["# zoneshop instance v1"]
    lines.append("STATIONS")
    for s in instance.stations:
        zone = "-" if s.zone is None else str(s.zone)
        lines.append(f"{s.id} {_KIND_NAMES[s.kind]} {zone}")
    lines.append("ZONES")
    for z in instance.zones:
        machines = " ".join(str(m) for m in sorted(z.machines))
        bots = " ".join(str(v) for v in sorted(z.transbots))
        lines.append(f"{z.id} machines {machines} transbots {bots}".replace("  ", " "))
    lines.append("TRANSBOTS")
    for v in instance.transbots:
        lines.append(f"{v.id} {v.zone} {v.initial_station}")
    lines.append("JOBS")
    for op in instance.operations:
        pairs = " ".join(f"{m} {p}" for m, p in sorted(op.eligibility.items()))
        lines.append(
            f"{op.job} {op.id} {op.order_index} {len(op.eligibility)} {pairs}"
        )
    lines.append("TRAVEL")
    lines.append(str(len(instance.travel)))
    for row in instance.travel:
        lines.append(" ".join(str(t) for t in row))
    return "\n".join(lines) + "\n"


def _sectioned(text: str) -> dict[str, list[str]]:
    sections: dict[str, list[str]] = {}
    current: str | None = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line in _SECTIONS:
            if line in sections:
                raise ParseError(f"duplicate section {line}")
            current = line
            sections[current] = []
            continue
        if current is None:
            raise ParseError(f"content before first section: {line!r}")
        sections[current].append(line)
    for name in _SECTIONS:
        if name not in sections:
            raise ParseError(f"missing section {name}")
    return sections


def parse_instance(text: str) -> Instance:
    sections = _sectioned(text)

    stations = []
    for line in sections["STATIONS"]:
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(f"malformed station line: {line!r}")
        sid, kind_name, zone_tok = parts
        if kind_name not in _KIND_BY_NAME:
            raise ParseError(f"unknown station kind {kind_name!r}")
        zone = None if zone_tok == "-" else int(zone_tok)
        stations.append(Station(id=int(sid), kind=_KIND_BY_NAME[kind_name], zone=zone))

    zones = []
    for line in sections["ZONES"]:
        parts = line.split()
        try:
            mi = parts.index("machines")
            vi = parts.index("transbots")
        except ValueError:
            raise ParseError(f"malformed zone line: {line!r}") from None
        zones.append(
            Zone(
                id=int(parts[0]),
                machines=frozenset(int(t) for t in parts[mi + 1 : vi]),
                transbots=frozenset(int(t) for t in parts[vi + 1 :]),
            )
        )

    transbots = []
    for line in sections["TRANSBOTS"]:
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(f"malformed transbot line: {line!r}")
        transbots.append(
            Transbot(id=int(parts[0]), zone=int(parts[1]), initial_station=int(parts[2]))
        )

    operations: list[Operation] = []
    for line in sections["JOBS"]:
        parts = [int(t) for t in line.split()]
        if len(parts) < 4:
            raise ParseError(f"malformed operation line: {line!r}")
        job, op_id, order, count = parts[:4]
        pairs = parts[4:]
        if len(pairs) != 2 * count:
            raise ParseError(f"eligibility count mismatch on line: {line!r}")
        eligibility = {pairs[2 * k]: pairs[2 * k + 1] for k in range(count)}
        operations.append(
            Operation(id=op_id, job=job, order_index=order, eligibility=eligibility)
        )
    operations.sort(key=lambda op: op.id)
    if [op.id for op in operations] != list(range(len(operations))):
        raise ParseError("operation ids must be dense 0..n-1")
    num_jobs = max((op.job for op in operations), default=-1) + 1
    jobs = []
    for j in range(num_jobs):
        ops = sorted(
            (op for op in operations if op.job == j), key=lambda op: op.order_index
        )
        jobs.append(tuple(op.id for op in ops))

    travel_lines = sections["TRAVEL"]
    if not travel_lines:
        raise ParseError("empty TRAVEL section")
    n = int(travel_lines[0])
    if len(travel_lines) != n + 1:
        raise ParseError(f"TRAVEL declares {n} rows, found {len(travel_lines) - 1}")
    travel = []
    for line in travel_lines[1:]:
        row = tuple(int(t) for t in line.split())
        if len(row) != n:
            raise ParseError(f"TRAVEL row has {len(row)} entries, expected {n}")
        travel.append(row)

    return Instance(
        stations=tuple(stations),
        zones=tuple(zones),
        transbots=tuple(transbots),
        jobs=tuple(jobs),
        operations=tuple(operations),
        travel=tuple(travel),
    )


def serialize_schedule(schedule: Schedule, instance: Instance | None = None) -> str:
    """One ``op`` record per operation and one ``leg`` record per leg,
    sorted by start time then ids."""
    lines = ["# zoneshop schedule v1", f"makespan {schedule.makespan}"]
    ops = []
    for op_id, a in schedule.op_assign.items():
        job = instance.operation(op_id).job if instance is not None else 0
        ops.append((a.start, op_id, f"op {job} {op_id} {a.machine} {a.start} {a.end}"))
    legs = []
    for op_id, assigned in schedule.transfer_assign.items():
        for leg in assigned:
            legs.append(
                (
                    leg.start,
                    op_id,
                    leg.position,
                    f"leg {op_id} {leg.pickup} {leg.dropoff} {leg.position} "
                    f"{leg.transbot} {leg.start} {leg.end}",
                )
            )
    lines.extend(line for *_, line in sorted(ops))
    lines.extend(line for *_, line in sorted(legs))
    return "\n".join(lines) + "\n"


def parse_schedule(text: str) -> Schedule:
    op_assign: dict[int, OpAssignment] = {}
    legs_by_op: dict[int, list[LegAssignment]] = {}
    makespan = 0
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "makespan" and len(parts) == 2:
            makespan = int(parts[1])
        elif parts[0] == "op" and len(parts) == 6:
            _, _job, op_id, machine, start, end = parts
            op_assign[int(op_id)] = OpAssignment(
                machine=int(machine), start=int(start), end=int(end)
            )
        elif parts[0] == "leg" and len(parts) == 8:
            _, op_id, pickup, dropoff, position, bot, start, end = parts
            legs_by_op.setdefault(int(op_id), []).append(
                LegAssignment(
                    pickup=int(pickup),
                    dropoff=int(dropoff),
                    position=int(position),
                    transbot=int(bot),
                    start=int(start),
                    end=int(end),
                )
            )
        else:
            raise ParseError(f"malformed schedule line: {line!r}")
    transfer_assign = {
        op_id: tuple(sorted(legs, key=lambda leg: leg.position))
        for op_id, legs in legs_by_op.items()
    }
    for op_id in op_assign:
        transfer_assign.setdefault(op_id, ())
    return Schedule(
        op_assign=op_assign, transfer_assign=transfer_assign, makespan=makespan
    )
