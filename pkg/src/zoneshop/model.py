"""Problem and solution data model for the zoned flexible job shop.

An :class:`Instance` describes a shop floor: machine stations partitioned
into zones, a single stocker (load/unload station) holding all raw
material, a single handoff station where parts cross zone boundaries,
unit-capacity transfer robots bound to zones, and jobs made of ordered
operations with per-machine processing times.  A :class:`Schedule` is a
complete solution assigning machines/times to operations and robots/times
to transfer legs.

All times are nonnegative integers.  Instances are immutable after
construction and safe to share between solver workers.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field


class StationKind(enum.Enum):
    MACHINE = "machine"
    STOCKER = "stocker"
    HANDOFF = "handoff"


@dataclass(frozen=True)
class Station:
    id: int
    kind: StationKind
    zone: int | None = None  # set iff kind is MACHINE


@dataclass(frozen=True)
class Zone:
    id: int
    machines: frozenset[int]
    transbots: frozenset[int]


@dataclass(frozen=True)
class Transbot:
    id: int
    zone: int
    initial_station: int  # defaults to the stocker at construction sites


@dataclass(frozen=True)
class Operation:
    id: int
    job: int
    order_index: int  # 1-based position within the job
    eligibility: dict[int, int]  # machine station id -> processing time


@dataclass(frozen=True)
class Instance:
    stations: tuple[Station, ...]
    zones: tuple[Zone, ...]
    transbots: tuple[Transbot, ...]
    jobs: tuple[tuple[int, ...], ...]  # operation ids in processing order
    operations: tuple[Operation, ...]
    travel: tuple[tuple[int, ...], ...]  # station-to-station travel times

    @property
    def stocker(self) -> int:
        for s in self.stations:
            if s.kind is StationKind.STOCKER:
                return s.id
        raise ValueError("instance has no stocker station")

    @property
    def handoff(self) -> int:
        for s in self.stations:
            if s.kind is StationKind.HANDOFF:
                return s.id
        raise ValueError("instance has no handoff station")

    @property
    def machine_ids(self) -> tuple[int, ...]:
        return tuple(s.id for s in self.stations if s.kind is StationKind.MACHINE)

    def zone_of_machine(self, machine: int) -> int:
        station = self.stations[machine]
        if station.kind is not StationKind.MACHINE or station.zone is None:
            raise ValueError(f"station {machine} is not a zoned machine")
        return station.zone

    def operation(self, op_id: int) -> Operation:
        if not 0 <= op_id < len(self.operations):
            raise KeyError(f"unknown operation id {op_id}")
        return self.operations[op_id]


@dataclass(frozen=True)
class OpAssignment:
    machine: int
    start: int
    end: int


@dataclass(frozen=True)
class LegAssignment:
    pickup: int
    dropoff: int
    position: int  # 1 or 2 within the transfer
    transbot: int
    start: int
    end: int


@dataclass(frozen=True)
class Schedule:
    op_assign: dict[int, OpAssignment]
    transfer_assign: dict[int, tuple[LegAssignment, ...]]
    makespan: int


def predecessor(instance: Instance, op_id: int) -> int | None:
    """Operation of the same job with the previous order index, or None."""
    op = instance.operation(op_id)
    if op.order_index == 1:
        return None
    return instance.jobs[op.job][op.order_index - 2]


def compute_makespan(instance: Instance, schedule: Schedule) -> int:
    """Maximum operation end time; jobs finish at their last machine, so
    transfer end times never count."""
    result = 0
    for op in instance.operations:
        if op.id not in schedule.op_assign:
            raise KeyError(f"operation {op.id} missing from schedule")
        result = max(result, schedule.op_assign[op.id].end)
    return result


def validate_instance(instance: Instance) -> list[str]:
    """Return every violated structural invariant as a description string.

    An empty list means the instance is accepted by all downstream
    modules.  Violations are reported, never raised, so callers can show
    them all at once.
    """
    problems: list[str] = []

    for idx, station in enumerate(instance.stations):
        if station.id != idx:
            problems.append(f"station at index {idx} carries id {station.id}")

    stockers = [s for s in instance.stations if s.kind is StationKind.STOCKER]
    handoffs = [s for s in instance.stations if s.kind is StationKind.HANDOFF]
    if len(stockers) != 1:
        problems.append(f"expected exactly one stocker station, found {len(stockers)}")
    if len(handoffs) != 1:
        problems.append(f"expected exactly one handoff station, found {len(handoffs)}")
    for s in instance.stations:
        if s.kind is StationKind.MACHINE and s.zone is None:
            problems.append(f"machine station {s.id} carries no zone")
        if s.kind is not StationKind.MACHINE and s.zone is not None:
            problems.append(f"non-machine station {s.id} carries zone {s.zone}")

    zone_ids = {z.id for z in instance.zones}
    machine_ids = set()
    for s in instance.stations:
        if s.kind is StationKind.MACHINE:
            machine_ids.add(s.id)
            if s.zone not in zone_ids:
                problems.append(f"machine {s.id} references unknown zone {s.zone}")

    # zones must partition the machine set
    seen_machines: set[int] = set()
    for zone in instance.zones:
        for m in zone.machines:
            if m in seen_machines:
                problems.append(f"machine {m} appears in more than one zone")
            seen_machines.add(m)
            if m not in machine_ids:
                problems.append(f"zone {zone.id} references unknown machine {m}")
            elif instance.stations[m].zone != zone.id:
                problems.append(
                    f"machine {m} is listed in zone {zone.id} but carries "
                    f"zone {instance.stations[m].zone}"
                )
        if not zone.transbots:
            problems.append(f"zone {zone.id} contains no transbot")
    missing = machine_ids - seen_machines
    for m in sorted(missing):
        problems.append(f"machine {m} belongs to no zone")

    # transbots: one zone each, zone membership consistent
    bot_ids = {v.id for v in instance.transbots}
    for zone in instance.zones:
        for v in zone.transbots:
            if v not in bot_ids:
                problems.append(f"zone {zone.id} references unknown transbot {v}")
    zone_by_bot: dict[int, int] = {}
    for zone in instance.zones:
        for v in zone.transbots:
            if v in zone_by_bot:
                problems.append(f"transbot {v} appears in more than one zone")
            zone_by_bot[v] = zone.id
    for bot in instance.transbots:
        if bot.zone not in zone_ids:
            problems.append(f"transbot {bot.id} references unknown zone {bot.zone}")
        elif zone_by_bot.get(bot.id) != bot.zone:
            problems.append(
                f"transbot {bot.id} carries zone {bot.zone} but is not listed there"
            )
        if not 0 <= bot.initial_station < len(instance.stations):
            problems.append(
                f"transbot {bot.id} starts at unknown station {bot.initial_station}"
            )

    # jobs and operations
    for op in instance.operations:
        if not op.eligibility:
            problems.append(f"operation {op.id} has an empty eligibility map")
        for m, p in op.eligibility.items():
            if m not in machine_ids:
                problems.append(f"operation {op.id} is eligible on unknown machine {m}")
            if p <= 0:
                problems.append(
                    f"operation {op.id} has nonpositive processing time {p} on machine {m}"
                )
    for job_id, ops in enumerate(instance.jobs):
        indices = []
        for op_id in ops:
            if not 0 <= op_id < len(instance.operations):
                problems.append(f"job {job_id} references unknown operation {op_id}")
                continue
            op = instance.operations[op_id]
            if op.job != job_id:
                problems.append(
                    f"operation {op_id} is listed in job {job_id} but carries job {op.job}"
                )
            indices.append(op.order_index)
        if indices != list(range(1, len(indices) + 1)):
            problems.append(f"job {job_id} order indices are not 1..n: {indices}")

    # travel matrix
    n = len(instance.stations)
    if len(instance.travel) != n or any(len(row) != n for row in instance.travel):
        problems.append(f"travel matrix is not {n}x{n}")
    else:
        for i in range(n):
            if instance.travel[i][i] != 0:
                problems.append(f"travel[{i}][{i}] = {instance.travel[i][i]}, expected 0")
            for j in range(n):
                if instance.travel[i][j] < 0:
                    problems.append(f"travel[{i}][{j}] is negative")

    return problems
