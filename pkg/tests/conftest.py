"""Shared helpers: seeded tiny-instance sampling and schedule mutation."""

from __future__ import annotations

import pathlib
import random

from zoneshop.model import (
    Instance,
    LegAssignment,
    OpAssignment,
    Operation,
    Schedule,
    Station,
    StationKind,
    Transbot,
    Zone,
    validate_instance,
)

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def make_tiny(
    seed: int,
    max_ops: int = 4,
    max_machines: int = 3,
    max_transbots: int = 3,
) -> Instance:
    """Random tiny instance within the oracle limits: 2 zones, 2-3
    machines, 2-3 transbots, at most ``max_ops`` operations."""
    rng = random.Random(seed)
    m = rng.randint(2, max_machines)
    n_bots = rng.randint(2, max_transbots)
    handoff = m + 1
    n = m + 2

    stations = [Station(0, StationKind.STOCKER)]
    for i in range(1, m + 1):
        stations.append(Station(i, StationKind.MACHINE, zone=((i - 1) % 2) + 1))
    stations.append(Station(handoff, StationKind.HANDOFF))

    travel = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            t = rng.randint(1, 6)
            travel[i][j] = t
            travel[j][i] = t

    bots = tuple(
        Transbot(id=v, zone=(v % 2) + 1, initial_station=0) for v in range(n_bots)
    )
    zones = tuple(
        Zone(
            id=z,
            machines=frozenset(i for i in range(1, m + 1) if ((i - 1) % 2) + 1 == z),
            transbots=frozenset(v.id for v in bots if v.zone == z),
        )
        for z in (1, 2)
    )

    total_ops = rng.randint(2, max_ops)
    n_jobs = rng.randint(1, min(2, total_ops))
    sizes = [total_ops // n_jobs] * n_jobs
    for k in range(total_ops % n_jobs):
        sizes[k] += 1
    operations: list[Operation] = []
    jobs: list[tuple[int, ...]] = []
    for j, size in enumerate(sizes):
        ids = []
        for k in range(size):
            elig_machines = rng.sample(range(1, m + 1), rng.randint(1, min(2, m)))
            op = Operation(
                id=len(operations),
                job=j,
                order_index=k + 1,
                eligibility={mm: rng.randint(1, 9) for mm in sorted(elig_machines)},
            )
            operations.append(op)
            ids.append(op.id)
        jobs.append(tuple(ids))

    instance = Instance(
        stations=tuple(stations),
        zones=zones,
        transbots=bots,
        jobs=tuple(jobs),
        operations=tuple(operations),
        travel=tuple(tuple(row) for row in travel),
    )
    assert not validate_instance(instance)
    return instance


# ------------------------------------------------------------- mutations
# One schedule mutation per violation kind.  Each takes a valid
# (instance, schedule) pair and returns a corrupted schedule, or None
# when the schedule has no site for that corruption.


def _with_op(schedule: Schedule, op_id: int, a: OpAssignment) -> Schedule:
    ops = dict(schedule.op_assign)
    ops[op_id] = a
    return Schedule(ops, dict(schedule.transfer_assign), schedule.makespan)


def _with_leg(
    schedule: Schedule, op_id: int, idx: int, leg: LegAssignment
) -> Schedule:
    transfers = dict(schedule.transfer_assign)
    legs = list(transfers[op_id])
    legs[idx] = leg
    transfers[op_id] = tuple(legs)
    return Schedule(dict(schedule.op_assign), transfers, schedule.makespan)


def _legged_ops(schedule: Schedule) -> list[int]:
    return sorted(o for o, legs in schedule.transfer_assign.items() if legs)


def mutate_precedence(instance, schedule, rng):
    """Pull a successor operation back before its transfer finishes."""
    for o in _legged_ops(schedule):
        a = schedule.op_assign[o]
        legs = schedule.transfer_assign[o]
        if legs[-1].end > 0:
            new_start = legs[-1].end - 1 - rng.randint(0, legs[-1].end - 1)
            return _with_op(
                schedule, o, OpAssignment(a.machine, new_start, new_start + (a.end - a.start))
            )
    return None


def mutate_machine_overlap(instance, schedule, rng):
    """Move one operation on top of another on the same machine."""
    by_machine: dict[int, list[int]] = {}
    for o, a in schedule.op_assign.items():
        by_machine.setdefault(a.machine, []).append(o)
    for machine in sorted(by_machine):
        ops = sorted(by_machine[machine], key=lambda o: schedule.op_assign[o].start)
        if len(ops) >= 2:
            first, second = ops[0], ops[1]
            fa, sa = schedule.op_assign[first], schedule.op_assign[second]
            length = sa.end - sa.start
            # overlap the first operation but stay after its own transfer
            legs = schedule.transfer_assign.get(second, ())
            floor = legs[-1].end if legs else 0
            start = max(fa.start, min(floor, fa.end - 1))
            if start < fa.end:
                return _with_op(
                    schedule, second, OpAssignment(machine, start, start + length)
                )
    return None


def mutate_bot_overlap(instance, schedule, rng):
    """Put two legs of one robot at the same time."""
    by_bot: dict[int, list[tuple[int, int]]] = {}
    for o, legs in schedule.transfer_assign.items():
        for idx, leg in enumerate(legs):
            by_bot.setdefault(leg.transbot, []).append((o, idx))
    for bot in sorted(by_bot):
        if len(by_bot[bot]) >= 2:
            slots = sorted(
                by_bot[bot],
                key=lambda s: schedule.transfer_assign[s[0]][s[1]].start,
            )
            (o1, i1), (o2, i2) = slots[0], slots[1]
            ref = schedule.transfer_assign[o1][i1]
            victim = schedule.transfer_assign[o2][i2]
            length = victim.end - victim.start
            if length == 0:
                continue
            start = max(0, ref.end - 1)
            return _with_leg(
                schedule,
                o2,
                i2,
                LegAssignment(
                    victim.pickup, victim.dropoff, victim.position,
                    victim.transbot, start, start + length,
                ),
            )
    return None


def mutate_deadhead(instance, schedule, rng):
    """Start a robot's first leg before it can reach the pickup."""
    for o in _legged_ops(schedule):
        for idx, leg in enumerate(schedule.transfer_assign[o]):
            origin = instance.transbots[leg.transbot].initial_station
            need = instance.travel[origin][leg.pickup]
            if need > 0:
                length = leg.end - leg.start
                return _with_leg(
                    schedule,
                    o,
                    idx,
                    LegAssignment(
                        leg.pickup, leg.dropoff, leg.position,
                        leg.transbot, 0, length,
                    ),
                )
    return None


def mutate_zone(instance, schedule, rng):
    """Hand a leg to a robot from the other zone."""
    for o in _legged_ops(schedule):
        for idx, leg in enumerate(schedule.transfer_assign[o]):
            zone = instance.transbots[leg.transbot].zone
            other = [v.id for v in instance.transbots if v.zone != zone]
            if other:
                return _with_leg(
                    schedule,
                    o,
                    idx,
                    LegAssignment(
                        leg.pickup, leg.dropoff, leg.position,
                        other[0], leg.start, leg.end,
                    ),
                )
    return None


def mutate_station_link(instance, schedule, rng):
    """Drop one leg of a transfer that needs it."""
    legged = _legged_ops(schedule)
    if not legged:
        return None
    o = legged[rng.randrange(len(legged))]
    transfers = dict(schedule.transfer_assign)
    transfers[o] = transfers[o][:-1]
    return Schedule(dict(schedule.op_assign), transfers, schedule.makespan)


def mutate_leg_order(instance, schedule, rng):
    """Start the second leg of a cross-zone transfer before the first ends."""
    for o in _legged_ops(schedule):
        legs = schedule.transfer_assign[o]
        if len(legs) == 2 and legs[0].end > 0:
            second = legs[1]
            length = second.end - second.start
            start = legs[0].end - 1
            return _with_leg(
                schedule,
                o,
                1,
                LegAssignment(
                    second.pickup, second.dropoff, second.position,
                    second.transbot, start, start + length,
                ),
            )
    return None


def mutate_stocker_start(instance, schedule, rng):
    """Reroute a first operation's pickup away from the stocker."""
    for o in _legged_ops(schedule):
        op = instance.operation(o)
        legs = schedule.transfer_assign[o]
        if op.order_index == 1 and legs[0].pickup == instance.stocker:
            leg = legs[0]
            wrong = next(
                m for m in instance.machine_ids if m != leg.dropoff
            )
            return _with_leg(
                schedule,
                o,
                0,
                LegAssignment(
                    wrong, leg.dropoff, leg.position,
                    leg.transbot, leg.start, leg.end,
                ),
            )
    return None


def mutate_duration(instance, schedule, rng):
    """Stretch one operation by one time unit."""
    o = rng.randrange(len(instance.operations))
    a = schedule.op_assign[o]
    return _with_op(schedule, o, OpAssignment(a.machine, a.start, a.end + 1))


def mutate_eligibility(instance, schedule, rng):
    """Run an operation on a machine outside its eligibility set."""
    for op in instance.operations:
        outside = [m for m in instance.machine_ids if m not in op.eligibility]
        if outside:
            a = schedule.op_assign[op.id]
            return _with_op(
                schedule, op.id, OpAssignment(outside[0], a.start, a.end)
            )
    return None


MUTATIONS = {
    "Precedence": mutate_precedence,
    "MachineOverlap": mutate_machine_overlap,
    "BotOverlap": mutate_bot_overlap,
    "DeadheadShortfall": mutate_deadhead,
    "ZoneMismatch": mutate_zone,
    "StationLink": mutate_station_link,
    "LegOrder": mutate_leg_order,
    "StockerStart": mutate_stocker_start,
    "DurationMismatch": mutate_duration,
    "EligibilityBreach": mutate_eligibility,
}
