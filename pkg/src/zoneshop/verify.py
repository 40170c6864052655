"""Independent schedule validation and an exact brute-force oracle.

The validator re-derives every feasibility rule from the instance data
with its own arithmetic; it shares no propagation code with the solver
engine, so solver/validator agreement is evidence rather than tautology.

The oracle enumerates all discrete choices (machine per operation, robot
per leg, orderings per machine and per robot) and computes earliest start
times by longest path, which is exact because once all orderings are
fixed the timing problem has only difference constraints.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field

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
    predecessor,
)
from .routing import decompose_arc


class ViolationKind(enum.Enum):
    PRECEDENCE = "Precedence"
    MACHINE_OVERLAP = "MachineOverlap"
    BOT_OVERLAP = "BotOverlap"
    DEADHEAD_SHORTFALL = "DeadheadShortfall"
    ZONE_MISMATCH = "ZoneMismatch"
    STATION_LINK = "StationLink"
    LEG_ORDER = "LegOrder"
    STOCKER_START = "StockerStart"
    DURATION_MISMATCH = "DurationMismatch"
    ELIGIBILITY_BREACH = "EligibilityBreach"


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    subjects: tuple[int, ...]
    detail: str


def _zone_of_bot(instance: Instance, bot: int) -> int:
    return instance.transbots[bot].zone


def validate_schedule(
    instance: Instance, schedule: Schedule, initial_deadhead: bool = True
) -> list[Violation]:
    """Check a schedule against every feasibility rule; return all failures.

    With ``initial_deadhead`` on, every robot is charged travel from its
    initial station to each of its pickups, mirroring the all-ordered-pairs
    sequencing semantics seeded at the robot's starting position.
    """
    out: list[Violation] = []

    def add(kind: ViolationKind, subjects: tuple[int, ...], detail: str) -> None:
        out.append(Violation(kind, subjects, detail))

    for op in instance.operations:
        if op.id not in schedule.op_assign:
            raise KeyError(f"operation {op.id} missing from schedule")

    for op in instance.operations:
        a = schedule.op_assign[op.id]
        legs = schedule.transfer_assign.get(op.id, ())

        # (h) machine eligibility and (g) durations
        if a.machine not in op.eligibility:
            add(
                ViolationKind.ELIGIBILITY_BREACH,
                (op.id, a.machine),
                f"operation {op.id} runs on ineligible machine {a.machine}",
            )
        else:
            expected = op.eligibility[a.machine]
            if a.end - a.start != expected:
                add(
                    ViolationKind.DURATION_MISMATCH,
                    (op.id,),
                    f"operation {op.id} lasts {a.end - a.start}, expected {expected}",
                )
        for leg in legs:
            expected = instance.travel[leg.pickup][leg.dropoff]
            if leg.end - leg.start != expected:
                add(
                    ViolationKind.DURATION_MISMATCH,
                    (op.id, leg.transbot),
                    f"leg {leg.pickup}->{leg.dropoff} of operation {op.id} lasts "
                    f"{leg.end - leg.start}, expected {expected}",
                )

        # (e) station linking against the chosen machines
        pred = predecessor(instance, op.id)
        if pred is None:
            expected_pickup = instance.stocker
        else:
            expected_pickup = schedule.op_assign[pred].machine
        if expected_pickup == a.machine:
            if legs:
                add(
                    ViolationKind.STATION_LINK,
                    (op.id,),
                    f"operation {op.id} stays on machine {a.machine} but has legs",
                )
        else:
            ref = decompose_arc(instance, expected_pickup, a.machine)
            if len(legs) != len(ref.legs):
                add(
                    ViolationKind.STATION_LINK,
                    (op.id,),
                    f"transfer of operation {op.id} has {len(legs)} legs, "
                    f"expected {len(ref.legs)}",
                )
            else:
                for got, want in zip(legs, ref.legs):
                    if (got.pickup, got.dropoff) != (want.pickup, want.dropoff):
                        kind = (
                            ViolationKind.STOCKER_START
                            if pred is None and want.pickup == instance.stocker
                            else ViolationKind.STATION_LINK
                        )
                        add(
                            kind,
                            (op.id,),
                            f"leg {got.position} of operation {op.id} runs "
                            f"{got.pickup}->{got.dropoff}, expected "
                            f"{want.pickup}->{want.dropoff}",
                        )
                    # (d) zone compatibility
                    bot_zone = _zone_of_bot(instance, got.transbot)
                    if bot_zone != want.zone:
                        add(
                            ViolationKind.ZONE_MISMATCH,
                            (op.id, got.transbot),
                            f"transbot {got.transbot} (zone {bot_zone}) serves a "
                            f"zone {want.zone} leg of operation {op.id}",
                        )

        # (f) leg order within the transfer
        for first, second in zip(legs, legs[1:]):
            if second.start < first.end:
                add(
                    ViolationKind.LEG_ORDER,
                    (op.id,),
                    f"leg {second.position} of operation {op.id} starts at "
                    f"{second.start} before leg {first.position} ends at {first.end}",
                )

        # (a) job precedence around the transfer
        if legs:
            if legs[-1].end > a.start:
                add(
                    ViolationKind.PRECEDENCE,
                    (op.id,),
                    f"transfer of operation {op.id} ends at {legs[-1].end} after "
                    f"the operation starts at {a.start}",
                )
            if pred is not None and schedule.op_assign[pred].end > legs[0].start:
                add(
                    ViolationKind.PRECEDENCE,
                    (pred, op.id),
                    f"operation {pred} ends at {schedule.op_assign[pred].end} after "
                    f"the transfer of {op.id} starts at {legs[0].start}",
                )
        elif pred is not None and schedule.op_assign[pred].end > a.start:
            add(
                ViolationKind.PRECEDENCE,
                (pred, op.id),
                f"operation {pred} ends after operation {op.id} starts",
            )

    # (b) machine exclusivity
    by_machine: dict[int, list[Operation]] = {}
    for op in instance.operations:
        by_machine.setdefault(schedule.op_assign[op.id].machine, []).append(op)
    for machine, ops in by_machine.items():
        ops = sorted(ops, key=lambda o: (schedule.op_assign[o.id].start, o.id))
        for u, w in itertools.combinations(ops, 2):
            au, aw = schedule.op_assign[u.id], schedule.op_assign[w.id]
            if au.start < aw.end and aw.start < au.end:
                add(
                    ViolationKind.MACHINE_OVERLAP,
                    (u.id, w.id, machine),
                    f"operations {u.id} and {w.id} overlap on machine {machine}",
                )

    # (c) robot exclusivity and deadhead over all ordered pairs
    by_bot: dict[int, list[tuple[int, LegAssignment]]] = {}
    for op_id, legs in schedule.transfer_assign.items():
        for leg in legs:
            by_bot.setdefault(leg.transbot, []).append((op_id, leg))
    for bot, entries in by_bot.items():
        entries.sort(key=lambda e: (e[1].start, e[0], e[1].position))
        if initial_deadhead:
            origin = instance.transbots[bot].initial_station
            for op_id, leg in entries:
                need = instance.travel[origin][leg.pickup]
                if leg.start < need:
                    add(
                        ViolationKind.DEADHEAD_SHORTFALL,
                        (op_id, bot),
                        f"transbot {bot} cannot reach station {leg.pickup} from its "
                        f"start before time {need}, leg starts at {leg.start}",
                    )
        for (op_a, first), (op_b, second) in itertools.combinations(entries, 2):
            if first.start < second.end and second.start < first.end:
                add(
                    ViolationKind.BOT_OVERLAP,
                    (op_a, op_b, bot),
                    f"transbot {bot} runs overlapping legs of operations "
                    f"{op_a} and {op_b}",
                )
                continue
            deadhead = instance.travel[first.dropoff][second.pickup]
            if second.start < first.end + deadhead:
                add(
                    ViolationKind.DEADHEAD_SHORTFALL,
                    (op_a, op_b, bot),
                    f"transbot {bot} needs {deadhead} to move from station "
                    f"{first.dropoff} to {second.pickup} but has "
                    f"{second.start - first.end}",
                )

    return out


@dataclass(frozen=True)
class OracleLimits:
    max_operations: int = 5
    max_machines: int = 3
    max_transbots: int = 3


class OracleError(Exception):
    pass


def brute_force_optimal(
    instance: Instance,
    limits: OracleLimits = OracleLimits(),
    initial_deadhead: bool = True,
) -> tuple[Schedule, int]:
    """Exhaustive minimum-makespan search for tiny instances.

    Transfer legs are scheduled back to back (the transfer interval has a
    fixed length equal to the summed leg travel), matching the solver's
    transfer semantics.  Deterministic: combinations are visited in a
    fixed lexicographic order and only strict improvements replace the
    incumbent.
    """
    n_ops = len(instance.operations)
    if n_ops > limits.max_operations:
        raise OracleError(f"{n_ops} operations exceed the oracle limit")
    if len(instance.machine_ids) > limits.max_machines:
        raise OracleError("machine count exceeds the oracle limit")
    if len(instance.transbots) > limits.max_transbots:
        raise OracleError("transbot count exceeds the oracle limit")

    ops = instance.operations
    bots_by_zone: dict[int, list[int]] = {}
    for bot in instance.transbots:
        bots_by_zone.setdefault(bot.zone, []).append(bot.id)
    for zone_bots in bots_by_zone.values():
        zone_bots.sort()

    best: tuple[int, Schedule] | None = None
    machine_choices = [sorted(op.eligibility) for op in ops]
    for machines in itertools.product(*machine_choices):
        result = _best_for_assignment(
            instance, machines, bots_by_zone, initial_deadhead,
            None if best is None else best[0],
        )
        if result is not None and (best is None or result[0] < best[0]):
            best = result
    if best is None:
        raise OracleError("no feasible combination exists for this instance")
    return best[1], best[0]


def _best_for_assignment(
    instance: Instance,
    machines: tuple[int, ...],
    bots_by_zone: dict[int, list[int]],
    initial_deadhead: bool,
    cutoff: int | None,
) -> tuple[int, Schedule] | None:
    """Minimum makespan over robot assignments and all orderings, for one
    fixed machine assignment.  Returns None when nothing feasible beats
    the caller's cutoff."""
    ops = instance.operations
    arcs = []
    for op in ops:
        pred = predecessor(instance, op.id)
        pickup = instance.stocker if pred is None else machines[pred]
        arcs.append(decompose_arc(instance, pickup, machines[op.id]))

    # robot choices per leg, flattened as (op, leg index within arc)
    leg_slots: list[tuple[int, int]] = []
    leg_options: list[list[int]] = []
    for op in ops:
        for idx, leg in enumerate(arcs[op.id].legs):
            slot_bots = bots_by_zone.get(leg.zone, [])
            if not slot_bots:
                return None  # a required leg has no zone-compatible robot
            leg_slots.append((op.id, idx))
            leg_options.append(slot_bots)

    ops_by_machine: dict[int, list[int]] = {}
    for op in ops:
        ops_by_machine.setdefault(machines[op.id], []).append(op.id)

    best: tuple[int, Schedule] | None = None
    bound = cutoff
    for bot_pick in itertools.product(*leg_options):
        legs_by_bot: dict[int, list[tuple[int, int]]] = {}
        for slot, bot in zip(leg_slots, bot_pick):
            legs_by_bot.setdefault(bot, []).append(slot)
        machine_orders = [
            itertools.permutations(ops_by_machine[m]) for m in sorted(ops_by_machine)
        ]
        for m_orders in itertools.product(*machine_orders):
            bot_orders_iter = [
                itertools.permutations(legs_by_bot[b]) for b in sorted(legs_by_bot)
            ]
            for b_orders in itertools.product(*bot_orders_iter):
                timing = _earliest_times(
                    instance, machines, arcs, bot_pick, leg_slots,
                    m_orders, sorted(legs_by_bot), b_orders, initial_deadhead,
                )
                if timing is None:
                    continue
                makespan, op_start, transfer_start = timing
                if bound is not None and makespan >= bound:
                    continue
                schedule = _build_schedule(
                    instance, machines, arcs, dict(zip(leg_slots, bot_pick)),
                    op_start, transfer_start,
                )
                best = (makespan, schedule)
                bound = makespan
    return best


def _earliest_times(
    instance: Instance,
    machines: tuple[int, ...],
    arcs,
    bot_pick: tuple[int, ...],
    leg_slots: list[tuple[int, int]],
    m_orders,
    bot_ids: list[int],
    b_orders,
    initial_deadhead: bool,
):
    """Longest-path earliest start times for fixed orderings.

    Variables: transfer start and operation start per operation.  All
    constraints are of the form x >= y + c, so iterating to a fixpoint is
    exact; failure to converge means the orderings are cyclic."""
    ops = instance.operations
    n = len(ops)
    proc = [op.eligibility[machines[op.id]] for op in ops]
    t_total = [arcs[o].total_travel for o in range(n)]
    # leg start offset within its transfer (legs run back to back)
    offset: dict[tuple[int, int], int] = {}
    for o in range(n):
        off = 0
        for idx, leg in enumerate(arcs[o].legs):
            offset[(o, idx)] = off
            off += leg.travel

    bot_of_slot = dict(zip(leg_slots, bot_pick))
    transfer = [0] * n
    start = [0] * n

    # static lower bounds from the robot's initial position
    if initial_deadhead:
        for (o, idx), bot in bot_of_slot.items():
            origin = instance.transbots[bot].initial_station
            leg = arcs[o].legs[idx]
            lb = instance.travel[origin][leg.pickup] - offset[(o, idx)]
            if lb > transfer[o]:
                transfer[o] = lb

    for _ in range(2 * n + 2):
        changed = False

        def raise_to(values: list[int], i: int, lb: int) -> None:
            nonlocal changed
            if lb > values[i]:
                values[i] = lb
                changed = True

        for o in range(n):
            raise_to(start, o, transfer[o] + t_total[o])
            pred = predecessor(instance, o)
            if pred is not None:
                raise_to(transfer, o, start[pred] + proc[pred])
        for order in m_orders:
            for u, w in zip(order, order[1:]):
                raise_to(start, w, start[u] + proc[u])
        for bot, order in zip(bot_ids, b_orders):
            for i, slot_a in enumerate(order):
                for slot_b in order[i + 1 :]:
                    la = arcs[slot_a[0]].legs[slot_a[1]]
                    lb_leg = arcs[slot_b[0]].legs[slot_b[1]]
                    dead = instance.travel[la.dropoff][lb_leg.pickup]
                    lhs_op, rhs_op = slot_a[0], slot_b[0]
                    c = offset[slot_a] + la.travel + dead - offset[slot_b]
                    raise_to(transfer, rhs_op, transfer[lhs_op] + c)
        if not changed:
            makespan = max((start[o] + proc[o] for o in range(n)), default=0)
            return makespan, start, transfer
    return None  # positive cycle: orderings contradict precedence


def _build_schedule(
    instance: Instance,
    machines: tuple[int, ...],
    arcs,
    bot_of_slot: dict[tuple[int, int], int],
    op_start: list[int],
    transfer_start: list[int],
) -> Schedule:
    op_assign: dict[int, OpAssignment] = {}
    transfer_assign: dict[int, tuple[LegAssignment, ...]] = {}
    for op in instance.operations:
        p = op.eligibility[machines[op.id]]
        op_assign[op.id] = OpAssignment(
            machine=machines[op.id], start=op_start[op.id], end=op_start[op.id] + p
        )
        legs = []
        t = transfer_start[op.id]
        for idx, leg in enumerate(arcs[op.id].legs):
            legs.append(
                LegAssignment(
                    pickup=leg.pickup,
                    dropoff=leg.dropoff,
                    position=leg.position,
                    transbot=bot_of_slot[(op.id, idx)],
                    start=t,
                    end=t + leg.travel,
                )
            )
            t += leg.travel
        transfer_assign[op.id] = tuple(legs)
    makespan = max((a.end for a in op_assign.values()), default=0)
    return Schedule(op_assign=op_assign, transfer_assign=transfer_assign, makespan=makespan)


def fixture_tiny1() -> Instance:
    """Two machines in two zones, one robot each, a single two-operation
    job forced across the zone boundary.  Optimal makespan 20."""
    stations = (
        Station(0, StationKind.STOCKER),
        Station(1, StationKind.MACHINE, zone=1),
        Station(2, StationKind.MACHINE, zone=2),
        Station(3, StationKind.HANDOFF),
    )
    #          LU  M1  M2  H
    travel = (
        (0, 2, 5, 1),
        (2, 0, 7, 3),
        (5, 7, 0, 4),
        (1, 3, 4, 0),
    )
    zones = (
        Zone(1, machines=frozenset({1}), transbots=frozenset({0})),
        Zone(2, machines=frozenset({2}), transbots=frozenset({1})),
    )
    transbots = (
        Transbot(0, zone=1, initial_station=0),
        Transbot(1, zone=2, initial_station=0),
    )
    operations = (
        Operation(0, job=0, order_index=1, eligibility={1: 5}),
        Operation(1, job=0, order_index=2, eligibility={2: 6}),
    )
    return Instance(
        stations=stations,
        zones=zones,
        transbots=transbots,
        jobs=((0, 1),),
        operations=operations,
        travel=travel,
    )
