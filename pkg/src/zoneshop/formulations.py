"""The two solver formulations and the classical flexible-job-shop relaxation.

Both formulations share the same engine vocabulary.  The arc-based model
gives every operation a master transfer interval, one optional interval
per candidate pickup/dropoff arc, and one optional interval per leg and
zone-compatible robot; machine choice lives in separate per-machine
option intervals.  The operation-embedded model folds machine choice and
arc choice into a single set of machine-pair options, so station linking
needs far fewer constraints.  The relaxation drops zones, robots, and
transfers entirely and yields a valid lower bound on the makespan.

Transfers have no slack inside them: a transfer interval has fixed
length equal to its total travel, so consecutive legs of a cross-zone
transfer meet exactly at the handoff station.  Material may wait at its
pickup machine before a transfer starts, but never at the handoff.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .engine import Assignment, Model, SolveReport, SolverConfig, SumRelation, solve
from .model import (
    Instance,
    LegAssignment,
    OpAssignment,
    Schedule,
    compute_makespan,
    predecessor,
    validate_instance,
)
from .routing import ArcSpec, build_leg_matrix, enumerate_arcs, enumerate_legs, leg_index

ArcKey = tuple[int, int, int]  # (operation, pickup station, dropoff station)
LegKey = tuple[int, int, int, int, int]  # (op, pickup, dropoff, position, transbot)


@dataclass
class ArcModelVars:
    """Interval/sequence ids of the arc-based model, keyed by structure."""

    xo: dict[int, int] = field(default_factory=dict)
    xoa: dict[ArcKey, int] = field(default_factory=dict)
    xolv: dict[LegKey, int] = field(default_factory=dict)
    yo: dict[int, int] = field(default_factory=dict)
    ym: dict[tuple[int, int], int] = field(default_factory=dict)
    wm: dict[int, int] = field(default_factory=dict)
    wv: dict[int, int] = field(default_factory=dict)

    def counts(self) -> dict[str, int]:
        return {
            "transfer": len(self.xo),
            "transArc": len(self.xoa),
            "transOnVeh": len(self.xolv),
            "job": len(self.yo),
            "jobOnMach": len(self.ym),
            "seqMach": len(self.wm),
            "seqVeh": len(self.wv),
        }


@dataclass
class EmbeddedModelVars:
    """Interval/sequence ids of the operation-embedded model.

    ``stay``, ``hull``, and ``link`` are auxiliary encoding intervals (a
    zero-length stand-in for legless same-machine transfers, a
    fixed-length cover forcing cross-zone legs to meet at the handoff,
    and a per-machine presence channel for station linking); they are
    not part of the declared variable classes and excluded from counts.
    """

    xo: dict[int, int] = field(default_factory=dict)
    xlv: dict[LegKey, int] = field(default_factory=dict)
    yo: dict[int, int] = field(default_factory=dict)
    ya: dict[ArcKey, int] = field(default_factory=dict)
    wm: dict[int, int] = field(default_factory=dict)
    wv: dict[int, int] = field(default_factory=dict)
    stay: dict[ArcKey, int] = field(default_factory=dict)
    hull: dict[ArcKey, int] = field(default_factory=dict)
    link: dict[tuple[int, int], int] = field(default_factory=dict)

    def counts(self) -> dict[str, int]:
        return {
            "transfer": len(self.xo),
            "transOnVeh": len(self.xlv),
            "job": len(self.yo),
            "jobOnMach": len(self.ya),
            "seqMach": len(self.wm),
            "seqVeh": len(self.wv),
        }


@dataclass
class RelaxationVars:
    yo: dict[int, int] = field(default_factory=dict)
    ym: dict[tuple[int, int], int] = field(default_factory=dict)
    wm: dict[int, int] = field(default_factory=dict)


def default_horizon(instance: Instance) -> int:
    """A makespan bound large enough for a fully serialized schedule:
    per operation the worst processing time, the worst arc travel, and a
    deadhead allowance for each of the (at most two) legs."""
    max_travel = max(max(row) for row in instance.travel)
    total = 0
    for op in instance.operations:
        arcs = enumerate_arcs(instance, op.id)
        total += max(op.eligibility.values())
        total += max((a.total_travel for a in arcs), default=0)
        total += 2 * max_travel
    return total


def _require_valid(instance: Instance) -> None:
    errors = validate_instance(instance)
    if errors:
        raise ValueError("invalid instance: " + "; ".join(errors))


def _zone_bots(instance: Instance, zone: int) -> list[int]:
    return sorted(v.id for v in instance.transbots if v.zone == zone)


def _bot_sequences(
    model: Model,
    instance: Instance,
    leg_vars: dict[LegKey, int],
    initial_deadhead: bool,
) -> dict[int, int]:
    """One sequence per transbot over its candidate leg intervals, typed
    by global leg id so the transition matrix charges deadhead travel."""
    legs = enumerate_legs(instance)
    lut = leg_index(legs)
    matrix = build_leg_matrix(instance, legs)
    wv: dict[int, int] = {}
    for bot in instance.transbots:
        members: list[int] = []
        types: list[int] = []
        release: list[int] = []
        for (op, pickup, dropoff, position, v), iv in sorted(leg_vars.items()):
            if v != bot.id:
                continue
            leg = lut[(pickup, dropoff, position)]
            members.append(iv)
            types.append(leg.id)
            release.append(instance.travel[bot.initial_station][leg.pickup])
        seq = model.add_sequence(f"w_v[{bot.id}]", members, types)
        model.add_no_overlap(
            seq, matrix=matrix.entries, release=release if initial_deadhead else None
        )
        wv[bot.id] = seq
    return wv


def _leg_precedence(
    model: Model, instance: Instance, arc: ArcSpec, leg_iv: dict[LegKey, int], op: int
) -> None:
    """Second leg of a cross-zone transfer starts after the first, for
    every combination of carrying robots."""
    if len(arc.legs) != 2:
        return
    first, second = arc.legs
    for v1 in _zone_bots(instance, first.zone):
        a = leg_iv[(op, arc.pickup, arc.dropoff, 1, v1)]
        for v2 in _zone_bots(instance, second.zone):
            b = leg_iv[(op, arc.pickup, arc.dropoff, 2, v2)]
            model.add_conditional_precedence(guard=b, a=a, b=b)


def build_arc_model(
    instance: Instance, initial_deadhead: bool = True
) -> tuple[Model, ArcModelVars]:
    _require_valid(instance)
    model = Model()
    model.set_horizon(default_horizon(instance))
    vars = ArcModelVars()

    for op in instance.operations:
        o = op.id
        vars.yo[o] = model.add_interval(f"y[{o}]", None)
        for m in sorted(op.eligibility):
            vars.ym[(o, m)] = model.add_interval(
                f"y[{o},m{m}]", op.eligibility[m], optional=True
            )
        model.add_alternative(vars.yo[o], [vars.ym[(o, m)] for m in sorted(op.eligibility)])

        vars.xo[o] = model.add_interval(f"x[{o}]", None)
        arcs = enumerate_arcs(instance, o)
        for arc in arcs:
            key = (o, arc.pickup, arc.dropoff)
            vars.xoa[key] = model.add_interval(
                f"x[{o},{arc.pickup}->{arc.dropoff}]", arc.total_travel, optional=True
            )
            arc_legs: list[int] = []
            for leg in arc.legs:
                leg_options: list[int] = []
                for v in _zone_bots(instance, leg.zone):
                    iv = model.add_interval(
                        f"x[{o},{arc.pickup}->{arc.dropoff},leg{leg.position},v{v}]",
                        leg.travel,
                        optional=True,
                    )
                    vars.xolv[(o, arc.pickup, arc.dropoff, leg.position, v)] = iv
                    leg_options.append(iv)
                    arc_legs.append(iv)
                model.add_presence_sum(vars.xoa[key], leg_options, SumRelation.EQUAL)
                model.add_presence_sum(vars.xoa[key], leg_options, SumRelation.AT_MOST_ONE)
            if arc_legs:
                # fixed arc length + covering span pins the legs back to back
                model.add_span(vars.xoa[key], arc_legs)
            _leg_precedence(model, instance, arc, vars.xolv, o)
        model.add_alternative(vars.xo[o], [vars.xoa[(o, a.pickup, a.dropoff)] for a in arcs])

        model.add_end_before_start(vars.xo[o], vars.yo[o])
        pred = predecessor(instance, o)
        if pred is not None:
            model.add_end_before_start(vars.yo[pred], vars.xo[o])

        # station linking: the chosen arc's dropoff is this operation's
        # machine, and its pickup is the predecessor's machine
        for m in sorted(op.eligibility):
            model.add_presence_sum(
                vars.ym[(o, m)],
                [vars.xoa[(o, a.pickup, a.dropoff)] for a in arcs if a.dropoff == m],
                SumRelation.EQUAL,
            )
        if pred is not None:
            for m in sorted(instance.operation(pred).eligibility):
                model.add_presence_sum(
                    vars.ym[(pred, m)],
                    [vars.xoa[(o, a.pickup, a.dropoff)] for a in arcs if a.pickup == m],
                    SumRelation.EQUAL,
                )

    for m in instance.machine_ids:
        members = [iv for (o, mm), iv in sorted(vars.ym.items()) if mm == m]
        seq = model.add_sequence(f"w_m[{m}]", members)
        model.add_no_overlap(seq)
        vars.wm[m] = seq
    vars.wv = _bot_sequences(model, instance, vars.xolv, initial_deadhead)

    model.set_objective_max_end([vars.yo[o.id] for o in instance.operations])
    return model, vars


def build_embedded_model(
    instance: Instance, initial_deadhead: bool = True
) -> tuple[Model, EmbeddedModelVars]:
    _require_valid(instance)
    model = Model()
    model.set_horizon(default_horizon(instance))
    vars = EmbeddedModelVars()
    arcs_of: dict[int, list[ArcSpec]] = {}

    for op in instance.operations:
        o = op.id
        vars.yo[o] = model.add_interval(f"y[{o}]", None)
        vars.xo[o] = model.add_interval(f"x[{o}]", None)
        arcs = enumerate_arcs(instance, o)
        arcs_of[o] = arcs
        covered: list[int] = []
        for arc in arcs:
            key = (o, arc.pickup, arc.dropoff)
            vars.ya[key] = model.add_interval(
                f"y[{o},{arc.pickup}->{arc.dropoff}]",
                op.eligibility[arc.dropoff],
                optional=True,
            )
            if not arc.legs:
                stay = model.add_interval(f"stay[{o},{arc.pickup}]", 0, optional=True)
                vars.stay[key] = stay
                model.add_presence_sum(vars.ya[key], [stay], SumRelation.EQUAL)
                covered.append(stay)
                continue
            arc_legs: list[int] = []
            for leg in arc.legs:
                leg_options: list[int] = []
                for v in _zone_bots(instance, leg.zone):
                    iv = model.add_interval(
                        f"x[{o},{arc.pickup}->{arc.dropoff},leg{leg.position},v{v}]",
                        leg.travel,
                        optional=True,
                    )
                    vars.xlv[(o, arc.pickup, arc.dropoff, leg.position, v)] = iv
                    leg_options.append(iv)
                    arc_legs.append(iv)
                    covered.append(iv)
                model.add_presence_sum(vars.ya[key], leg_options, SumRelation.EQUAL)
                model.add_presence_sum(vars.ya[key], leg_options, SumRelation.AT_MOST_ONE)
            if len(arc.legs) == 2:
                hull = model.add_interval(
                    f"hull[{o},{arc.pickup}->{arc.dropoff}]",
                    arc.total_travel,
                    optional=True,
                )
                vars.hull[key] = hull
                model.add_presence_sum(vars.ya[key], [hull], SumRelation.EQUAL)
                model.add_span(hull, arc_legs)
            _leg_precedence(model, instance, arc, vars.xlv, o)
        model.add_alternative(vars.yo[o], [vars.ya[(o, a.pickup, a.dropoff)] for a in arcs])
        model.add_span(vars.xo[o], covered)

        model.add_end_before_start(vars.xo[o], vars.yo[o])
        pred = predecessor(instance, o)
        if pred is not None:
            model.add_end_before_start(vars.yo[pred], vars.xo[o])
            # station linking: one presence channel per candidate machine
            # equates "predecessor dropped off at m" with "this op picks
            # up at m"
            for m in sorted(instance.operation(pred).eligibility):
                link = model.add_interval(f"link[{o},m{m}]", 0, optional=True)
                vars.link[(o, m)] = link
                model.add_presence_sum(
                    link,
                    [
                        vars.ya[(pred, a.pickup, a.dropoff)]
                        for a in arcs_of[pred]
                        if a.dropoff == m
                    ],
                    SumRelation.EQUAL,
                )
                model.add_presence_sum(
                    link,
                    [vars.ya[(o, a.pickup, a.dropoff)] for a in arcs if a.pickup == m],
                    SumRelation.EQUAL,
                )

    for m in instance.machine_ids:
        members = [
            iv for (o, pickup, dropoff), iv in sorted(vars.ya.items()) if dropoff == m
        ]
        seq = model.add_sequence(f"w_m[{m}]", members)
        model.add_no_overlap(seq)
        vars.wm[m] = seq
    vars.wv = _bot_sequences(model, instance, vars.xlv, initial_deadhead)

    model.set_objective_max_end([vars.yo[o.id] for o in instance.operations])
    return model, vars


def _build_relaxation(instance: Instance) -> tuple[Model, RelaxationVars]:
    _require_valid(instance)
    model = Model()
    model.set_horizon(default_horizon(instance))
    vars = RelaxationVars()
    for op in instance.operations:
        o = op.id
        vars.yo[o] = model.add_interval(f"y[{o}]", None)
        for m in sorted(op.eligibility):
            vars.ym[(o, m)] = model.add_interval(
                f"y[{o},m{m}]", op.eligibility[m], optional=True
            )
        model.add_alternative(vars.yo[o], [vars.ym[(o, m)] for m in sorted(op.eligibility)])
        pred = predecessor(instance, o)
        if pred is not None:
            model.add_end_before_start(vars.yo[pred], vars.yo[o])
    for m in instance.machine_ids:
        members = [iv for (o, mm), iv in sorted(vars.ym.items()) if mm == m]
        seq = model.add_sequence(f"w_m[{m}]", members)
        model.add_no_overlap(seq)
        vars.wm[m] = seq
    model.set_objective_max_end([vars.yo[o.id] for o in instance.operations])
    return model, vars


def build_fjsp_relaxation(instance: Instance) -> Model:
    """Classical flexible job shop: machine choice, job precedence, and
    machine disjunction only.  Its optimum is a lower bound on the full
    problem's optimum."""
    model, _ = _build_relaxation(instance)
    return model


def extract_schedule(
    instance: Instance,
    vars: ArcModelVars | EmbeddedModelVars,
    assignment: Assignment,
) -> Schedule:
    """Turn an engine assignment into a Schedule."""
    op_assign: dict[int, OpAssignment] = {}
    transfer_assign: dict[int, tuple[LegAssignment, ...]] = {}
    if isinstance(vars, ArcModelVars):
        machine_options = list(vars.ym.items())
    else:
        machine_options = [
            ((o, dropoff), iv) for (o, _, dropoff), iv in vars.ya.items()
        ]
    chosen_machine: dict[int, tuple[int, int, int]] = {}
    for (o, m), iv in machine_options:
        t = assignment.get(iv)
        if t is not None:
            chosen_machine[o] = (m, t[0], t[1])
    leg_vars = vars.xolv if isinstance(vars, ArcModelVars) else vars.xlv
    for op in instance.operations:
        o = op.id
        if o not in chosen_machine:
            raise ValueError(
                f"assignment has no present machine option for operation {o}"
            )
        m, start, end = chosen_machine[o]
        op_assign[o] = OpAssignment(machine=m, start=start, end=end)
        legs = []
        for (oo, pickup, dropoff, position, v), iv in sorted(leg_vars.items()):
            if oo != o:
                continue
            t = assignment.get(iv)
            if t is None:
                continue
            spec = next(
                leg
                for leg in enumerate_arcs(instance, o)
                if (leg.pickup, leg.dropoff) == (pickup, dropoff)
            ).legs[position - 1]
            legs.append(
                LegAssignment(
                    pickup=spec.pickup,
                    dropoff=spec.dropoff,
                    position=position,
                    transbot=v,
                    start=t[0],
                    end=t[1],
                )
            )
        legs.sort(key=lambda leg: leg.position)
        transfer_assign[o] = tuple(legs)
    makespan = max((a.end for a in op_assign.values()), default=0)
    return Schedule(op_assign=op_assign, transfer_assign=transfer_assign, makespan=makespan)


def greedy_schedule(
    instance: Instance,
    machine_choice: dict[int, int],
    order: list[int],
    initial_deadhead: bool = True,
) -> Schedule | None:
    """Insert transfers into a fixed machine assignment, serving each
    leg with the earliest-available zone-compatible robot.  Returns None
    when some leg has no compatible robot.  ``order`` must respect job
    precedence."""
    machine_free: dict[int, int] = {m: 0 for m in instance.machine_ids}
    placed: dict[int, list[tuple[int, int]]] = {
        v.id: [] for v in instance.transbots
    }  # bot -> [(end, dropoff station)]
    op_end: dict[int, int] = {}
    op_assign: dict[int, OpAssignment] = {}
    transfer_assign: dict[int, tuple[LegAssignment, ...]] = {}

    def arrival(bot: int, pickup: int) -> int:
        """Earliest time the robot can be at the pickup station given
        every leg already on its plate (all-ordered-pairs deadheads)."""
        t = 0
        if initial_deadhead:
            init = instance.transbots[bot].initial_station
            t = instance.travel[init][pickup]
        for end, dropoff in placed[bot]:
            t = max(t, end + instance.travel[dropoff][pickup])
        return t

    for o in order:
        op = instance.operation(o)
        pred = predecessor(instance, o)
        pickup = instance.stocker if pred is None else machine_choice[pred]
        dropoff = machine_choice[o]
        ready = 0 if pred is None else op_end[pred]
        arc = next(
            a
            for a in enumerate_arcs(instance, o)
            if (a.pickup, a.dropoff) == (pickup, dropoff)
        )
        legs: list[LegAssignment] = []
        if not arc.legs:
            transfer_end = ready
        elif len(arc.legs) == 1:
            leg = arc.legs[0]
            bots = _zone_bots(instance, leg.zone)
            if not bots:
                return None
            best = min(
                ((max(ready, arrival(v, leg.pickup)), v) for v in bots),
            )
            start, v = best
            legs.append(
                LegAssignment(leg.pickup, leg.dropoff, 1, v, start, start + leg.travel)
            )
            placed[v].append((start + leg.travel, leg.dropoff))
            transfer_end = start + leg.travel
        else:
            first, second = arc.legs
            bots1 = _zone_bots(instance, first.zone)
            bots2 = _zone_bots(instance, second.zone)
            if not bots1 or not bots2:
                return None
            best = None
            for v1 in bots1:
                for v2 in bots2:
                    s1 = max(
                        ready,
                        arrival(v1, first.pickup),
                        arrival(v2, second.pickup) - first.travel,
                    )
                    key = (s1 + arc.total_travel, v1, v2, s1)
                    if best is None or key < best:
                        best = key
            assert best is not None
            _, v1, v2, s1 = best
            e1 = s1 + first.travel
            legs.append(LegAssignment(first.pickup, first.dropoff, 1, v1, s1, e1))
            legs.append(
                LegAssignment(second.pickup, second.dropoff, 2, v2, e1, e1 + second.travel)
            )
            placed[v1].append((e1, first.dropoff))
            placed[v2].append((e1 + second.travel, second.dropoff))
            transfer_end = e1 + second.travel
        start = max(transfer_end, machine_free[dropoff])
        end = start + op.eligibility[dropoff]
        machine_free[dropoff] = end
        op_end[o] = end
        op_assign[o] = OpAssignment(machine=dropoff, start=start, end=end)
        transfer_assign[o] = tuple(legs)
    schedule = Schedule(
        op_assign=op_assign,
        transfer_assign=transfer_assign,
        makespan=max((a.end for a in op_assign.values()), default=0),
    )
    return schedule


def schedule_to_assignment(
    instance: Instance,
    vars: ArcModelVars | EmbeddedModelVars,
    schedule: Schedule,
) -> Assignment:
    """Full engine assignment reproducing a schedule, usable as a warm
    start for the matching model."""
    assignment: Assignment = {}
    arc_of: dict[int, tuple[int, int]] = {}
    for op in instance.operations:
        o = op.id
        oa = schedule.op_assign[o]
        legs = schedule.transfer_assign.get(o, ())
        pred = predecessor(instance, o)
        pickup = (
            instance.stocker if pred is None else schedule.op_assign[pred].machine
        )
        arc_of[o] = (pickup, oa.machine)
        if legs:
            transfer = (legs[0].start, legs[-1].end)
        else:
            anchor = 0 if pred is None else schedule.op_assign[pred].end
            transfer = (anchor, anchor)
        assignment[vars.xo[o]] = transfer
        assignment[vars.yo[o]] = (oa.start, oa.end)

    if isinstance(vars, ArcModelVars):
        for (o, m), iv in vars.ym.items():
            oa = schedule.op_assign[o]
            assignment[iv] = (oa.start, oa.end) if oa.machine == m else None
        for (o, pickup, dropoff), iv in vars.xoa.items():
            assignment[iv] = (
                assignment[vars.xo[o]] if arc_of[o] == (pickup, dropoff) else None
            )
        leg_vars = vars.xolv
    else:
        for (o, pickup, dropoff), iv in vars.ya.items():
            oa = schedule.op_assign[o]
            assignment[iv] = (
                (oa.start, oa.end) if arc_of[o] == (pickup, dropoff) else None
            )
        for (o, pickup, dropoff), iv in vars.stay.items():
            assignment[iv] = (
                assignment[vars.xo[o]] if arc_of[o] == (pickup, dropoff) else None
            )
        for (o, pickup, dropoff), iv in vars.hull.items():
            assignment[iv] = (
                assignment[vars.xo[o]] if arc_of[o] == (pickup, dropoff) else None
            )
        for (o, m), iv in vars.link.items():
            pred = predecessor(instance, o)
            present = pred is not None and schedule.op_assign[pred].machine == m
            assignment[iv] = (0, 0) if present else None
        leg_vars = vars.xlv

    used = {
        (o, *arc_of[o], leg.position, leg.transbot): (leg.start, leg.end)
        for o, legs in schedule.transfer_assign.items()
        for leg in legs
    }
    for key, iv in leg_vars.items():
        assignment[iv] = used.get(key)
    return assignment


def solve_with_acceleration(
    instance: Instance,
    formulation: str,
    config: SolverConfig,
    accelerate: bool = True,
    initial_deadhead: bool = True,
) -> tuple[Schedule | None, SolveReport]:
    """Solve one formulation, optionally warm-started and bounded by the
    relaxation (10% of the time budget by default)."""
    if formulation == "arc":
        model, vars = build_arc_model(instance, initial_deadhead)
    elif formulation == "embedded":
        model, vars = build_embedded_model(instance, initial_deadhead)
    else:
        raise ValueError(f"unknown formulation {formulation!r}")

    lower_bound = config.lower_bound or 0
    warm_start = config.warm_start
    remaining = config.time_limit
    if accelerate:
        relax_model, relax_vars = _build_relaxation(instance)
        slice_limit = max(config.time_limit * 0.1, 0.05)
        relax_report = solve(
            relax_model,
            replace(config, time_limit=slice_limit, warm_start=None, lower_bound=None),
        )
        remaining = max(config.time_limit - relax_report.runtime_seconds, 0.05)
        lower_bound = max(lower_bound, relax_report.bound)
        if warm_start is None:
            if relax_report.incumbent is not None:
                machine_choice: dict[int, int] = {}
                starts: dict[int, int] = {}
                for (o, m), iv in relax_vars.ym.items():
                    t = relax_report.incumbent.get(iv)
                    if t is not None:
                        machine_choice[o] = m
                        starts[o] = t[0]
                order = sorted(
                    machine_choice,
                    key=lambda o: (
                        starts[o],
                        instance.operation(o).job,
                        instance.operation(o).order_index,
                    ),
                )
            else:
                # relaxation slice produced nothing: fall back to the
                # cheapest machine per operation, jobs interleaved by rank
                machine_choice = {
                    op.id: min(op.eligibility, key=lambda m: (op.eligibility[m], m))
                    for op in instance.operations
                }
                order = sorted(
                    machine_choice,
                    key=lambda o: (
                        instance.operation(o).order_index,
                        instance.operation(o).job,
                    ),
                )
            greedy = greedy_schedule(instance, machine_choice, order, initial_deadhead)
            if greedy is not None:
                warm_start = schedule_to_assignment(instance, vars, greedy)

    report = solve(
        model,
        replace(
            config,
            time_limit=remaining,
            warm_start=warm_start,
            lower_bound=lower_bound,
        ),
    )
    schedule = None
    if report.incumbent is not None:
        schedule = extract_schedule(instance, vars, report.incumbent)
    return schedule, report
