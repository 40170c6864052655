"""Transfer routing: arc-to-leg decomposition and the leg transition matrix.

A transfer arc connects a pickup station to a dropoff machine.  Within one
zone the arc is a single robot leg; across zones it splits into two legs
that meet at the handoff station; when pickup and dropoff coincide no leg
is needed at all.  Robot sequencing charges deadhead travel between
consecutive legs through a transition matrix indexed by leg id.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import Instance, StationKind, predecessor


@dataclass(frozen=True)
class Leg:
    id: int
    arc_key: tuple[int, int]  # (pickup station, dropoff station) of the parent arc
    position: int  # 1 or 2 within the arc
    pickup: int
    dropoff: int
    zone: int
    travel: int


@dataclass(frozen=True)
class ArcSpec:
    pickup: int
    dropoff: int
    legs: tuple[Leg, ...]
    total_travel: int


@dataclass(frozen=True)
class LegTransitionMatrix:
    """entry[l][l'] = station travel from dropoff of leg l to pickup of leg l'."""

    entries: tuple[tuple[int, ...], ...]

    def __getitem__(self, leg_id: int) -> tuple[int, ...]:
        return self.entries[leg_id]


def decompose_arc(instance: Instance, pickup: int, dropoff: int) -> ArcSpec:
    """Split the pickup->dropoff transfer into its zone-bound legs.

    Same station: no legs.  Same zone or stocker pickup: one leg, assigned
    to the dropoff machine's zone.  Different zones: two legs chained
    through the handoff station, each in the zone of its machine endpoint.
    """
    stations = instance.stations
    if stations[dropoff].kind is not StationKind.MACHINE:
        raise ValueError(f"dropoff station {dropoff} is not a machine")
    if stations[pickup].kind is StationKind.HANDOFF:
        raise ValueError("pickup at the handoff station is not a valid arc")
    if stations[pickup].kind is StationKind.MACHINE:
        pickup_zone = instance.zone_of_machine(pickup)
    elif stations[pickup].kind is StationKind.STOCKER:
        pickup_zone = None  # stocker is zoneless and reachable from every zone
    else:
        raise ValueError(f"pickup station {pickup} is neither machine nor stocker")

    if pickup == dropoff:
        return ArcSpec(pickup=pickup, dropoff=dropoff, legs=(), total_travel=0)

    dropoff_zone = instance.zone_of_machine(dropoff)
    key = (pickup, dropoff)
    if pickup_zone is None or pickup_zone == dropoff_zone:
        leg = Leg(
            id=-1,
            arc_key=key,
            position=1,
            pickup=pickup,
            dropoff=dropoff,
            zone=dropoff_zone if pickup_zone is None else pickup_zone,
            travel=instance.travel[pickup][dropoff],
        )
        return ArcSpec(pickup=pickup, dropoff=dropoff, legs=(leg,), total_travel=leg.travel)

    h = instance.handoff
    leg1 = Leg(
        id=-1,
        arc_key=key,
        position=1,
        pickup=pickup,
        dropoff=h,
        zone=pickup_zone,
        travel=instance.travel[pickup][h],
    )
    leg2 = Leg(
        id=-1,
        arc_key=key,
        position=2,
        pickup=h,
        dropoff=dropoff,
        zone=dropoff_zone,
        travel=instance.travel[h][dropoff],
    )
    return ArcSpec(
        pickup=pickup,
        dropoff=dropoff,
        legs=(leg1, leg2),
        total_travel=leg1.travel + leg2.travel,
    )


def enumerate_arcs(instance: Instance, op_id: int) -> list[ArcSpec]:
    """All viable transfer arcs for an operation.

    First operations are picked up at the stocker; later ones from every
    machine eligible for the predecessor.  Same-machine pairs are kept
    with an empty leg list.
    """
    op = instance.operation(op_id)
    dropoffs = sorted(op.eligibility)
    pred = predecessor(instance, op_id)
    if pred is None:
        pickups = [instance.stocker]
    else:
        pickups = sorted(instance.operation(pred).eligibility)
    return [decompose_arc(instance, m, m2) for m in pickups for m2 in dropoffs]


def enumerate_legs(instance: Instance) -> list[Leg]:
    """Global leg set shared by both formulations.

    One entry per (pickup, dropoff, position) over all machine pairs plus
    stocker->machine pairs, with ids assigned densely in sorted order.
    """
    machines = instance.machine_ids
    pickups = [instance.stocker, *machines]
    raw: list[Leg] = []
    for p in pickups:
        for d in machines:
            if p == d:
                continue
            raw.extend(decompose_arc(instance, p, d).legs)
    raw.sort(key=lambda leg: (leg.arc_key[0], leg.arc_key[1], leg.position))
    return [
        Leg(
            id=i,
            arc_key=leg.arc_key,
            position=leg.position,
            pickup=leg.pickup,
            dropoff=leg.dropoff,
            zone=leg.zone,
            travel=leg.travel,
        )
        for i, leg in enumerate(raw)
    ]


def leg_index(legs: list[Leg]) -> dict[tuple[int, int, int], Leg]:
    """Lookup from (pickup station, dropoff station, position) of the arc."""
    return {(leg.arc_key[0], leg.arc_key[1], leg.position): leg for leg in legs}


def build_leg_matrix(instance: Instance, legs: list[Leg]) -> LegTransitionMatrix:
    n = len(legs)
    ids = sorted(leg.id for leg in legs)
    if ids != list(range(n)):
        raise ValueError("leg ids must be dense 0..n-1 without duplicates")
    by_id = {leg.id: leg for leg in legs}
    entries = tuple(
        tuple(instance.travel[by_id[i].dropoff][by_id[j].pickup] for j in range(n))
        for i in range(n)
    )
    return LegTransitionMatrix(entries=entries)
