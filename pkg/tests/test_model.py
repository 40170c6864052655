"""Data-model invariants: instance validation, predecessors, makespan."""

from __future__ import annotations

from dataclasses import replace

import pytest

from conftest import make_tiny
from zoneshop.model import (
    OpAssignment,
    Schedule,
    Station,
    StationKind,
    Zone,
    compute_makespan,
    predecessor,
    validate_instance,
)
from zoneshop.verify import fixture_tiny1


def test_tiny1_is_valid():
    assert validate_instance(fixture_tiny1()) == []


def test_station_accessors():
    instance = fixture_tiny1()
    assert instance.stocker == 0
    assert instance.handoff == 3
    assert instance.machine_ids == (1, 2)
    assert instance.zone_of_machine(1) == 1
    assert instance.zone_of_machine(2) == 2
    with pytest.raises(ValueError):
        instance.zone_of_machine(0)


def test_predecessor_chain():
    instance = fixture_tiny1()
    assert predecessor(instance, 0) is None
    assert predecessor(instance, 1) == 0
    with pytest.raises(KeyError):
        instance.operation(7)


def test_compute_makespan_ignores_transfers():
    instance = fixture_tiny1()
    schedule = Schedule(
        op_assign={0: OpAssignment(1, 2, 7), 1: OpAssignment(2, 14, 20)},
        transfer_assign={0: (), 1: ()},
        makespan=0,
    )
    assert compute_makespan(instance, schedule) == 20


def test_compute_makespan_missing_operation():
    instance = fixture_tiny1()
    schedule = Schedule(
        op_assign={0: OpAssignment(1, 2, 7)}, transfer_assign={}, makespan=0
    )
    with pytest.raises(KeyError):
        compute_makespan(instance, schedule)


def test_validation_flags_machine_without_zone():
    instance = fixture_tiny1()
    stations = list(instance.stations)
    stations[1] = Station(1, StationKind.MACHINE, zone=None)
    broken = replace(instance, stations=tuple(stations))
    assert any("carries no zone" in p for p in validate_instance(broken))


def test_validation_flags_duplicate_stocker():
    instance = fixture_tiny1()
    stations = list(instance.stations)
    stations[3] = Station(3, StationKind.STOCKER)
    broken = replace(instance, stations=tuple(stations))
    problems = validate_instance(broken)
    assert any("stocker" in p for p in problems)
    assert any("handoff" in p for p in problems)


def test_validation_flags_unzoned_machine_and_empty_zone():
    instance = fixture_tiny1()
    zones = (
        instance.zones[0],
        Zone(2, machines=frozenset(), transbots=frozenset()),
    )
    broken = replace(instance, zones=zones)
    problems = validate_instance(broken)
    assert any("belongs to no zone" in p for p in problems)
    assert any("no transbot" in p for p in problems)


def test_validation_flags_bad_travel_matrix():
    instance = fixture_tiny1()
    travel = [list(row) for row in instance.travel]
    travel[0][0] = 3
    travel[1][2] = -1
    broken = replace(instance, travel=tuple(tuple(r) for r in travel))
    problems = validate_instance(broken)
    assert any("expected 0" in p for p in problems)
    assert any("negative" in p for p in problems)


def test_validation_flags_bad_job_order():
    instance = fixture_tiny1()
    ops = list(instance.operations)
    ops[1] = replace(ops[1], order_index=3)
    broken = replace(instance, operations=tuple(ops))
    assert any("order indices" in p for p in validate_instance(broken))


def test_random_tiny_instances_are_valid():
    for seed in range(25):
        assert validate_instance(make_tiny(seed)) == []
