"""Validator and brute-force oracle behavior."""

from __future__ import annotations

import random
from dataclasses import replace

import pytest

from conftest import MUTATIONS, make_tiny
from zoneshop.model import LegAssignment, OpAssignment, Schedule
from zoneshop.verify import (
    OracleError,
    OracleLimits,
    ViolationKind,
    brute_force_optimal,
    fixture_tiny1,
    validate_schedule,
)


def test_tiny1_oracle_value_and_schedule():
    instance = fixture_tiny1()
    schedule, makespan = brute_force_optimal(instance)
    assert makespan == 20
    assert schedule.makespan == 20
    assert validate_schedule(instance, schedule) == []
    # the job is forced across the zone boundary: 1 stocker leg + 2 legs
    assert len(schedule.transfer_assign[0]) == 1
    assert len(schedule.transfer_assign[1]) == 2
    bots = {leg.transbot for leg in schedule.transfer_assign[1]}
    assert bots == {0, 1}


def test_oracle_is_deterministic():
    instance = make_tiny(11)
    first = brute_force_optimal(instance)
    second = brute_force_optimal(instance)
    assert first == second


def test_oracle_rejects_oversized_instances():
    instance = fixture_tiny1()
    with pytest.raises(OracleError):
        brute_force_optimal(instance, OracleLimits(max_operations=1))
    with pytest.raises(OracleError):
        brute_force_optimal(instance, OracleLimits(max_machines=1))
    with pytest.raises(OracleError):
        brute_force_optimal(instance, OracleLimits(max_transbots=1))


def test_oracle_never_beaten_by_sampled_schedules():
    """Any validated schedule has makespan >= the oracle optimum."""
    instance = make_tiny(4, max_ops=3)
    _, optimum = brute_force_optimal(instance)
    rng = random.Random(0)
    found = 0
    for _ in range(200):
        schedule = _random_schedule(instance, rng)
        if validate_schedule(instance, schedule):
            continue
        found += 1
        assert schedule.makespan >= optimum
    assert found > 0


def _random_schedule(instance, rng) -> Schedule:
    """Right-shifted random-order schedule; often valid, never below the
    optimum when it is."""
    from zoneshop.formulations import greedy_schedule

    machine_choice = {
        op.id: rng.choice(sorted(op.eligibility)) for op in instance.operations
    }
    order = []
    pending = {j: list(ops) for j, ops in enumerate(instance.jobs)}
    while any(pending.values()):
        j = rng.choice([j for j, ops in pending.items() if ops])
        order.append(pending[j].pop(0))
    schedule = greedy_schedule(instance, machine_choice, order)
    assert schedule is not None
    return schedule


def test_validator_passes_oracle_schedules():
    for seed in range(6):
        instance = make_tiny(seed, max_ops=3)
        schedule, _ = brute_force_optimal(instance)
        assert validate_schedule(instance, schedule) == []


def test_validator_requires_complete_schedules():
    instance = fixture_tiny1()
    schedule, _ = brute_force_optimal(instance)
    partial = Schedule(
        {0: schedule.op_assign[0]}, {0: schedule.transfer_assign[0]}, 0
    )
    with pytest.raises(KeyError):
        validate_schedule(instance, partial)


def test_initial_deadhead_flag_gates_first_leg_rule():
    instance = fixture_tiny1()
    schedule, _ = brute_force_optimal(instance)
    legs = dict(schedule.transfer_assign)
    first = legs[0][0]
    length = first.end - first.start
    legs[0] = (
        LegAssignment(first.pickup, first.dropoff, 1, first.transbot, 0, length),
    )
    # the first stocker leg at time 0 is fine: the robot starts there
    moved = Schedule(dict(schedule.op_assign), legs, schedule.makespan)
    kinds_on = {v.kind for v in validate_schedule(instance, moved)}
    assert ViolationKind.DEADHEAD_SHORTFALL not in kinds_on


@pytest.mark.parametrize("kind", sorted(MUTATIONS))
def test_each_mutation_kind_is_rejected(kind):
    rng = random.Random(hash(kind) & 0xFFFF)
    applied = 0
    for seed in range(12):
        instance = make_tiny(seed, max_ops=3)
        schedule, _ = brute_force_optimal(instance)
        mutated = MUTATIONS[kind](instance, schedule, rng)
        if mutated is None:
            continue
        applied += 1
        violations = validate_schedule(instance, mutated)
        assert violations, f"{kind} mutation on seed {seed} was not rejected"
    assert applied >= 3, f"mutation {kind} found too few target sites"


def test_mutations_report_the_targeted_kind_on_tiny1():
    instance = fixture_tiny1()
    schedule, _ = brute_force_optimal(instance)
    rng = random.Random(1)
    expected = {
        "Precedence": ViolationKind.PRECEDENCE,
        "ZoneMismatch": ViolationKind.ZONE_MISMATCH,
        "StationLink": ViolationKind.STATION_LINK,
        "LegOrder": ViolationKind.LEG_ORDER,
        "DurationMismatch": ViolationKind.DURATION_MISMATCH,
    }
    for name, kind in expected.items():
        mutated = MUTATIONS[name](instance, schedule, rng)
        assert mutated is not None
        kinds = {v.kind for v in validate_schedule(instance, mutated)}
        assert kind in kinds, f"{name} should report {kind}, got {kinds}"
