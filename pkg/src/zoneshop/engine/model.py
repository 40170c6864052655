"""Interval-scheduling constraint model.

The engine works on optional interval variables (presence, start, end,
usually a fixed length), sequence variables over typed members with a
transition matrix, and a small fixed set of scheduling constraints:
alternative, span, end-before-start, presence sums, guarded precedence,
and no-overlap with all-ordered-pairs transition times.  The objective is
always to minimize the maximum end time over a designated interval set.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field


class SumRelation(enum.Enum):
    EQUAL = "equal"
    AT_MOST_ONE = "at_most_one"


@dataclass(frozen=True)
class IntervalVar:
    id: int
    name: str
    optional: bool
    length: int | None  # None: length is free and pinned by alternative/span


@dataclass(frozen=True)
class SequenceVar:
    id: int
    name: str
    members: tuple[int, ...]
    types: tuple[int, ...] | None  # row/column of the transition matrix per member


@dataclass(frozen=True)
class Alternative:
    master: int
    options: tuple[int, ...]


@dataclass(frozen=True)
class Span:
    master: int
    covered: tuple[int, ...]


@dataclass(frozen=True)
class EndBeforeStart:
    a: int
    b: int


@dataclass(frozen=True)
class PresenceSum:
    lhs: int
    rhs: tuple[int, ...]
    relation: SumRelation


@dataclass(frozen=True)
class CondPrecedence:
    guard: int  # presence of this interval activates the precedence
    a: int
    b: int


@dataclass(frozen=True)
class NoOverlap:
    sequence: int
    matrix: tuple[tuple[int, ...], ...] | None
    release: tuple[int, ...] | None  # per-member earliest start (initial deadhead)


class Model:
    def __init__(self) -> None:
        self.intervals: list[IntervalVar] = []
        self.sequences: list[SequenceVar] = []
        self.alternatives: list[Alternative] = []
        self.spans: list[Span] = []
        self.precedences: list[EndBeforeStart] = []
        self.presence_sums: list[PresenceSum] = []
        self.cond_precedences: list[CondPrecedence] = []
        self.no_overlaps: list[NoOverlap] = []
        self.objective_set: tuple[int, ...] = ()
        self.horizon: int = 1 << 30

    def add_interval(
        self, name: str, length: int | None, optional: bool = False
    ) -> int:
        if length is not None and length < 0:
            raise ValueError(f"interval {name} has negative length {length}")
        iv = IntervalVar(id=len(self.intervals), name=name, optional=optional, length=length)
        self.intervals.append(iv)
        return iv.id

    def _check_ref(self, *ids: int) -> None:
        for i in ids:
            if not 0 <= i < len(self.intervals):
                raise ValueError(f"dangling interval reference {i}")

    def add_alternative(self, master: int, options: list[int]) -> None:
        if not options:
            raise ValueError("alternative needs at least one option")
        self._check_ref(master, *options)
        for o in options:
            if not self.intervals[o].optional:
                raise ValueError("alternative options must be optional intervals")
        self.alternatives.append(Alternative(master, tuple(options)))

    def add_span(self, master: int, covered: list[int]) -> None:
        if not covered:
            raise ValueError("span needs at least one covered interval")
        self._check_ref(master, *covered)
        self.spans.append(Span(master, tuple(covered)))

    def add_end_before_start(self, a: int, b: int) -> None:
        self._check_ref(a, b)
        self.precedences.append(EndBeforeStart(a, b))

    def add_presence_sum(self, lhs: int, rhs: list[int], relation: SumRelation) -> None:
        self._check_ref(lhs, *rhs)
        if relation is SumRelation.EQUAL and not rhs and not self.intervals[lhs].optional:
            raise ValueError("presence sum over empty set with a required lhs")
        self.presence_sums.append(PresenceSum(lhs, tuple(rhs), relation))

    def add_conditional_precedence(self, guard: int, a: int, b: int) -> None:
        self._check_ref(guard, a, b)
        self.cond_precedences.append(CondPrecedence(guard, a, b))

    def add_sequence(
        self, name: str, members: list[int], types: list[int] | None = None
    ) -> int:
        self._check_ref(*members)
        if types is not None and len(types) != len(members):
            raise ValueError("one type index per sequence member required")
        seq = SequenceVar(
            id=len(self.sequences),
            name=name,
            members=tuple(members),
            types=None if types is None else tuple(types),
        )
        self.sequences.append(seq)
        return seq.id

    def add_no_overlap(
        self,
        sequence: int,
        matrix: tuple[tuple[int, ...], ...] | None = None,
        release: list[int] | None = None,
    ) -> None:
        if not 0 <= sequence < len(self.sequences):
            raise ValueError(f"dangling sequence reference {sequence}")
        seq = self.sequences[sequence]
        if matrix is not None:
            if seq.types is None:
                raise ValueError("a typed sequence is required with a transition matrix")
            n = len(matrix)
            for t in seq.types:
                if not 0 <= t < n:
                    raise ValueError(f"member type {t} outside matrix of size {n}")
        if release is not None and len(release) != len(seq.members):
            raise ValueError("one release time per sequence member required")
        self.no_overlaps.append(
            NoOverlap(sequence, matrix, None if release is None else tuple(release))
        )

    def set_objective_max_end(self, interval_ids: list[int]) -> None:
        self._check_ref(*interval_ids)
        self.objective_set = tuple(interval_ids)

    def set_horizon(self, horizon: int) -> None:
        if horizon < 0:
            raise ValueError("horizon must be nonnegative")
        self.horizon = horizon
