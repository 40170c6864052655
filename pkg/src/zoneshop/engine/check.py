"""Re-evaluation of complete assignments against every model constraint.

Used by the search to certify candidate solutions and by the test suite
to audit reported solutions.  Deliberately naive: direct arithmetic over
the assignment, no shared state with the propagation code.
"""

from __future__ import annotations

from .model import Model, SumRelation

Assignment = dict[int, tuple[int, int] | None]  # id -> (start, end) or absent


def evaluate(model: Model, assignment: Assignment) -> list[str]:
    """Return a description of every violated constraint (empty = valid)."""
    problems: list[str] = []

    def times(i: int) -> tuple[int, int] | None:
        return assignment.get(i)

    for iv in model.intervals:
        t = times(iv.id)
        if t is None:
            if not iv.optional:
                problems.append(f"required interval {iv.name} is absent")
            continue
        start, end = t
        if end < start:
            problems.append(f"interval {iv.name} ends before it starts")
        if iv.length is not None and end - start != iv.length:
            problems.append(
                f"interval {iv.name} has length {end - start}, declared {iv.length}"
            )
        if start < 0 or end > model.horizon:
            problems.append(f"interval {iv.name} falls outside the horizon")

    for alt in model.alternatives:
        master = times(alt.master)
        present = [o for o in alt.options if times(o) is not None]
        if master is None:
            if present:
                problems.append(
                    f"alternative: master {alt.master} absent but options present"
                )
        else:
            if len(present) != 1:
                problems.append(
                    f"alternative: master {alt.master} needs exactly one of "
                    f"{len(alt.options)} options present, found {len(present)}"
                )
            elif times(present[0]) != master:
                problems.append(
                    f"alternative: option {present[0]} not synchronized with "
                    f"master {alt.master}"
                )

    for span in model.spans:
        master = times(span.master)
        present = [times(c) for c in span.covered if times(c) is not None]
        if master is None:
            if present:
                problems.append(f"span: master {span.master} absent but covered present")
        elif not present:
            problems.append(f"span: master {span.master} present with nothing covered")
        else:
            lo = min(t[0] for t in present)
            hi = max(t[1] for t in present)
            if master != (lo, hi):
                problems.append(
                    f"span: master {span.master} is {master}, covered span is ({lo}, {hi})"
                )

    for pre in model.precedences:
        a, b = times(pre.a), times(pre.b)
        if a is not None and b is not None and b[0] < a[1]:
            problems.append(
                f"precedence: interval {pre.b} starts at {b[0]} before "
                f"interval {pre.a} ends at {a[1]}"
            )

    for ps in model.presence_sums:
        count = sum(1 for r in ps.rhs if times(r) is not None)
        if ps.relation is SumRelation.EQUAL:
            want = 0 if times(ps.lhs) is None else 1
            if count != want:
                problems.append(
                    f"presence sum: {count} of {len(ps.rhs)} present, expected {want}"
                )
        else:
            if count > 1:
                problems.append(f"presence sum: {count} present, at most one allowed")

    for cp in model.cond_precedences:
        if times(cp.guard) is None:
            continue
        a, b = times(cp.a), times(cp.b)
        if a is not None and b is not None and b[0] < a[1]:
            problems.append(
                f"guarded precedence: interval {cp.b} starts at {b[0]} before "
                f"interval {cp.a} ends at {a[1]}"
            )

    for no in model.no_overlaps:
        seq = model.sequences[no.sequence]
        present = [
            (times(m), idx)
            for idx, m in enumerate(seq.members)
            if times(m) is not None
        ]
        present.sort(key=lambda e: (e[0][0], e[0][1], seq.members[e[1]]))
        if no.release is not None:
            for t, idx in present:
                if t[0] < no.release[idx]:
                    problems.append(
                        f"sequence {seq.name}: member {seq.members[idx]} starts at "
                        f"{t[0]} before its release {no.release[idx]}"
                    )
        for i, (ta, ia) in enumerate(present):
            for tb, ib in present[i + 1 :]:
                if no.matrix is None:
                    delta = 0
                else:
                    delta = no.matrix[seq.types[ia]][seq.types[ib]]
                if tb[0] < ta[1] + delta:
                    # the sorted order is the only admissible one unless the
                    # reversed pair also fits (zero-duration ties)
                    rev = 0 if no.matrix is None else no.matrix[seq.types[ib]][seq.types[ia]]
                    if ta[0] < tb[1] + rev:
                        problems.append(
                            f"sequence {seq.name}: members {seq.members[ia]} and "
                            f"{seq.members[ib]} violate the transition gap"
                        )

    return problems
