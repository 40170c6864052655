"""Branch-and-bound search over interval models.

Propagation keeps start/end bounds and presence states; branching fixes
presence literals first, then pair orientations inside sequences, then
start times.  Every candidate solution is certified by the independent
assignment evaluator before it becomes the incumbent, so reported
solutions are sound by construction.  A geometric restart schedule keeps
only the incumbent bound between restarts; parallel workers share the
incumbent through a lock-protected cell.
"""

from __future__ import annotations

import random
import threading
import time
from dataclasses import dataclass, field

from .check import Assignment, evaluate
from .model import Model, SumRelation

UNKNOWN, PRESENT, ABSENT = 0, 1, 2


@dataclass(frozen=True)
class SolverConfig:
    time_limit: float = 600.0
    workers: int = 1
    seed: int = 0
    warm_start: Assignment | None = None
    lower_bound: int | None = None
    node_limit: int | None = None  # optional hard cap, mostly for tests

    def __post_init__(self) -> None:
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.time_limit <= 0:
            raise ValueError("time limit must be positive")


@dataclass
class SolveReport:
    status: str  # Optimal | Feasible | Infeasible | Timeout-NoSolution
    incumbent: Assignment | None
    objective: int | None
    bound: int
    runtime_seconds: float
    node_count: int
    # (seconds-from-start, objective) per incumbent improvement, in order
    trace: tuple[tuple[float, int], ...] = ()


class _Fail(Exception):
    pass


class _State:
    __slots__ = ("presence", "est", "lst", "eet", "let", "edges")

    def __init__(self, presence, est, lst, eet, let, edges):
        self.presence = presence
        self.est = est
        self.lst = lst
        self.eet = eet
        self.let = let
        self.edges = edges  # decided precedence edges (a, b, delta)

    def copy(self) -> "_State":
        return _State(
            list(self.presence),
            list(self.est),
            list(self.lst),
            list(self.eet),
            list(self.let),
            list(self.edges),
        )


class _Shared:
    """Best incumbent exchanged between workers."""

    def __init__(self) -> None:
        self.lock = threading.Lock()
        self.objective: int | None = None
        self.incumbent: Assignment | None = None
        self.stop = threading.Event()
        self.exhausted = False
        self.nodes = 0
        self.t0 = time.monotonic()
        self.trace: list[tuple[float, int]] = []

    def offer(self, objective: int, assignment: Assignment) -> None:
        with self.lock:
            if self.objective is None or objective < self.objective:
                self.objective = objective
                self.incumbent = dict(assignment)
                self.trace.append((time.monotonic() - self.t0, objective))

    def ub_exclusive(self, horizon: int) -> int:
        with self.lock:
            return horizon if self.objective is None else self.objective - 1


def solve(model: Model, config: SolverConfig) -> SolveReport:
    t0 = time.monotonic()
    deadline = t0 + config.time_limit
    shared = _Shared()

    if config.warm_start is not None:
        if not evaluate(model, config.warm_start):
            obj = _objective_of(model, config.warm_start)
            shared.offer(obj, config.warm_start)

    solver = _Worker(model, config, shared, seed=config.seed, deadline=deadline)
    root_bound = solver.root_bound()
    if root_bound is None:
        return SolveReport(
            status="Infeasible",
            incumbent=None,
            objective=None,
            bound=config.lower_bound or 0,
            runtime_seconds=time.monotonic() - t0,
            node_count=0,
        )

    if config.workers == 1:
        solver.run()
    else:
        workers = [
            _Worker(model, config, shared, seed=config.seed + k, deadline=deadline)
            for k in range(config.workers)
        ]
        threads = [threading.Thread(target=w.run, daemon=True) for w in workers]
        for t in threads:
            t.start()
        for t in threads:
            t.join()

    runtime = time.monotonic() - t0
    objective = shared.objective
    if shared.exhausted:
        if objective is None:
            status, bound = "Infeasible", root_bound
        else:
            status, bound = "Optimal", objective
    else:
        if objective is None:
            status, bound = "Timeout-NoSolution", root_bound
        else:
            status, bound = "Feasible", root_bound
    return SolveReport(
        status=status,
        incumbent=shared.incumbent,
        objective=objective,
        bound=bound,
        runtime_seconds=runtime,
        node_count=shared.nodes,
        trace=tuple(shared.trace),
    )


def _objective_of(model: Model, assignment: Assignment) -> int:
    ends = [
        assignment[i][1]
        for i in model.objective_set
        if assignment.get(i) is not None
    ]
    return max(ends, default=0)


class _Worker:
    def __init__(
        self,
        model: Model,
        config: SolverConfig,
        shared: _Shared,
        seed: int,
        deadline: float,
    ) -> None:
        self.model = model
        self.config = config
        self.shared = shared
        self.rng = random.Random(seed)
        self.deadline = deadline
        self.horizon = model.horizon
        self.lengths = [iv.length for iv in model.intervals]
        self.optional = [iv.optional for iv in model.intervals]
        self.n = len(model.intervals)
        self.objective_set = list(model.objective_set)
        self.lower_bound = config.lower_bound or 0
        self.nodes = 0
        # static tables for the no-overlap constraints
        self.overlaps = []
        for no in model.no_overlaps:
            seq = model.sequences[no.sequence]
            self.overlaps.append(
                (list(seq.members), seq.types, no.matrix, no.release)
            )

    # ------------------------------------------------------------------ state

    def _root_state(self) -> _State:
        est = [0] * self.n
        lst = []
        eet = []
        let = [self.horizon] * self.n
        presence = []
        for i in range(self.n):
            length = self.lengths[i]
            if length is None:
                lst.append(self.horizon)
                eet.append(0)
            else:
                lst.append(max(self.horizon - length, 0))
                eet.append(length)
            presence.append(UNKNOWN if self.optional[i] else PRESENT)
        return _State(presence, est, lst, eet, let, [])

    def root_bound(self) -> int | None:
        """Lower bound on the objective after root propagation; None when
        the root is already infeasible."""
        state = self._root_state()
        try:
            self._propagate(state, ub_exclusive=self.horizon)
        except _Fail:
            return None
        bound = self.lower_bound
        for i in self.objective_set:
            if state.presence[i] != ABSENT:
                bound = max(bound, state.eet[i])
        return bound

    # ------------------------------------------------------------ propagation

    def _tighten(self, s: _State, i: int, est=None, lst=None, eet=None, let=None) -> bool:
        """Narrow bounds of interval i; returns True on change.

        Emptying the domain of an undecided optional interval forces it
        absent; emptying a present interval fails the node."""
        if s.presence[i] == ABSENT:
            return False
        changed = False
        if est is not None and est > s.est[i]:
            s.est[i] = est
            changed = True
        if lst is not None and lst < s.lst[i]:
            s.lst[i] = lst
            changed = True
        if eet is not None and eet > s.eet[i]:
            s.eet[i] = eet
            changed = True
        if let is not None and let < s.let[i]:
            s.let[i] = let
            changed = True
        if not changed:
            return False
        length = self.lengths[i]
        if length is None:
            if s.eet[i] < s.est[i]:
                s.eet[i] = s.est[i]
            if s.lst[i] > s.let[i]:
                s.lst[i] = s.let[i]
        else:
            if s.eet[i] < s.est[i] + length:
                s.eet[i] = s.est[i] + length
            if s.est[i] < s.eet[i] - length:
                s.est[i] = s.eet[i] - length
            if s.let[i] > s.lst[i] + length:
                s.let[i] = s.lst[i] + length
            if s.lst[i] > s.let[i] - length:
                s.lst[i] = s.let[i] - length
        if s.est[i] > s.lst[i] or s.eet[i] > s.let[i]:
            self._set_absent(s, i)
        return True

    def _set_absent(self, s: _State, i: int) -> bool:
        if s.presence[i] == ABSENT:
            return False
        if s.presence[i] == PRESENT or not self.optional[i]:
            raise _Fail
        s.presence[i] = ABSENT
        return True

    def _set_present(self, s: _State, i: int) -> bool:
        if s.presence[i] == PRESENT:
            return False
        if s.presence[i] == ABSENT:
            raise _Fail
        s.presence[i] = PRESENT
        return True

    def _propagate(self, s: _State, ub_exclusive: int) -> None:
        for i in self.objective_set:
            self._tighten(s, i, let=ub_exclusive)
        changed = True
        while changed:
            changed = False
            changed |= self._sweep_alternatives(s)
            changed |= self._sweep_spans(s)
            changed |= self._sweep_precedences(s)
            changed |= self._sweep_presence_sums(s)
            changed |= self._sweep_cond_precedences(s)
            changed |= self._sweep_overlaps(s)
            changed |= self._sweep_edges(s)

    def _sweep_alternatives(self, s: _State) -> bool:
        changed = False
        for alt in self.model.alternatives:
            m = alt.master
            if s.presence[m] == ABSENT:
                for o in alt.options:
                    changed |= self._set_absent(s, o)
                continue
            present = [o for o in alt.options if s.presence[o] == PRESENT]
            if len(present) > 1:
                raise _Fail
            if present:
                chosen = present[0]
                changed |= self._set_present(s, m)
                for o in alt.options:
                    if o != chosen:
                        changed |= self._set_absent(s, o)
                changed |= self._tighten(
                    s, m, est=s.est[chosen], lst=s.lst[chosen],
                    eet=s.eet[chosen], let=s.let[chosen],
                )
                changed |= self._tighten(
                    s, chosen, est=s.est[m], lst=s.lst[m],
                    eet=s.eet[m], let=s.let[m],
                )
                continue
            possible = [o for o in alt.options if s.presence[o] != ABSENT]
            if not possible:
                changed |= self._set_absent(s, m)
                continue
            if s.presence[m] == PRESENT and len(possible) == 1:
                changed |= self._set_present(s, possible[0])
            # options follow the master's window; master stays in the hull
            for o in possible:
                changed |= self._tighten(
                    s, o, est=s.est[m], lst=s.lst[m], eet=s.eet[m], let=s.let[m]
                )
            possible = [o for o in alt.options if s.presence[o] != ABSENT]
            if not possible:
                changed |= self._set_absent(s, m)
                continue
            changed |= self._tighten(
                s, m,
                est=min(s.est[o] for o in possible),
                lst=max(s.lst[o] for o in possible),
                eet=min(s.eet[o] for o in possible),
                let=max(s.let[o] for o in possible),
            )
        return changed

    def _sweep_spans(self, s: _State) -> bool:
        changed = False
        for span in self.model.spans:
            m = span.master
            if s.presence[m] == ABSENT:
                for c in span.covered:
                    changed |= self._set_absent(s, c)
                continue
            present = [c for c in span.covered if s.presence[c] == PRESENT]
            possible = [c for c in span.covered if s.presence[c] != ABSENT]
            if present:
                changed |= self._set_present(s, m)
            elif not possible:
                changed |= self._set_absent(s, m)
                continue
            if not possible:
                raise _Fail
            args: dict[str, int] = {
                "est": min(s.est[c] for c in possible),
                "let": max(s.let[c] for c in possible),
            }
            if present:
                args["lst"] = min(s.lst[c] for c in present)
                args["eet"] = max(s.eet[c] for c in present)
            changed |= self._tighten(s, m, **args)
            if s.presence[m] == PRESENT:
                for c in possible:
                    changed |= self._tighten(s, c, est=s.est[m], let=s.let[m])
        return changed

    def _sweep_precedences(self, s: _State) -> bool:
        changed = False
        for pre in self.model.precedences:
            changed |= self._apply_edge(s, pre.a, pre.b, 0)
        return changed

    def _apply_edge(self, s: _State, a: int, b: int, delta: int) -> bool:
        """start(b) >= end(a) + delta whenever both are present."""
        changed = False
        if s.presence[a] == PRESENT and s.presence[b] != ABSENT:
            changed |= self._tighten(s, b, est=s.eet[a] + delta)
        if s.presence[b] == PRESENT and s.presence[a] != ABSENT:
            changed |= self._tighten(s, a, let=s.lst[b] - delta)
        return changed

    def _sweep_presence_sums(self, s: _State) -> bool:
        changed = False
        for ps in self.model.presence_sums:
            present = [r for r in ps.rhs if s.presence[r] == PRESENT]
            if ps.relation is SumRelation.AT_MOST_ONE:
                if len(present) > 1:
                    raise _Fail
                if len(present) == 1:
                    for r in ps.rhs:
                        if r != present[0]:
                            changed |= self._set_absent(s, r)
                continue
            if len(present) > 1:
                raise _Fail
            lhs = ps.lhs
            if len(present) == 1:
                changed |= self._set_present(s, lhs)
                for r in ps.rhs:
                    if r != present[0]:
                        changed |= self._set_absent(s, r)
                continue
            possible = [r for r in ps.rhs if s.presence[r] != ABSENT]
            if s.presence[lhs] == ABSENT:
                for r in ps.rhs:
                    changed |= self._set_absent(s, r)
            elif not possible:
                changed |= self._set_absent(s, lhs)
            elif s.presence[lhs] == PRESENT and len(possible) == 1:
                changed |= self._set_present(s, possible[0])
        return changed

    def _sweep_cond_precedences(self, s: _State) -> bool:
        changed = False
        for cp in self.model.cond_precedences:
            if s.presence[cp.guard] != PRESENT:
                continue
            if s.presence[cp.a] == PRESENT and s.presence[cp.b] != ABSENT:
                changed |= self._tighten(s, cp.b, est=s.eet[cp.a])
            if s.presence[cp.b] == PRESENT and s.presence[cp.a] == PRESENT:
                changed |= self._tighten(s, cp.a, let=s.lst[cp.b])
        return changed

    def _sweep_edges(self, s: _State) -> bool:
        changed = False
        for a, b, delta in s.edges:
            changed |= self._apply_edge(s, a, b, delta)
        return changed

    def _sweep_overlaps(self, s: _State) -> bool:
        changed = False
        for members, types, matrix, release in self.overlaps:
            if release is not None:
                for idx, i in enumerate(members):
                    if s.presence[i] != ABSENT:
                        changed |= self._tighten(s, i, est=release[idx])
            active = [
                (idx, i) for idx, i in enumerate(members) if s.presence[i] == PRESENT
            ]
            for pos, (ia, a) in enumerate(active):
                # present-vs-present: orient forced pairs
                for ib, b in active[pos + 1 :]:
                    dab = matrix[types[ia]][types[ib]] if matrix else 0
                    dba = matrix[types[ib]][types[ia]] if matrix else 0
                    can_ab = s.eet[a] + dab <= s.lst[b]
                    can_ba = s.eet[b] + dba <= s.lst[a]
                    if not can_ab and not can_ba:
                        raise _Fail
                    if not can_ba:
                        changed |= self._apply_edge(s, a, b, dab)
                    elif not can_ab:
                        changed |= self._apply_edge(s, b, a, dba)
                # present-vs-undecided: drop members that can no longer fit
                for ib, b in enumerate(members):
                    if s.presence[b] != UNKNOWN:
                        continue
                    dab = matrix[types[ia]][types[ib]] if matrix else 0
                    dba = matrix[types[ib]][types[ia]] if matrix else 0
                    if s.eet[a] + dab > s.lst[b] and s.eet[b] + dba > s.lst[a]:
                        changed |= self._set_absent(s, b)
        return changed

    # ----------------------------------------------------------------- search

    def _choose_branch(self, s: _State):
        # 1. presence literals: pick the tightest open choice structure
        best = None
        for alt in self.model.alternatives:
            if s.presence[alt.master] != PRESENT:
                continue
            options = [o for o in alt.options if s.presence[o] == UNKNOWN]
            if any(s.presence[o] == PRESENT for o in alt.options):
                continue
            if options and (best is None or len(options) < len(best)):
                best = options
        if best is None:
            for ps in self.model.presence_sums:
                if ps.relation is not SumRelation.EQUAL:
                    continue
                if s.presence[ps.lhs] != PRESENT:
                    continue
                if any(s.presence[r] == PRESENT for r in ps.rhs):
                    continue
                options = [r for r in ps.rhs if s.presence[r] == UNKNOWN]
                if options and (best is None or len(options) < len(best)):
                    best = options
        if best is not None:
            pick = min(best, key=lambda o: (s.est[o], o))
            return ("presence", pick)

        # 2. unresolved orientation of a sequence pair
        best_pair = None
        decided = {(a, b) for a, b, _ in s.edges}
        for members, types, matrix, _ in self.overlaps:
            active = [
                (idx, i) for idx, i in enumerate(members) if s.presence[i] == PRESENT
            ]
            for pos, (ia, a) in enumerate(active):
                for ib, b in active[pos + 1 :]:
                    if (a, b) in decided or (b, a) in decided:
                        continue
                    dab = matrix[types[ia]][types[ib]] if matrix else 0
                    dba = matrix[types[ib]][types[ia]] if matrix else 0
                    if s.eet[a] + dab <= s.lst[b] and s.eet[b] + dba <= s.lst[a]:
                        key = (min(s.est[a], s.est[b]), a, b)
                        if best_pair is None or key < best_pair[0]:
                            best_pair = (key, a, b, dab, dba)
        if best_pair is not None:
            _, a, b, dab, dba = best_pair
            if (s.est[a], a) <= (s.est[b], b):
                return ("order", a, b, dab, dba)
            return ("order", b, a, dba, dab)

        # 3. start times
        unfixed = [
            i
            for i in range(self.n)
            if s.presence[i] == PRESENT and s.est[i] < s.lst[i]
        ]
        if unfixed:
            pick = min(unfixed, key=lambda i: (s.est[i], i))
            return ("start", pick)
        return None

    def _candidate(self, s: _State) -> Assignment:
        return {
            i: ((s.est[i], s.eet[i]) if s.presence[i] == PRESENT else None)
            for i in range(self.n)
        }

    def _accept(self, s: _State) -> bool:
        assignment = self._candidate(s)
        if evaluate(self.model, assignment):
            return False
        self.shared.offer(_objective_of(self.model, assignment), assignment)
        return True

    def run(self) -> None:
        budget = 512
        while not self.shared.stop.is_set():
            exhausted = self._dfs(node_budget=budget)
            if exhausted is None:  # out of time or externally stopped
                break
            if exhausted:
                self.shared.exhausted = True
                self.shared.stop.set()
                break
            budget *= 2
        with self.shared.lock:
            self.shared.nodes += self.nodes

    def _dfs(self, node_budget: int) -> bool | None:
        """One restart: depth-first search under a node budget.

        Returns True when the tree was exhausted, False when the budget
        ran out, None on deadline/stop."""
        spent = 0
        stack: list[tuple[_State, tuple]] = [(self._root_state(), ("root",))]
        while stack:
            if self.shared.stop.is_set():
                return None
            spent += 1
            self.nodes += 1
            if self.config.node_limit is not None and self.nodes >= self.config.node_limit:
                return None
            if spent > node_budget:
                return False
            if spent % 64 == 0 and time.monotonic() > self.deadline:
                return None
            state, branch = stack.pop()
            try:
                self._apply(state, branch)
                self._propagate(state, self.shared.ub_exclusive(self.horizon))
            except _Fail:
                continue
            choice = self._choose_branch(state)
            if choice is None:
                if self._accept(state):
                    continue
                # propagation left an inconsistent full assignment behind
                continue
            for child_branch in reversed(self._branches(state, choice)):
                stack.append((state.copy(), child_branch))
        return True

    def _apply(self, s: _State, branch: tuple) -> None:
        kind = branch[0]
        if kind == "root":
            return
        if kind == "present":
            self._set_present(s, branch[1])
        elif kind == "absent":
            self._set_absent(s, branch[1])
        elif kind == "order":
            _, a, b, delta = branch
            s.edges.append((a, b, delta))
        elif kind == "start_at":
            _, i, t = branch
            self._tighten(s, i, est=t, lst=t)
        elif kind == "start_after":
            _, i, t = branch
            self._tighten(s, i, est=t)

    def _branches(self, s: _State, choice: tuple) -> list[tuple]:
        kind = choice[0]
        if kind == "presence":
            return [("present", choice[1]), ("absent", choice[1])]
        if kind == "order":
            _, a, b, dab, dba = choice
            return [("order", a, b, dab), ("order", b, a, dba)]
        _, i = choice
        return [("start_at", i, s.est[i]), ("start_after", i, s.est[i] + 1)]
