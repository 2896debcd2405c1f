"""Allocation and scheduling: exhaustive makespan-minimal solving at desk
scale, plus list-scheduling of a fixed allocation.

A solution is the triple (allocation matrix, schedule, motion plans). The
scheduler processes tasks in topological order; a task starts once all its
predecessors have ended and all coalition robots are free, and ends when the
last coalition member has arrived and finished the task's fixed work. Travel
is folded into the task interval, so a slow coalition shows up as a longer
task time.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations

from .domain import (
    ProblemDomain,
    aggregate_traits,
    coalition_satisfies,
    validate_domain,
)
from .motion import DistanceOracle, Path, plan_path

TRAIT_VIOLATION = "trait-violation"
PRECEDENCE_VIOLATION = "precedence-violation"
NO_MOTION_PLAN = "no-motion-plan"


class UnsolvableError(Exception):
    """No feasible allocation exists for the domain."""

    def __init__(self, task: str):
        super().__init__(f"no feasible allocation for task {task!r}")
        self.task = task


@dataclass(frozen=True)
class Cause:
    """Structured infeasibility cause: one of the three feasibility conditions."""

    kind: str  # TRAIT_VIOLATION | PRECEDENCE_VIOLATION | NO_MOTION_PLAN
    task: str | None = None
    requirement: tuple[float, ...] | None = None
    aggregate: tuple[float, ...] | None = None
    edge: tuple[str, str] | None = None
    robot: str | None = None

    def to_json(self) -> dict:
        doc: dict = {"kind": self.kind}
        if self.task is not None:
            doc["task"] = self.task
        if self.requirement is not None:
            doc["requirement"] = list(self.requirement)
        if self.aggregate is not None:
            doc["aggregate"] = list(self.aggregate)
        if self.edge is not None:
            doc["edge"] = list(self.edge)
        if self.robot is not None:
            doc["robot"] = self.robot
        return doc

    @staticmethod
    def from_json(doc: dict) -> "Cause":
        return Cause(
            kind=doc["kind"],
            task=doc.get("task"),
            requirement=tuple(doc["requirement"]) if "requirement" in doc else None,
            aggregate=tuple(doc["aggregate"]) if "aggregate" in doc else None,
            edge=tuple(doc["edge"]) if "edge" in doc else None,
            robot=doc.get("robot"),
        )


@dataclass(frozen=True)
class AllocationMatrix:
    """M x N binary matrix, task-major; entries[m][n] == 1 allocates robot n to task m."""

    entries: tuple[tuple[int, ...], ...]

    def coalition(self, m: int, robot_ids: tuple[str, ...]) -> tuple[str, ...]:
        return tuple(r for n, r in enumerate(robot_ids) if self.entries[m][n])

    def flat(self) -> tuple[int, ...]:
        return tuple(v for row in self.entries for v in row)


@dataclass(frozen=True)
class Schedule:
    starts: dict[str, float]
    ends: dict[str, float]
    robot_tasks: dict[str, tuple[str, ...]]  # tasks per robot, schedule order

    @property
    def makespan(self) -> float:
        return max(self.ends.values(), default=0.0)

    def task_time(self, task: str) -> float:
        return self.ends[task] - self.starts[task]

    def robot_makespan(self, robot: str) -> float:
        tasks = self.robot_tasks.get(robot, ())
        return max((self.ends[t] for t in tasks), default=0.0)


@dataclass(frozen=True)
class Solution:
    allocation: AllocationMatrix
    schedule: Schedule
    motions: dict[str, dict[str, Path]]  # task -> robot -> path


def makespan(s: Schedule) -> float:
    return s.makespan


def _coalitions_of(d: ProblemDomain, a: AllocationMatrix) -> list[tuple[str, ...]]:
    names = d.task_names
    if len(a.entries) != len(names) or any(len(row) != len(d.robot_ids) for row in a.entries):
        raise ValueError("allocation matrix shape does not match domain")
    return [a.coalition(m, d.robot_ids) for m in range(len(names))]


def _find_cause(d: ProblemDomain, coalitions: list[tuple[str, ...]]) -> Cause | None:
    """Trait and precedence screening, in that priority order.

    A task with no robots and a nonzero requirement is unschedulable: it is a
    precedence violation when a schedulable task depends on it, otherwise a
    trait violation with an all-zero aggregate.
    """
    names = d.task_names
    schedulable = []
    for m, name in enumerate(names):
        req = d.Ystar.rows[m]
        schedulable.append(bool(coalitions[m]) or all(v == 0 for v in req))

    for m, name in enumerate(names):
        req = d.Ystar.rows[m]
        if coalitions[m]:
            agg = aggregate_traits(coalitions[m], d.Q, d.traits)
            if not coalition_satisfies(req, agg):
                return Cause(TRAIT_VIOLATION, task=name, requirement=req, aggregate=agg)
        elif not schedulable[m]:
            dependants = [b for a_, b in d.network.edges if a_ == name]
            if not any(schedulable[names.index(b)] for b in dependants):
                agg = aggregate_traits((), d.Q, d.traits)
                return Cause(TRAIT_VIOLATION, task=name, requirement=req, aggregate=agg)

    for edge in d.network.edges:
        i, j = edge
        if not schedulable[names.index(i)] and schedulable[names.index(j)]:
            return Cause(PRECEDENCE_VIOLATION, edge=edge)
    return None


def schedule_allocation(
    d: ProblemDomain, a: AllocationMatrix
) -> tuple[Schedule, dict[str, dict[str, Path]]] | Cause:
    """List-schedule a fixed allocation, or report why it is infeasible.

    Causes are screened in priority order trait, precedence, motion; the
    first detected violation is returned as data, not raised.
    """
    coalitions = _coalitions_of(d, a)
    cause = _find_cause(d, coalitions)
    if cause is not None:
        return cause

    oracle = DistanceOracle(d.map)
    names = d.task_names
    free = {r: 0.0 for r in d.robot_ids}
    pos = {r: d.start_of(r) for r in d.robot_ids}
    starts: dict[str, float] = {}
    ends: dict[str, float] = {}
    robot_tasks: dict[str, list[str]] = {r: [] for r in d.robot_ids}
    motions: dict[str, dict[str, Path]] = {}

    for name in d.network.topological_order():
        m = names.index(name)
        task = d.network.tasks[m]
        coalition = coalitions[m]
        ready = max((ends[p] for p in d.network.predecessors(name)), default=0.0)
        if not coalition:
            starts[name] = ready
            ends[name] = ready + task.work_duration
            continue
        arrivals = []
        paths = {}
        for r in coalition:
            secs = oracle.seconds(pos[r], task.location, d.speed_of(r))
            if secs is None:
                return Cause(NO_MOTION_PLAN, task=name, robot=r)
            arrivals.append(free[r] + secs)
            paths[r] = plan_path(d.map, pos[r], task.location)
        start = max([ready] + [free[r] for r in coalition])
        end = max(max(arrivals), ready) + task.work_duration
        starts[name] = start
        ends[name] = end
        motions[name] = paths
        for r in coalition:
            free[r] = end
            pos[r] = task.location
            robot_tasks[r].append(name)

    schedule = Schedule(starts, ends, {r: tuple(ts) for r, ts in robot_tasks.items()})
    return schedule, motions


def _minimal_coalitions(d: ProblemDomain, m: int) -> list[tuple[int, ...]]:
    """Minimal robot-index subsets whose aggregate satisfies task m's requirement.

    Supersets of a satisfying coalition never finish the task earlier (work
    duration is coalition-independent), so only minimal subsets are searched.
    """
    req = d.Ystar.rows[m]
    n = len(d.robot_ids)
    satisfying: list[tuple[int, ...]] = []
    for size in range(0, n + 1):
        for combo in combinations(range(n), size):
            agg = aggregate_traits([d.robot_ids[i] for i in combo], d.Q, d.traits)
            if coalition_satisfies(req, agg):
                if not any(set(s) <= set(combo) for s in satisfying):
                    satisfying.append(combo)
    return satisfying


def _row_of(combo: tuple[int, ...], n: int) -> tuple[int, ...]:
    return tuple(1 if i in combo else 0 for i in range(n))


def solve(d: ProblemDomain) -> Solution:
    """Exhaustive branch-and-bound over minimal satisfying coalitions.

    Returns a feasible solution with minimal makespan; among optima, the
    lexicographically smallest allocation matrix (task-major) wins. Raises
    UnsolvableError when some task cannot be satisfied by any coalition.
    """
    violations = validate_domain(d)
    if violations:
        raise ValueError(f"domain is not well-formed: {violations[0].message}")

    names = d.task_names
    n_robots = len(d.robot_ids)
    options: list[list[tuple[int, ...]]] = []
    for m, name in enumerate(names):
        combos = _minimal_coalitions(d, m)
        if not combos:
            raise UnsolvableError(name)
        combos.sort(key=lambda c: _row_of(c, n_robots))
        options.append(combos)

    oracle = DistanceOracle(d.map)
    topo = d.network.topological_order()
    best: dict = {"makespan": None, "key": None, "alloc": None}
    motion_dead_task: str | None = None

    def recurse(depth, chosen, free, pos, ends, partial_max):
        nonlocal motion_dead_task
        if best["makespan"] is not None and partial_max > best["makespan"] + 1e-12:
            return
        if depth == len(topo):
            mk = partial_max
            rows = [None] * len(names)
            for name, combo in chosen.items():
                rows[names.index(name)] = _row_of(combo, n_robots)
            key = tuple(v for row in rows for v in row)
            if (
                best["makespan"] is None
                or mk < best["makespan"] - 1e-12
                or (mk <= best["makespan"] + 1e-12 and key < best["key"])
            ):
                best.update(makespan=mk, key=key, alloc=tuple(rows))
            return
        name = topo[depth]
        m = names.index(name)
        task = d.network.tasks[m]
        ready = max((ends[p] for p in d.network.predecessors(name)), default=0.0)
        for combo in options[m]:
            if not combo:
                end = ready + task.work_duration
                ends2 = dict(ends)
                ends2[name] = end
                chosen[name] = combo
                recurse(depth + 1, chosen, free, pos, ends2, max(partial_max, end))
                del chosen[name]
                continue
            arrivals = []
            reachable = True
            for i in combo:
                r = d.robot_ids[i]
                secs = oracle.seconds(pos[r], task.location, d.speed_of(r))
                if secs is None:
                    reachable = False
                    break
                arrivals.append(free[r] + secs)
            if not reachable:
                if motion_dead_task is None:
                    motion_dead_task = name
                continue
            end = max(max(arrivals), ready) + task.work_duration
            free2 = dict(free)
            pos2 = dict(pos)
            ends2 = dict(ends)
            ends2[name] = end
            for i in combo:
                r = d.robot_ids[i]
                free2[r] = end
                pos2[r] = task.location
            chosen[name] = combo
            recurse(depth + 1, chosen, free2, pos2, ends2, max(partial_max, end))
            del chosen[name]

    recurse(
        0,
        {},
        {r: 0.0 for r in d.robot_ids},
        {r: d.start_of(r) for r in d.robot_ids},
        {},
        0.0,
    )

    if best["alloc"] is None:
        raise UnsolvableError(motion_dead_task or names[0])

    alloc = AllocationMatrix(best["alloc"])
    result = schedule_allocation(d, alloc)
    assert not isinstance(result, Cause), result
    schedule, motions = result
    return Solution(alloc, schedule, motions)


# ---------------------------------------------------------------------------
# Solution serialization (JSON).


def solution_to_json(d: ProblemDomain, s: Solution) -> dict:
    names = d.task_names
    return {
        "allocation": {
            name: list(s.allocation.coalition(m, d.robot_ids))
            for m, name in enumerate(names)
        },
        "schedule": {
            name: {"start": s.schedule.starts[name], "end": s.schedule.ends[name]}
            for name in names
        },
        "makespan": s.schedule.makespan,
        "robot_makespans": {r: s.schedule.robot_makespan(r) for r in d.robot_ids},
        "motions": {
            task: {robot: [list(c) for c in path.cells] for robot, path in robots.items()}
            for task, robots in s.motions.items()
        },
    }


def solution_from_json(d: ProblemDomain, doc: dict) -> Solution:
    names = d.task_names
    entries = []
    for name in names:
        robots = set(doc["allocation"].get(name, []))
        entries.append(tuple(1 if r in robots else 0 for r in d.robot_ids))
    starts = {name: float(doc["schedule"][name]["start"]) for name in names if name in doc["schedule"]}
    ends = {name: float(doc["schedule"][name]["end"]) for name in names if name in doc["schedule"]}
    motions = {
        task: {
            robot: Path(tuple(tuple(c) for c in cells), d.map.cell_size)
            for robot, cells in robots.items()
        }
        for task, robots in doc.get("motions", {}).items()
    }
    robot_tasks: dict[str, tuple[str, ...]] = {}
    for r in d.robot_ids:
        mine = [name for name in names if r in doc["allocation"].get(name, [])]
        mine.sort(key=lambda t: starts.get(t, 0.0))
        robot_tasks[r] = tuple(mine)
    return Solution(AllocationMatrix(tuple(entries)), Schedule(starts, ends, robot_tasks), motions)


def dump_solution(d: ProblemDomain, s: Solution, path) -> None:
    with open(path, "w") as f:
        json.dump(solution_to_json(d, s), f, indent=2, sort_keys=True)
        f.write("\n")
