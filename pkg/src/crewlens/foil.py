"""Foil handling: patch the system allocation with operator edits, derive the
counterfactual solution, and check feasibility of arbitrary solutions."""
from __future__ import annotations

from dataclasses import dataclass

from .domain import ProblemDomain, aggregate_traits, coalition_satisfies
from .planner import (
    NO_MOTION_PLAN,
    PRECEDENCE_VIOLATION,
    TRAIT_VIOLATION,
    AllocationMatrix,
    Cause,
    Solution,
    schedule_allocation,
)

ASSIGN = "assign"
UNASSIGN = "unassign"

_EPS = 1e-9


@dataclass(frozen=True)
class FoilChange:
    robot: str
    task: str
    op: str  # ASSIGN or UNASSIGN


@dataclass(frozen=True)
class FoilQuery:
    """Operator edits relative to the system allocation."""

    changes: tuple[FoilChange, ...]

    def to_json(self) -> list[dict]:
        return [{"robot": c.robot, "task": c.task, "op": c.op} for c in self.changes]

    @staticmethod
    def from_json(doc: list[dict]) -> "FoilQuery":
        try:
            return FoilQuery(tuple(FoilChange(c["robot"], c["task"], c["op"]) for c in doc))
        except (KeyError, TypeError) as e:
            raise ValueError(f"malformed foil query: {e}") from e


@dataclass(frozen=True)
class FoilOutcome:
    """Either the derived foil solution or the structured infeasibility cause."""

    allocation: AllocationMatrix
    solution: Solution | None = None
    cause: Cause | None = None

    @property
    def feasible(self) -> bool:
        return self.solution is not None


def resolve_allocation(d: ProblemDomain, a: AllocationMatrix, q: FoilQuery) -> AllocationMatrix:
    """Apply the foil's assign/unassign edits to the system allocation."""
    entries = [list(row) for row in a.entries]
    for c in q.changes:
        m = d.network.index(c.task)
        n = d.Q.index(c.robot)
        if c.op == ASSIGN:
            entries[m][n] = 1
        elif c.op == UNASSIGN:
            entries[m][n] = 0
        else:
            raise ValueError(f"unknown foil op: {c.op!r}")
    patched = AllocationMatrix(tuple(tuple(row) for row in entries))
    if patched.entries == a.entries:
        raise ValueError("foil makes no change to the allocation")
    return patched


def build_foil(d: ProblemDomain, s: Solution, q: FoilQuery) -> FoilOutcome:
    """Derive the counterfactual solution for the operator's foil allocation."""
    a_prime = resolve_allocation(d, s.allocation, q)
    result = schedule_allocation(d, a_prime)
    if isinstance(result, Cause):
        return FoilOutcome(a_prime, cause=result)
    schedule, motions = result
    return FoilOutcome(a_prime, solution=Solution(a_prime, schedule, motions))


def check_feasibility(d: ProblemDomain, s: Solution) -> Cause | None:
    """Verify the three feasibility conditions; None means feasible.

    Checked in priority order: trait satisfaction per task, precedence
    ordering of the schedule, validity of every motion plan.
    """
    names = d.task_names
    coalitions = [s.allocation.coalition(m, d.robot_ids) for m in range(len(names))]

    for m, name in enumerate(names):
        req = d.Ystar.rows[m]
        agg = aggregate_traits(coalitions[m], d.Q, d.traits)
        if not coalition_satisfies(req, agg):
            return Cause(TRAIT_VIOLATION, task=name, requirement=req, aggregate=agg)

    for edge in d.network.edges:
        i, j = edge
        if i not in s.schedule.ends or j not in s.schedule.starts:
            return Cause(PRECEDENCE_VIOLATION, edge=edge)
        if s.schedule.ends[i] > s.schedule.starts[j] + _EPS:
            return Cause(PRECEDENCE_VIOLATION, edge=edge)

    for m, name in enumerate(names):
        location = d.network.tasks[m].location
        for r in coalitions[m]:
            path = s.motions.get(name, {}).get(r)
            if path is None or not path.cells or path.cells[-1] != location:
                return Cause(NO_MOTION_PLAN, task=name, robot=r)
            for cell in path.cells:
                if not d.map.passable(cell):
                    return Cause(NO_MOTION_PLAN, task=name, robot=r)
            for a, b in zip(path.cells, path.cells[1:]):
                if abs(a[0] - b[0]) + abs(a[1] - b[1]) != 1:
                    return Cause(NO_MOTION_PLAN, task=name, robot=r)
    return None
