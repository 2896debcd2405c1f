"""Factor extraction between the system solution and a foil solution:
allocation differences, schedule percent differences, and critical filtering."""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .domain import ProblemDomain
from .planner import AllocationMatrix, Schedule

MAKESPAN = "overall-makespan"
TASK_TIME = "task-time"
ROBOT_MAKESPAN = "robot-makespan"

SYMMETRIC = "symmetric"
NAIVE = "naive"


@dataclass(frozen=True)
class ComparatorConfig:
    z: float = 0.1  # critical-factor threshold on |percent difference|
    formula: str = SYMMETRIC


@dataclass(frozen=True)
class AllocationFactor:
    task: str
    system: tuple[str, ...]  # coalition in the system allocation
    foil: tuple[str, ...]  # coalition in the foil allocation

    def to_json(self) -> dict:
        return {"kind": "allocation", "task": self.task, "system": list(self.system), "foil": list(self.foil)}


@dataclass(frozen=True)
class ScheduleFactor:
    kind: str  # MAKESPAN | TASK_TIME | ROBOT_MAKESPAN
    subject: str | None  # task or robot id; None for the overall makespan
    system: float
    foil: float
    pd: float  # signed percent difference as a ratio
    critical: bool = False

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "subject": self.subject,
            "system": self.system,
            "foil": self.foil,
            "pd": self.pd,
            "critical": self.critical,
        }


@dataclass(frozen=True)
class FactorSet:
    allocation: tuple[AllocationFactor, ...]
    schedule: tuple[ScheduleFactor, ...]

    def to_json(self) -> dict:
        return {
            "allocation": [f.to_json() for f in self.allocation],
            "schedule": [f.to_json() for f in self.schedule],
        }


def percent_difference(system_s: float, foil_s: float, formula: str = SYMMETRIC) -> float:
    """Signed difference ratio between the system and foil values.

    The symmetric form divides by the mean of the two values; it reproduces
    the headline percentages the naive (foil-system)/system form does not.
    Both values zero is defined as no difference.
    """
    if system_s < 0 or foil_s < 0:
        raise ValueError("durations must be non-negative")
    if system_s == 0 and foil_s == 0:
        return 0.0
    if formula == SYMMETRIC:
        mean = (foil_s + system_s) / 2
        if mean == 0:  # subnormal values whose mean underflows
            return 0.0
        return (foil_s - system_s) / mean
    if formula == NAIVE:
        if system_s == 0:
            return math.inf if foil_s > 0 else 0.0
        return (foil_s - system_s) / system_s
    raise ValueError(f"unknown percent-difference formula: {formula!r}")


def render_percent(pd: float) -> int:
    """Integer percent magnitude, truncated toward zero."""
    return int(abs(pd) * 100)


def compare_allocations(
    a: AllocationMatrix, a_prime: AllocationMatrix, d: ProblemDomain
) -> list[AllocationFactor]:
    """One factor per task whose coalition differs, in task order."""
    if len(a.entries) != len(a_prime.entries) or any(
        len(r) != len(rp) for r, rp in zip(a.entries, a_prime.entries)
    ):
        raise ValueError("allocation matrices differ in shape")
    factors = []
    for m, name in enumerate(d.task_names):
        sys_c = a.coalition(m, d.robot_ids)
        foil_c = a_prime.coalition(m, d.robot_ids)
        if sys_c != foil_c:
            factors.append(AllocationFactor(name, sys_c, foil_c))
    return factors


def compare_schedules(
    sigma: Schedule, sigma_prime: Schedule, d: ProblemDomain, config: ComparatorConfig = ComparatorConfig()
) -> list[ScheduleFactor]:
    """Overall makespan, per-task time, and per-robot makespan factors.

    Robots idle in both schedules are skipped.
    """
    if set(sigma.starts) != set(sigma_prime.starts):
        raise ValueError("schedules cover different task sets")
    factors = [
        ScheduleFactor(
            MAKESPAN,
            None,
            sigma.makespan,
            sigma_prime.makespan,
            percent_difference(sigma.makespan, sigma_prime.makespan, config.formula),
        )
    ]
    for name in d.task_names:
        s_v = sigma.task_time(name)
        f_v = sigma_prime.task_time(name)
        factors.append(ScheduleFactor(TASK_TIME, name, s_v, f_v, percent_difference(s_v, f_v, config.formula)))
    for robot in d.robot_ids:
        if not sigma.robot_tasks.get(robot) and not sigma_prime.robot_tasks.get(robot):
            continue
        s_v = sigma.robot_makespan(robot)
        f_v = sigma_prime.robot_makespan(robot)
        factors.append(
            ScheduleFactor(ROBOT_MAKESPAN, robot, s_v, f_v, percent_difference(s_v, f_v, config.formula))
        )
    return factors


def filter_critical(f: FactorSet, z: float) -> FactorSet:
    """Keep schedule factors with |pd| >= z; allocation factors are always critical."""
    if z < 0:
        raise ValueError("threshold must be non-negative")
    kept = tuple(
        replace(factor, critical=True) for factor in f.schedule if abs(factor.pd) >= z
    )
    return FactorSet(f.allocation, kept)
