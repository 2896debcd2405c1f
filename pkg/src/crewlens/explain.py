"""Natural-language rendering of critical factors and infeasibility causes.

Output structure: optional capability-comparison bullets (one per allocation
factor), then either a schedule block (makespan headline, per-robot bullets,
per-task sub-bullets with speed reveals) or a single infeasibility sentence.
"""
from __future__ import annotations

from dataclasses import dataclass

from .compare import (
    MAKESPAN,
    ROBOT_MAKESPAN,
    TASK_TIME,
    AllocationFactor,
    FactorSet,
    compare_allocations,
    render_percent,
)
from .domain import ProblemDomain
from .foil import FoilOutcome
from .planner import (
    NO_MOTION_PLAN,
    PRECEDENCE_VIOLATION,
    TRAIT_VIOLATION,
    Cause,
    Schedule,
    Solution,
)

SAME_TIME_LINE = "User's solution takes about the same time"
CAPABILITY_HEADER = "Task and Robot Capabilities Comparison:"


@dataclass(frozen=True)
class ExplainerConfig:
    # Trait dimensions rendered inside capability-line vectors, in domain order.
    trait_subset: tuple[str, ...] = ("carrying_capacity", "robotic_arm", "forklift")
    z: float = 0.1


@dataclass(frozen=True)
class Explanation:
    capability_lines: tuple[str, ...]
    schedule_block: str | None
    cause_line: str | None
    plain_text: str

    def to_json(self) -> dict:
        return {
            "capability_lines": list(self.capability_lines),
            "schedule_block": self.schedule_block,
            "cause_line": self.cause_line,
            "plain_text": self.plain_text,
        }

    @staticmethod
    def from_json(doc: dict) -> "Explanation":
        return Explanation(
            tuple(doc["capability_lines"]),
            doc.get("schedule_block"),
            doc.get("cause_line"),
            doc["plain_text"],
        )


def _fmt_value(v: float) -> str:
    return str(int(v)) if float(v).is_integer() else f"{v:g}"


def _fmt_vector(values) -> str:
    return "[" + ", ".join(_fmt_value(v) for v in values) + "]"


def _fmt_minutes(seconds: float) -> str:
    text = f"{seconds / 60:.2f}"
    return text.rstrip("0").rstrip(".") if "." in text else text


def _fmt_speed(v: float) -> str:
    text = f"{v:g}"
    return text if "." in text or "e" in text else text + ".0"


def _more_less(pd: float) -> str:
    return "more" if pd >= 0 else "less"


def render_capability_line(
    factor: AllocationFactor, d: ProblemDomain, trait_subset: tuple[str, ...]
) -> str:
    """E.g. "ambulance([2500, 1, 0]) and dumptruck([5000, 0, 1]) can work D1([600, 0, 0])"."""
    idx = [d.trait_index(name) for name in trait_subset]

    def subset(values) -> str:
        return _fmt_vector([values[i] for i in idx])

    robots = list(factor.system) + [r for r in factor.foil if r not in factor.system]
    parts = [f"{r}({subset(d.Q.row(r))})" for r in robots]
    req = d.requirement(factor.task)
    return " and ".join(parts) + f" can work {factor.task}({subset(req)})"


def render_schedule_block(
    factors: FactorSet,
    d: ProblemDomain,
    moved: list[AllocationFactor],
    foil_schedule: Schedule,
) -> str:
    """Makespan headline plus nested per-robot and per-task bullets.

    `factors` must already be critical-filtered; `moved` drives the speed
    reveals on tasks whose system and foil coalitions travel at different
    speeds.
    """
    moved_by_task = {f.task: f for f in moved}
    lam = next((f for f in factors.schedule if f.kind == MAKESPAN), None)
    if lam is None:
        lines = [SAME_TIME_LINE]
    else:
        lines = [
            f"User's solution takes {render_percent(lam.pd)}% {_more_less(lam.pd)} time: "
            f"{_fmt_minutes(lam.system)} minutes→{_fmt_minutes(lam.foil)} minutes"
        ]
    beta = {f.subject: f for f in factors.schedule if f.kind == TASK_TIME}
    for rf in (f for f in factors.schedule if f.kind == ROBOT_MAKESPAN):
        lines.append(f"  • {rf.subject} takes {render_percent(rf.pd)}% {_more_less(rf.pd)} time")
        for task in foil_schedule.robot_tasks.get(rf.subject, ()):
            tf = beta.get(task)
            if tf is None:
                continue
            line = f"    • {task} takes {render_percent(tf.pd)}% {_more_less(tf.pd)} time"
            mv = moved_by_task.get(task)
            if mv is not None and mv.system and mv.foil:
                sys_r = min(mv.system, key=d.speed_of)
                foil_r = min(mv.foil, key=d.speed_of)
                if d.speed_of(sys_r) != d.speed_of(foil_r):
                    line += (
                        f": {sys_r}({_fmt_speed(d.speed_of(sys_r))}m/s)"
                        f"→{foil_r}({_fmt_speed(d.speed_of(foil_r))}m/s)"
                    )
            lines.append(line)
    return "\n".join(lines)


def render_cause(cause: Cause, d: ProblemDomain) -> str:
    if cause.kind == TRAIT_VIOLATION:
        lacking = next(
            (t.name for t, r, a in zip(d.traits, cause.requirement, cause.aggregate) if a < r),
            d.traits[0].name,
        )
        return (
            f"Infeasible: {cause.task}({_fmt_vector(cause.requirement)}) requires {lacking} "
            f"the assigned robots ({_fmt_vector(cause.aggregate)}) lack"
        )
    if cause.kind == PRECEDENCE_VIOLATION:
        before, after = cause.edge
        return f"Infeasible: {after} cannot start before {before} completes"
    if cause.kind == NO_MOTION_PLAN:
        return f"Infeasible: {cause.robot} cannot reach {cause.task}"
    raise ValueError(f"unknown cause kind: {cause.kind!r}")


def explain(
    d: ProblemDomain,
    s: Solution,
    outcome: FoilOutcome,
    fc: FactorSet | None = None,
    config: ExplainerConfig = ExplainerConfig(),
) -> Explanation:
    """Compose the full explanation for a foil outcome.

    `fc` is the critical-filtered factor set and must be present exactly when
    the outcome is feasible.
    """
    if outcome.feasible != (fc is not None):
        raise ValueError("critical factors must be supplied iff the foil is feasible")

    alloc_factors = compare_allocations(s.allocation, outcome.allocation, d)
    capability_lines = tuple(
        render_capability_line(f, d, config.trait_subset) for f in alloc_factors
    )

    if outcome.feasible:
        block = render_schedule_block(fc, d, alloc_factors, outcome.solution.schedule)
        cause_line = None
    else:
        block = None
        cause_line = render_cause(outcome.cause, d)

    parts: list[str] = []
    if capability_lines and block is not None:
        parts.append(CAPABILITY_HEADER)
    parts.extend(f"  • {line}" for line in capability_lines)
    if block is not None:
        parts.append(block)
    if cause_line is not None:
        parts.append(cause_line)
    return Explanation(capability_lines, block, cause_line, "\n".join(parts))
