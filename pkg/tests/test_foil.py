import dataclasses

import pytest

from conftest import split_world
from crewlens.foil import (
    FoilChange,
    FoilQuery,
    build_foil,
    check_feasibility,
    resolve_allocation,
)
from crewlens.motion import Path
from crewlens.planner import (
    NO_MOTION_PLAN,
    PRECEDENCE_VIOLATION,
    TRAIT_VIOLATION,
    schedule_allocation,
    solve,
)


def move_task(d, s, task, to_robot):
    """Foil replacing a task's coalition with a single robot."""
    m = d.network.index(task)
    changes = [
        FoilChange(r, task, "unassign")
        for r in s.allocation.coalition(m, d.robot_ids)
        if r != to_robot
    ]
    changes.append(FoilChange(to_robot, task, "assign"))
    return FoilQuery(tuple(changes))


def test_feasible_foil_is_slower(headline, headline_solution):
    d, s = headline.presented, headline_solution
    outcome = build_foil(d, s, move_task(d, s, "D1", "dumptruck"))
    assert outcome.feasible
    assert outcome.solution.schedule.makespan > s.schedule.makespan
    assert check_feasibility(d, outcome.solution) is None


def test_stretcher_foil_infeasible(emergency, emergency_solution):
    outcome = build_foil(
        emergency, emergency_solution, move_task(emergency, emergency_solution, "Rescue Human 1", "dumptruck")
    )
    assert not outcome.feasible
    assert outcome.cause.kind == TRAIT_VIOLATION
    assert outcome.cause.task == "Rescue Human 1"


def test_unassign_without_replacement_is_legal(emergency, emergency_solution):
    m = emergency.network.index("Rescue Human 1")
    coalition = emergency_solution.allocation.coalition(m, emergency.robot_ids)
    query = FoilQuery(tuple(FoilChange(r, "Rescue Human 1", "unassign") for r in coalition))
    outcome = build_foil(emergency, emergency_solution, query)
    assert not outcome.feasible
    assert outcome.cause.kind in (TRAIT_VIOLATION, PRECEDENCE_VIOLATION)


def test_empty_foil_rejected(emergency, emergency_solution):
    with pytest.raises(ValueError):
        build_foil(emergency, emergency_solution, FoilQuery(()))


def test_noop_foil_rejected(emergency, emergency_solution):
    m = emergency.network.index("Rescue Human 1")
    robot = emergency_solution.allocation.coalition(m, emergency.robot_ids)[0]
    query = FoilQuery((FoilChange(robot, "Rescue Human 1", "assign"),))  # already assigned
    with pytest.raises(ValueError):
        build_foil(emergency, emergency_solution, query)


def test_unknown_ids_rejected(emergency, emergency_solution):
    with pytest.raises(ValueError):
        build_foil(
            emergency,
            emergency_solution,
            FoilQuery((FoilChange("submarine", "Rescue Human 1", "assign"),)),
        )
    with pytest.raises(ValueError):
        build_foil(
            emergency,
            emergency_solution,
            FoilQuery((FoilChange("dumptruck", "Paint Shed", "assign"),)),
        )
    with pytest.raises(ValueError):
        resolve_allocation(
            emergency,
            emergency_solution.allocation,
            FoilQuery((FoilChange("dumptruck", "Setup Camp", "swap"),)),
        )


def test_schedule_roundtrip(emergency, emergency_solution):
    result = schedule_allocation(emergency, emergency_solution.allocation)
    schedule, _ = result
    for task in emergency.task_names:
        assert schedule.starts[task] == pytest.approx(emergency_solution.schedule.starts[task], abs=1e-9)
        assert schedule.ends[task] == pytest.approx(emergency_solution.schedule.ends[task], abs=1e-9)


def test_cause_determinism(emergency, emergency_solution):
    query = move_task(emergency, emergency_solution, "Rescue Human 1", "dumptruck")
    first = build_foil(emergency, emergency_solution, query)
    second = build_foil(emergency, emergency_solution, query)
    assert first.cause == second.cause


class TestCheckFeasibility:
    def test_solver_output_feasible(self, emergency, emergency_solution):
        assert check_feasibility(emergency, emergency_solution) is None

    def test_precedence_violation_detected(self, emergency, emergency_solution):
        s = emergency_solution
        starts = dict(s.schedule.starts)
        starts["Rescue Human 1"] = s.schedule.ends["Setup Camp"] - 5.0
        tampered = dataclasses.replace(
            s, schedule=dataclasses.replace(s.schedule, starts=starts)
        )
        cause = check_feasibility(emergency, tampered)
        assert cause.kind == PRECEDENCE_VIOLATION
        assert cause.edge == ("Setup Camp", "Rescue Human 1")

    def test_blocked_path_detected(self):
        d = split_world()
        s = solve(d)
        # reroute lefty's path straight through the wall
        bad = Path(tuple((x, 3) for x in range(0, 7)) + ((6, 4), (6, 5), (5, 5)), 1.0)
        motions = {t: dict(robots) for t, robots in s.motions.items()}
        task = "east"
        robot = next(iter(motions[task]))
        motions[task][robot] = bad
        tampered = dataclasses.replace(s, motions=motions)
        cause = check_feasibility(d, tampered)
        assert cause.kind == NO_MOTION_PLAN
