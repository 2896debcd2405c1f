"""Render the speed-error walkthrough end to end.

Solves the two-robot scenario whose ambulance speed is corrupted,
poses the "why not the dumptruck on D1?" foil, and prints the full
contrastive explanation.
"""
from crewlens.compare import FactorSet, compare_allocations, compare_schedules, filter_critical
from crewlens.explain import explain
from crewlens.foil import FoilChange, FoilQuery, build_foil
from crewlens.planner import solve
from crewlens.scenario import build_headline_scenario


def main() -> None:
    scenario = build_headline_scenario()
    d = scenario.presented
    s = solve(d)
    print(f"system makespan: {s.schedule.makespan:.1f}s")
    for m, task in enumerate(d.task_names):
        print(f"  {task}: {', '.join(s.allocation.coalition(m, d.robot_ids))}")

    query = FoilQuery(
        (FoilChange("ambulance", "D1", "unassign"), FoilChange("dumptruck", "D1", "assign"))
    )
    outcome = build_foil(d, s, query)
    factors = FactorSet(
        tuple(compare_allocations(s.allocation, outcome.allocation, d)),
        tuple(compare_schedules(s.schedule, outcome.solution.schedule, d)),
    )
    print()
    print(explain(d, s, outcome, filter_critical(factors, 0.1)).plain_text)


if __name__ == "__main__":
    main()
