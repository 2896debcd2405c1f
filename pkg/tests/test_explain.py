import re

import pytest

from crewlens.compare import (
    FactorSet,
    compare_allocations,
    compare_schedules,
    filter_critical,
    render_percent,
)
from crewlens.domain import Site, with_site
from crewlens.explain import (
    CAPABILITY_HEADER,
    SAME_TIME_LINE,
    explain,
    render_capability_line,
    render_cause,
    render_schedule_block,
)
from crewlens.foil import FoilChange, FoilQuery, build_foil
from crewlens.planner import Cause, Schedule, solve


@pytest.fixture(scope="module")
def speed_error_explained(headline, headline_solution):
    d, s = headline.presented, headline_solution
    query = FoilQuery(
        (FoilChange("ambulance", "D1", "unassign"), FoilChange("dumptruck", "D1", "assign"))
    )
    outcome = build_foil(d, s, query)
    factors = FactorSet(
        tuple(compare_allocations(s.allocation, outcome.allocation, d)),
        tuple(compare_schedules(s.schedule, outcome.solution.schedule, d)),
    )
    fc = filter_critical(factors, 0.1)
    return d, s, outcome, fc, explain(d, s, outcome, fc)


def test_capability_line_exact(speed_error_explained):
    _, _, _, _, e = speed_error_explained
    assert e.capability_lines == (
        "ambulance([2500, 1, 0]) and dumptruck([5000, 0, 1]) can work D1([600, 0, 0])",
    )


def test_capability_line_with_corrupted_requirement(headline, headline_solution):
    d = with_site(headline.presented, Site("Ystar", "D1", "robotic_arm"), 1.0)
    d = with_site(d, Site("Ystar", "D1", "forklift"), 1.0)
    from crewlens.compare import AllocationFactor

    factor = AllocationFactor("D1", ("ambulance",), ("dumptruck",))
    line = render_capability_line(factor, d, ("carrying_capacity", "robotic_arm", "forklift"))
    assert line == "ambulance([2500, 1, 0]) and dumptruck([5000, 0, 1]) can work D1([600, 1, 1])"


def test_full_trait_subset_renders_four_entries(headline):
    from crewlens.compare import AllocationFactor

    d = headline.presented
    factor = AllocationFactor("D1", ("ambulance",), ("dumptruck",))
    line = render_capability_line(
        factor, d, ("carrying_capacity", "stretcher", "robotic_arm", "forklift")
    )
    assert "ambulance([2500, 1, 1, 0])" in line
    assert "D1([600, 0, 0, 0])" in line


def test_unknown_trait_in_subset(headline):
    from crewlens.compare import AllocationFactor

    factor = AllocationFactor("D1", ("ambulance",), ("dumptruck",))
    with pytest.raises(ValueError):
        render_capability_line(factor, headline.presented, ("warp_drive",))


def test_schedule_block_structure(speed_error_explained):
    d, s, outcome, fc, e = speed_error_explained
    lines = e.schedule_block.split("\n")
    assert re.fullmatch(
        r"User's solution takes \d+% more time: [0-9.]+ minutes→[0-9.]+ minutes", lines[0]
    )
    assert any(
        re.fullmatch(r"  • dumptruck takes \d+% more time", line) for line in lines
    )
    reveal = [line for line in lines if "m/s" in line]
    assert reveal and reveal[0].endswith(": ambulance(40.0m/s)→dumptruck(4.0m/s)")
    assert reveal[0].startswith("    • D1 takes ")


def test_header_present_when_both_blocks(speed_error_explained):
    *_, e = speed_error_explained
    assert e.plain_text.startswith(CAPABILITY_HEADER + "\n")


def test_empty_critical_set_renders_same_time(headline):
    d = headline.presented
    sigma = Schedule({"D1": 0.0}, {"D1": 1.0}, {})
    block = render_schedule_block(FactorSet((), ()), d, [], sigma)
    assert block == SAME_TIME_LINE


def test_less_time_headline(headline):
    # slowing the system-side robot makes the foil comparatively faster
    truth = headline.truth  # ambulance at its real 8 m/s
    s = solve(truth)
    query = FoilQuery(
        (FoilChange("ambulance", "D1", "unassign"), FoilChange("dumptruck", "D1", "assign"))
    )
    outcome = build_foil(truth, s, query)
    factors = FactorSet(
        tuple(compare_allocations(s.allocation, outcome.allocation, truth)),
        tuple(compare_schedules(s.schedule, outcome.solution.schedule, truth)),
    )
    fc = filter_critical(factors, 0.1)
    e = explain(truth, s, outcome, fc)
    assert "more time:" in e.schedule_block or "less time:" in e.schedule_block


class TestRenderCause:
    def test_trait(self, emergency):
        cause = Cause(
            "trait-violation",
            task="Rescue Human 1",
            requirement=emergency.requirement("Rescue Human 1"),
            aggregate=emergency.Q.row("dumptruck"),
        )
        text = render_cause(cause, emergency)
        assert text.startswith("Infeasible: Rescue Human 1(")
        assert "requires stretcher" in text
        assert "[5000, 0, 0, 1]" in text

    def test_precedence(self, emergency):
        cause = Cause("precedence-violation", edge=("Setup Camp", "Rescue Human 1"))
        assert (
            render_cause(cause, emergency)
            == "Infeasible: Rescue Human 1 cannot start before Setup Camp completes"
        )

    def test_motion(self, emergency):
        cause = Cause("no-motion-plan", task="Setup Camp", robot="dumptruck")
        assert render_cause(cause, emergency) == "Infeasible: dumptruck cannot reach Setup Camp"


def test_infeasible_foil_explanation(emergency, emergency_solution):
    m = emergency.network.index("Rescue Human 1")
    coalition = emergency_solution.allocation.coalition(m, emergency.robot_ids)
    changes = [FoilChange(r, "Rescue Human 1", "unassign") for r in coalition]
    changes.append(FoilChange("dumptruck", "Rescue Human 1", "assign"))
    outcome = build_foil(emergency, emergency_solution, FoilQuery(tuple(changes)))
    e = explain(emergency, emergency_solution, outcome)
    assert e.schedule_block is None
    assert e.cause_line.startswith("Infeasible:")
    assert e.cause_line in e.plain_text


def test_fc_presence_mismatch_rejected(speed_error_explained):
    d, s, outcome, fc, _ = speed_error_explained
    with pytest.raises(ValueError):
        explain(d, s, outcome, None)


def test_rendering_deterministic(speed_error_explained):
    d, s, outcome, fc, e = speed_error_explained
    again = explain(d, s, outcome, fc)
    assert again.plain_text == e.plain_text


def test_every_numeral_traceable(speed_error_explained):
    d, s, outcome, fc, e = speed_error_explained

    def fmt_value(v):
        return str(int(v)) if float(v).is_integer() else f"{v:g}"

    def fmt_minutes(sec):
        text = f"{sec / 60:.2f}"
        return text.rstrip("0").rstrip(".")

    allowed = set()
    for name in d.robot_ids + d.task_names:
        allowed.update(re.findall(r"\d+(?:\.\d+)?", name))
    for row in d.Q.rows + d.Ystar.rows:
        allowed.update(fmt_value(v) for v in row)
    for speed in d.phi.speeds:
        allowed.add(f"{speed:g}" if "." in f"{speed:g}" else f"{speed:g}.0")
    for f in fc.schedule:
        allowed.add(str(render_percent(f.pd)))
        allowed.add(fmt_minutes(f.system))
        allowed.add(fmt_minutes(f.foil))
    for token in re.findall(r"\d+(?:\.\d+)?", e.plain_text):
        assert token in allowed, token
