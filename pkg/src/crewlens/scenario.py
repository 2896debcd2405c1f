"""Scenario machinery: the emergency-response fixture, seeded error injection
into a ground-truth domain, and repair metrics for operator sessions."""
from __future__ import annotations

import json
import random
from dataclasses import dataclass

from .domain import (
    BINARY,
    DesiredTraitMatrix,
    DomainDiff,
    GridMap,
    ProblemDomain,
    RobotTraitMatrix,
    Site,
    SpeedVector,
    TaskNetwork,
    TaskRecord,
    TraitDef,
    diff_domains,
    domain_from_json,
    domain_to_json,
    site_value,
    with_site,
)

# Multiplicative corruption factors for cumulative traits and speeds.
FACTOR_GRID = (0.1, 0.2, 0.5, 2.0, 5.0, 10.0)

STANDARD_ERROR_TUPLES = ((0, 0, 0), (3, 1, 1), (0, 0, 0), (2, 2, 1), (0, 5, 0), (3, 2, 0))

EMERGENCY_TRAITS = (
    TraitDef("carrying_capacity", "cumulative"),
    TraitDef("stretcher", BINARY),
    TraitDef("robotic_arm", BINARY),
    TraitDef("forklift", BINARY),
)


@dataclass(frozen=True)
class Scenario:
    label: str
    truth: ProblemDomain
    presented: ProblemDomain
    injected: DomainDiff
    error_tuple: tuple[int, int, int]  # (Q errors, Ystar errors, phi errors)
    seed: int

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "seed": self.seed,
            "error_tuple": list(self.error_tuple),
            "domain": domain_to_json(self.presented),
            "truth_overlay": [[str(site), truth_v] for site, truth_v, _ in self.injected.entries],
            "injected": [[str(site), truth_v, actual_v] for site, truth_v, actual_v in self.injected.entries],
        }

    @staticmethod
    def from_json(doc: dict) -> "Scenario":
        presented = domain_from_json(doc["domain"])
        truth = presented
        for site_text, truth_v in doc["truth_overlay"]:
            truth = with_site(truth, Site.parse(site_text), truth_v)
        return Scenario(
            label=doc["label"],
            truth=truth,
            presented=presented,
            injected=diff_domains(presented, truth),
            error_tuple=tuple(doc["error_tuple"]),
            seed=doc["seed"],
        )


@dataclass(frozen=True)
class SessionMetrics:
    repair_actions: int
    remaining: DomainDiff
    rte_pct: float  # remaining robot trait errors (Q)
    tre_pct: float  # remaining task requirement errors (Ystar)
    rse_pct: float  # remaining robot speed errors (phi)
    corrected: int
    extraneous_corrections: int

    def to_json(self) -> dict:
        return {
            "repair_actions": self.repair_actions,
            "remaining": [[str(site), t, a] for site, t, a in self.remaining.entries],
            "rte_pct": self.rte_pct,
            "tre_pct": self.tre_pct,
            "rse_pct": self.rse_pct,
            "corrected": self.corrected,
            "extraneous_corrections": self.extraneous_corrections,
        }


def build_emergency_domain(seed: int = 0, size: int = 20, cell_size: float = 10.0) -> ProblemDomain:
    """Ground-truth search-and-rescue domain: 4 robots, 7 tasks.

    Robot traits and speeds, task requirements, and the camp-before-rescue
    precondition follow the emergency-response setting; ranged requirements
    and entity placement are fixed by the seed.
    """
    rng = random.Random(seed)
    robots = ("dumptruck", "firetruck1", "firetruck2", "ambulance")
    q_rows = (
        (5000.0, 0.0, 0.0, 1.0),
        (1500.0, 0.0, 1.0, 1.0),
        (1500.0, 0.0, 1.0, 1.0),
        (2500.0, 1.0, 1.0, 0.0),
    )
    speeds = (4.0, 7.0, 8.0)  # dumptruck, firetruck, ambulance
    phi = (speeds[0], speeds[1], speeds[1], speeds[2])

    small1 = float(rng.randrange(500, 1201, 100))
    small2 = float(rng.randrange(500, 1201, 100))
    rescue1 = float(rng.randrange(100, 201, 20))
    rescue2 = float(rng.randrange(100, 201, 20))
    requirements = (
        ("Large Debris", (4200.0, 0.0, 0.0, 1.0)),
        ("Small Debris 1", (small1, 0.0, 1.0, 1.0)),
        ("Small Debris 2", (small2, 0.0, 1.0, 1.0)),
        ("Rescue Human 1", (rescue1, 1.0, 0.0, 0.0)),
        ("Rescue Human 2", (rescue2, 1.0, 0.0, 0.0)),
        ("Setup Camp", (2000.0, 0.0, 1.0, 0.0)),
        ("Defuse Bomb", (0.0, 0.0, 1.0, 0.0)),
    )

    cells = [(x, y) for x in range(size) for y in range(size)]
    spots = rng.sample(cells, len(robots) + len(requirements))
    starts = tuple(spots[: len(robots)])
    tasks = tuple(
        TaskRecord(name, spots[len(robots) + i], float(rng.randrange(30, 91, 10)))
        for i, (name, _) in enumerate(requirements)
    )
    return ProblemDomain(
        traits=EMERGENCY_TRAITS,
        Q=RobotTraitMatrix(robots, q_rows),
        phi=SpeedVector(phi),
        network=TaskNetwork(
            tasks,
            (("Setup Camp", "Rescue Human 1"), ("Setup Camp", "Rescue Human 2")),
        ),
        Ystar=DesiredTraitMatrix(tuple(req for _, req in requirements)),
        map=GridMap(size, size, cell_size, frozenset(), starts),
    )


def build_headline_domain() -> ProblemDomain:
    """Two-robot, three-task ground truth used for the speed-error walkthrough.

    The ambulance (truth speed 8 m/s) and dumptruck split a light debris task
    D1, a forklift debris task D3, and a stretcher rescue H1.
    """
    robots = ("ambulance", "dumptruck")
    return ProblemDomain(
        traits=EMERGENCY_TRAITS,
        Q=RobotTraitMatrix(robots, ((2500.0, 1.0, 1.0, 0.0), (5000.0, 0.0, 0.0, 1.0))),
        phi=SpeedVector((8.0, 4.0)),
        network=TaskNetwork(
            (
                TaskRecord("D1", (6, 6), 60.0),
                TaskRecord("D3", (24, 24), 60.0),
                TaskRecord("H1", (12, 2), 60.0),
            ),
            (),
        ),
        Ystar=DesiredTraitMatrix(
            (
                (600.0, 0.0, 0.0, 0.0),
                (500.0, 0.0, 0.0, 1.0),
                (100.0, 1.0, 0.0, 0.0),
            )
        ),
        map=GridMap(30, 30, 40.0, frozenset(), ((0, 0), (29, 29))),
    )


def build_headline_scenario() -> Scenario:
    """Corrupted-speed scenario: the ambulance speed is presented as 40 m/s."""
    truth = build_headline_domain()
    site = Site("phi", "ambulance")
    presented = with_site(truth, site, 40.0)
    return Scenario(
        label="speed-error-walkthrough",
        truth=truth,
        presented=presented,
        injected=diff_domains(presented, truth),
        error_tuple=(0, 0, 1),
        seed=0,
    )


def _corruptible_sites(d: ProblemDomain) -> dict[str, list[Site]]:
    sites: dict[str, list[Site]] = {"Q": [], "Ystar": [], "phi": []}
    for robot in d.robot_ids:
        for tdef in d.traits:
            site = Site("Q", robot, tdef.name)
            if tdef.kind == BINARY or site_value(d, site) > 0:
                sites["Q"].append(site)
        sites["phi"].append(Site("phi", robot))
    for task in d.task_names:
        for tdef in d.traits:
            site = Site("Ystar", task, tdef.name)
            if tdef.kind == BINARY or site_value(d, site) > 0:
                sites["Ystar"].append(site)
    return sites


def generate_scenario(
    truth: ProblemDomain,
    error_tuple: tuple[int, int, int],
    seed: int,
    label: str | None = None,
) -> Scenario:
    """Seeded corruption of a ground-truth domain.

    Binary traits flip; cumulative traits and speeds are scaled by a factor
    from FACTOR_GRID. No site is corrupted twice, and only nonzero cumulative
    sites are eligible (a zero scales to itself).
    """
    rng = random.Random(seed)
    pools = _corruptible_sites(truth)
    kinds_by_trait = {t.name: t.kind for t in truth.traits}
    presented = truth
    counts = dict(zip(("Q", "Ystar", "phi"), error_tuple))
    for category in ("Q", "Ystar", "phi"):
        count = counts[category]
        pool = pools[category]
        if count > len(pool):
            raise ValueError(f"cannot inject {count} errors into {len(pool)} {category} sites")
        for site in rng.sample(pool, count):
            value = site_value(truth, site)
            if category != "phi" and kinds_by_trait[site.col] == BINARY:
                new = 1.0 - value
            else:
                new = value * rng.choice(FACTOR_GRID)
            presented = with_site(presented, site, new)
    injected = diff_domains(presented, truth)
    return Scenario(
        label=label or f"scenario-{error_tuple}-{seed}",
        truth=truth,
        presented=presented,
        injected=injected,
        error_tuple=error_tuple,
        seed=seed,
    )


def make_standard_scenarios(base_seed: int = 0) -> list[Scenario]:
    """The six study scenarios: two error-free, four with five errors each."""
    out = []
    for i, tup in enumerate(STANDARD_ERROR_TUPLES):
        truth = build_emergency_domain(seed=base_seed * 100 + i)
        out.append(
            generate_scenario(truth, tup, seed=base_seed * 100 + i, label=f"scenario-{i + 1}")
        )
    return out


def apply_repair(presented: ProblemDomain, edit: tuple[Site, float]) -> ProblemDomain:
    """One operator edit: exactly one Q/Ystar/phi value replaced."""
    site, value = edit
    return with_site(presented, site, value)


def compute_metrics(scenario: Scenario, final: ProblemDomain, repair_actions: int) -> SessionMetrics:
    remaining = diff_domains(final, scenario.truth)
    injected_sites = scenario.injected.sites()
    inj_per_cat = {"Q": 0, "Ystar": 0, "phi": 0}
    for site, _, _ in scenario.injected.entries:
        inj_per_cat[site.kind] += 1
    rem_per_cat = {"Q": 0, "Ystar": 0, "phi": 0}
    for site, _, _ in remaining.entries:
        if site in injected_sites:
            rem_per_cat[site.kind] += 1

    def pct(kind: str) -> float:
        return 100.0 * rem_per_cat[kind] / inj_per_cat[kind] if inj_per_cat[kind] else 0.0

    corrected = sum(inj_per_cat.values()) - sum(rem_per_cat.values())
    return SessionMetrics(
        repair_actions=repair_actions,
        remaining=remaining,
        rte_pct=pct("Q"),
        tre_pct=pct("Ystar"),
        rse_pct=pct("phi"),
        corrected=corrected,
        extraneous_corrections=max(0, repair_actions - corrected),
    )


def metrics_csv(rows: list[tuple[str, SessionMetrics]]) -> str:
    lines = ["label,repair_actions,corrected,extraneous_corrections,rte_pct,tre_pct,rse_pct"]
    for label, m in rows:
        lines.append(
            f"{label},{m.repair_actions},{m.corrected},{m.extraneous_corrections},"
            f"{m.rte_pct:.2f},{m.tre_pct:.2f},{m.rse_pct:.2f}"
        )
    return "\n".join(lines) + "\n"


def dump_scenario(s: Scenario, path) -> None:
    with open(path, "w") as f:
        json.dump(s.to_json(), f, indent=2, sort_keys=True)
        f.write("\n")


def load_scenario(path) -> Scenario:
    with open(path) as f:
        return Scenario.from_json(json.load(f))
