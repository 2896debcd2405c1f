"""Problem formalism: robots with trait vectors, tasks with requirements,
a precedence network, and a grid map.

A domain bundles the robot trait matrix, the robot speed vector, the task
network, the desired trait matrix, and the map. Trait dimensions are either
cumulative (coalition members add up, e.g. carrying capacity) or binary
(coalition members OR together, e.g. forklift).
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field, replace
from typing import Iterable

CUMULATIVE = "cumulative"
BINARY = "binary"

Cell = tuple[int, int]


@dataclass(frozen=True)
class TraitDef:
    name: str
    kind: str  # CUMULATIVE or BINARY


@dataclass(frozen=True)
class RobotTraitMatrix:
    """N x U matrix; one trait row per robot."""

    robot_ids: tuple[str, ...]
    rows: tuple[tuple[float, ...], ...]

    def index(self, robot: str) -> int:
        try:
            return self.robot_ids.index(robot)
        except ValueError:
            raise ValueError(f"unknown robot id: {robot!r}") from None

    def row(self, robot: str) -> tuple[float, ...]:
        return self.rows[self.index(robot)]


@dataclass(frozen=True)
class SpeedVector:
    speeds: tuple[float, ...]  # meters/second, one per robot


@dataclass(frozen=True)
class TaskRecord:
    name: str
    location: Cell
    work_duration: float  # seconds


@dataclass(frozen=True)
class TaskNetwork:
    tasks: tuple[TaskRecord, ...]
    edges: tuple[tuple[str, str], ...]  # (before, after)

    def task_names(self) -> tuple[str, ...]:
        return tuple(t.name for t in self.tasks)

    def index(self, task: str) -> int:
        for i, t in enumerate(self.tasks):
            if t.name == task:
                return i
        raise ValueError(f"unknown task id: {task!r}")

    def task(self, name: str) -> TaskRecord:
        return self.tasks[self.index(name)]

    def predecessors(self, task: str) -> tuple[str, ...]:
        return tuple(a for a, b in self.edges if b == task)

    def topological_order(self) -> tuple[str, ...]:
        """Deterministic topo order: among ready tasks, lowest index first.

        Raises ValueError on a precedence cycle.
        """
        names = self.task_names()
        indeg = {n: 0 for n in names}
        for _, b in self.edges:
            indeg[b] += 1
        order: list[str] = []
        ready = [n for n in names if indeg[n] == 0]
        while ready:
            ready.sort(key=names.index)
            n = ready.pop(0)
            order.append(n)
            for a, b in self.edges:
                if a == n:
                    indeg[b] -= 1
                    if indeg[b] == 0:
                        ready.append(b)
        if len(order) != len(names):
            raise ValueError("precedence cycle in task network")
        return tuple(order)


@dataclass(frozen=True)
class DesiredTraitMatrix:
    rows: tuple[tuple[float, ...], ...]  # M x U, task order


@dataclass(frozen=True)
class GridMap:
    width: int
    height: int
    cell_size: float  # meters per cell edge
    blocked: frozenset[Cell]
    starts: tuple[Cell, ...]  # one per robot, robot order

    def in_bounds(self, cell: Cell) -> bool:
        x, y = cell
        return 0 <= x < self.width and 0 <= y < self.height

    def passable(self, cell: Cell) -> bool:
        return self.in_bounds(cell) and cell not in self.blocked


@dataclass(frozen=True)
class ProblemDomain:
    traits: tuple[TraitDef, ...]
    Q: RobotTraitMatrix
    phi: SpeedVector
    network: TaskNetwork
    Ystar: DesiredTraitMatrix
    map: GridMap

    @property
    def robot_ids(self) -> tuple[str, ...]:
        return self.Q.robot_ids

    @property
    def task_names(self) -> tuple[str, ...]:
        return self.network.task_names()

    def trait_index(self, name: str) -> int:
        for i, t in enumerate(self.traits):
            if t.name == name:
                return i
        raise ValueError(f"unknown trait: {name!r}")

    def speed_of(self, robot: str) -> float:
        return self.phi.speeds[self.Q.index(robot)]

    def start_of(self, robot: str) -> Cell:
        return self.map.starts[self.Q.index(robot)]

    def requirement(self, task: str) -> tuple[float, ...]:
        return self.Ystar.rows[self.network.index(task)]


@dataclass(frozen=True, order=True)
class Site:
    """Addressable value in a domain: Q[robot][trait], Ystar[task][trait], phi[robot]."""

    kind: str  # "Q" | "Ystar" | "phi"
    row: str
    col: str | None = None

    def __str__(self) -> str:
        if self.kind == "phi":
            return f"phi[{self.row}]"
        return f"{self.kind}[{self.row}][{self.col}]"

    @staticmethod
    def parse(text: str) -> "Site":
        m = re.fullmatch(r"phi\[([^\]]+)\]", text)
        if m:
            return Site("phi", m.group(1))
        m = re.fullmatch(r"(Q|Ystar)\[([^\]]+)\]\[([^\]]+)\]", text)
        if m:
            return Site(m.group(1), m.group(2), m.group(3))
        raise ValueError(f"unparseable site: {text!r}")


@dataclass(frozen=True)
class DomainDiff:
    entries: tuple[tuple[Site, float, float], ...]  # (site, expected, actual)

    def __len__(self) -> int:
        return len(self.entries)

    def sites(self) -> set[Site]:
        return {site for site, _, _ in self.entries}


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str


def validate_domain(d: ProblemDomain) -> list[Violation]:
    """Collect every structural violation; an empty list means well-formed."""
    out: list[Violation] = []
    U = len(d.traits)
    names = d.task_names

    for robot, row in zip(d.Q.robot_ids, d.Q.rows):
        if len(row) != U:
            out.append(Violation("shape-mismatch", f"trait row of {robot} has length {len(row)}, expected {U}"))
            continue
        for tdef, v in zip(d.traits, row):
            if v < 0:
                out.append(Violation("negative-trait", f"Q[{robot}][{tdef.name}] = {v}"))
            elif tdef.kind == BINARY and v not in (0, 1):
                out.append(Violation("binary-trait-range", f"Q[{robot}][{tdef.name}] = {v}"))

    if len(d.phi.speeds) != len(d.Q.robot_ids):
        out.append(Violation("shape-mismatch", "speed vector length does not match robot count"))
    for robot, speed in zip(d.Q.robot_ids, d.phi.speeds):
        if speed <= 0:
            out.append(Violation("non-positive-speed", f"phi[{robot}] = {speed}"))

    if len(d.Ystar.rows) != len(names):
        out.append(Violation("shape-mismatch", "desired trait matrix row count does not match task count"))
    for task, row in zip(names, d.Ystar.rows):
        if len(row) != U:
            out.append(Violation("shape-mismatch", f"requirement row of {task} has length {len(row)}, expected {U}"))
            continue
        for tdef, v in zip(d.traits, row):
            if v < 0:
                out.append(Violation("negative-trait", f"Ystar[{task}][{tdef.name}] = {v}"))
            elif tdef.kind == BINARY and v not in (0, 1):
                out.append(Violation("binary-trait-range", f"Ystar[{task}][{tdef.name}] = {v}"))

    for a, b in d.network.edges:
        for end in (a, b):
            if end not in names:
                out.append(Violation("unknown-task", f"precedence edge endpoint {end!r} is not a declared task"))
    try:
        d.network.topological_order()
    except ValueError:
        out.append(Violation("precedence-cycle", "task network contains a precedence cycle"))

    if len(d.map.starts) != len(d.Q.robot_ids):
        out.append(Violation("shape-mismatch", "map start-cell count does not match robot count"))
    for robot, cell in zip(d.Q.robot_ids, d.map.starts):
        if not d.map.in_bounds(cell):
            out.append(Violation("out-of-bounds", f"start cell of {robot} at {cell} is out of bounds"))
        elif cell in d.map.blocked:
            out.append(Violation("blocked-cell", f"start cell of {robot} at {cell} is blocked"))
    for t in d.network.tasks:
        if not d.map.in_bounds(t.location):
            out.append(Violation("out-of-bounds", f"task {t.name} at {t.location} is out of bounds"))
        elif t.location in d.map.blocked:
            out.append(Violation("blocked-cell", f"task {t.name} at {t.location} is blocked"))
        if t.work_duration < 0:
            out.append(Violation("negative-duration", f"work duration of {t.name} is {t.work_duration}"))

    return out


def aggregate_traits(
    coalition: Iterable[str], q: RobotTraitMatrix, traits: tuple[TraitDef, ...]
) -> tuple[float, ...]:
    """Pool a coalition's capabilities: sum cumulative traits, OR binary ones.

    An empty coalition aggregates to all zeros.
    """
    rows = [q.row(r) for r in coalition]
    agg = []
    for u, tdef in enumerate(traits):
        vals = [row[u] for row in rows]
        if tdef.kind == BINARY:
            agg.append(1.0 if any(v == 1 for v in vals) else 0.0)
        else:
            agg.append(float(sum(vals)))
    return tuple(agg)


def coalition_satisfies(requirement: tuple[float, ...], capability: tuple[float, ...]) -> bool:
    if len(requirement) != len(capability):
        raise ValueError("requirement and capability vectors differ in length")
    return all(c >= r for r, c in zip(requirement, capability))


def _sites_of(d: ProblemDomain):
    for robot, row in zip(d.Q.robot_ids, d.Q.rows):
        for tdef, v in zip(d.traits, row):
            yield Site("Q", robot, tdef.name), v
    for task, row in zip(d.task_names, d.Ystar.rows):
        for tdef, v in zip(d.traits, row):
            yield Site("Ystar", task, tdef.name), v
    for robot, speed in zip(d.Q.robot_ids, d.phi.speeds):
        yield Site("phi", robot), speed


def diff_domains(actual: ProblemDomain, truth: ProblemDomain) -> DomainDiff:
    """List the Q/Ystar/phi sites where the two domains disagree."""
    a_sites = dict(_sites_of(actual))
    t_sites = dict(_sites_of(truth))
    if set(a_sites) != set(t_sites):
        raise ValueError("domains have different shapes")
    entries = []
    for site, actual_v in a_sites.items():
        truth_v = t_sites[site]
        if actual_v != truth_v:
            entries.append((site, truth_v, actual_v))
    entries.sort(key=lambda e: str(e[0]))
    return DomainDiff(tuple(entries))


def site_value(d: ProblemDomain, site: Site) -> float:
    if site.kind == "phi":
        return d.phi.speeds[d.Q.index(site.row)]
    u = d.trait_index(site.col)
    if site.kind == "Q":
        return d.Q.rows[d.Q.index(site.row)][u]
    if site.kind == "Ystar":
        return d.Ystar.rows[d.network.index(site.row)][u]
    raise ValueError(f"unknown site kind: {site.kind!r}")


def with_site(d: ProblemDomain, site: Site, value: float) -> ProblemDomain:
    """Return a copy of the domain with one Q/Ystar/phi value replaced."""
    value = float(value)
    if site.kind == "phi":
        i = d.Q.index(site.row)
        speeds = list(d.phi.speeds)
        speeds[i] = value
        return replace(d, phi=SpeedVector(tuple(speeds)))
    u = d.trait_index(site.col)
    if site.kind == "Q":
        i = d.Q.index(site.row)
        rows = [list(r) for r in d.Q.rows]
        rows[i][u] = value
        return replace(d, Q=RobotTraitMatrix(d.Q.robot_ids, tuple(tuple(r) for r in rows)))
    if site.kind == "Ystar":
        i = d.network.index(site.row)
        rows = [list(r) for r in d.Ystar.rows]
        rows[i][u] = value
        return replace(d, Ystar=DesiredTraitMatrix(tuple(tuple(r) for r in rows)))
    raise ValueError(f"unknown site kind: {site.kind!r}")


# ---------------------------------------------------------------------------
# Domain file format (JSON). Field names are fixed; see README.


def domain_to_json(d: ProblemDomain) -> dict:
    return {
        "traits": [{"name": t.name, "class": t.kind} for t in d.traits],
        "robots": [
            {
                "name": r,
                "traits": list(d.Q.rows[i]),
                "speed": d.phi.speeds[i],
                "start": list(d.map.starts[i]),
            }
            for i, r in enumerate(d.Q.robot_ids)
        ],
        "tasks": [
            {
                "name": t.name,
                "location": list(t.location),
                "work_duration": t.work_duration,
                "requirements": list(d.Ystar.rows[i]),
            }
            for i, t in enumerate(d.network.tasks)
        ],
        "precedence": [[a, b] for a, b in d.network.edges],
        "map": {
            "width": d.map.width,
            "height": d.map.height,
            "cell_size": d.map.cell_size,
            "blocked": sorted([list(c) for c in d.map.blocked]),
        },
    }


def domain_from_json(doc: dict) -> ProblemDomain:
    try:
        traits = tuple(TraitDef(t["name"], t["class"]) for t in doc["traits"])
        robots = doc["robots"]
        tasks = doc["tasks"]
        m = doc["map"]
        return ProblemDomain(
            traits=traits,
            Q=RobotTraitMatrix(
                tuple(r["name"] for r in robots),
                tuple(tuple(float(v) for v in r["traits"]) for r in robots),
            ),
            phi=SpeedVector(tuple(float(r["speed"]) for r in robots)),
            network=TaskNetwork(
                tuple(
                    TaskRecord(t["name"], tuple(t["location"]), float(t["work_duration"]))
                    for t in tasks
                ),
                tuple((a, b) for a, b in doc.get("precedence", [])),
            ),
            Ystar=DesiredTraitMatrix(
                tuple(tuple(float(v) for v in t["requirements"]) for t in tasks)
            ),
            map=GridMap(
                width=int(m["width"]),
                height=int(m["height"]),
                cell_size=float(m["cell_size"]),
                blocked=frozenset(tuple(c) for c in m.get("blocked", [])),
                starts=tuple(tuple(r["start"]) for r in robots),
            ),
        )
    except (KeyError, TypeError) as e:
        raise ValueError(f"malformed domain document: {e}") from e


def load_domain(path) -> ProblemDomain:
    with open(path) as f:
        return domain_from_json(json.load(f))


def dump_domain(d: ProblemDomain, path) -> None:
    with open(path, "w") as f:
        json.dump(domain_to_json(d), f, indent=2, sort_keys=True)
        f.write("\n")
