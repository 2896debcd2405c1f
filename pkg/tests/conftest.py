import random
from collections import deque

import pytest

from crewlens.domain import (
    DesiredTraitMatrix,
    GridMap,
    ProblemDomain,
    RobotTraitMatrix,
    SpeedVector,
    TaskNetwork,
    TaskRecord,
    TraitDef,
)
from crewlens.planner import solve
from crewlens.scenario import build_emergency_domain, build_headline_scenario


@pytest.fixture(scope="session")
def emergency():
    return build_emergency_domain(seed=7)


@pytest.fixture(scope="session")
def emergency_solution(emergency):
    return solve(emergency)


@pytest.fixture(scope="session")
def headline():
    return build_headline_scenario()


@pytest.fixture(scope="session")
def headline_solution(headline):
    return solve(headline.presented)


# ---------------------------------------------------------------------------
# Independent oracles. These stay deliberately separate from the package
# implementations they check.


def bfs_shortest_steps(grid: GridMap, start, goal):
    """Plain breadth-first search; returns step count or None."""
    if start == goal:
        return 0
    seen = {start}
    queue = deque([(start, 0)])
    while queue:
        (x, y), dist = queue.popleft()
        for nxt in ((x, y - 1), (x + 1, y), (x, y + 1), (x - 1, y)):
            if nxt == goal:
                return dist + 1
            if grid.passable(nxt) and nxt not in seen:
                seen.add(nxt)
                queue.append((nxt, dist + 1))
    return None


def random_map(seed: int, size: int = 20, blocked_frac: float = 0.25) -> GridMap:
    rng = random.Random(seed)
    cells = [(x, y) for x in range(size) for y in range(size)]
    blocked = frozenset(rng.sample(cells, int(blocked_frac * len(cells))))
    return GridMap(size, size, 1.0, blocked, ())


def split_world() -> ProblemDomain:
    """Two robots separated by a full-height wall; one task on each side."""
    wall = frozenset((3, y) for y in range(7))
    return ProblemDomain(
        traits=(TraitDef("load", "cumulative"),),
        Q=RobotTraitMatrix(("lefty", "righty"), ((5.0,), (5.0,))),
        phi=SpeedVector((1.0, 1.0)),
        network=TaskNetwork(
            (TaskRecord("west", (1, 1), 10.0), TaskRecord("east", (5, 5), 10.0)), ()
        ),
        Ystar=DesiredTraitMatrix(((1.0,), (1.0,))),
        map=GridMap(7, 7, 1.0, wall, ((0, 3), (6, 3))),
    )


def random_small_domain(seed: int) -> ProblemDomain:
    """Random instance with M*N <= 9 for brute-force comparison."""
    rng = random.Random(seed)
    n = rng.choice((2, 3))
    m = rng.randint(1, 9 // n)
    traits = (TraitDef("load", "cumulative"), TraitDef("tool", "binary"))
    robots = tuple(f"r{i}" for i in range(n))
    q_rows = tuple((float(rng.randint(1, 10)), float(rng.randint(0, 1))) for _ in range(n))
    speeds = tuple(float(rng.randint(1, 5)) for _ in range(n))

    size = 6
    cells = [(x, y) for x in range(size) for y in range(size)]
    rng.shuffle(cells)
    starts = tuple(cells[:n])
    locations = cells[n : n + m]
    blocked = frozenset(
        c for c in cells[n + m :] if rng.random() < 0.15
    )
    tasks = tuple(
        TaskRecord(f"t{j}", locations[j], float(rng.randint(0, 10))) for j in range(m)
    )
    edges = tuple(
        (f"t{i}", f"t{j}")
        for i in range(m)
        for j in range(i + 1, m)
        if rng.random() < 0.3
    )
    reqs = tuple(
        (float(rng.randint(0, 12)), float(rng.randint(0, 1))) for _ in range(m)
    )
    return ProblemDomain(
        traits=traits,
        Q=RobotTraitMatrix(robots, q_rows),
        phi=SpeedVector(speeds),
        network=TaskNetwork(tasks, edges),
        Ystar=DesiredTraitMatrix(reqs),
        map=GridMap(size, size, float(rng.randint(1, 4)), blocked, starts),
    )
