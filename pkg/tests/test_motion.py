import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import bfs_shortest_steps, random_map
from crewlens.domain import GridMap
from crewlens.motion import NoPathError, Path, plan_path, travel_time


def corridor(length: int) -> GridMap:
    return GridMap(length, 1, 1.0, frozenset(), ())


def test_straight_corridor():
    path = plan_path(corridor(6), (0, 0), (5, 0))
    assert path.length_m == 5.0
    assert path.cells == tuple((x, 0) for x in range(6))


def test_enclosed_goal():
    blocked = frozenset({(1, 0), (0, 1), (1, 1)})  # walls off the corner
    grid = GridMap(5, 5, 1.0, blocked, ())
    with pytest.raises(NoPathError) as err:
        plan_path(grid, (4, 4), (0, 0))
    assert err.value.goal == (0, 0)


def test_blocked_endpoint_rejected():
    grid = GridMap(3, 3, 1.0, frozenset({(1, 1)}), ())
    with pytest.raises(ValueError):
        plan_path(grid, (0, 0), (1, 1))
    with pytest.raises(ValueError):
        plan_path(grid, (1, 1), (0, 0))


@pytest.mark.parametrize("seed", range(50))
def test_matches_bfs_oracle(seed):
    grid = random_map(seed)
    rng = random.Random(seed + 10_000)
    open_cells = [
        (x, y) for x in range(grid.width) for y in range(grid.height) if grid.passable((x, y))
    ]
    start, goal = rng.sample(open_cells, 2)
    expected = bfs_shortest_steps(grid, start, goal)
    if expected is None:
        with pytest.raises(NoPathError):
            plan_path(grid, start, goal)
    else:
        path = plan_path(grid, start, goal)
        assert len(path.cells) - 1 == expected


def test_path_validity_and_determinism():
    grid = random_map(3)
    open_cells = [(x, y) for x in range(20) for y in range(20) if grid.passable((x, y))]
    start, goal = open_cells[0], open_cells[-1]
    first = plan_path(grid, start, goal)
    second = plan_path(grid, start, goal)
    assert first.cells == second.cells
    for a, b in zip(first.cells, first.cells[1:]):
        assert abs(a[0] - b[0]) + abs(a[1] - b[1]) == 1
        assert grid.passable(b)


class TestTravelTime:
    def test_division(self):
        path = Path(tuple((x, 0) for x in range(41)), 1.0)
        assert travel_time(path, 8.0) == 5.0

    def test_proportional_to_inverse_speed(self):
        path = Path(tuple((x, 0) for x in range(11)), 2.0)
        assert travel_time(path, 4.0) == 2 * travel_time(path, 8.0)

    def test_zero_length(self):
        assert travel_time(Path(((3, 3),), 1.0), 2.0) == 0.0

    def test_rejects_bad_speed(self):
        path = Path(((0, 0), (1, 0)), 1.0)
        for speed in (0.0, -1.0):
            with pytest.raises(ValueError):
                travel_time(path, speed)

    @given(
        steps=st.integers(min_value=0, max_value=500),
        cell=st.floats(min_value=0.1, max_value=50, allow_nan=False),
        slow=st.floats(min_value=0.1, max_value=20),
        delta=st.floats(min_value=0.1, max_value=20),
    )
    def test_decreasing_in_speed(self, steps, cell, slow, delta):
        path = Path(tuple((x, 0) for x in range(steps + 1)), cell)
        assert travel_time(path, slow + delta) <= travel_time(path, slow)
