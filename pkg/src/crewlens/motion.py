"""Grid motion planning: shortest 4-connected paths and travel durations."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from heapq import heappop, heappush

from .domain import Cell, GridMap

# Fixed neighbor expansion order: up, right, down, left.
_STEPS = ((0, -1), (1, 0), (0, 1), (-1, 0))


class NoPathError(Exception):
    """No motion plan reaches the goal cell."""

    def __init__(self, goal: Cell):
        super().__init__(f"no path to {goal}")
        self.goal = goal


@dataclass(frozen=True)
class Path:
    cells: tuple[Cell, ...]
    cell_size: float

    @property
    def length_m(self) -> float:
        return (len(self.cells) - 1) * self.cell_size


def plan_path(grid: GridMap, start: Cell, goal: Cell) -> Path:
    """A* with Manhattan heuristic over the 4-connected grid.

    Deterministic: neighbors are expanded up, right, down, left and equal
    f-scores pop FIFO. Raises NoPathError when the goal is unreachable.
    """
    for name, cell in (("start", start), ("goal", goal)):
        if not grid.passable(cell):
            raise ValueError(f"{name} cell {cell} is out of bounds or blocked")

    def h(c: Cell) -> int:
        return abs(c[0] - goal[0]) + abs(c[1] - goal[1])

    counter = 0
    frontier: list[tuple[int, int, Cell]] = [(h(start), counter, start)]
    came: dict[Cell, Cell | None] = {start: None}
    g: dict[Cell, int] = {start: 0}
    while frontier:
        _, _, cur = heappop(frontier)
        if cur == goal:
            cells = []
            node: Cell | None = cur
            while node is not None:
                cells.append(node)
                node = came[node]
            return Path(tuple(reversed(cells)), grid.cell_size)
        for dx, dy in _STEPS:
            nxt = (cur[0] + dx, cur[1] + dy)
            if not grid.passable(nxt):
                continue
            ng = g[cur] + 1
            if ng < g.get(nxt, 1 << 60):
                g[nxt] = ng
                came[nxt] = cur
                counter += 1
                heappush(frontier, (ng + h(nxt), counter, nxt))
    raise NoPathError(goal)


def travel_time(path: Path, speed: float) -> float:
    """Seconds to traverse the path at a constant speed."""
    if speed <= 0:
        raise ValueError(f"speed must be positive, got {speed}")
    return path.length_m / speed


class DistanceOracle:
    """Cached breadth-first distance fields, one per queried source cell.

    Used by the scheduler to turn cell positions into travel durations without
    materializing full paths on every branch of the search.
    """

    def __init__(self, grid: GridMap):
        self.grid = grid
        self._fields: dict[Cell, dict[Cell, int]] = {}

    def _field(self, source: Cell) -> dict[Cell, int]:
        field = self._fields.get(source)
        if field is None:
            field = {source: 0}
            queue = deque([source])
            while queue:
                cur = queue.popleft()
                for dx, dy in _STEPS:
                    nxt = (cur[0] + dx, cur[1] + dy)
                    if self.grid.passable(nxt) and nxt not in field:
                        field[nxt] = field[cur] + 1
                        queue.append(nxt)
            self._fields[source] = field
        return field

    def steps(self, a: Cell, b: Cell) -> int | None:
        """Shortest cell-transition count from a to b, or None if unreachable."""
        return self._field(a).get(b)

    def seconds(self, a: Cell, b: Cell, speed: float) -> float | None:
        steps = self.steps(a, b)
        if steps is None:
            return None
        return steps * self.grid.cell_size / speed
