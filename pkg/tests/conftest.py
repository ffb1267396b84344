import itertools
from collections import deque

import pytest
from hypothesis import HealthCheck, settings

from helly_ecc.generators import complete, cycle, grid, path
from helly_ecc.graph import Graph

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def naive_distances(g: Graph) -> list[list[int]]:
    """Floyd-Warshall over adjacency lists; shares no code with the package."""
    n = g.n
    inf = n + 1
    d = [[0 if i == j else inf for j in range(n)] for i in range(n)]
    for u in range(n):
        for v in g.adj[u]:
            d[u][v] = 1
    for k in range(n):
        dk = d[k]
        for i in range(n):
            di = d[i]
            dik = di[k]
            for j in range(n):
                if dik + dk[j] < di[j]:
                    di[j] = dik + dk[j]
    return d


def naive_bfs(g: Graph, s: int) -> list[int]:
    dist = [-1] * g.n
    dist[s] = 0
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def naive_delta2(d) -> int:
    n = len(d)
    best = 0
    for x, y, z, w in itertools.combinations(range(n), 4):
        s = sorted([d[x][y] + d[z][w], d[x][z] + d[y][w], d[x][w] + d[y][z]])
        best = max(best, s[2] - s[1])
    return best


def naive_beta(d) -> int:
    n = len(d)
    best = 0
    for v in range(n):
        for r in range(1, max(d[v]) + 1):
            inside = [u for u in range(n) if d[v][u] <= r]
            outside = [z for z in range(n) if d[v][z] > r]
            for x in inside:
                for y in inside:
                    for z in outside:
                        if d[x][z] + d[z][y] == d[x][y]:
                            best = max(best, min(d[z][x], d[z][y]))
    return best


def naive_subset_center(d, M) -> tuple[int, list[int]]:
    e = [max(d[u][v] for u in M) for v in range(len(d))]
    rad = min(e)
    return rad, [v for v in range(len(d)) if e[v] == rad]


@pytest.fixture
def p5() -> Graph:
    return path(5)


@pytest.fixture
def c4() -> Graph:
    return cycle(4)


@pytest.fixture
def k4() -> Graph:
    return complete(4)


@pytest.fixture
def king3() -> Graph:
    return grid(3, 3, king=True)


@pytest.fixture
def two_triangles() -> Graph:
    return Graph.from_edges(7, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 6)])


SMALL_HELLY_SPECS = [
    "path(1)",
    "path(2)",
    "path(7)",
    "star(5)",
    "complete(5)",
    "caterpillar(4,2)",
    "king-grid(3,3)",
    "king-grid(2,5)",
    "king-grid(3,4)",
    "random-tree(12)",
    "block-graph(12)",
    "block-graph(13,3)",
    "cone(cycle(6))",
    "cone(rect-grid(3,3))",
    "strong-product(path(3),path(4))",
    "strong-product(star(3),path(3))",
]


ACCEPTANCE: list[tuple[str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
