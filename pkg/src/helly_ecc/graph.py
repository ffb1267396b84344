"""Immutable unweighted graphs and the hop-distance primitives built on them.

Vertices are dense integers ``0..n-1``. Distance vectors are plain lists of
ints indexed by vertex, and vertex sets are sorted tuples.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import GraphFormatError

VertexSet = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple, undirected, connected graph in compressed adjacency form.

    ``offsets``/``targets`` hold the flat CSR arrays (read-only); ``adj`` is a
    tuple-of-tuples view of the same lists used by the BFS inner loops.
    ``labels[v]`` is the original id of vertex ``v`` when loaded from a file.
    """

    offsets: np.ndarray
    targets: np.ndarray
    labels: tuple[int, ...]
    adj: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.offsets) - 1

    @property
    def m(self) -> int:
        return len(self.targets) // 2

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def edges(self) -> list[tuple[int, int]]:
        """All edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        return [(u, w) for u in range(self.n) for w in self.adj[u] if u < w]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.adj == other.adj

    def __hash__(self) -> int:
        return hash(self.adj)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]],
        labels: Sequence[int] | None = None,
    ) -> Graph:
        """Build a graph on vertices ``0..n-1``, validating every invariant."""
        if n < 1:
            raise GraphFormatError("graph has no vertices")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphFormatError(f"self-loop at vertex {u}")
            if v in nbrs[u]:
                raise GraphFormatError(f"duplicate edge ({u}, {v})")
            nbrs[u].add(v)
            nbrs[v].add(u)
        adj = tuple(tuple(sorted(s)) for s in nbrs)
        g = cls._from_adj(adj, labels)
        unreached = _first_unreached(g)
        if unreached is not None:
            raise GraphFormatError(
                f"graph is disconnected: vertex {g.labels[unreached]} "
                "is not reachable from the first vertex"
            )
        return g

    @classmethod
    def _from_adj(
        cls, adj: tuple[tuple[int, ...], ...], labels: Sequence[int] | None = None
    ) -> Graph:
        n = len(adj)
        offsets = np.zeros(n + 1, dtype=np.int64)
        offsets[1:] = np.cumsum([len(a) for a in adj])
        targets = np.fromiter(
            (w for a in adj for w in a), dtype=np.int64, count=int(offsets[-1])
        )
        offsets.flags.writeable = False
        targets.flags.writeable = False
        if labels is None:
            labels = range(n)
        return cls(offsets, targets, tuple(labels), adj)


def _first_unreached(g: Graph) -> int | None:
    dist = bfs(g, 0)
    for v, d in enumerate(dist):
        if d < 0:
            return v
    return None


def load_graph(text: str) -> Graph:
    """Parse a whitespace-separated ``u v`` edge list.

    Lines starting with ``#`` and blank lines are skipped. Vertex ids are
    compacted to ``0..n-1`` in order of first appearance.
    """
    index: dict[int, int] = {}
    seen: dict[tuple[int, int], int] = {}
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"expected 'u v', got {line!r}", lineno)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"non-integer vertex id in {line!r}", lineno) from None
        if a < 0 or b < 0:
            raise GraphFormatError(f"negative vertex id in {line!r}", lineno)
        if a == b:
            raise GraphFormatError(f"self-loop at vertex {a}", lineno)
        key = (min(a, b), max(a, b))
        if key in seen:
            raise GraphFormatError(
                f"duplicate edge {a} {b} (first given on line {seen[key]})", lineno
            )
        seen[key] = lineno
        for x in (a, b):
            if x not in index:
                index[x] = len(index)
        edges.append((index[a], index[b]))
    if not index:
        raise GraphFormatError("edge list is empty")
    return Graph.from_edges(len(index), edges, labels=list(index))


def to_edge_list(g: Graph, header: str | None = None) -> str:
    lines = [f"# {line}" for line in (header.splitlines() if header else [])]
    lines.append(f"# n={g.n} m={g.m}")
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def bfs(g: Graph, s: int) -> list[int]:
    """Hop distances from ``s``; unreachable entries stay -1."""
    return multi_source_bfs(g, (s,))


def multi_source_bfs(g: Graph, sources: Iterable[int]) -> list[int]:
    """``dist[v] = min over s in sources of d(v, s)``."""
    adj = g.adj
    dist = [-1] * g.n
    frontier = []
    for s in sources:
        if dist[s] < 0:
            dist[s] = 0
            frontier.append(s)
    if not frontier:
        raise ValueError("multi_source_bfs needs at least one source")
    d = 0
    while frontier:
        d += 1
        nxt = []
        for u in frontier:
            for w in adj[u]:
                if dist[w] < 0:
                    dist[w] = d
                    nxt.append(w)
        frontier = nxt
    return dist


def layers(g: Graph, sources: Iterable[int]) -> list[VertexSet]:
    """BFS layers ``L_i(S) = {v : d(v, S) = i}``, ``result[0] == S``."""
    return layers_of(multi_source_bfs(g, sources))


def layers_of(dist: Sequence[int]) -> list[VertexSet]:
    out: list[list[int]] = [[] for _ in range(max(dist) + 1)]
    for v, d in enumerate(dist):
        out[d].append(v)
    return [tuple(layer) for layer in out]


def ball(g: Graph, v: int, r: int) -> VertexSet:
    """``N^r[v]``: every vertex within ``r`` hops of ``v``."""
    if r < 0:
        raise ValueError("ball radius must be non-negative")
    return tuple(u for u, d in enumerate(bfs(g, v)) if d <= r)


def metric_slice(
    g: Graph,
    v: int,
    j: int,
    dist_to_set: Sequence[int],
    dist_from_v: Sequence[int] | None = None,
) -> VertexSet:
    """Vertices ``u`` at distance ``j`` from ``v`` lying on a shortest path from
    ``v`` to the set whose distance vector is ``dist_to_set``.

    An out-of-range ``j`` yields the empty set.
    """
    if dist_from_v is None:
        dist_from_v = bfs(g, v)
    target = dist_to_set[v]
    if not 0 <= j <= target:
        return ()
    return tuple(
        u
        for u in range(g.n)
        if dist_from_v[u] == j and j + dist_to_set[u] == target
    )


def interval(g: Graph, x: int, y: int) -> VertexSet:
    """``I(x, y)``: every vertex on some shortest x-y path."""
    dx, dy = bfs(g, x), bfs(g, y)
    d = dx[y]
    return tuple(w for w in range(g.n) if dx[w] + dy[w] == d)


def projection(
    g: Graph, a: int, targets: Sequence[int], rows: dict[int, Sequence[int]]
) -> tuple[VertexSet, int]:
    """Metric projection of ``a`` onto ``targets`` and the distance ``d(a, targets)``.

    ``rows[u]`` must be the BFS distance vector of ``u``.
    """
    if not targets:
        raise ValueError("projection onto an empty set")
    best = min(rows[u][a] for u in targets)
    return tuple(sorted(u for u in targets if rows[u][a] == best)), best


def closed_neighborhood(g: Graph, vertices: Iterable[int]) -> VertexSet:
    adj = g.adj
    out = set()
    for v in vertices:
        out.add(v)
        out.update(adj[v])
    return tuple(sorted(out))
