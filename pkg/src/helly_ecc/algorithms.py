"""Fast eccentricity algorithms for Helly graphs.

Two drivers compute the full eccentricity table:

* :func:`all_ecc_sqrt` runs in O(m*sqrt(n)) on any Helly graph;
* :func:`all_ecc_hyperbolic` runs in O(delta^2 * m * log(delta)) where delta is
  the Gromov hyperbolicity, and needs no knowledge of delta.

Both reduce the problem to computing the center ``C(G)``, since on Helly
graphs ``e(v) = d(v, C(G)) + rad(G)`` for every vertex.

None of these functions validate that the input is Helly. Whenever a
guarantee that holds on every Helly graph fails at runtime they raise
:class:`~helly_ecc.errors.NotHellyError` naming the stage.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import NotHellyError
from .graph import (
    Graph,
    VertexSet,
    bfs,
    closed_neighborhood,
    layers_of,
    multi_source_bfs,
    projection,
)
from .groups import Constraint, Group, GroupSystem, expand_and_merge, singleton_system
from .table import EccentricityTable


def ceil_sqrt(n: int) -> int:
    s = math.isqrt(n)
    return s if s * s == n else s + 1


def _farthest(dist: Sequence[int]) -> int:
    # list.index returns the smallest id among ties
    return dist.index(max(dist))


def _bfs_within(g: Graph, s: int, limit: int) -> list[int] | None:
    """BFS from ``s`` that gives up (returns None) once it passes depth ``limit``."""
    adj = g.adj
    dist = [-1] * g.n
    dist[s] = 0
    frontier = [s]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for u in frontier:
            for w in adj[u]:
                if dist[w] < 0:
                    dist[w] = d
                    nxt.append(w)
        if nxt and d > limit:
            return None
        frontier = nxt
    return dist


# ---------------------------------------------------------------------------
# Eccentricities up to a threshold


@dataclass(frozen=True)
class ThresholdResult:
    """Vertices with eccentricity at most ``k``, with their eccentricities.

    ``rad``/``center`` are set only when that set is nonempty.
    """

    k: int
    ecc: dict[int, int]
    rad: int | None
    center: VertexSet


def ecc_at_most_k(g: Graph, k: int, debug: bool = False) -> ThresholdResult:
    """All vertices of eccentricity at most ``k`` in O(k*m) time.

    Keeps one group per cluster of vertex balls ``N^l[x]`` whose intersection
    is nonempty; the first step at which a single group remains is the
    radius and that group is the center.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    n = g.n
    check = g if debug else None
    universe = [Constraint(x, 0) for x in range(n)]
    sys = singleton_system(range(n), universe, [frozenset((x,)) for x in range(n)])
    if debug:
        sys.check(g)

    ecc: dict[int, int] = {}
    if n == 1:
        return ThresholdResult(k, {0: 0}, 0, (0,))
    rad = None
    center: VertexSet = ()
    frontier: list[int] = []
    for step in range(1, k + 1):
        if rad is None:
            grown = [closed_neighborhood(g, grp.members) for grp in sys.groups]
            sys = expand_and_merge(sys, grown, check)
            if len(sys.groups) == 1:
                rad = step
                center = sys.groups[0].members
                for v in center:
                    ecc[v] = step
                frontier = list(center)
        else:
            nxt = []
            for u in frontier:
                for w in g.adj[u]:
                    if w not in ecc:
                        ecc[w] = step
                        nxt.append(w)
            frontier = nxt
        if len(ecc) == n:
            break
    return ThresholdResult(k, ecc, rad, center)


# ---------------------------------------------------------------------------
# Central vertex


@dataclass(frozen=True)
class Descent:
    """Outcome of one descent probe from a vertex.

    ``central`` means no neighbor has smaller eccentricity and ``vertex`` is
    the probed vertex; otherwise ``vertex`` is the improving neighbor.
    """

    vertex: int
    ecc: int
    central: bool
    dist: list[int] = field(repr=False, compare=False, default_factory=list)


def descend_step(g: Graph, v: int, dist_row: Sequence[int] | None = None) -> Descent:
    if dist_row is None:
        dist_row = bfs(g, v)
    e = max(dist_row)
    for u in g.adj[v]:
        du = _bfs_within(g, u, e - 1)
        if du is not None:
            return Descent(u, max(du), False, du)
    return Descent(v, e, True, list(dist_row))


def approx_center(g: Graph, start: int = 0) -> tuple[int, int]:
    """A vertex of eccentricity at most ``rad + 2*delta`` and its eccentricity.

    Iterated double sweep: from the current vertex go to a farthest vertex
    ``u``, from ``u`` to a farthest ``w``, and move to the middle of a shortest
    u-w path while that strictly lowers the eccentricity.
    """
    n = g.n
    c = start
    dist_c = bfs(g, c)
    e_c = max(dist_c)
    for _ in range(n):
        u = _farthest(dist_c)
        du = bfs(g, u)
        w = _farthest(du)
        d = du[w]
        dw = bfs(g, w)
        half = d // 2
        mid = next(x for x in range(n) if du[x] == half and dw[x] == d - half)
        dm = bfs(g, mid)
        e_m = max(dm)
        if e_m >= e_c:
            break
        c, dist_c, e_c = mid, dm, e_m
    return c, e_c


def find_center(g: Graph, start: int = 0) -> tuple[int, int]:
    """A central vertex and the radius, by descending from :func:`approx_center`."""
    c, _ = approx_center(g, start)
    row = bfs(g, c)
    for _ in range(g.n):
        step = descend_step(g, c, row)
        if step.central:
            return c, step.ecc
        c, row = step.vertex, step.dist
    raise NotHellyError("find_center", "descent did not terminate")


def certify_farthest(g: Graph, table: EccentricityTable) -> None:
    """One BFS from the vertex of largest reported eccentricity must agree.

    Always true for an exact table; catches wrong tables on non-Helly input.
    """
    v = table.ecc.index(table.diam)
    e = max(bfs(g, v))
    if e != table.diam:
        raise NotHellyError(
            "certify", f"vertex {v} has eccentricity {e}, table claims {table.diam}"
        )


def ecc_from_center(g: Graph, center: Sequence[int], rad: int) -> EccentricityTable:
    dist = multi_source_bfs(g, center)
    ecc = tuple(rad + d for d in dist)
    return EccentricityTable(ecc, rad, max(ecc), tuple(sorted(center)))


# ---------------------------------------------------------------------------
# O(m sqrt n) algorithm


@dataclass
class SqrtState:
    """Intermediate data of the far-radius branch of :func:`all_ecc_sqrt`."""

    c: int
    r: int
    s: int
    S: VertexSet
    dist_S: list[int] = field(repr=False)
    band_index: int
    L: VertexSet
    A: VertexSet
    I_A: tuple[int, ...]
    dist_L: dict[int, int] = field(repr=False)
    gate: dict[int, int] = field(repr=False)
    p: dict[tuple[int, int], int] = field(repr=False)
    q: dict[int, int]
    rows: dict[int, list[int]] = field(repr=False)
    center: VertexSet


def sqrt_state(g: Graph, c: int, r: int) -> SqrtState:
    """Compute ``C(G)`` through distant gates on a small BFS layer.

    Requires ``e(c) = r = rad(G) > 5s + 6`` with ``s = ceil(sqrt(n))``.
    """
    n = g.n
    s = ceil_sqrt(n)
    if r <= 5 * s + 6:
        raise ValueError(f"radius {r} too small for the gate branch (need > {5 * s + 6})")
    dc = bfs(g, c)
    S = tuple(v for v in range(n) if dc[v] <= 2 * s + 3)
    dS = multi_source_bfs(g, S)
    lay = layers_of(dS)
    band = r - 4 * s - 6
    if len(lay) - 1 < band:
        raise NotHellyError("band", f"only {len(lay) - 1} layers around S, need {band}")
    band_index = min(range(1, band + 1), key=lambda i: (len(lay[i]), i))
    L = lay[band_index]
    if len(L) > s:
        raise NotHellyError("band", f"smallest band layer has {len(L)} > {s} vertices")
    A = tuple(v for v in range(n) if dS[v] > band)

    rows = {u: bfs(g, u) for u in L}
    dist_L: dict[int, int] = {}
    proj: dict[int, VertexSet] = {}
    for a in A:
        proj[a], dist_L[a] = projection(g, a, L, rows)
    I_A = tuple(sorted(set(dist_L.values())))

    # p(u, i) = |N^{r-i}[u] ∩ S|: counting-sort S by d(u, .) and sweep the
    # thresholds r - i in increasing order alongside the cumulative counts
    p: dict[tuple[int, int], int] = {}
    for u in L:
        row = rows[u]
        hist = [0] * (max(row[x] for x in S) + 1)
        for x in S:
            hist[row[x]] += 1
        d, acc = 0, 0
        for i in reversed(I_A):
            t = r - i
            while d < len(hist) and d <= t:
                acc += hist[d]
                d += 1
            p[u, i] = acc if t >= 0 else 0

    gate: dict[int, int] = {}
    q = {u: 0 for u in L}
    for a in A:
        i = dist_L[a]
        best = max(proj[a], key=lambda u: (p[u, i], -u))
        gate[a] = best
        if i > q[best]:
            q[best] = i

    center = tuple(x for x in S if all(rows[u][x] <= r - q[u] for u in L))
    if c not in center:
        raise NotHellyError("center", f"central vertex {c} rejected by the gate filter")
    return SqrtState(
        c, r, s, S, dS, band_index, L, A, I_A, dist_L, gate, p, q, rows, center
    )


def all_ecc_sqrt(
    g: Graph, debug: bool = False, info: dict | None = None
) -> EccentricityTable:
    """Exact eccentricity table of a Helly graph in O(m*sqrt(n)) time.

    ``info``, if given, receives the branch taken and the central vertex.
    """
    n = g.n
    s = ceil_sqrt(n)
    c, r = find_center(g)
    if r <= 5 * s + 6:
        res = ecc_at_most_k(g, 10 * s + 12, debug)
        if len(res.ecc) != n or res.rad != r:
            raise NotHellyError(
                "threshold",
                f"threshold run covered {len(res.ecc)}/{n} vertices with radius "
                f"{res.rad}, expected all with radius {r}",
            )
        table = EccentricityTable.from_ecc([res.ecc[v] for v in range(n)])
        certify_farthest(g, table)
        branch = "threshold"
    else:
        st = sqrt_state(g, c, r)
        table = ecc_from_center(g, st.center, r)
        certify_farthest(g, table)
        branch = "gates"
    if info is not None:
        info.update(branch=branch, c=c, rad=r, s=s)
    return table


# ---------------------------------------------------------------------------
# Center extraction near a central vertex


def phase1_partition(
    g: Graph,
    c: int,
    k: int,
    i: int,
    r: int,
    dist_S: Sequence[int],
    debug: bool = False,
) -> list[tuple[VertexSet, VertexSet]]:
    """Partition ``A = L_{r-i}(S_k)`` into groups ``B_t`` with a common slice ``C_t``.

    ``dist_S`` is the distance vector of ``S_k = N^k[c]``. Each returned pair
    ``(B_t, C_t)`` has ``C_t`` equal to the intersection over ``b`` in ``B_t``
    of the slices ``L(b, r-i-1, S_k)``, all inside ``L_1(S_k)``; the ``C_t``
    are pairwise disjoint.
    """
    if r <= 2 * k or not k <= i <= 2 * k - 1:
        raise ValueError(f"need r > 2k and k <= i < 2k (got r={r}, k={k}, i={i})")
    top = r - i
    A = tuple(v for v in range(g.n) if dist_S[v] == top)
    if not A:
        return []
    # slices L(b, j, S_k) are N^j[b] ∩ N^{r-i+k-j}[c]; the c-ball is shared
    ci = len(A)
    universe = [Constraint(a, 0) for a in A] + [Constraint(c, r - i + k, -1)]
    sys = singleton_system(A, universe, [frozenset((t, ci)) for t in range(ci)])
    if debug:
        sys.check(g)
    adj = g.adj
    for j in range(top - 1):
        target = top - j - 1
        grown = []
        for grp in sys.groups:
            w = set()
            for x in grp.members:
                for y in adj[x]:
                    if dist_S[y] == target:
                        w.add(y)
            grown.append(list(w))
        sys = expand_and_merge(sys, grown, g if debug else None)
    return [
        (tuple(A[x] for x in sorted(grp.constraints) if x != ci), grp.members)
        for grp in sys.groups
    ]


def phase2_filter(
    g: Graph,
    partition: Sequence[tuple[VertexSet, VertexSet]],
    c: int,
    k: int,
    i: int,
    r: int,
    debug: bool = False,
    dist_c: Sequence[int] | None = None,
) -> VertexSet:
    """``S_{k,i} = {s in N^k[c] : d(s, a) <= r for every a in A_{k,i}}``.

    Grows the phase-1 slices back toward ``S_k`` as intersections of the
    balls ``N^r[a]`` and ``N^{k+i+2}[c]``, shrunk by ``i+1`` hops at the start.
    """
    if dist_c is None:
        dist_c = bfs(g, c)
    S_k = tuple(v for v in range(g.n) if dist_c[v] <= k)
    if not partition:
        return S_k
    A = sorted(a for B, _ in partition for a in B)
    pos = {a: t for t, a in enumerate(A)}
    ci = len(A)
    universe = [Constraint(a, r - (i + 1)) for a in A] + [Constraint(c, k + 1)]
    sys = GroupSystem(
        tuple(
            Group(tuple(C), frozenset([pos[b] for b in B] + [ci])) for B, C in partition
        ),
        tuple(universe),
        0,
    )
    if debug:
        sys.check(g)
    for _ in range(i + 1):
        grown = [closed_neighborhood(g, grp.members) for grp in sys.groups]
        sys = expand_and_merge(sys, grown, g if debug else None)
    if len(sys.groups) != 1:
        return ()
    Y = set(sys.groups[0].members)
    return tuple(v for v in S_k if v in Y)


def extract_center(
    g: Graph, c: int, k: int, r: int, debug: bool = False
) -> VertexSet:
    """``C(G) ∩ N^k[c]`` for a central vertex ``c`` of eccentricity ``r``, in O(k^2 m)."""
    if k < 0:
        raise ValueError("k must be non-negative")
    dc = bfs(g, c)
    if r <= 2 * k:
        res = ecc_at_most_k(g, r, debug)
        out = tuple(sorted(v for v, e in res.ecc.items() if e <= r and dc[v] <= k))
    else:
        S_k = [v for v in range(g.n) if dc[v] <= k]
        dS = multi_source_bfs(g, S_k)
        keep = set(S_k)
        for i in range(k, 2 * k):
            part = phase1_partition(g, c, k, i, r, dS, debug)
            keep.intersection_update(phase2_filter(g, part, c, k, i, r, debug, dc))
        out = tuple(sorted(keep))
    if c not in out:
        raise NotHellyError("extract_center", f"central vertex {c} missing from result")
    return out


def all_ecc_hyperbolic(
    g: Graph,
    known_delta: Fraction | float | int | str | None = None,
    debug: bool = False,
    info: dict | None = None,
) -> EccentricityTable:
    """Exact eccentricity table of a Helly graph parameterized by hyperbolicity.

    With ``known_delta`` (any upper bound on delta) a single extraction with
    ``k = 2*delta + 1`` suffices. Without it, ``k`` doubles until
    ``C(G) ∩ N^k[c] == C(G) ∩ N^{k+1}[c]``. An underestimated
    ``known_delta`` is not detected and yields a wrong table.
    """
    c, r = find_center(g)
    probes: list[int] = []
    if known_delta is not None:
        delta = Fraction(known_delta)
        if delta < 0 or delta.denominator not in (1, 2):
            raise ValueError(f"delta must be a non-negative half-integer, got {known_delta}")
        k = math.ceil(2 * delta) + 1
        probes.append(k)
        center = extract_center(g, c, k, r, debug)
    else:
        k = 2
        while True:
            probes.append(k)
            if r <= 2 * k:
                # small radius: the threshold run yields all of C(G) at once
                center = ecc_at_most_k(g, r, debug).center
                break
            inner = extract_center(g, c, k, r, debug)
            if inner == extract_center(g, c, k + 1, r, debug):
                center = inner
                break
            k *= 2
    if info is not None:
        info.update(c=c, rad=r, probes=probes)
    table = ecc_from_center(g, center, r)
    certify_farthest(g, table)
    return table
