"""Disjoint groups of vertices, each the intersection of a family of growing balls.

A :class:`GroupSystem` tracks groups ``Z_t`` together with the index sets
``X_t`` of the constraints (balls) whose intersection they represent. Every
step grows each group by one hop and then merges groups whose grown sets
overlap, always pivoting on a vertex contained in the largest number of the
remaining grown sets.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Sequence

from .errors import NotHellyError
from .graph import Graph, VertexSet, bfs


@dataclass(frozen=True)
class Constraint:
    """A ball centered at ``center`` whose radius at step ``l`` is ``base + slope*l``."""

    center: int
    base: int
    slope: int = 1

    def radius(self, step: int) -> int:
        return self.base + self.slope * step


@dataclass(frozen=True)
class Group:
    members: VertexSet
    constraints: frozenset[int]


@dataclass(frozen=True)
class GroupSystem:
    groups: tuple[Group, ...]
    universe: tuple[Constraint, ...]
    step: int = 0

    def check(self, g: Graph | None = None) -> None:
        """Raise ``AssertionError`` if a structural invariant is broken.

        With ``g`` given, also verify (by BFS from every constraint center)
        that each group equals the intersection of its constraint balls.
        """
        seen: set[int] = set()
        covered: set[int] = set()
        for t, grp in enumerate(self.groups):
            assert grp.members, f"group {t} is empty"
            assert list(grp.members) == sorted(set(grp.members)), f"group {t} unsorted"
            overlap = seen.intersection(grp.members)
            assert not overlap, f"group {t} overlaps an earlier group at {min(overlap)}"
            seen.update(grp.members)
            covered |= grp.constraints
        missing = set(range(len(self.universe))) - covered
        assert not missing, f"constraints {sorted(missing)} are not covered"
        if g is None:
            return
        rows: dict[int, list[int]] = {}
        for t, grp in enumerate(self.groups):
            inside = None
            for x in grp.constraints:
                con = self.universe[x]
                row = rows.get(con.center)
                if row is None:
                    row = rows[con.center] = bfs(g, con.center)
                rad = con.radius(self.step)
                ball = {v for v, d in enumerate(row) if d <= rad}
                inside = ball if inside is None else inside & ball
            assert inside == set(grp.members), (
                f"group {t} at step {self.step} differs from its ball intersection"
            )


def singleton_system(
    members: Sequence[int],
    universe: Sequence[Constraint],
    constraint_sets: Sequence[frozenset[int]],
) -> GroupSystem:
    groups = tuple(
        Group((v,), xs) for v, xs in zip(members, constraint_sets)
    )
    return GroupSystem(groups, tuple(universe), 0)


def merge_overlapping(
    sets: Sequence[Sequence[int]],
) -> list[tuple[VertexSet, list[int]]]:
    """Greedy pivot merge of overlapping sets.

    Repeatedly pick the vertex lying in the most remaining sets (smallest id
    on ties), emit the intersection of exactly those sets, and drop them.
    Returns ``(intersection, indices of merged sets)`` in emission order.
    The emitted intersections are nonempty and pairwise disjoint.
    """
    count: dict[int, int] = {}
    holders: dict[int, list[int]] = {}
    for t, s in enumerate(sets):
        for v in s:
            count[v] = count.get(v, 0) + 1
            h = holders.get(v)
            if h is None:
                holders[v] = [t]
            else:
                h.append(t)
    # bucket-by-count: one min-heap of vertex ids per count, entries are
    # validated lazily against the current count
    buckets: dict[int, list[int]] = {}
    for v in sorted(count):
        buckets.setdefault(count[v], []).append(v)
    top = max(buckets, default=0)
    alive = [True] * len(sets)
    out: list[tuple[VertexSet, list[int]]] = []
    remaining = len(sets)
    while remaining:
        bucket = buckets.get(top)
        while bucket and count[bucket[0]] != top:
            heapq.heappop(bucket)
        if not bucket:
            top -= 1
            continue
        u = bucket[0]
        chosen = [t for t in holders[u] if alive[t]]
        tally: dict[int, int] = {}
        for t in chosen:
            alive[t] = False
            for v in sets[t]:
                tally[v] = tally.get(v, 0) + 1
                c = count[v] - 1
                count[v] = c
                if c:
                    heapq.heappush(buckets.setdefault(c, []), v)
        k = len(chosen)
        out.append((tuple(sorted(v for v, c in tally.items() if c == k)), chosen))
        remaining -= k
    return out


def expand_and_merge(
    sys: GroupSystem,
    next_sets: Sequence[Sequence[int]],
    g: Graph | None = None,
) -> GroupSystem:
    """Advance ``sys`` by one step.

    ``next_sets[t]`` is the caller-computed one-hop growth of group ``t``.
    Pass ``g`` to verify every invariant (including the ball-intersection
    representation) on the result.
    """
    if len(next_sets) != len(sys.groups):
        raise ValueError("need exactly one grown set per group")
    for t, s in enumerate(next_sets):
        if not s:
            raise NotHellyError(
                "expand_and_merge",
                f"grown set of group {t} is empty (input is not Helly, or caller bug)",
            )
    merged = []
    for members, chosen in merge_overlapping(next_sets):
        xs = frozenset().union(*(sys.groups[t].constraints for t in chosen))
        merged.append(Group(members, xs))
    out = GroupSystem(tuple(merged), sys.universe, sys.step + 1)
    if g is not None:
        try:
            out.check(g)
        except AssertionError as exc:
            raise NotHellyError("expand_and_merge", str(exc)) from exc
    return out
