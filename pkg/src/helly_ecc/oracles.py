"""Brute-force ground truth and executable metric characterizations.

Everything here works from the full distance matrix and is meant for small
graphs: exhaustive scans are guarded by explicit size caps, and exceeding a
cap raises :class:`~helly_ecc.errors.CapExceededError` instead of silently
skipping work.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import networkx as nx
import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .errors import CapExceededError
from .graph import Graph, VertexSet, multi_source_bfs
from .table import EccentricityTable

SUBSET_CAP = 16
KAPPA_CAP = 14
QUADRUPLE_CAP = 150
BETA_CAP = 40
CLIQUE_CAP = 64


def distance_matrix(g: Graph, threads: int = 1) -> np.ndarray:
    """``D[u, v] = d(u, v)`` from one BFS per source (int32, n x n)."""
    n = g.n
    adj = csr_matrix(
        (np.ones(len(g.targets), dtype=np.int8), g.targets, g.offsets), shape=(n, n)
    )

    def rows(chunk: np.ndarray) -> np.ndarray:
        return shortest_path(adj, method="D", unweighted=True, indices=chunk)

    if threads <= 1 or n < 2 * threads:
        D = rows(np.arange(n))
    else:
        chunks = np.array_split(np.arange(n), threads)
        with ThreadPoolExecutor(threads) as pool:
            D = np.vstack(list(pool.map(rows, chunks)))
    if np.isinf(D).any():
        raise ValueError("graph is disconnected")
    return D.astype(np.int32)


def all_ecc_bruteforce(
    g: Graph, D: np.ndarray | None = None, threads: int = 1
) -> EccentricityTable:
    if D is None:
        D = distance_matrix(g, threads)
    return EccentricityTable.from_ecc(D.max(axis=1).tolist())


# ---------------------------------------------------------------------------
# Eccentricity with respect to a subset


@dataclass(frozen=True)
class SubsetEccReport:
    M: VertexSet
    ecc_M: tuple[int, ...]
    rad_M: int
    diam_M: int
    center_M: VertexSet

    def as_dict(self) -> dict:
        return {
            "M": list(self.M),
            "ecc_M": list(self.ecc_M),
            "rad_M": self.rad_M,
            "diam_M": self.diam_M,
            "center_M": list(self.center_M),
        }


def subset_ecc(g: Graph, M: Sequence[int], D: np.ndarray | None = None) -> SubsetEccReport:
    M = tuple(sorted(set(M)))
    if not M:
        raise ValueError("subset M must be nonempty")
    if D is None:
        D = distance_matrix(g)
    ecc = D[list(M)].max(axis=0)
    rad = int(ecc.min())
    return SubsetEccReport(
        M,
        tuple(ecc.tolist()),
        rad,
        int(ecc[list(M)].max()),
        tuple(np.flatnonzero(ecc == rad).tolist()),
    )


def _subset_ecc_table(D: np.ndarray) -> np.ndarray:
    """Row ``mask`` holds ``e_M(v)`` for every v, with M the bits of ``mask``.

    Row 0 (empty M) is all zeros and must be ignored by callers.
    """
    n = D.shape[0]
    table = np.zeros((1 << n, n), dtype=np.int16)
    for b in range(n):
        lo = 1 << b
        np.maximum(table[:lo], D[b], out=table[lo : 2 * lo])
    return table


def _membership(n: int) -> np.ndarray:
    masks = np.arange(1 << n)
    return ((masks[:, None] >> np.arange(n)) & 1).astype(bool)


def _mask_order(masks: np.ndarray) -> list[int]:
    """Masks sorted by cardinality, then lexicographically by sorted members."""
    masks = [int(x) for x in masks]
    return sorted(masks, key=lambda x: (bin(x).count("1"), _members(x)))


def _members(mask: int) -> VertexSet:
    return tuple(b for b in range(mask.bit_length()) if mask >> b & 1)


# ---------------------------------------------------------------------------
# Helly recognition by enumeration


@dataclass(frozen=True)
class Verdict:
    """Outcome of a check; ``witness`` pinpoints a failure (or the attaining object)."""

    ok: bool
    witness: tuple | None = None
    detail: str = ""

    def as_dict(self) -> dict:
        out: dict = {"ok": self.ok}
        if self.witness is not None:
            out["witness"] = list(self.witness)
        if self.detail:
            out["detail"] = self.detail
        return out


def helly_check_subsets(
    g: Graph, cap: int = SUBSET_CAP, D: np.ndarray | None = None
) -> Verdict:
    """Helly iff ``rad_M = floor((diam_M + 1) / 2)`` for every nonempty M."""
    n = g.n
    if n > cap:
        raise CapExceededError("helly_check_subsets", n, cap, "--cap-subsets")
    if D is None:
        D = distance_matrix(g)
    table = _subset_ecc_table(D)
    inside = _membership(n)
    rad = table.min(axis=1)
    diam = np.where(inside, table, -1).max(axis=1)
    bad = np.flatnonzero(rad != (diam + 1) // 2)
    bad = bad[bad != 0]
    if bad.size == 0:
        return Verdict(True)
    mask = _mask_order(bad)[0]
    return Verdict(
        False,
        _members(mask),
        f"rad_M={int(rad[mask])} but diam_M={int(diam[mask])}",
    )


def helly_check_equal_radii(
    g: Graph, k: int, cap: int = CLIQUE_CAP, D: np.ndarray | None = None
) -> Verdict:
    """Helly property of the family of all radius-``k`` balls.

    Enumerates maximal vertex sets pairwise within distance ``2k`` (maximal
    cliques of the ``2k``-th distance power) and asks each for a vertex within
    ``k`` of all of its members.
    """
    n = g.n
    if n > cap:
        raise CapExceededError("helly_check_equal_radii", n, cap, "--cap-subsets")
    if k < 0:
        raise ValueError("k must be non-negative")
    if D is None:
        D = distance_matrix(g)
    power = nx.Graph()
    power.add_nodes_from(range(n))
    us, vs = np.nonzero(np.triu(D <= 2 * k, 1))
    power.add_edges_from(zip(us.tolist(), vs.tolist()))
    failures = []
    for clique in nx.find_cliques(power):
        if D[clique].max(axis=0).min() > k:
            failures.append(tuple(sorted(clique)))
    if not failures:
        return Verdict(True)
    return Verdict(False, min(failures, key=lambda c: (len(c), c)), f"k={k}")


# ---------------------------------------------------------------------------
# Metric characterizations checked against an exact table


def unimodality_check(g: Graph, t: EccentricityTable) -> Verdict:
    """Every non-central vertex has a neighbor of strictly smaller eccentricity."""
    for v in range(g.n):
        e = t.ecc[v]
        if e > t.rad and all(t.ecc[u] >= e for u in g.adj[v]):
            return Verdict(False, (v,), f"vertex {v} is a local minimum with e={e}")
    return Verdict(True)


def center_formula_check(g: Graph, t: EccentricityTable) -> Verdict:
    """``e(v) = d(v, C(G)) + rad(G)`` for every vertex."""
    dist = multi_source_bfs(g, t.center)
    for v in range(g.n):
        if t.ecc[v] != dist[v] + t.rad:
            return Verdict(
                False, (v,), f"e({v})={t.ecc[v]} but d(v,C)+rad={dist[v] + t.rad}"
            )
    return Verdict(True)


def induced_distances(g: Graph, vertices: Sequence[int]) -> np.ndarray:
    """Distance matrix of the subgraph induced by ``vertices`` (-1 if unreachable)."""
    vs = list(vertices)
    pos = {v: i for i, v in enumerate(vs)}
    out = np.full((len(vs), len(vs)), -1, dtype=np.int32)
    for i, s in enumerate(vs):
        out[i, i] = 0
        frontier = [s]
        d = 0
        while frontier:
            d += 1
            nxt = []
            for u in frontier:
                for w in g.adj[u]:
                    j = pos.get(w)
                    if j is not None and out[i, j] < 0:
                        out[i, j] = d
                        nxt.append(w)
            frontier = nxt
    return out


def center_isometry_check(
    g: Graph, t: EccentricityTable, D: np.ndarray | None = None
) -> Verdict:
    """The center induces a connected subgraph whose distances agree with G's."""
    C = list(t.center)
    inner = induced_distances(g, C)
    if D is None:
        D = distance_matrix(g)
    outer = D[np.ix_(C, C)]
    diff = np.argwhere(inner != outer)
    if diff.size == 0:
        return Verdict(True)
    i, j = diff[0]
    u, v = C[i], C[j]
    what = "disconnected" if inner[i, j] < 0 else f"d_C={int(inner[i, j])}"
    return Verdict(False, (u, v), f"{what} but d_G={int(outer[i, j])}")


# ---------------------------------------------------------------------------
# Exact delta, beta, kappa


@dataclass(frozen=True)
class Hyperbolicity:
    """``delta2`` is twice the hyperbolicity, so half-integers stay exact."""

    delta2: int
    witness: tuple[int, int, int, int] | None

    @property
    def delta(self) -> Fraction:
        return Fraction(self.delta2, 2)


def four_point_gap(D: np.ndarray, x: int, y: int, z: int, w: int) -> int:
    """Largest minus second-largest of the three pairing sums (i.e. 2*delta)."""
    sums = sorted(
        (int(D[x, y] + D[z, w]), int(D[x, z] + D[y, w]), int(D[x, w] + D[y, z]))
    )
    return sums[2] - sums[1]


def hyperbolicity_exact(
    g: Graph, cap: int = QUADRUPLE_CAP, D: np.ndarray | None = None
) -> Hyperbolicity:
    n = g.n
    if n > cap:
        raise CapExceededError("hyperbolicity_exact", n, cap, "--cap-quadruples")
    if D is None:
        D = distance_matrix(g)
    D = D.astype(np.int32)
    best, witness = -1, None
    for i in range(n - 3):
        for j in range(i + 1, n - 2):
            sub = slice(j + 1, n)
            s1 = D[i, j] + D[sub, sub]
            s2 = D[i, sub][:, None] + D[j, sub][None, :]
            s3 = D[i, sub][None, :] + D[j, sub][:, None]
            hi = np.maximum(np.maximum(s1, s2), s3)
            lo = np.minimum(np.minimum(s1, s2), s3)
            gap = 2 * hi + lo - (s1 + s2 + s3)  # largest minus middle
            upper = np.triu(np.ones(gap.shape, dtype=bool), 1)
            gap = np.where(upper, gap, -1)
            top = int(gap.max())
            if top > best:
                k, l = np.unravel_index(int(gap.argmax()), gap.shape)
                best = top
                witness = (i, j, j + 1 + int(k), j + 1 + int(l))
    best = max(best, 0)
    return Hyperbolicity(best, witness)


@dataclass(frozen=True)
class Pseudoconvexity:
    beta: int
    witness: tuple[int, int, int, int, int] | None  # (v, r, x, y, z)


def pseudoconvexity_beta(
    g: Graph, cap: int = BETA_CAP, D: np.ndarray | None = None
) -> Pseudoconvexity:
    """Smallest beta making every ball beta-pseudoconvex.

    A triple ``z in I(x, y)`` is constrained iff some ball ``N^r[v]`` holds x
    and y but not z, i.e. iff some v has ``d(v,x) < d(v,z)`` and
    ``d(v,y) < d(v,z)`` (take ``r = max(d(v,x), d(v,y))``).
    """
    n = g.n
    if n > cap:
        raise CapExceededError("pseudoconvexity_beta", n, cap, "--cap-quadruples")
    if D is None:
        D = distance_matrix(g)
    D = D.astype(np.int32)
    best, witness = 0, None
    for z in range(n):
        closer = (D < D[:, z : z + 1]).astype(np.int32)  # closer[v, x]: d(v,x) < d(v,z)
        separable = closer.T @ closer > 0
        on_path = D[:, z][:, None] + D[z, :][None, :] == D
        val = np.minimum(D[:, z][:, None], D[z, :][None, :])
        val = np.where(separable & on_path, val, -1)
        top = int(val.max())
        if top > best or (witness is None and top >= 0 and top == best and top > 0):
            x, y = np.unravel_index(int(val.argmax()), val.shape)
            x, y = int(x), int(y)
            v = int(np.flatnonzero(closer[:, x] & closer[:, y])[0])
            best = top
            witness = (v, int(max(D[v, x], D[v, y])), x, y, z)
    return Pseudoconvexity(best, witness)


@dataclass(frozen=True)
class Kappa:
    kappa: int
    witness: VertexSet  # a subset M attaining kappa
    center_of_witness: VertexSet
    violation: VertexSet | None = None  # M whose center is not isometric


def kappa_exact(g: Graph, cap: int = KAPPA_CAP, D: np.ndarray | None = None) -> Kappa:
    """Max over nonempty M of the diameter of ``C_M(G)``, measured in G.

    The induced-subgraph diameter of every distinct center is recomputed; a
    mismatch (impossible on Helly graphs) is reported in ``violation``.
    """
    n = g.n
    if n > cap:
        raise CapExceededError("kappa_exact", n, cap, "--cap-subsets")
    if D is None:
        D = distance_matrix(g)
    table = _subset_ecc_table(D)[1:]
    is_center = table == table.min(axis=1, keepdims=True)
    # diam of each center set in G
    diam = np.zeros(len(table), dtype=np.int32)
    for u in range(n):
        far = np.where(is_center, D[u][None, :], 0).max(axis=1)
        diam = np.maximum(diam, np.where(is_center[:, u], far, 0))
    kappa = int(diam.max())
    mask = _mask_order(np.flatnonzero(diam == kappa) + 1)[0]
    weights = 1 << np.arange(n)
    center_masks = (is_center * weights).sum(axis=1)
    isometric: dict[int, bool] = {}
    for cm in sorted(set(center_masks.tolist())):
        C = _members(cm)
        isometric[cm] = bool((induced_distances(g, C) == D[np.ix_(C, C)]).all())
    bad = [idx + 1 for idx, cm in enumerate(center_masks.tolist()) if not isometric[cm]]
    violation = _members(_mask_order(np.array(bad))[0]) if bad else None
    return Kappa(kappa, _members(mask), _members(int(center_masks[mask - 1])), violation)


# ---------------------------------------------------------------------------
# Parameter inequalities


@dataclass
class ParamReport:
    n: int
    delta2: int
    beta: int
    kappa: int | None
    center_diam: int
    center_rad: int
    witnesses: dict = field(default_factory=dict)
    verdicts: dict[str, bool | None] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(v is not False for v in self.verdicts.values())

    def as_dict(self) -> dict:
        d = Fraction(self.delta2, 2)
        return {
            "n": self.n,
            "delta2": self.delta2,
            "delta": str(d),
            "beta": self.beta,
            "kappa": self.kappa,
            "center_diam": self.center_diam,
            "center_rad": self.center_rad,
            "witnesses": self.witnesses,
            "verdicts": self.verdicts,
            "ok": self.ok,
        }


def parameter_inequality_report(
    delta2: int,
    beta: int,
    kappa: int | None,
    t: EccentricityTable,
    n: int,
    D: np.ndarray,
    witnesses: dict | None = None,
) -> ParamReport:
    """Check the inequalities tying delta, beta and kappa together on a Helly graph.

    Works in units of ``delta2 = 2*delta``. ``kappa=None`` marks the
    kappa-dependent verdicts as not evaluated.
    """
    from .algorithms import ceil_sqrt

    s = ceil_sqrt(n)
    C = list(t.center)
    sub = D[np.ix_(C, C)]
    center_diam = int(sub.max())
    center_rad = int(sub.max(axis=1).min())
    k = kappa
    verdicts: dict[str, bool | None] = {
        "kappa <= 2delta+1": None if k is None else k <= delta2 + 1,
        "beta <= max(0, 2delta-1)": beta <= max(0, delta2 - 1),
        "kappa <= max(3, 2beta+1)": None if k is None else k <= max(3, 2 * beta + 1),
        "beta <= kappa+1": None if k is None else beta <= k + 1,
        "delta <= beta+1": delta2 <= 2 * beta + 2,
        "delta <= kappa/2+1": None if k is None else delta2 <= k + 2,
        "delta <= ceil(sqrt n)+1": delta2 <= 2 * s + 2,
        "diam C(G) <= 2ceil(sqrt n)+3": center_diam <= 2 * s + 3,
        "diam C(G) <= 2delta+1": center_diam <= delta2 + 1,
        "rad C(G) <= delta+1": 2 * center_rad <= delta2 + 2,
    }
    return ParamReport(
        n, delta2, beta, kappa, center_diam, center_rad, dict(witnesses or {}), verdicts
    )
