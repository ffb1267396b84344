"""Seeded constructions of Helly instances and non-Helly controls.

Families are addressed by spec strings such as ``path(5)``, ``king-grid(3,3)``,
``cone(cycle(6))`` or ``strong-product(random-tree(30),path(30))``. Random
families draw from ``random.Random`` seeded by the caller's seed (nested
random factors get derived seeds), so a spec plus a seed fixes the output.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from typing import Callable

from .graph import Graph

RANDOM_HELLY_ATTEMPTS = 20000


@dataclass(frozen=True)
class GenSpec:
    family: str
    args: tuple = ()
    seed: int = 0

    def __str__(self) -> str:
        return f"{self.family}({','.join(str(a) for a in self.args)})"


@dataclass(frozen=True)
class Generated:
    graph: Graph
    spec: str
    seed: int
    expected_helly: bool
    gamma_lb: int | None = None
    note: str = ""
    extra: dict = field(default_factory=dict)

    def metadata(self) -> dict:
        return {
            "spec": self.spec,
            "seed": self.seed,
            "n": self.graph.n,
            "m": self.graph.m,
            "expected_helly": self.expected_helly,
            "gamma_lb": self.gamma_lb,
            "note": self.note,
            **self.extra,
        }


_TOKEN = re.compile(r"\s*([A-Za-z][\w-]*|-?\d+|[(),])")


def parse_spec(text: str, seed: int = 0) -> GenSpec:
    """Parse ``family(arg, ...)``; args are ints or nested specs."""
    tokens = _TOKEN.findall(text)
    if "".join(tokens) != re.sub(r"\s+", "", text):
        raise ValueError(f"cannot parse generator spec {text!r}")
    pos = 0
    counter = [0]

    def parse() -> GenSpec:
        nonlocal pos
        name = tokens[pos]
        if not re.match(r"[A-Za-z]", name):
            raise ValueError(f"expected a family name in {text!r}")
        pos += 1
        node_seed = seed if counter[0] == 0 else seed * 1_000_003 + counter[0]
        counter[0] += 1
        args: list = []
        if pos < len(tokens) and tokens[pos] == "(":
            pos += 1
            while tokens[pos] != ")":
                tok = tokens[pos]
                if re.match(r"-?\d+$", tok):
                    args.append(int(tok))
                    pos += 1
                else:
                    args.append(parse())
                if tokens[pos] == ",":
                    pos += 1
            pos += 1
        return GenSpec(name, tuple(args), node_seed)

    try:
        spec = parse()
    except IndexError:
        raise ValueError(f"unbalanced generator spec {text!r}") from None
    if pos != len(tokens):
        raise ValueError(f"trailing input in generator spec {text!r}")
    return spec


def gen(spec: GenSpec | str, seed: int = 0) -> Generated:
    if isinstance(spec, str):
        spec = parse_spec(spec, seed)
    try:
        builder = FAMILIES[spec.family]
    except KeyError:
        raise ValueError(
            f"unknown family {spec.family!r}; choose from {', '.join(sorted(FAMILIES))}"
        ) from None
    for a in spec.args:
        if isinstance(a, int) and a < 1:
            raise ValueError(f"{spec}: sizes must be >= 1")
    return builder(spec)


def _ints(spec: GenSpec, count: int, defaults: tuple = ()) -> tuple[int, ...]:
    required = count - len(defaults)
    args = spec.args
    if not required <= len(args) <= count or not all(isinstance(a, int) for a in args):
        raise ValueError(f"{spec.family} expects {required}..{count} integer argument(s), got {spec}")
    return args + defaults[len(args) - required :]


def _graph(n: int, edges) -> Graph:
    return Graph.from_edges(n, edges)


def path(n: int) -> Graph:
    return _graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    return _graph(n, [(i, (i + 1) % n) for i in range(n)] if n >= 3 else [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> Graph:
    return _graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def grid(rows: int, cols: int, king: bool) -> Graph:
    steps = [(0, 1), (1, 0)] + ([(1, 1), (1, -1)] if king else [])
    edges = []
    for i in range(rows):
        for j in range(cols):
            for di, dj in steps:
                x, y = i + di, j + dj
                if 0 <= x < rows and 0 <= y < cols:
                    edges.append((i * cols + j, x * cols + y))
    return _graph(rows * cols, edges)


def strong_product(g: Graph, h: Graph) -> Graph:
    """``(u,v) ~ (u',v')`` iff each coordinate is equal or adjacent, not both equal."""
    nh = h.n
    edges = []
    for u in range(g.n):
        gu = (u,) + tuple(x for x in g.adj[u] if x > u)
        for v in range(nh):
            hv = (v,) + h.adj[v]
            for x in gu:
                for y in hv:
                    if x == u and y <= v:
                        continue
                    edges.append((u * nh + v, x * nh + y))
    return _graph(g.n * nh, edges)


def cone(g: Graph) -> Graph:
    apex = g.n
    return _graph(g.n + 1, g.edges() + [(v, apex) for v in range(g.n)])


def random_tree(n: int, rng: random.Random) -> Graph:
    return _graph(n, [(rng.randrange(v), v) for v in range(1, n)])


def block_graph(n: int, max_block: int, rng: random.Random) -> Graph:
    """Random tree of cliques: each new block is glued at one existing vertex."""
    size = min(n, rng.randint(2, max_block))
    edges = [(i, j) for i in range(size) for j in range(i + 1, size)]
    count = size
    while count < n:
        cut = rng.randrange(count)
        new = list(range(count, min(n, count + rng.randint(1, max_block - 1))))
        block = [cut] + new
        edges += [(a, b) for i, a in enumerate(block) for b in block[i + 1 :]]
        count += len(new)
    return _graph(n, edges)


def random_connected(n: int, p: float, rng: random.Random) -> Graph:
    """Random spanning tree plus each remaining pair independently with prob. ``p``."""
    tree = {(rng.randrange(v), v) for v in range(1, n)}
    extra = {
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if (i, j) not in tree and rng.random() < p
    }
    return _graph(n, sorted(tree | extra))


def _seeded(spec: GenSpec) -> random.Random:
    return random.Random(f"{spec.family}:{spec.seed}")


def _path(spec):
    (n,) = _ints(spec, 1)
    return Generated(path(n), str(spec), spec.seed, True, 0, "trees are Helly")


def _cycle(spec):
    (n,) = _ints(spec, 1)
    return Generated(
        cycle(n), str(spec), spec.seed, n <= 3, None,
        "triangle is complete" if n <= 3 else "cycles of length >= 4 are not Helly",
    )


def _complete(spec):
    (n,) = _ints(spec, 1)
    return Generated(complete(n), str(spec), spec.seed, True, 0, "complete graphs are Helly")


def _star(spec):
    (k,) = _ints(spec, 1)
    g = _graph(k + 1, [(0, i) for i in range(1, k + 1)])
    return Generated(g, str(spec), spec.seed, True, 0, "trees are Helly")


def _caterpillar(spec):
    spine, legs = _ints(spec, 2, (1,))
    edges = [(i, i + 1) for i in range(spine - 1)]
    nxt = spine
    for i in range(spine):
        for _ in range(legs):
            edges.append((i, nxt))
            nxt += 1
    return Generated(_graph(nxt, edges), str(spec), spec.seed, True, 0, "trees are Helly")


def _random_tree(spec):
    (n,) = _ints(spec, 1)
    g = random_tree(n, _seeded(spec))
    return Generated(g, str(spec), spec.seed, True, 0, "trees are Helly")


def _king(spec):
    a, b = _ints(spec, 2)
    return Generated(
        grid(a, b, king=True), str(spec), spec.seed, True, None,
        "strong product of two paths",
    )


def _rect(spec):
    a, b = _ints(spec, 2)
    side = min(a, b) - 1
    return Generated(
        grid(a, b, king=False), str(spec), spec.seed, side < 1, side,
        "contains an induced 4-cycle" if side >= 1 else "a path",
    )


def _block(spec):
    n, max_block = _ints(spec, 2, (4,))
    if max_block < 2:
        raise ValueError("block-graph needs max block size >= 2")
    g = block_graph(n, max_block, _seeded(spec))
    return Generated(g, str(spec), spec.seed, True, 0, "block graphs are Helly")


def _factor(arg, parent: GenSpec) -> Generated:
    if not isinstance(arg, GenSpec):
        raise ValueError(f"{parent.family} expects nested generator specs")
    return gen(arg)


def _cone(spec):
    if len(spec.args) != 1:
        raise ValueError("cone expects one nested spec")
    base = _factor(spec.args[0], spec)
    return Generated(
        cone(base.graph), str(spec), spec.seed, True, None,
        "a universal vertex makes every family of balls share it",
    )


def _strong(spec):
    if len(spec.args) != 2:
        raise ValueError("strong-product expects two nested specs")
    f1, f2 = (_factor(a, spec) for a in spec.args)
    gammas = [x.gamma_lb for x in (f1, f2)]
    return Generated(
        strong_product(f1.graph, f2.graph), str(spec), spec.seed,
        f1.expected_helly and f2.expected_helly,
        max(gammas) if None not in gammas else None,
        "strong products of Helly graphs are Helly",
    )


def _random_helly(spec):
    from .oracles import SUBSET_CAP, helly_check_subsets

    (n,) = _ints(spec, 1)
    if n > SUBSET_CAP:
        raise ValueError(f"random-helly-small needs n <= {SUBSET_CAP}, got {n}")
    rng = _seeded(spec)
    for attempt in range(1, RANDOM_HELLY_ATTEMPTS + 1):
        g = random_connected(n, rng.uniform(0.0, 0.5), rng)
        if helly_check_subsets(g).ok:
            return Generated(
                g, str(spec), spec.seed, True, None,
                "random graph accepted by the subset Helly oracle",
                {"attempts": attempt},
            )
    raise ValueError(f"no Helly sample found in {RANDOM_HELLY_ATTEMPTS} attempts")


FAMILIES: dict[str, Callable[[GenSpec], Generated]] = {
    "path": _path,
    "cycle": _cycle,
    "complete": _complete,
    "star": _star,
    "caterpillar": _caterpillar,
    "random-tree": _random_tree,
    "king-grid": _king,
    "rect-grid": _rect,
    "block-graph": _block,
    "cone": _cone,
    "strong-product": _strong,
    "random-helly-small": _random_helly,
}
