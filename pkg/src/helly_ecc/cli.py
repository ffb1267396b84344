"""``helly-ecc`` command line.

Exit status: 0 success, 1 input/usage error, 2 verification mismatch,
3 structural failure of a fast algorithm (input is not Helly).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import algorithms as alg
from . import oracles as orc
from .errors import CapExceededError, GraphFormatError, NotHellyError
from .generators import gen, parse_spec
from .graph import Graph, load_graph, to_edge_list
from .table import EccentricityTable

SCHEMA = "helly-ecc/1"
EXIT_OK, EXIT_INPUT, EXIT_MISMATCH, EXIT_NOT_HELLY = 0, 1, 2, 3
ALGOS = ("oracle", "sqrt", "hyp")


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    gen: str | None = None
    seed: int = 0
    algo: str = "sqrt"
    delta: Fraction | None = None
    cap_subsets: int | None = None
    cap_quadruples: int | None = None
    format: str = "json"
    debug: bool = False
    threads: int = 1
    subset: tuple[int, ...] = ()
    output: str | None = None
    meta: str | None = None

    def __post_init__(self) -> None:
        if self.command != "gen" and (self.input is None) == (self.gen is None):
            raise ValueError("give exactly one of an input file (or '-') and --gen SPEC")
        if self.algo not in ALGOS:
            raise ValueError(f"--algo must be one of {', '.join(ALGOS)}")
        if self.format not in ("json", "tsv"):
            raise ValueError("--format must be json or tsv")
        if self.threads < 1:
            raise ValueError("--threads must be >= 1")


def _half_integer(text: str) -> Fraction:
    try:
        d = Fraction(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if d < 0 or (2 * d).denominator != 1:
        raise argparse.ArgumentTypeError("delta must be a non-negative multiple of 1/2")
    return d


def _vertex_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(",", " ").split())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad vertex list {text!r}") from None


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("input", nargs="?", help="edge-list file, or '-' for stdin")
    common.add_argument("--gen", metavar="SPEC", help="generate the input, e.g. 'king-grid(10,10)'")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--algo", choices=ALGOS, default="sqrt")
    common.add_argument("--delta", type=_half_integer, help="known upper bound on the hyperbolicity")
    common.add_argument("--cap-subsets", type=int, help="max n for subset-enumeration oracles")
    common.add_argument("--cap-quadruples", type=int, help="max n for the delta/beta scans")
    common.add_argument("--format", choices=("json", "tsv"), default="json")
    common.add_argument("--debug-invariants", action="store_true", dest="debug")
    common.add_argument("--threads", type=int, default=1)

    parser = _Parser(
        prog="helly-ecc", description="Eccentricities, radius and center of Helly graphs."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("ecc", parents=[common], help="all eccentricities")
    sub.add_parser("center", parents=[common], help="a central vertex and the radius")
    sub.add_parser("check", parents=[common], help="Helly verdicts and metric characterizations")
    sub.add_parser("params", parents=[common], help="exact delta, beta, kappa and their inequalities")
    p = sub.add_parser("subset-ecc", parents=[common], help="eccentricities with respect to a subset")
    p.add_argument("--subset", type=_vertex_list, required=True, metavar="V,V,...")
    sub.add_parser("verify", parents=[common], help="run sqrt, hyp and the oracle and diff")
    p = sub.add_parser("gen", help="write a generated graph as an edge list")
    p.add_argument("spec")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", help="edge-list destination (default stdout)")
    p.add_argument("--meta", help="metadata JSON sidecar (default stderr)")
    return parser


def _config(ns: argparse.Namespace) -> RunConfig:
    if ns.command == "gen":
        return RunConfig("gen", gen=ns.spec, seed=ns.seed, output=ns.output, meta=ns.meta)
    return RunConfig(
        ns.command,
        input=ns.input,
        gen=ns.gen,
        seed=ns.seed,
        algo=ns.algo,
        delta=ns.delta,
        cap_subsets=ns.cap_subsets,
        cap_quadruples=ns.cap_quadruples,
        format=ns.format,
        debug=ns.debug,
        threads=ns.threads,
        subset=getattr(ns, "subset", ()),
    )


def _load(cfg: RunConfig) -> tuple[Graph, dict]:
    if cfg.gen is not None:
        made = gen(parse_spec(cfg.gen, cfg.seed))
        return made.graph, {"gen": made.spec, "seed": cfg.seed}
    if cfg.input == "-":
        text = sys.stdin.read()
    else:
        with open(cfg.input, encoding="utf-8") as fh:
            text = fh.read()
    return load_graph(text), {"input": cfg.input}


def _table(g: Graph, cfg: RunConfig, algo: str) -> EccentricityTable:
    if algo == "oracle":
        return orc.all_ecc_bruteforce(g, threads=cfg.threads)
    if algo == "sqrt":
        return alg.all_ecc_sqrt(g, debug=cfg.debug)
    return alg.all_ecc_hyperbolic(g, known_delta=cfg.delta, debug=cfg.debug)


def _labels(g: Graph) -> dict:
    if g.labels == tuple(range(g.n)):
        return {}
    return {"labels": list(g.labels)}


def cmd_ecc(g: Graph, cfg: RunConfig) -> tuple[dict, int]:
    t = _table(g, cfg, cfg.algo)
    return {"algo": cfg.algo, **t.as_dict(), **_labels(g)}, EXIT_OK


def cmd_center(g: Graph, cfg: RunConfig) -> tuple[dict, int]:
    if cfg.algo == "oracle":
        t = orc.all_ecc_bruteforce(g, threads=cfg.threads)
        c, r = t.center[0], t.rad
    else:
        c, r = alg.find_center(g)
    return {"algo": cfg.algo, "c": c, "rad": r, **_labels(g)}, EXIT_OK


def cmd_check(g: Graph, cfg: RunConfig) -> tuple[dict, int]:
    D = orc.distance_matrix(g, cfg.threads)
    t = orc.all_ecc_bruteforce(g, D)
    helly = orc.helly_check_subsets(g, cfg.cap_subsets or orc.SUBSET_CAP, D)
    equal_radii = {
        str(k): orc.helly_check_equal_radii(g, k, cfg.cap_subsets or orc.CLIQUE_CAP, D).as_dict()
        for k in range(1, t.diam + 1)
    }
    report = {
        "verdict": "helly" if helly.ok else "not-helly",
        "subsets": helly.as_dict(),
        "equal_radii": equal_radii,
        "radius_law": {
            "ok": t.rad == (t.diam + 1) // 2,
            "rad": t.rad,
            "diam": t.diam,
        },
        "unimodality": orc.unimodality_check(g, t).as_dict(),
        "center_formula": orc.center_formula_check(g, t).as_dict(),
        "center_isometry": orc.center_isometry_check(g, t, D).as_dict(),
    }
    return report, EXIT_OK


def cmd_params(g: Graph, cfg: RunConfig) -> tuple[dict, int]:
    D = orc.distance_matrix(g, cfg.threads)
    t = orc.all_ecc_bruteforce(g, D)
    h = orc.hyperbolicity_exact(g, cfg.cap_quadruples or orc.QUADRUPLE_CAP, D)
    b = orc.pseudoconvexity_beta(g, cfg.cap_quadruples or orc.BETA_CAP, D)
    witnesses: dict = {"delta": list(h.witness) if h.witness else None,
                       "beta": list(b.witness) if b.witness else None}
    kappa_cap = cfg.cap_subsets or orc.KAPPA_CAP
    extra: dict = {}
    kappa = None
    if g.n <= kappa_cap:
        k = orc.kappa_exact(g, kappa_cap, D)
        kappa = k.kappa
        witnesses["kappa"] = list(k.witness)
        if k.violation is not None:
            extra["kappa_isometry_violation"] = list(k.violation)
    else:
        extra["kappa_skipped"] = f"n={g.n} exceeds the cap of {kappa_cap} (raise it with --cap-subsets)"
    subset_cap = cfg.cap_subsets or orc.SUBSET_CAP
    if g.n <= subset_cap:
        extra["helly"] = orc.helly_check_subsets(g, subset_cap, D).ok
    else:
        extra["helly"] = None
    rep = orc.parameter_inequality_report(h.delta2, b.beta, kappa, t, g.n, D, witnesses)
    return {**rep.as_dict(), **extra}, EXIT_OK


def cmd_subset_ecc(g: Graph, cfg: RunConfig) -> tuple[dict, int]:
    bad = [v for v in cfg.subset if not 0 <= v < g.n]
    if bad:
        raise ValueError(f"subset vertices out of range: {bad}")
    return orc.subset_ecc(g, cfg.subset, orc.distance_matrix(g, cfg.threads)).as_dict(), EXIT_OK


def cmd_verify(g: Graph, cfg: RunConfig) -> tuple[dict, int]:
    oracle = orc.all_ecc_bruteforce(g, threads=cfg.threads)
    runs = {"sqrt": None, "hyp": None}
    failures = {}
    for name in runs:
        try:
            runs[name] = _table(g, cfg, name)
        except NotHellyError as exc:
            failures[name] = str(exc)
    agree = 1 + sum(1 for t in runs.values() if t == oracle)
    total = 1 + len(runs)
    doc = {
        "rad": oracle.rad,
        "diam": oracle.diam,
        "center": list(oracle.center),
        "algorithms": {
            name: ("error: " + failures[name]) if name in failures
            else ("agree" if t == oracle else _diff(t, oracle))
            for name, t in runs.items()
        },
        "summary": f"{agree}/{total} algorithms agree",
    }
    if failures:
        return doc, EXIT_NOT_HELLY
    return doc, EXIT_OK if agree == total else EXIT_MISMATCH


def _diff(t: EccentricityTable, oracle: EccentricityTable) -> dict:
    wrong = [v for v in range(len(t.ecc)) if t.ecc[v] != oracle.ecc[v]]
    return {"mismatched_vertices": wrong[:20], "count": len(wrong), "rad": t.rad, "center": list(t.center)}


COMMANDS: dict[str, Callable[[Graph, RunConfig], tuple[dict, int]]] = {
    "ecc": cmd_ecc,
    "center": cmd_center,
    "check": cmd_check,
    "params": cmd_params,
    "subset-ecc": cmd_subset_ecc,
    "verify": cmd_verify,
}


def _tsv(doc: dict) -> str:
    lines = []
    for key, val in doc.items():
        if key == "ecc":
            lines.extend(f"ecc\t{v}\t{e}" for v, e in enumerate(val))
        elif isinstance(val, (dict, list)):
            lines.append(f"{key}\t{json.dumps(val, separators=(',', ':'))}")
        else:
            lines.append(f"{key}\t{val}")
    return "\n".join(lines) + "\n"


def render(doc: dict, fmt: str) -> str:
    if fmt == "tsv":
        return _tsv(doc)
    return json.dumps(doc, separators=(",", ":")) + "\n"


def run(cfg: RunConfig, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        if cfg.command == "gen":
            made = gen(parse_spec(cfg.gen, cfg.seed))
            text = to_edge_list(made.graph, header=f"{made.spec} seed={made.seed}")
            meta = json.dumps({"schema": SCHEMA, **made.metadata()}, separators=(",", ":")) + "\n"
            if cfg.output:
                with open(cfg.output, "w", encoding="utf-8") as fh:
                    fh.write(text)
            else:
                out.write(text)
            if cfg.meta:
                with open(cfg.meta, "w", encoding="utf-8") as fh:
                    fh.write(meta)
            else:
                err.write(meta)
            return EXIT_OK
        g, source = _load(cfg)
        body, status = COMMANDS[cfg.command](g, cfg)
    except NotHellyError as exc:
        err.write(f"error: not Helly: {exc}\n")
        return EXIT_NOT_HELLY
    except (GraphFormatError, CapExceededError, ValueError, OSError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    doc = {"schema": SCHEMA, "command": cfg.command, **source, "n": g.n, "m": g.m, **body}
    out.write(render(doc, cfg.format))
    return status


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = _config(ns)
    except ValueError as exc:
        parser.error(str(exc))
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
