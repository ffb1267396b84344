"""All eccentricities, radius, diameter and center of Helly graphs."""

from .algorithms import (
    all_ecc_hyperbolic,
    all_ecc_sqrt,
    approx_center,
    descend_step,
    ecc_at_most_k,
    ecc_from_center,
    extract_center,
    find_center,
)
from .errors import CapExceededError, GraphFormatError, NotHellyError
from .generators import gen
from .graph import Graph, ball, bfs, interval, layers, load_graph, multi_source_bfs
from .oracles import all_ecc_bruteforce
from .table import EccentricityTable

__all__ = [
    "CapExceededError",
    "EccentricityTable",
    "Graph",
    "GraphFormatError",
    "NotHellyError",
    "all_ecc_bruteforce",
    "all_ecc_hyperbolic",
    "all_ecc_sqrt",
    "approx_center",
    "ball",
    "bfs",
    "descend_step",
    "ecc_at_most_k",
    "ecc_from_center",
    "extract_center",
    "find_center",
    "gen",
    "interval",
    "layers",
    "load_graph",
    "multi_source_bfs",
]
