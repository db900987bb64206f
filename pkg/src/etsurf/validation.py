"""Input validation helpers shared by the estimator and the CLI."""

from __future__ import annotations

from .construct import Limits, parse_types
from .errors import InputError
from .graph import CubicGraph, parse_graph6


def check_graph(obj, name=None) -> CubicGraph:
    """Coerce ``obj`` to a CubicGraph.

    Accepts a CubicGraph, a graph6 string or bytes, or any object with
    ``nodes()`` and ``edges()`` methods (a networkx graph, for instance).
    """
    if isinstance(obj, CubicGraph):
        return obj
    if isinstance(obj, bytes):
        obj = obj.decode("ascii")
    if isinstance(obj, str):
        return parse_graph6(obj.strip(), name=name)
    if hasattr(obj, "nodes") and hasattr(obj, "edges"):
        nodes = sorted(obj.nodes())
        index = {v: i for i, v in enumerate(nodes)}
        return CubicGraph.from_edges(len(nodes), [(index[u], index[v]) for u, v in obj.edges()], name=name)
    raise InputError(f"cannot interpret {type(obj).__name__} as a cubic graph")


def check_graphs(X) -> list[CubicGraph]:
    if isinstance(X, (str, bytes, CubicGraph)):
        raise InputError("expected a sequence of graphs, got a single graph")
    try:
        items = list(X)
    except TypeError:
        raise InputError("expected a sequence of graphs") from None
    return [check_graph(x) for x in items]


def check_types(types):
    return parse_types(types)


def check_limits(max_aut_order, max_subgroups, max_paths) -> Limits:
    for label, v in (("max_aut_order", max_aut_order), ("max_subgroups", max_subgroups), ("max_paths", max_paths)):
        if not isinstance(v, int) or v < 1:
            raise InputError(f"{label} must be a positive integer, got {v!r}")
    return Limits(max_aut_order, max_subgroups, max_paths)
