"""Edge-transitive simplicial surfaces from edge-transitive cubic graphs."""

__version__ = "0.1.0"

from .cdc import CycleDoubleCover, Cycle, alpha_cycle, enumerate_cdcs_bruteforce, is_cdc, is_vertex_faithful
from .construct import CensusRecord, Limits, census_graph, candidate_subgroups
from .errors import CeilingExceeded, DisconnectedGraphError, EtsurfError, InputError, NotCubicError, SurfaceError
from .graph import CubicGraph, parse_graph6, read_corpus, write_graph6
from .perm import Permutation, PermGroup, compose, subgroups_of_order
from .surface import SimplicialSurface, bundled_surface, load_surface, surface_from_cdc

__all__ = [
    "CensusRecord", "CeilingExceeded", "CubicGraph", "Cycle", "CycleDoubleCover",
    "DisconnectedGraphError", "EtsurfError", "InputError", "Limits", "NotCubicError",
    "PermGroup", "Permutation", "SimplicialSurface", "SurfaceError", "alpha_cycle",
    "bundled_surface", "candidate_subgroups", "census_graph", "compose",
    "enumerate_cdcs_bruteforce", "is_cdc", "is_vertex_faithful", "load_surface",
    "parse_graph6", "read_corpus", "subgroups_of_order", "surface_from_cdc", "write_graph6",
]
