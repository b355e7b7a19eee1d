"""Finite rank-3 incidence planes: graph encodings, confinement, free extensions, PG(2, q)."""

from .codec import decode, encode
from .confinement import build_plus, peel
from .freeext import desargues_check, desargues_violation_search, free_extend
from .graph import Graph, read_graph, write_graph
from .isoaut import automorphisms, is_rigid, isomorphic
from .pg import gf, pappus_check, pg2
from .plane import Line, Plane, join, meet, new_plane, read_plane, validate_plane, write_plane

__all__ = [
    "Graph", "Line", "Plane",
    "automorphisms", "build_plus", "decode", "desargues_check",
    "desargues_violation_search", "encode", "free_extend", "gf", "is_rigid",
    "isomorphic", "join", "meet", "new_plane", "pappus_check", "peel", "pg2",
    "read_graph", "read_plane", "validate_plane", "write_graph", "write_plane",
]
