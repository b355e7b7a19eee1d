"""Isomorphism and automorphism search for finite planes.

A plane is viewed as its bipartite point/stored-line incidence graph; two
planes are isomorphic exactly when these graphs are isomorphic with points
going to points.  The search is individualization-refinement: colour
refinement (1-WL) run jointly on both graphs so that colour ids are
comparable, then backtracking on the first largest non-singleton cell (small
cells tend to sit on one line, and individualizing collinear points barely
refines a Desarguesian plane).

Automorphism group orders come from a stabilizer chain: at each base point
the orbit is computed exhaustively (one search per candidate image not
already reached by the generators found so far) and the order is the product
of the orbit sizes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .plane import Plane, nontrivial_degree


class _Incidence:
    __slots__ = ("plane", "n", "size", "adj", "index", "labels")

    def __init__(self, plane: Plane):
        self.plane = plane
        self.n = len(plane.points)
        self.index = {p: i for i, p in enumerate(plane.points)}
        self.labels = plane.points
        adj: list[list[int]] = [[] for _ in range(self.n + len(plane.lines))]
        for j, line in enumerate(plane.lines):
            v = self.n + j
            for p in line.members:
                i = self.index[p]
                adj[i].append(v)
                adj[v].append(i)
        self.adj = [tuple(a) for a in adj]
        self.size = len(adj)

    def initial_colors(self) -> list[tuple]:
        out: list[tuple] = []
        for v in range(self.size):
            out.append((0 if v < self.n else 1, len(self.adj[v])))
        return out


def _compress(keys: list[list]) -> list[list[int]]:
    table = {k: i for i, k in enumerate(sorted(set(k for ks in keys for k in ks)))}
    return [[table[k] for k in ks] for ks in keys]


def _refine_joint(graphs: Sequence[_Incidence], colors: list[list[int]]) -> list[list[int]] | None:
    """Refine colourings of several graphs with shared colour ids.

    Returns None when the colour histograms diverge (the graphs cannot be
    isomorphic under the current individualization).
    """
    ncol = len(set(colors[0]))
    while True:
        keys = []
        for g, col in zip(graphs, colors):
            adj = g.adj
            keys.append([
                (col[v], tuple(sorted([col[u] for u in adj[v]])))
                for v in range(g.size)
            ])
        colors = _compress(keys)
        if len(graphs) > 1:
            first = sorted(colors[0])
            if any(sorted(c) != first for c in colors[1:]):
                return None
        new_ncol = len(set(colors[0]))
        if new_ncol == ncol:
            return colors
        ncol = new_ncol


def _start(graphs: Sequence[_Incidence]) -> list[list[int]] | None:
    if len({g.size for g in graphs}) > 1 or len({g.n for g in graphs}) > 1:
        return None
    return _refine_joint(graphs, _compress([g.initial_colors() for g in graphs]))


def _individualize(col: list[int], v: int) -> list[int]:
    out = list(col)
    out[v] = max(col) + 1
    return out


def _target_cell(g: _Incidence, col: list[int]) -> list[int] | None:
    cells: dict[int, list[int]] = {}
    for v in range(g.n):
        cells.setdefault(col[v], []).append(v)
    best = None
    for c in sorted(cells):
        cell = cells[c]
        if len(cell) > 1 and (best is None or len(cell) > len(best)):
            best = cell
    return best


def _verify_map(p1: Plane, p2: Plane, mapping: dict[str, str]) -> bool:
    if len(p1.points) != len(p2.points) or len(p1.lines) != len(p2.lines):
        return False
    if set(mapping) != set(p1.points) or set(mapping.values()) != set(p2.points):
        return False
    targets = {frozenset(line.members) for line in p2.lines}
    return all(frozenset(mapping[p] for p in line.members) in targets for line in p1.lines)


def verify_isomorphism(p1: Plane, p2: Plane, mapping: dict[str, str]) -> bool:
    """Check a point bijection against the raw incidence of both planes."""
    return _verify_map(p1, p2, mapping)


def _search(g1: _Incidence, g2: _Incidence, c1: list[int], c2: list[int]) -> dict[str, str] | None:
    cell = _target_cell(g1, c1)
    if cell is None:
        by_color = {c2[v]: v for v in range(g2.n)}
        mapping = {g1.labels[v]: g2.labels[by_color[c1[v]]] for v in range(g1.n)}
        return mapping if _verify_map(g1.plane, g2.plane, mapping) else None
    v = cell[0]
    for w in range(g2.n):
        if c2[w] != c1[v]:
            continue
        refined = _refine_joint((g1, g2), [_individualize(c1, v), _individualize(c2, w)])
        if refined is None:
            continue
        found = _search(g1, g2, refined[0], refined[1])
        if found is not None:
            return found
    return None


def isomorphic(p1: Plane, p2: Plane) -> dict[str, str] | None:
    """A verified point isomorphism ``p1 -> p2``, or None after exhaustive search."""
    g1, g2 = _Incidence(p1), _Incidence(p2)
    start = _start((g1, g2))
    if start is None:
        return None
    return _search(g1, g2, start[0], start[1])


def refine(plane: Plane) -> dict[str, int]:
    """Stable colour-refinement classes of the points.

    Initial colours are the non-trivial degree and line sizes; class ids are
    canonical (they depend only on the isomorphism type).
    """
    g = _Incidence(plane)
    col = _start((g,))[0]
    return {p: col[i] for i, p in enumerate(plane.points)}


@dataclass
class AutGroup:
    generators: list[dict[str, str]] = field(default_factory=list)
    order: int = 1
    base: list[str] = field(default_factory=list)
    orbit_sizes: list[int] = field(default_factory=list)

    @property
    def is_trivial(self) -> bool:
        return self.order == 1


def _orbit(start: int, gens: Iterable[list[int]]) -> set[int]:
    gens = list(gens)
    seen = {start}
    frontier = [start]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = g[x]
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return seen


def automorphisms(plane: Plane) -> AutGroup:
    """Generators and exact order of the collineation group."""
    g = _Incidence(plane)
    col = _start((g,))[0]
    group = AutGroup()
    while True:
        cell = _target_cell(g, col)
        if cell is None:
            break
        v = cell[0]
        level_gens: list[list[int]] = []
        orbit = {v}
        for w in cell[1:]:
            if w in orbit:
                continue
            refined = _refine_joint((g, g), [_individualize(col, v), _individualize(col, w)])
            if refined is None:
                continue
            found = _search(g, g, refined[0], refined[1])
            if found is None:
                continue
            perm = [g.index[found[p]] for p in plane.points]
            level_gens.append(perm)
            group.generators.append(found)
            orbit = _orbit(v, level_gens)
        group.base.append(plane.points[v])
        group.orbit_sizes.append(len(orbit))
        group.order *= len(orbit)
        col = _refine_joint((g,), [_individualize(col, v)])[0]
    return group


def is_rigid(plane: Plane) -> bool:
    return automorphisms(plane).order == 1


def degree_profile(plane: Plane) -> dict[str, tuple]:
    """Cheap invariant: non-trivial degree plus sorted sizes of lines through."""
    return {
        p: (nontrivial_degree(plane, p), tuple(sorted(len(l) for l in plane.lines_through(p))))
        for p in plane.points
    }
