"""Finite simple graphs with named vertices and the ``graph v1`` text format."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable

from .errors import ParseError


@dataclass(frozen=True)
class Graph:
    """Vertex order is significant: it is the induction order used by encode."""

    vertices: tuple[str, ...]
    edges: frozenset[frozenset[str]]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex name")
        vs = set(self.vertices)
        for e in self.edges:
            if len(e) != 2 or not e <= vs:
                raise ValueError(f"bad edge {sorted(e)}")

    @classmethod
    def build(cls, vertices: Iterable, edges: Iterable[tuple]) -> Graph:
        vertices = tuple(str(v) for v in vertices)
        return cls(vertices, frozenset(frozenset((str(u), str(v))) for u, v in edges))

    def has_edge(self, u: str, v: str) -> bool:
        return frozenset((u, v)) in self.edges

    def edge_list(self) -> list[tuple[str, str]]:
        return sorted(tuple(sorted(e)) for e in self.edges)

    def indexed_edges(self) -> list[tuple[int, int]]:
        """Edges as (δ, α) vertex indices with δ < α, ordered by α then δ."""
        pos = {v: i for i, v in enumerate(self.vertices)}
        pairs = [tuple(sorted(pos[v] for v in e)) for e in self.edges]
        return sorted(pairs, key=lambda t: (t[1], t[0]))

    def relabel(self, mapping: dict[str, str], order: Iterable[str] | None = None) -> Graph:
        verts = tuple(mapping[v] for v in self.vertices) if order is None else tuple(order)
        return Graph(verts, frozenset(frozenset(mapping[v] for v in e) for e in self.edges))

    def __len__(self) -> int:
        return len(self.vertices)


def write_graph(g: Graph) -> str:
    out = ["graph v1"]
    out.extend(f"v {v}" for v in g.vertices)
    out.extend(f"e {u} {v}" for u, v in g.edge_list())
    return "\n".join(out) + "\n"


def read_graph(text: str) -> Graph:
    rows = text.split("\n")
    if not rows or rows[0].strip() != "graph v1":
        raise ParseError("line 1: expected header 'graph v1'")
    verts: list[str] = []
    edges: list[tuple[str, str]] = []
    for num, row in enumerate(rows[1:], start=2):
        if not row.strip():
            continue
        parts = row.split()
        if parts[0] == "v" and len(parts) == 2:
            if parts[1] in verts:
                raise ParseError(f"line {num}: duplicate vertex {parts[1]!r}")
            verts.append(parts[1])
        elif parts[0] == "e" and len(parts) == 3:
            u, v = parts[1:]
            if u == v:
                raise ParseError(f"line {num}: loop at {u!r}")
            if not u < v:
                raise ParseError(f"line {num}: edge endpoints must be ordered")
            if (u, v) in edges:
                raise ParseError(f"line {num}: repeated edge")
            edges.append((u, v))
        else:
            raise ParseError(f"line {num}: cannot parse {row!r}")
    try:
        return Graph.build(verts, edges)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


# -- small corpora ---------------------------------------------------------

def path(n: int) -> Graph:
    return Graph.build(range(n), [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    return Graph.build(range(n), [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph.build(range(n), itertools.combinations(range(n), 2))


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    return Graph.build(range(n), [e for e in itertools.combinations(range(n), 2) if rng.random() < p])


def unlabeled_graphs(n: int) -> list[Graph]:
    """One representative per isomorphism class on ``n`` vertices (brute force)."""
    pairs = list(itertools.combinations(range(n), 2))
    perms = list(itertools.permutations(range(n)))
    seen: set[frozenset] = set()
    out = []
    for mask in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        key = frozenset(edges)
        if key in seen:
            continue
        for perm in perms:
            seen.add(frozenset(tuple(sorted((perm[u], perm[v]))) for u, v in edges))
        out.append(Graph.build(range(n), edges))
    return out
