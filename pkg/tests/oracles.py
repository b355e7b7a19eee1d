"""Independent reference implementations used as test oracles.

Everything here works on raw Python sets and tuples and deliberately shares
no code with the package beyond reading ``plane.points`` / ``plane.lines``.
"""

from __future__ import annotations

import itertools


def raw(plane) -> tuple[set[str], list[frozenset[str]]]:
    return set(plane.points), [frozenset(line.members) for line in plane.lines]


def full_lines(points: set[str], lines: list[frozenset[str]]) -> list[frozenset[str]]:
    """Stored lines plus every pair of points not covered by one."""
    covered = set()
    for line in lines:
        covered.update(frozenset(pr) for pr in itertools.combinations(line, 2))
    out = list(lines)
    for pr in itertools.combinations(sorted(points, key=repr), 2):
        if frozenset(pr) not in covered:
            out.append(frozenset(pr))
    return out


def naive_peel(points: set[str], lines: list[frozenset[str]]) -> tuple[set[str], set[frozenset[str]]]:
    """Recompute every degree from scratch until nothing changes."""
    pts = set(points)
    lns = set(lines)
    while True:
        keep_lines = {l for l in lns if len(l & pts) >= 3}
        keep_pts = {p for p in pts if sum(1 for l in keep_lines if p in l) >= 3}
        if keep_lines == lns and keep_pts == pts:
            return pts, lns
        pts, lns = keep_pts, keep_lines


def tower_sizes(points: set[str], lines: list[frozenset[str]], levels: int) -> list[int]:
    """Free-extension level sizes: add one new point per parallel pair, per level."""
    sizes = [len(points)]
    pts, lns = set(points), list(lines)
    for n in range(levels):
        everything = full_lines(pts, lns)
        new_pts = set()
        grown = {l: set(l) for l in everything}
        for i, j in itertools.combinations(range(len(everything)), 2):
            a, b = everything[i], everything[j]
            if a & b:
                continue
            x = ("new", n, i, j)
            new_pts.add(x)
            grown[a].add(x)
            grown[b].add(x)
        pts |= new_pts
        lns = [frozenset(s) for s in grown.values() if len(s) >= 3]
        sizes.append(len(pts))
    return sizes


def graph_aut_order(vertices, edges) -> int:
    """|Aut(G)| by trying every vertex permutation."""
    vs = list(vertices)
    es = {frozenset(e) for e in edges}
    count = 0
    for perm in itertools.permutations(vs):
        m = dict(zip(vs, perm))
        if all(frozenset(m[v] for v in e) in es for e in es):
            count += 1
    return count


def graphs_isomorphic(g1, g2) -> bool:
    """Brute force over bijections that preserve vertex degree."""
    if len(g1.vertices) != len(g2.vertices) or len(g1.edges) != len(g2.edges):
        return False

    def degree(g, v):
        return sum(1 for e in g.edges if v in e)

    classes1, classes2 = {}, {}
    for v in g1.vertices:
        classes1.setdefault(degree(g1, v), []).append(v)
    for v in g2.vertices:
        classes2.setdefault(degree(g2, v), []).append(v)
    if {d: len(vs) for d, vs in classes1.items()} != {d: len(vs) for d, vs in classes2.items()}:
        return False
    keys = sorted(classes1)
    for choice in itertools.product(*(itertools.permutations(classes2[d]) for d in keys)):
        m = {}
        for d, image in zip(keys, choice):
            m.update(zip(classes1[d], image))
        if all(frozenset(m[v] for v in e) in g2.edges for e in g1.edges):
            return True
    return False


def plane_aut_order(plane) -> int:
    """|Aut| of a small plane by trying every point permutation."""
    pts, lines = raw(plane)
    order = sorted(pts)
    target = set(lines)
    count = 0
    for perm in itertools.permutations(order):
        m = dict(zip(order, perm))
        if all(frozenset(m[p] for p in l) in target for l in lines):
            count += 1
    return count


def pgl3_order(q: int, field_aut: int) -> int:
    """|PΓL(3, q)| = q^3 (q^3 - 1)(q^2 - 1) * |Gal| (standard formula)."""
    return q ** 3 * (q ** 3 - 1) * (q ** 2 - 1) * field_aut


def pg2_coordinates(q: int) -> tuple[set, list[frozenset]]:
    """PG(2, p) for a prime p via integer arithmetic mod p (no field tables)."""
    def norm(v):
        lead = next(x for x in v if x % q)
        inv = pow(lead, -1, q)
        return tuple(x * inv % q for x in v)

    vecs = sorted({norm(v) for v in itertools.product(range(q), repeat=3) if any(v)})
    lines = [frozenset(v for v in vecs if sum(a * b for a, b in zip(f, v)) % q == 0) for f in vecs]
    return set(vecs), lines
