"""Encoding graphs as planes and decoding them back.

A graph G is encoded on top of a rigid 17-point anchor plane.  Each vertex
v_α contributes three points: ``vtx:α:0`` on the anchor line p2∨1',
``vtx:α:1`` on 0∨1', and ``vtx:α:2`` on the line they span, ℓ_α.  Each edge
{v_δ, v_α} contributes a point ``edge:δ-α`` on ℓ_δ and ℓ_α.  All points are
added by one-point extensions, so the plane has 3|V| + |E| + 17 points and
the lines ℓ_α intersect exactly along the edges of G.

Anchor points are recognised intrinsically: they are the points lying on
four non-trivial lines, or on a non-trivial line through such a point
(:func:`phi`).  Rigidity of the anchor then pins every anchor point, which
is what makes :func:`decode` label-independent.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from importlib import resources

from .errors import Ambiguous, MalformedGadget, NoEmbedding
from .extension import BuildLog, one_point_extension
from .graph import Graph
from .isoaut import automorphisms, isomorphic
from .plane import Line, Plane, join, new_plane, read_plane, validate_plane
from .report import Report

ANCHOR_ROLES = ("q", "p2", "p3", "0", "0'", "1'", "1_0", "2_1")
ANCHOR_SIZE = 17


def role(name: str) -> str:
    return f"anchor:{name}"


DEFAULT_ROLES = {r: role(r) for r in ANCHOR_ROLES}


def vtx(alpha: int, j: int) -> str:
    return f"vtx:{alpha}:{j}"


def edge_point(delta: int, alpha: int) -> str:
    return f"edge:{delta}-{alpha}"


# -- the anchor plane ------------------------------------------------------

def _anchor_skeleton() -> tuple[list[str], list[list[str]]]:
    r = role
    x = [f"anchor:x{i}" for i in range(1, 10)]
    points = [r(n) for n in ANCHOR_ROLES] + x
    lines = [
        [r("p2"), r("1'"), r("0'")],      # p2∨1' = 1'∨0'
        [r("0"), r("1'"), r("1_0")],      # 0∨1' = 1'∨1_0
        [r("p3"), r("p2"), r("0")],       # p2∨0
        [r("p3"), r("1'"), r("2_1")],     # 1'∨2_1
        [r("p3"), r("0'"), x[0]],
        [r("p3"), r("1_0"), x[1]],
        [r("0"), r("0'"), x[2]],          # 0∨0'
        [r("q"), x[2], x[3]],
        [r("q"), x[4], x[5]],
        [r("q"), x[6], x[7]],
        [r("q"), x[8], x[0]],
    ]
    return points, lines


def _anchor_admissible(points: list[str], lines: list[list[str]]) -> Plane | None:
    try:
        plane = new_plane(points, lines)
    except ValueError:
        return None
    deg = {p: len(plane.lines_through(p)) for p in points}
    # points on the two lines that receive vertex gadgets must not reach degree 4
    for name in ("p2", "0", "1'", "0'", "1_0"):
        if deg[role(name)] >= 4:
            return None
    return plane


def synthesize_anchor() -> Plane:
    """Deterministically rebuild the anchor asset.

    Starts from a skeleton carrying the named points and their prescribed
    lines, then adds three-point lines over the unconstrained points (in
    lexicographic order) whenever one shrinks the automorphism group, until
    the plane is rigid.
    """
    points, lines = _anchor_skeleton()
    locked = {role(n) for n in ("q", "p3", "p2", "0", "1'", "0'")}
    order = automorphisms(_anchor_admissible(points, lines)).order
    for cand in itertools.combinations(sorted(p for p in points if p not in locked), 3):
        trial = _anchor_admissible(points, lines + [list(cand)])
        if trial is None:
            continue
        trial_order = automorphisms(trial).order
        if trial_order < order:
            lines.append(list(cand))
            order = trial_order
            if order == 1:
                break
    return new_plane(points, lines)


@lru_cache(maxsize=None)
def anchor_plane() -> Plane:
    text = resources.files("projplanes").joinpath("data/anchor17.plane").read_text(encoding="utf-8")
    return read_plane(text)


@lru_cache(maxsize=None)
def _anchor_order(anchor: Plane) -> int:
    return automorphisms(anchor).order


def probe_graph() -> Graph:
    return Graph.build(["a", "b"], [("a", "b")])


def validate_anchor(anchor: Plane | None = None, roles: dict[str, str] | None = None) -> Report:
    anchor = anchor_plane() if anchor is None else anchor
    roles = DEFAULT_ROLES if roles is None else roles
    report = Report("anchor-plane")
    report.extend(validate_plane(anchor))
    report.add("17 points", len(anchor.points) == ANCHOR_SIZE, str(len(anchor.points)))
    missing = [r for r, p in roles.items() if p not in anchor]
    report.add("named points present", not missing, " ".join(missing))
    order = _anchor_order(anchor)
    report.add("rigid (|Aut| = 1)", order == 1, f"|Aut| = {order}")
    if missing:
        return report
    g = probe_graph()
    plane, _ = encode(g, anchor, roles)
    probe = check_star_invariants(plane, g, anchor, roles)
    for c in probe.clauses:
        if c.name.startswith(("star2", "star5", "size")):
            report.add("probe " + c.name, c.ok, c.detail)
    return report


# -- encoding --------------------------------------------------------------

def encode(graph: Graph, anchor: Plane | None = None,
           roles: dict[str, str] | None = None) -> tuple[Plane, BuildLog]:
    """Build the plane of ``graph`` and the log of one-point extensions."""
    plane = anchor_plane() if anchor is None else anchor
    roles = DEFAULT_ROLES if roles is None else roles
    p2, one, zero = roles["p2"], roles["1'"], roles["0"]
    log = BuildLog()
    for alpha, name in enumerate(graph.vertices):
        tag = f"vertex:{name}"
        a0, a1, a2 = vtx(alpha, 0), vtx(alpha, 1), vtx(alpha, 2)
        plane = one_point_extension(plane, [join(plane, p2, one)], a0)
        log.record("one_point", [a0], [(p2, one)], tag)
        plane = one_point_extension(plane, [join(plane, zero, one)], a1)
        log.record("one_point", [a1], [(zero, one)], tag)
        plane = one_point_extension(plane, [join(plane, a0, a1)], a2)
        log.record("one_point", [a2], [(a0, a1)], tag)
    for delta, alpha in graph.indexed_edges():
        label = edge_point(delta, alpha)
        lines = [join(plane, vtx(delta, 0), vtx(delta, 1)), join(plane, vtx(alpha, 0), vtx(alpha, 1))]
        plane = one_point_extension(plane, lines, label)
        log.record("one_point", [label], [(vtx(delta, 0), vtx(delta, 1)), (vtx(alpha, 0), vtx(alpha, 1))],
                   f"edge:{graph.vertices[delta]}-{graph.vertices[alpha]}")
    return plane, log


def phi_set(plane: Plane) -> set[str]:
    """Points on four non-trivial lines, plus points sharing a non-trivial line with one."""
    hubs = [p for p in plane.points if len(plane.lines_through(p)) == 4]
    out = set(hubs)
    for h in hubs:
        for line in plane.lines_through(h):
            out.update(line.members)
    return out


def phi(plane: Plane, p: str) -> bool:
    plane.require(p)
    if len(plane.lines_through(p)) == 4:
        return True
    return any(
        len(plane.lines_through(x)) == 4
        for line in plane.lines_through(p)
        for x in line.members
    )


def locate_anchor(plane: Plane, anchor: Plane | None = None) -> dict[str, str]:
    """Map each anchor point to the point of ``plane`` playing its role."""
    anchor = anchor_plane() if anchor is None else anchor
    found = phi_set(plane)
    if len(found) != len(anchor.points):
        raise NoEmbedding(f"phi holds on {len(found)} points, expected {len(anchor.points)}")
    mapping = isomorphic(anchor, plane.restrict(found))
    if mapping is None:
        raise NoEmbedding("phi-points do not carry a copy of the anchor plane")
    if _anchor_order(anchor) != 1:
        raise Ambiguous("anchor plane is not rigid; embedding is not unique")
    return mapping


def vertex_lines(plane: Plane, anchor: Plane | None = None,
                 roles: dict[str, str] | None = None) -> list[Line]:
    """The lines ℓ_α of an encoded plane, sorted, recovered without labels."""
    roles = DEFAULT_ROLES if roles is None else roles
    m = locate_anchor(plane, anchor)
    spine = join(plane, m[roles["p2"]], m[roles["1'"]])
    anchors = set(m.values())
    out = []
    for x in spine.members:
        if x in anchors:
            continue
        lines = plane.lines_through(x)
        if len(lines) != 2:
            raise MalformedGadget(f"{x} lies on {len(lines)} non-trivial lines, expected 2")
        out.append(lines[0] if lines[1] == spine else lines[1])
    if len(set(out)) != len(out):
        raise MalformedGadget("two vertex points share their gadget line")
    return sorted(out, key=lambda line: line.label)


def decode(plane: Plane, anchor: Plane | None = None,
           roles: dict[str, str] | None = None) -> Graph:
    """Recover the graph, with vertices v0, v1, ... in order of their line labels."""
    lines = vertex_lines(plane, anchor, roles)
    names = [f"v{i}" for i in range(len(lines))]
    edges = [
        (names[i], names[j])
        for i, j in itertools.combinations(range(len(lines)), 2)
        if set(lines[i].members) & set(lines[j].members)
    ]
    return Graph.build(names, edges)


def induced_vertex_map(plane: Plane, graph: Graph, mapping: dict[str, str]) -> dict[str, str]:
    """Vertex permutation induced by a plane automorphism acting on the lines ℓ_α.

    ``plane`` must be ``encode(graph)`` with labels intact.
    """
    by_line = {}
    for alpha, name in enumerate(graph.vertices):
        by_line[frozenset(join(plane, vtx(alpha, 0), vtx(alpha, 1)).members)] = name
    out = {}
    for alpha, name in enumerate(graph.vertices):
        line = join(plane, vtx(alpha, 0), vtx(alpha, 1))
        image = frozenset(mapping[p] for p in line.members)
        out[name] = by_line[image]
    return out


def check_star_invariants(plane: Plane, graph: Graph, anchor: Plane | None = None,
                          roles: dict[str, str] | None = None) -> Report:
    """Exhaustively check the structural facts the decoding relies on.

    ``plane`` must be ``encode(graph, anchor, roles)`` with labels intact.
    Violations are reported, never raised.
    """
    anchor = anchor_plane() if anchor is None else anchor
    roles = DEFAULT_ROLES if roles is None else roles
    rep = Report("star-invariants")
    n, m = len(graph.vertices), len(graph.edges)
    rep.add("size 3|V|+|E|+17", len(plane.points) == 3 * n + m + 17,
            f"{len(plane.points)} vs {3 * n + m + 17}")
    anchors = set(anchor.points)
    deg = {p: len(plane.lines_through(p)) for p in plane.points}

    def lines_of(p):
        return {line.members for line in plane.lines_through(p)}

    def j(a, b):
        return join(plane, a, b).members

    ell = {a: j(vtx(a, 0), vtx(a, 1)) for a in range(n)}
    edges = graph.indexed_edges()

    got = phi_set(plane)
    rep.add("star2 phi holds exactly on anchor points", got == anchors,
            f"extra={sorted(got - anchors)[:5]} missing={sorted(anchors - got)[:5]}")

    bad = [a for a in range(n) if lines_of(vtx(a, 0)) != {j(roles["p2"], roles["1'"]), ell[a]}]
    rep.add("star3 vtx:a:0 on exactly p2∨1' and ℓ_a", not bad, str(bad[:5]))
    bad = [a for a in range(n) if lines_of(vtx(a, 1)) != {j(roles["0"], roles["1'"]), ell[a]}]
    rep.add("star4 vtx:a:1 on exactly 0∨1' and ℓ_a", not bad, str(bad[:5]))

    r = roles
    want = {
        "p2": {j(r["p2"], r["0"]), j(r["p2"], r["1'"])},
        "0": {j(r["p2"], r["0"]), j(r["0"], r["0'"]), j(r["0"], r["1'"])},
        "1'": {j(r["1'"], r["0'"]), j(r["1'"], r["1_0"]), j(r["1'"], r["2_1"])},
    }
    for name, lines in want.items():
        ok = lines_of(r[name]) == lines and len(lines) == {"p2": 2}.get(name, 3)
        rep.add(f"star5 {name} on exactly its named non-trivial lines", ok,
                f"degree {deg[r[name]]}")

    bad = [(d, a) for d, a in edges if lines_of(edge_point(d, a)) != {ell[d], ell[a]}]
    rep.add("star6 edge points on exactly ℓ_d and ℓ_a", not bad, str(bad[:5]))

    bad = []
    for a in range(n):
        expect = {vtx(a, 0), vtx(a, 1), vtx(a, 2)}
        expect.update(edge_point(d, b) for d, b in edges if a in (d, b))
        if set(ell[a]) != expect:
            bad.append(a)
    rep.add("star7 members of ℓ_a are its gadget and edge points", not bad, str(bad[:5]))

    bad = [(a, b) for a in range(n) for b in range(n)
           if a != b and len(j(vtx(a, 0), vtx(b, 1))) != 2]
    rep.add("star8 cross joins vtx:a:0 ∨ vtx:b:1 trivial", not bad, str(bad[:5]))

    edge_set = {frozenset(e) for e in edges}
    bad = [(a, b) for a, b in itertools.combinations(range(n), 2)
           if bool(set(ell[a]) & set(ell[b])) != (frozenset((a, b)) in edge_set)]
    rep.add("star1 ℓ-intersection graph equals G", not bad, str(bad[:5]))

    heavy = [p for p in plane.points if p not in anchors and deg[p] > 2]
    exempt = [p for p in plane.points if p in anchors]
    rep.add("simple: non-anchor points have degree <= 2", not heavy, str(heavy[:5]))
    rep.add("simple: exactly 17 exempt points", len(exempt) == 17, str(len(exempt)))
    return rep
