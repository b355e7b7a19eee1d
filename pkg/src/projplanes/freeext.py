"""Truncated free projective extensions and Desargues configurations.

Level n+1 of a tower adds one point for every unordered pair of parallel
lines of level n (trivial lines included); the new point lies on exactly
those two lines.  Towers can also grow one targeted meet at a time
(:func:`materialize_meet`), which is how violation searches realise a
configuration without building whole levels.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import NotApplicable, NotParallel
from .extension import one_point_extension
from .parallel import ABORTED, Poller, never, first_in_order
from .plane import Line, Plane, all_lines, is_projective, join, parallel_pairs


@dataclass(frozen=True)
class FreePoint:
    label: str
    parents: tuple[Line, Line]


@dataclass
class FreeExtTower:
    base: Plane
    levels: list[Plane] = field(default_factory=list)
    manifests: list[list[FreePoint]] = field(default_factory=list)
    partial: list[bool] = field(default_factory=list)
    truncated: bool = False

    @classmethod
    def start(cls, base: Plane) -> FreeExtTower:
        return cls(base, [base], [[]], [False])

    @property
    def top(self) -> Plane:
        return self.levels[-1]

    def free_points(self) -> dict[str, FreePoint]:
        return {fp.label: fp for m in self.manifests for fp in m}

    def sizes(self) -> list[int]:
        return [len(p.points) for p in self.levels]


def free_label(level: int, l1: Line, l2: Line) -> str:
    return f"free:{level}:{l1.label}|{l2.label}"


def _add_level(plane: Plane, pairs: list[tuple[Line, Line]], level: int) -> tuple[Plane, list[FreePoint]]:
    extra: dict[Line, list[str]] = {}
    born = []
    for l1, l2 in pairs:
        label = free_label(level, l1, l2)
        born.append(FreePoint(label, (l1, l2)))
        extra.setdefault(l1, []).append(label)
        extra.setdefault(l2, []).append(label)
    lines = []
    for line in all_lines(plane, True):
        add = extra.get(line)
        if add:
            lines.append(Line(tuple(sorted(line.members + tuple(add)))))
        elif not line.is_trivial:
            lines.append(line)
    return Plane(plane.points + tuple(fp.label for fp in born), lines), born


def free_extend(plane: Plane, levels: int, point_budget: int | None = None) -> FreeExtTower:
    """Build levels 1..``levels``; ``point_budget`` caps the size of the top level."""
    tower = FreeExtTower.start(plane)
    for n in range(1, levels + 1):
        pairs = parallel_pairs(tower.top)
        if point_budget is not None:
            room = max(point_budget - len(tower.top.points), 0)
            if len(pairs) > room:
                pairs = pairs[:room]
                tower.truncated = True
        nxt, born = _add_level(tower.top, pairs, n)
        tower.levels.append(nxt)
        tower.manifests.append(born)
        tower.partial.append(False)
        if tower.truncated:
            break
    return tower


@dataclass(frozen=True)
class Materialized:
    tower: FreeExtTower
    point: str
    created: bool


def materialize_meet(tower: FreeExtTower, l1: Line, l2: Line) -> Materialized:
    """Add the free intersection point of two parallel lines of the top level.

    Lines are resolved in the top level by their two least points, so lines
    that have grown since they were taken are still recognised.  If the
    lines already meet in a point this tower created, that point is returned
    with ``created=False``; any other existing meet raises NotParallel.
    """
    top = tower.top
    a = join(top, l1.members[0], l1.members[1])
    b = join(top, l2.members[0], l2.members[1])
    common = set(a.members) & set(b.members)
    if common:
        (p,) = common
        if p in tower.free_points():
            return Materialized(tower, p, False)
        raise NotParallel(f"{a} and {b} already meet at {p}")
    label = free_label(len(tower.levels), a, b)
    nxt = one_point_extension(top, [a, b], label)
    grown = FreeExtTower(
        tower.base,
        tower.levels + [nxt],
        tower.manifests + [[FreePoint(label, (a, b))]],
        tower.partial + [True],
        tower.truncated,
    )
    return Materialized(grown, label, True)


# -- Desargues -------------------------------------------------------------

@dataclass(frozen=True)
class DesarguesWitness:
    center: str
    triangle1: tuple[str, str, str]
    triangle2: tuple[str, str, str]
    meets: tuple[str, str, str]
    """(p∨q)∧(p'∨q'), (p∨r)∧(p'∨r'), (q∨r)∧(q'∨r')."""
    verdict: str = "noncollinear"

    def key(self) -> tuple:
        return (self.center,) + self.triangle1 + self.triangle2

    def to_text(self) -> str:
        return (
            "report v1 desargues\n"
            f"center {self.center}\n"
            f"triangle1 {' '.join(self.triangle1)}\n"
            f"triangle2 {' '.join(self.triangle2)}\n"
            f"meet12 {self.meets[0]}\n"
            f"meet13 {self.meets[1]}\n"
            f"meet23 {self.meets[2]}\n"
            f"verdict {self.verdict}\n"
        )

    def revalidate(self, plane: Plane) -> bool:
        """Re-check every incidence from the raw line sets of ``plane``."""
        return _recheck_desargues(plane, self)


def _line_sets(plane: Plane) -> list[frozenset[str]]:
    return [frozenset(line.members) for line in plane.lines]


def _on_common_stored_line(sets: list[frozenset[str]], *pts: str) -> bool:
    want = set(pts)
    return any(want <= s for s in sets)


def _recheck_desargues(plane: Plane, w: DesarguesWitness) -> bool:
    sets = _line_sets(plane)
    pts = set(plane.points)
    o, (p, q, r), (p2, q2, r2) = w.center, w.triangle1, w.triangle2
    six = [p, q, r, p2, q2, r2]
    if not set(six + [o] + list(w.meets)) <= pts:
        return False
    if len(set(six + [o])) != 7:
        return False

    def col(*xs):
        return _on_common_stored_line(sets, *xs)

    def on_join(x, a, b):
        # x lies on the line a∨b (a stored line, or x is a or b)
        return x in (a, b) or col(a, b, x)

    if col(p, q, r) or col(p2, q2, r2):
        return False
    # perspective lines distinct and through o
    if not (col(o, p, p2) and col(o, q, q2) and col(o, r, r2)):
        return False
    if col(o, p, q) or col(o, p, r) or col(o, q, r):
        return False
    pairs = [((p, q), (p2, q2)), ((p, r), (p2, r2)), ((q, r), (q2, r2))]
    for m, ((a, b), (a2, b2)) in zip(w.meets, pairs):
        if not (on_join(m, a, b) and on_join(m, a2, b2)):
            return False
    x, y, z = w.meets
    if len({x, y, z}) < 3:
        return False
    return not col(x, y, z)


def _meet_point(plane: Plane, a: str, b: str, c: str, d: str) -> str | None | bool:
    """Meet of a∨b and c∨d; None if parallel, False if the lines coincide."""
    l1, l2 = join(plane, a, b), join(plane, c, d)
    if l1 == l2:
        return False
    common = set(l1.members) & set(l2.members)
    return next(iter(common)) if common else None


def _collinear3(plane: Plane, x: str, y: str, z: str) -> bool:
    if len({x, y, z}) < 3:
        return True
    line = plane.stored_line(x, y)
    return line is not None and z in line.members


def _desargues_at(plane: Plane, o: str, stop=never):
    poll = Poller(stop)
    best = None
    rays = plane.lines_through(o)
    for L1, L2, L3 in itertools.combinations(rays, 3):
        s1 = [x for x in L1.members if x != o]
        s2 = [x for x in L2.members if x != o]
        s3 = [x for x in L3.members if x != o]
        for p, p2 in itertools.combinations(s1, 2):
            for q, q2 in itertools.permutations(s2, 2):
                for r, r2 in itertools.permutations(s3, 2):
                    if poll():
                        return ABORTED
                    if _collinear3(plane, p, q, r) or _collinear3(plane, p2, q2, r2):
                        continue
                    meets = []
                    for a, b, a2, b2 in ((p, q, p2, q2), (p, r, p2, r2), (q, r, q2, r2)):
                        m = _meet_point(plane, a, b, a2, b2)
                        if not m:
                            break
                        meets.append(m)
                    if len(meets) < 3 or _collinear3(plane, *meets):
                        continue
                    w = _canonical_desargues(o, (p, q, r), (p2, q2, r2), tuple(meets))
                    if best is None or w.key() < best.key():
                        best = w
    return best


def _canonical_desargues(o, t1, t2, meets) -> DesarguesWitness:
    """Least relabelling under reordering the three pairs and swapping triangles."""
    options = []
    pair_meet = {frozenset((0, 1)): meets[0], frozenset((0, 2)): meets[1], frozenset((1, 2)): meets[2]}
    for perm in itertools.permutations(range(3)):
        for a, b in ((t1, t2), (t2, t1)):
            tri1 = tuple(a[i] for i in perm)
            tri2 = tuple(b[i] for i in perm)
            ms = tuple(pair_meet[frozenset((perm[i], perm[j]))] for i, j in ((0, 1), (0, 2), (1, 2)))
            options.append(DesarguesWitness(o, tri1, tri2, ms))
    return min(options, key=DesarguesWitness.key)


def desargues_check(plane: Plane, jobs: int = 1) -> DesarguesWitness | None:
    """First violating configuration in canonical order, or None if Desargues holds.

    Only configurations fully realised in ``plane`` are considered: distinct
    concurrent perspective lines through a centre off both triangles,
    non-degenerate triangles, and all three side meets existing.
    """
    return first_in_order(_desargues_at, plane, plane.points, jobs)


def desargues_violation_search(tower: FreeExtTower, budget: int = 50) -> tuple[FreeExtTower, DesarguesWitness] | None:
    """Realise a perspective triangle pair in the tower and test its axis.

    Candidates (centre o, triangle p<q<r) are tried in lexicographic order.
    Missing third points on o∨p, o∨q, o∨r and missing side meets are
    created with :func:`materialize_meet`.  Returns the grown tower and a
    witness whose meets are non-collinear, or None once ``budget``
    candidates have been tried.
    """
    if is_projective(tower.base):
        raise NotApplicable("base plane is projective; its free extension is itself")
    plane = tower.top
    tried = 0
    for o in plane.points:
        others = [x for x in plane.points if x != o]
        for p, q, r in itertools.combinations(others, 3):
            rays = {join(plane, o, x) for x in (p, q, r)}
            if len(rays) < 3 or _collinear3(plane, p, q, r):
                continue
            tried += 1
            if tried > budget:
                return None
            got = _realise_desargues(tower, o, (p, q, r))
            if got is not None and got[1].revalidate(got[0].top):
                return got
    return None


def _third_point(tower: FreeExtTower, o: str, p: str) -> tuple[FreeExtTower, str] | None:
    top = tower.top
    ray = join(top, o, p)
    extra = [x for x in ray.members if x not in (o, p)]
    if extra:
        return tower, extra[0]
    for other in all_lines(top, True):
        if not set(other.members) & set(ray.members):
            m = materialize_meet(tower, ray, other)
            return m.tower, m.point
    return None


def _realise_desargues(tower: FreeExtTower, o: str, tri: tuple[str, str, str]):
    primes = []
    for x in tri:
        got = _third_point(tower, o, x)
        if got is None:
            return None
        tower, x2 = got
        primes.append(x2)
    p, q, r = tri
    p2, q2, r2 = primes
    if _collinear3(tower.top, p2, q2, r2):
        return None
    meets = []
    for a, b, a2, b2 in ((p, q, p2, q2), (p, r, p2, r2), (q, r, q2, r2)):
        top = tower.top
        l1, l2 = join(top, a, b), join(top, a2, b2)
        if l1 == l2:
            return None
        common = set(l1.members) & set(l2.members)
        if common:
            meets.append(next(iter(common)))
        else:
            m = materialize_meet(tower, l1, l2)
            tower = m.tower
            meets.append(m.point)
    if _collinear3(tower.top, *meets):
        return None
    return tower, DesarguesWitness(o, tri, (p2, q2, r2), tuple(meets))
