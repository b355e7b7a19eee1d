"""Finite planes as rank-3 incidence structures.

Only non-trivial lines (three or more points) are stored.  Every pair of
points not covered by a stored line spans an implicit trivial line, which is
materialized on demand as a two-member :class:`Line`.  Point labels are plain
strings ordered lexicographically; every enumeration in the package follows
that order so that all constructions are pure functions of their input.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import (
    AxiomBViolation,
    DuplicateLabel,
    LineTooSmall,
    NotDistinct,
    ParseError,
    SameLine,
    SamePoint,
    UnknownLine,
    UnknownPoint,
)
from .report import Report

NAMESPACES = ("anchor", "vtx", "edge", "q", "free", "raw")


def namespace(label: str) -> str:
    """Namespace of a point label; labels without a known prefix are raw."""
    head, sep, _ = label.partition(":")
    if sep and head in NAMESPACES:
        return head
    return "raw"


def check_label(label: str) -> str:
    if not label or any(ch.isspace() for ch in label):
        raise ValueError(f"invalid point label {label!r}")
    return label


@dataclass(frozen=True, order=True)
class Line:
    """A line given by its sorted member points."""

    members: tuple[str, ...]

    @property
    def label(self) -> str:
        return f"{self.members[0]}~{self.members[1]}"

    @property
    def is_trivial(self) -> bool:
        return len(self.members) == 2

    def __contains__(self, point: object) -> bool:
        return point in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[str]:
        return iter(self.members)

    def __str__(self) -> str:
        return "{" + ",".join(self.members) + "}"


def make_line(points: Iterable[str]) -> Line:
    return Line(tuple(sorted(set(points))))


@dataclass(frozen=True)
class MeetResult:
    """Outcome of intersecting two lines: a point, or the lattice bottom."""

    point: str | None

    @property
    def kind(self) -> str:
        return "bottom" if self.point is None else "point"

    @property
    def is_bottom(self) -> bool:
        return self.point is None


BOTTOM = MeetResult(None)


class Plane:
    """Immutable finite plane.

    Build instances with :func:`new_plane` (fully validated).  The private
    constructor trusts its input and is used by the extension kernels, which
    preserve the invariants by construction.
    """

    __slots__ = ("points", "lines", "_pointset", "_lineset", "_through", "_hash")

    def __init__(self, points: Iterable[str], lines: Iterable[Line]):
        self.points: tuple[str, ...] = tuple(sorted(points))
        self.lines: tuple[Line, ...] = tuple(sorted(lines))
        self._pointset = frozenset(self.points)
        self._lineset = frozenset(self.lines)
        through: dict[str, list[Line]] = {p: [] for p in self.points}
        for line in self.lines:
            for p in line.members:
                through[p].append(line)
        self._through = {p: tuple(ls) for p, ls in through.items()}
        self._hash: int | None = None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Plane):
            return NotImplemented
        return self.points == other.points and self.lines == other.lines

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.points, self.lines))
        return self._hash

    def __repr__(self) -> str:
        return f"Plane({len(self.points)} points, {len(self.lines)} stored lines)"

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, point: object) -> bool:
        return point in self._pointset

    def require(self, *points: str) -> None:
        for p in points:
            if p not in self._pointset:
                raise UnknownPoint(f"point {p!r} is not in the plane")

    def lines_through(self, p: str) -> tuple[Line, ...]:
        """Stored (non-trivial) lines through ``p``."""
        self.require(p)
        return self._through[p]

    def stored_line(self, p: str, q: str) -> Line | None:
        if len(self._through[p]) > len(self._through[q]):
            p, q = q, p
        for line in self._through[p]:
            if q in line.members:
                return line
        return None

    def has_line(self, line: Line) -> bool:
        if line.is_trivial:
            p, q = line.members
            return (
                p in self._pointset
                and q in self._pointset
                and self.stored_line(p, q) is None
            )
        return line in self._lineset

    def restrict(self, keep: Iterable[str]) -> Plane:
        """Induced structure on ``keep``; lines left with <3 points become trivial."""
        keep = frozenset(keep)
        self.require(*keep)
        lines = []
        for line in self.lines:
            m = [p for p in line.members if p in keep]
            if len(m) >= 3:
                lines.append(Line(tuple(m)))
        return Plane(keep, lines)


def new_plane(points: Iterable[str], lines: Iterable[Iterable[str]]) -> Plane:
    """Validate raw data and build a plane.

    Raises DuplicateLabel, UnknownPoint, LineTooSmall or AxiomBViolation,
    naming the offending labels.
    """
    pts = [check_label(p) for p in points]
    seen: set[str] = set()
    for p in pts:
        if p in seen:
            raise DuplicateLabel(f"duplicate point label {p!r}")
        seen.add(p)
    built: list[Line] = []
    for raw in lines:
        raw = list(raw)
        if len(set(raw)) != len(raw):
            raise DuplicateLabel(f"line {raw} repeats a point")
        for p in raw:
            if p not in seen:
                raise UnknownPoint(f"line {raw} uses unknown point {p!r}")
        if len(raw) < 3:
            raise LineTooSmall(f"line {sorted(raw)} has fewer than 3 points")
        built.append(make_line(raw))
    owner: dict[tuple[str, str], Line] = {}
    for line in built:
        for pair in itertools.combinations(line.members, 2):
            other = owner.get(pair)
            if other is not None:
                shared = sorted(set(other.members) & set(line.members))
                raise AxiomBViolation(f"lines {other} and {line} share {shared}")
            owner[pair] = line
    return Plane(pts, built)


def join(plane: Plane, p: str, q: str) -> Line:
    """The unique line through two distinct points."""
    plane.require(p, q)
    if p == q:
        raise SamePoint(f"join of {p!r} with itself")
    line = plane.stored_line(p, q)
    if line is not None:
        return line
    return Line((p, q) if p < q else (q, p))


def _require_line(plane: Plane, line: Line) -> None:
    if not plane.has_line(line):
        raise UnknownLine(f"{line} is not a line of the plane")


def meet(plane: Plane, l1: Line, l2: Line) -> MeetResult:
    """Intersection point of two distinct lines, or bottom if parallel."""
    _require_line(plane, l1)
    _require_line(plane, l2)
    if l1 == l2:
        raise SameLine(f"meet of {l1} with itself")
    common = set(l1.members).intersection(l2.members)
    if not common:
        return BOTTOM
    (point,) = common
    return MeetResult(point)


def is_trivial(plane: Plane, line: Line) -> bool:
    _require_line(plane, line)
    return line.is_trivial


def are_parallel(plane: Plane, l1: Line, l2: Line) -> bool:
    return meet(plane, l1, l2).is_bottom


def collinear(plane: Plane, p: str, q: str, r: str) -> bool:
    plane.require(p, q, r)
    if len({p, q, r}) != 3:
        raise NotDistinct(f"points {p!r}, {q!r}, {r!r} are not distinct")
    line = plane.stored_line(p, q)
    return line is not None and r in line.members


def trivial_lines(plane: Plane) -> list[Line]:
    out = []
    for i, p in enumerate(plane.points):
        covered = set()
        for line in plane.lines_through(p):
            covered.update(line.members)
        for q in plane.points[i + 1:]:
            if q not in covered:
                out.append(Line((p, q)))
    return out


def all_lines(plane: Plane, include_trivial: bool = False) -> list[Line]:
    """Stored lines, plus every uncovered pair when ``include_trivial``; sorted."""
    if not include_trivial:
        return list(plane.lines)
    return sorted(list(plane.lines) + trivial_lines(plane))


def nontrivial_degree(plane: Plane, p: str) -> int:
    return len(plane.lines_through(p))


def parallel_pairs(plane: Plane) -> list[tuple[Line, Line]]:
    """Unordered parallel pairs of ``all_lines(plane, True)`` in canonical order."""
    lines = all_lines(plane, True)
    index: dict[str, list[int]] = {p: [] for p in plane.points}
    for i, line in enumerate(lines):
        for p in line.members:
            index[p].append(i)
    out = []
    for i, line in enumerate(lines):
        hit = set()
        for p in line.members:
            hit.update(index[p])
        for j in range(i + 1, len(lines)):
            if j not in hit:
                out.append((line, lines[j]))
    return out


def is_projective(plane: Plane) -> bool:
    """True iff every two lines (trivial ones included) meet."""
    if len(plane.points) < 3:
        return False
    lines = all_lines(plane, True)
    index: dict[str, set[int]] = {p: set() for p in plane.points}
    for i, line in enumerate(lines):
        for p in line.members:
            index[p].add(i)
    for i, line in enumerate(lines):
        hit = set().union(*(index[p] for p in line.members))
        if len(hit) < len(lines):
            return False
    return True


def validate_plane(plane: Plane) -> Report:
    """Check axioms (A)-(D) on an already-built plane."""
    report = Report("plane")
    small = [line for line in plane.lines if len(line) < 3]
    report.add("stored lines have >= 3 points", not small, ", ".join(map(str, small)))
    bad_b = []
    owner: dict[tuple[str, str], Line] = {}
    for line in plane.lines:
        for pair in itertools.combinations(line.members, 2):
            if pair in owner:
                bad_b.append(f"{owner[pair]}/{line}")
            owner[pair] = line
    report.add("(A)/(B) two points on at most one stored line", not bad_b, "; ".join(bad_b[:5]))
    n = len(plane.points)
    spanning = n >= 3 and not any(len(line) == n for line in plane.lines)
    report.add("(D) three non-collinear points", spanning, f"{n} points")
    return report


# -- serialization ---------------------------------------------------------

def write_plane(plane: Plane) -> str:
    out = ["plane v1"]
    out.extend(f"p {p}" for p in plane.points)
    out.extend("l " + " ".join(line.members) for line in plane.lines)
    return "\n".join(out) + "\n"


def read_plane(text: str) -> Plane:
    rows = text.split("\n")
    if not rows or rows[0].strip() != "plane v1":
        raise ParseError("line 1: expected header 'plane v1'")
    points: list[str] = []
    seen: set[str] = set()
    lines: list[list[str]] = []
    for num, row in enumerate(rows[1:], start=2):
        if not row.strip():
            continue
        tag, *rest = row.split()
        if tag == "p" and len(rest) == 1:
            if rest[0] in seen:
                raise ParseError(f"line {num}: duplicate point {rest[0]!r}")
            seen.add(rest[0])
            points.append(rest[0])
        elif tag == "l" and rest:
            lines.append(rest)
        else:
            raise ParseError(f"line {num}: cannot parse {row!r}")
    try:
        return new_plane(points, lines)
    except (ValueError, KeyError) as exc:
        raise ParseError(str(exc)) from exc
