"""One-point extensions and attaching rigid copies of the plane Q.

:func:`one_point_extension` is the only primitive that adds points to a
plane.  Attaching a copy of Q at a point or along a line is scripted as a
sequence of one-point extensions that grows the copy from a non-collinear
triple, so every attachment inherits the kernel's checks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Iterable, Sequence

from .errors import NotParallel, StaleLabel, UnknownLine
from .plane import Line, Plane, check_label, join, read_plane, validate_plane
from .report import Report

Q_LETTERS = "abcdefghklmno"


def one_point_extension(plane: Plane, lines: Iterable[Line], label: str) -> Plane:
    """Add ``label`` as a point lying on exactly the (pairwise parallel) ``lines``.

    Trivial lines in ``lines`` become stored three-point lines; no other line
    gains the point, so every other join with the new point is trivial.
    """
    check_label(label)
    if label in plane:
        raise StaleLabel(f"label {label!r} already names a point")
    targets = sorted(set(lines))
    for line in targets:
        if not plane.has_line(line):
            raise UnknownLine(f"{line} is not a line of the plane")
    for l1, l2 in itertools.combinations(targets, 2):
        if set(l1.members) & set(l2.members):
            raise NotParallel(f"{l1} and {l2} meet; cannot extend through both")
    grown = {line: Line(tuple(sorted(line.members + (label,)))) for line in targets}
    new_lines = [grown.get(line, line) for line in plane.lines]
    new_lines.extend(v for k, v in grown.items() if k.is_trivial)
    return Plane(plane.points + (label,), new_lines)


@lru_cache(maxsize=None)
def q_plane() -> Plane:
    """The rigid 13-point, 11-line plane Q (points a..o without i, j)."""
    text = resources.files("projplanes").joinpath("data/q.plane").read_text(encoding="utf-8")
    return read_plane(text)


def validate_q(q: Plane | None = None) -> Report:
    from .isoaut import automorphisms

    q = q_plane() if q is None else q
    report = Report("q-plane")
    report.extend(validate_plane(q))
    report.add("13 points", len(q.points) == 13, str(len(q.points)))
    report.add("11 stored lines", len(q.lines) == 11, str(len(q.lines)))
    report.add("points are a..o", q.points == tuple(Q_LETTERS), " ".join(q.points))
    a_b = [line for line in q.lines if "a" in line and "b" in line]
    report.add("a and b span a stored line", len(a_b) == 1)
    order = automorphisms(q).order
    report.add("rigid (|Aut| = 1)", order == 1, f"|Aut| = {order}")
    return report


def q_label(site: str, letter: str) -> str:
    return f"q:{site}:{letter}"


def _grow_copy(plane: Plane, placed: dict[str, str], order: Sequence[str], site: str) -> Plane:
    q = q_plane()
    for x in order:
        lines = []
        for qline in q.lines_through(x):
            done = [placed[y] for y in qline.members if y != x and y in placed]
            if len(done) >= 2:
                lines.append(join(plane, done[0], done[1]))
        label = q_label(site, x)
        plane = one_point_extension(plane, lines, label)
        placed[x] = label
    return plane


def attach_q_at_point(plane: Plane, p: str, site: str) -> Plane:
    """Glue a fresh copy of Q to ``plane`` with Q's point a identified with ``p``."""
    plane.require(p)
    rest = [x for x in Q_LETTERS if x not in "abf"]
    return _grow_copy(plane, {"a": p}, ["b", "f"] + rest, site)


def attach_q_at_line(plane: Plane, line: Line, site: str) -> Plane:
    """Glue a fresh copy of Q with its line a∨b identified with ``line``.

    a and b go to the two lexicographically least points of ``line``.
    """
    if not plane.has_line(line):
        raise UnknownLine(f"{line} is not a line of the plane")
    rest = [x for x in Q_LETTERS if x not in "abf"]
    placed = {"a": line.members[0], "b": line.members[1]}
    return _grow_copy(plane, placed, ["f"] + rest, site)


# -- replayable logs -------------------------------------------------------

@dataclass(frozen=True)
class ExtensionStep:
    """One logged mutation.

    ``targets`` holds point pairs (lines, each named by two of its points)
    for ``one_point`` steps, a single point for ``q_at_point`` and a point
    pair for ``q_at_line``.
    """

    kind: str
    new_labels: tuple[str, ...]
    targets: tuple[tuple[str, ...], ...]
    index: int
    tag: str = ""
    site: str = ""

    def apply(self, plane: Plane) -> Plane:
        if self.kind == "one_point":
            lines = [join(plane, a, b) for a, b in self.targets]
            return one_point_extension(plane, lines, self.new_labels[0])
        if self.kind == "q_at_point":
            return attach_q_at_point(plane, self.targets[0][0], self.site)
        if self.kind == "q_at_line":
            a, b = self.targets[0]
            return attach_q_at_line(plane, join(plane, a, b), self.site)
        raise ValueError(f"unknown step kind {self.kind!r}")


@dataclass
class BuildLog:
    steps: list[ExtensionStep] = field(default_factory=list)

    def record(self, kind: str, new_labels: Sequence[str], targets: Sequence[Sequence[str]],
               tag: str = "", site: str = "") -> ExtensionStep:
        step = ExtensionStep(kind, tuple(new_labels), tuple(tuple(t) for t in targets),
                             len(self.steps), tag, site)
        self.steps.append(step)
        return step

    def replay(self, base: Plane) -> Plane:
        plane = base
        for step in self.steps:
            plane = step.apply(plane)
        return plane

    def to_text(self) -> str:
        out = ["steplog v1"]
        for s in self.steps:
            targets = " ".join(",".join(t) for t in s.targets) or "-"
            out.append(
                f"step {s.index} {s.kind} tag={s.tag or '-'} site={s.site or '-'} "
                f"new={','.join(s.new_labels) or '-'} targets={targets}"
            )
        return "\n".join(out) + "\n"
