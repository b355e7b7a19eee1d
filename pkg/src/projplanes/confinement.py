"""Confined configurations and the staged Q-attachment build.

A finite configuration is confined when each of its points lies on at least
three of its lines and each of its lines carries at least three of its
points.  Confined configurations are closed under union, so every finite
plane has a unique maximal one, found by peeling: repeatedly drop lines with
fewer than three surviving points and points on fewer than three surviving
lines.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .codec import decode, encode
from .errors import LogMismatch, ParseError, UnknownElement
from .extension import attach_q_at_line, attach_q_at_point, q_label, Q_LETTERS
from .graph import Graph
from .plane import Line, Plane, all_lines, join, namespace, nontrivial_degree
from .report import Report


@dataclass
class ConfinedCore:
    points: frozenset[str]
    lines: tuple[Line, ...]
    """Surviving lines of the input plane, as they appear there."""
    trace: list[str] = field(default_factory=list, repr=False)

    def induced(self, line: Line) -> tuple[str, ...]:
        return tuple(p for p in line.members if p in self.points)

    def as_plane(self) -> Plane:
        return Plane(self.points, [Line(self.induced(line)) for line in self.lines])

    def __contains__(self, x: object) -> bool:
        if isinstance(x, Line):
            return x in self.lines
        return x in self.points


def peel(plane: Plane) -> ConfinedCore:
    """Maximal confined subconfiguration of ``plane``."""
    lines = plane.lines
    alive_pts = set(plane.points)
    alive_lines = set(range(len(lines)))
    on_line = {i: len(line) for i, line in enumerate(lines)}
    through = {p: [] for p in plane.points}
    for i, line in enumerate(lines):
        for p in line.members:
            through[p].append(i)
    deg = {p: len(ls) for p, ls in through.items()}
    trace: list[str] = []
    queue = deque(sorted(p for p in plane.points if deg[p] < 3))
    queued = set(queue)
    while queue:
        p = queue.popleft()
        alive_pts.discard(p)
        trace.append(f"point {p}")
        for i in through[p]:
            if i not in alive_lines:
                continue
            on_line[i] -= 1
            if on_line[i] < 3:
                alive_lines.discard(i)
                trace.append(f"line {lines[i].label}")
                for x in lines[i].members:
                    if x in alive_pts:
                        deg[x] -= 1
                        if deg[x] < 3 and x not in queued:
                            queued.add(x)
                            queue.append(x)
    return ConfinedCore(frozenset(alive_pts), tuple(lines[i] for i in sorted(alive_lines)), trace)


def _check_element(plane: Plane, x: str | Line) -> None:
    if isinstance(x, Line):
        if not plane.has_line(x):
            raise UnknownElement(f"{x} is not a line of the plane")
    elif x not in plane:
        raise UnknownElement(f"{x!r} is not a point of the plane")


def is_confined(plane: Plane, x: str | Line, core: ConfinedCore | None = None) -> bool:
    _check_element(plane, x)
    core = peel(plane) if core is None else core
    return x in core


def confinement_certificate(plane: Plane, x: str | Line) -> ConfinedCore | None:
    """The connected component of ``x`` inside the core, or None if unconfined."""
    _check_element(plane, x)
    core = peel(plane)
    if x not in core:
        return None
    start = x.members[0] if isinstance(x, Line) else x
    lines_at: dict[str, list[Line]] = {p: [] for p in core.points}
    for line in core.lines:
        for p in core.induced(line):
            lines_at[p].append(line)
    seen_pts, seen_lines = {start}, set()
    stack = [start]
    while stack:
        p = stack.pop()
        for line in lines_at[p]:
            if line in seen_lines:
                continue
            seen_lines.add(line)
            for y in core.induced(line):
                if y not in seen_pts:
                    seen_pts.add(y)
                    stack.append(y)
    return ConfinedCore(frozenset(seen_pts), tuple(sorted(seen_lines)), [])


# -- staged build ----------------------------------------------------------

@dataclass
class StageRecord:
    stage: int
    kind: str
    sites: list[tuple[str, str]] = field(default_factory=list)
    """(target label, site token) in application order."""
    truncated: bool = False


@dataclass
class StageLog:
    stages: list[StageRecord] = field(default_factory=list)

    @property
    def truncated(self) -> bool:
        return any(s.truncated for s in self.stages)

    def site_tokens(self) -> list[str]:
        return [tok for s in self.stages for _, tok in s.sites]

    def copy_labels(self) -> set[str]:
        out = set()
        for s in self.stages:
            skip = "a" if s.kind == "point" else "ab"
            for _, tok in s.sites:
                out.update(q_label(tok, x) for x in Q_LETTERS if x not in skip)
        return out

    def to_text(self) -> str:
        out = ["stagelog v1", f"stages {len(self.stages)}"]
        for s in self.stages:
            out.append(f"stage {s.stage} {s.kind}")
            for target, tok in s.sites:
                out.append(f"stage {s.stage} {s.kind} {target} site {tok}")
            if s.truncated:
                out.append(f"stage {s.stage} truncated")
        out.append(f"truncated {'true' if self.truncated else 'false'}")
        return "\n".join(out) + "\n"

    @classmethod
    def from_text(cls, text: str) -> StageLog:
        rows = [r for r in text.split("\n") if r.strip()]
        if not rows or rows[0] != "stagelog v1":
            raise ParseError("line 1: expected header 'stagelog v1'")
        log = cls()
        for num, row in enumerate(rows[1:], start=2):
            parts = row.split()
            try:
                if parts[0] == "stages":
                    continue
                if parts[0] == "truncated":
                    if parts[1] == "true" and not log.truncated:
                        raise ParseError(f"line {num}: truncated without a truncated stage")
                    continue
                n = int(parts[1])
                if len(parts) == 3 and parts[2] in ("point", "line"):
                    log.stages.append(StageRecord(n, parts[2]))
                elif len(parts) == 3 and parts[2] == "truncated":
                    log.stages[-1].truncated = True
                elif len(parts) == 6 and parts[4] == "site":
                    log.stages[-1].sites.append((parts[3], parts[5]))
                else:
                    raise ParseError(f"line {num}: cannot parse {row!r}")
            except (IndexError, ValueError) as exc:
                if isinstance(exc, ParseError):
                    raise
                raise ParseError(f"line {num}: cannot parse {row!r}") from exc
        return log

    def replay(self, base: Plane) -> Plane:
        plane = base
        for s in self.stages:
            for target, tok in s.sites:
                if s.kind == "point":
                    plane = attach_q_at_point(plane, target, tok)
                else:
                    plane = attach_q_at_line(plane, _resolve_line(plane, target), tok)
        return plane


def _resolve_line(plane: Plane, label: str) -> Line:
    # labels may themselves contain '~'; take the split naming two points
    for i, ch in enumerate(label):
        if ch == "~":
            a, b = label[:i], label[i + 1:]
            if a in plane and b in plane:
                return join(plane, a, b)
    raise LogMismatch(f"line {label!r} does not name two points of the plane")


def plus_stages(plane: Plane, line_stages: int, budget: int | None = None) -> tuple[Plane, StageLog]:
    """Attach Q at unconfined points, then at unconfined lines for each line stage."""
    log = StageLog()
    core = peel(plane)
    targets = [p for p in plane.points if p not in core.points]
    take = targets if budget is None else targets[:budget]
    rec = StageRecord(0, "point", truncated=len(take) < len(targets))
    for i, p in enumerate(take):
        tok = f"s0.{i}"
        plane = attach_q_at_point(plane, p, tok)
        rec.sites.append((p, tok))
    log.stages.append(rec)
    for n in range(1, line_stages + 1):
        core = peel(plane)
        targets = [line for line in all_lines(plane, True) if line not in core.lines]
        take = targets if budget is None else targets[:budget]
        rec = StageRecord(n, "line", truncated=len(take) < len(targets))
        for i, line in enumerate(take):
            tok = f"s{n}.{i}"
            current = join(plane, line.members[0], line.members[1])
            plane = attach_q_at_line(plane, current, tok)
            rec.sites.append((line.label, tok))
        log.stages.append(rec)
    return plane, log


def build_plus(graph: Graph, line_stages: int = 0, budget: int | None = None) -> tuple[Plane, StageLog]:
    """Truncated P⁺ of ``graph``; ``budget`` caps attachments per stage (None = no cap)."""
    plane, _ = encode(graph)
    return plus_stages(plane, line_stages, budget)


def original_points(pplus: Plane, log: StageLog) -> list[str]:
    copies = log.copy_labels()
    return [p for p in pplus.points if p not in copies]


def separation_scan(pplus: Plane, log: StageLog, thresholds: range = range(2, 9)) -> Report:
    """Does "non-trivial degree >= t" single out the pre-attachment points?"""
    base = set(original_points(pplus, log))
    deg = {p: nontrivial_degree(pplus, p) for p in pplus.points}
    rep = Report("separation-scan")
    for t in thresholds:
        heavy = {p for p in pplus.points if deg[p] >= t}
        extra, missing = sorted(heavy - base), sorted(base - heavy)
        name = f"t={t} degree>={t} equals original point set"
        if t == 4:
            name += " (claimed threshold)"
        rep.add(name, heavy == base, f"extra={len(extra)} missing={len(missing)}")
    rep.note("rows are empirical; failures are findings, not errors")
    return rep


def strip_attachments(pplus: Plane, log: StageLog) -> Plane:
    copies = log.copy_labels()
    if not copies <= set(pplus.points):
        raise LogMismatch("log names Q-copy points absent from the plane")
    left = [p for p in pplus.points if namespace(p) == "q" and p not in copies]
    if left:
        raise LogMismatch(f"{len(left)} Q-copy points are not accounted for by the log, e.g. {left[0]}")
    return pplus.restrict(p for p in pplus.points if p not in copies)


def decode_plus(pplus: Plane, log: StageLog) -> Graph:
    base = strip_attachments(pplus, log)
    try:
        replayed = log.replay(base)
    except ValueError as exc:
        raise LogMismatch(f"log does not replay: {exc}") from exc
    if replayed != pplus:
        raise LogMismatch("replaying the log does not reproduce the plane")
    return decode(base)
