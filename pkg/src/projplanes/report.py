"""Pass/fail reports shared by the validators and the CLI."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class Clause:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class Report:
    title: str
    clauses: list[Clause] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = "") -> bool:
        self.clauses.append(Clause(name, bool(ok), detail))
        return bool(ok)

    def note(self, text: str) -> None:
        self.notes.append(text)

    def extend(self, other: Report, prefix: str = "") -> None:
        for c in other.clauses:
            self.clauses.append(Clause(prefix + c.name, c.ok, c.detail))
        self.notes.extend(other.notes)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.clauses)

    def failures(self) -> list[Clause]:
        return [c for c in self.clauses if not c.ok]

    def __bool__(self) -> bool:
        return self.ok

    def to_text(self) -> str:
        out = [f"report v1 {self.title}"]
        for c in self.clauses:
            line = f"{'pass' if c.ok else 'FAIL'} {c.name}"
            if c.detail:
                line += f" :: {c.detail}"
            out.append(line)
        out.extend(f"note {n}" for n in self.notes)
        out.append(f"verdict {'ok' if self.ok else 'failed'}")
        return "\n".join(out) + "\n"

    def to_machine(self) -> str:
        payload = {
            "title": self.title,
            "ok": self.ok,
            "clauses": [c.__dict__ for c in self.clauses],
            "notes": self.notes,
        }
        return json.dumps(payload, sort_keys=True, indent=1) + "\n"
