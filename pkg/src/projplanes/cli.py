"""Command-line front end.

Exit codes: 0 success or the property holds, 1 a violation or witness was
found, 2 usage or input error.  Outputs depend only on the inputs; ``--jobs``
changes speed, never bytes.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from .codec import decode, encode, validate_anchor
from .confinement import build_plus, peel, separation_scan
from .errors import PlaneError
from .extension import validate_q
from .freeext import desargues_check, desargues_violation_search, free_extend
from .graph import read_graph, write_graph
from .isoaut import automorphisms, isomorphic
from .pg import SUPPORTED, format_modulus, gf, pappus_check, pg2
from .plane import is_projective, read_plane, validate_plane, write_plane
from .report import Report


def _read(path: str) -> str:
    return sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8", newline="\n")


def _report(rep: Report, fmt: str) -> None:
    sys.stdout.write(rep.to_machine() + "\n" if fmt == "machine" else rep.to_text())


def _witness(w, kind: str, fmt: str) -> None:
    if fmt == "machine":
        payload = {"check": kind, "holds": w is None}
        if w is not None:
            payload["witness"] = dataclasses.asdict(w)
        sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")
    elif w is None:
        sys.stdout.write(f"report v1 {kind}\nverdict holds\n")
    else:
        sys.stdout.write(w.to_text())


def cmd_encode(args) -> int:
    plane, log = encode(read_graph(_read(args.input)))
    _emit(write_plane(plane), args.output)
    if args.log:
        _emit(log.to_text(), args.log)
    return 0


def cmd_decode(args) -> int:
    _emit(write_graph(decode(read_plane(_read(args.input)))), args.output)
    return 0


def cmd_plus(args) -> int:
    plane, log = build_plus(read_graph(_read(args.input)), args.line_stages, args.budget)
    _emit(write_plane(plane), args.output)
    if args.log:
        _emit(log.to_text(), args.log)
    if args.scan:
        _report(separation_scan(plane, log), args.format)
    return 0


def cmd_freeext(args) -> int:
    base = read_plane(_read(args.input))
    tower = free_extend(base, args.levels, args.budget)
    _emit(write_plane(tower.top), args.output)
    if args.output not in (None, "-"):
        sizes = " ".join(map(str, tower.sizes()))
        sys.stdout.write(f"levels {sizes}\ntruncated {'true' if tower.truncated else 'false'}\n")
    if args.desargues_search:
        found = desargues_violation_search(free_extend(base, 0), args.search_budget)
        _witness(None if found is None else found[1], "desargues", args.format)
        return 0 if found is None else 1
    return 0


def cmd_check(args) -> int:
    plane = read_plane(_read(args.input))
    if args.property == "axioms":
        rep = validate_plane(plane)
        if args.projective:
            rep.add("projective (every two lines meet)", is_projective(plane))
        _report(rep, args.format)
        return 0 if rep.ok else 1
    fn = desargues_check if args.property == "desargues" else pappus_check
    w = fn(plane, jobs=args.jobs)
    _witness(w, args.property, args.format)
    return 0 if w is None else 1


def cmd_peel(args) -> int:
    plane = read_plane(_read(args.input))
    core = peel(plane)
    if args.output:
        _emit(write_plane(core.as_plane()), args.output)
    rep = Report("peel")
    rep.add("plane is confined", core.points == set(plane.points),
            f"core has {len(core.points)} of {len(plane.points)} points, "
            f"{len(core.lines)} of {len(plane.lines)} lines")
    for p in sorted(set(plane.points) - core.points):
        rep.note(f"unconfined point {p}")
    _report(rep, args.format)
    return 0


def cmd_aut(args) -> int:
    group = automorphisms(read_plane(_read(args.input)))
    if args.format == "machine":
        sys.stdout.write(json.dumps(dataclasses.asdict(group), sort_keys=True) + "\n")
        return 0
    out = ["aut v1", f"order {group.order}", f"base {' '.join(group.base) or '-'}",
           f"orbits {' '.join(map(str, group.orbit_sizes)) or '-'}"]
    for i, gen in enumerate(group.generators):
        moved = " ".join(f"{a}>{b}" for a, b in gen.items() if a != b)
        out.append(f"gen {i} {moved}")
    sys.stdout.write("\n".join(out) + "\n")
    return 0


def cmd_iso(args) -> int:
    mapping = isomorphic(read_plane(_read(args.first)), read_plane(_read(args.second)))
    if args.format == "machine":
        sys.stdout.write(json.dumps({"isomorphic": mapping is not None, "mapping": mapping},
                                    sort_keys=True) + "\n")
    elif mapping is None:
        sys.stdout.write("none\n")
    else:
        sys.stdout.write("iso v1\n" + "".join(f"map {a} {b}\n" for a, b in mapping.items()))
    return 0 if mapping is not None else 1


def _modulus(text: str | None):
    if text is None:
        return None
    return tuple(int(c) for c in text.split(","))


def cmd_pg2(args) -> int:
    if args.show_modulus:
        for q in sorted(SUPPORTED):
            mod = SUPPORTED[q][2]
            sys.stdout.write(f"{q} {format_modulus(mod) if mod else 'prime'}\n")
        if args.q is None:
            return 0
    if args.q is None:
        raise PlaneError("--q is required")
    _emit(write_plane(pg2(gf(args.q, _modulus(args.modulus)))), args.output)
    return 0


def cmd_validate_assets(args) -> int:
    rep = Report("assets")
    rep.extend(validate_q(), "q: ")
    rep.extend(validate_anchor(), "anchor: ")
    _report(rep, args.format)
    return 0 if rep.ok else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--jobs", type=int, default=1, help="worker processes for enumeration")
    common.add_argument("--format", choices=("text", "machine"), default="text")

    parser = argparse.ArgumentParser(prog="projplanes", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", parents=[common], help="graph file -> plane file")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output")
    p.add_argument("--log", help="write the one-point-extension step log here")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", parents=[common], help="encoded plane -> graph")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("plus", parents=[common], help="encode, then attach Q copies in stages")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output")
    p.add_argument("--log", help="write the stage log here")
    p.add_argument("--line-stages", type=int, default=0)
    p.add_argument("--budget", type=int, help="max attachments per stage")
    p.add_argument("--scan", action="store_true", help="print the degree separation scan")
    p.set_defaults(func=cmd_plus)

    p = sub.add_parser("freeext", parents=[common], help="truncated free projective extension")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output")
    p.add_argument("--levels", type=int, default=1)
    p.add_argument("--budget", type=int, help="cap on the number of points in the top level")
    p.add_argument("--desargues-search", action="store_true",
                   help="also search for a non-Desarguesian configuration over the input")
    p.add_argument("--search-budget", type=int, default=50)
    p.set_defaults(func=cmd_freeext)

    p = sub.add_parser("check", parents=[common], help="axioms, Desargues or Pappus")
    p.add_argument("property", choices=("axioms", "desargues", "pappus"))
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--projective", action="store_true", help="axioms: also require every two lines to meet")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("peel", parents=[common], help="maximal confined configuration")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", help="write the core as a plane file")
    p.set_defaults(func=cmd_peel)

    p = sub.add_parser("aut", parents=[common], help="automorphism group order and generators")
    p.add_argument("input")
    p.set_defaults(func=cmd_aut)

    p = sub.add_parser("iso", parents=[common], help="isomorphism between two planes")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("pg2", parents=[common], help="the plane over GF(q)")
    p.add_argument("--q", type=int)
    p.add_argument("-o", "--output")
    p.add_argument("--modulus", help="monic modulus coefficients, low degree first, e.g. 1,0,1,1")
    p.add_argument("--show-modulus", action="store_true", help="print the built-in moduli")
    p.set_defaults(func=cmd_pg2)

    p = sub.add_parser("validate-assets", parents=[common], help="check the Q and anchor assets")
    p.set_defaults(func=cmd_validate_assets)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
