import pytest
from hypothesis import given, settings, strategies as st

from oracles import naive_peel, raw
from projplanes.codec import decode, encode
from projplanes.confinement import (
    StageLog,
    build_plus,
    confinement_certificate,
    decode_plus,
    is_confined,
    original_points,
    peel,
    plus_stages,
    separation_scan,
    strip_attachments,
)
from projplanes.errors import LogMismatch, ParseError, UnknownElement
from projplanes.graph import Graph, complete, path
from projplanes.pg import gf, pg2
from projplanes.plane import Line, new_plane, write_plane

EDGE = Graph.build(["a", "b"], [("a", "b")])


def agrees_with_oracle(plane) -> bool:
    pts, lines = raw(plane)
    want_pts, want_lines = naive_peel(pts, lines)
    core = peel(plane)
    return core.points == want_pts and {frozenset(l.members) for l in core.lines} == want_lines


def test_fano_is_confined(fano):
    core = peel(fano)
    assert core.points == set(fano.points) and core.lines == fano.lines


def test_quadrangle_core_is_empty(quadrangle):
    assert not peel(quadrangle).points


def test_q_core_matches_oracle(qplane):
    assert agrees_with_oracle(qplane)


def test_anchor_alone_is_not_confined():
    plane, _ = encode(complete(3))
    assert agrees_with_oracle(plane)
    assert not peel(plane).points


@st.composite
def pg3_subsets(draw):
    base = pg2(gf(3))
    keep = draw(st.sets(st.sampled_from(base.points), min_size=3, max_size=13))
    return base.restrict(keep)


@settings(max_examples=60, deadline=None)
@given(pg3_subsets())
def test_peel_matches_naive_oracle(plane):
    assert agrees_with_oracle(plane)


def test_peel_matches_oracle_after_attachments():
    plane, _ = build_plus(path(2), line_stages=1, budget=6)
    assert agrees_with_oracle(plane)


def test_is_confined_and_certificate(fano, quadrangle):
    p = fano.points[0]
    assert is_confined(fano, p)
    assert is_confined(fano, fano.lines[0])
    cert = confinement_certificate(fano, p)
    assert cert.points == set(fano.points)
    assert confinement_certificate(quadrangle, "a") is None
    with pytest.raises(UnknownElement):
        is_confined(fano, "nope")
    with pytest.raises(UnknownElement):
        is_confined(quadrangle, Line(("a", "b", "c")))


def test_certificate_is_a_component():
    two = new_plane(
        [f"{s}{i}" for s in "xy" for i in range(1, 8)],
        [[f"{s}{i}" for i in l] for s in "xy" for l in
         ((1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 5, 6))],
    )
    cert = confinement_certificate(two, "x1")
    assert cert.points == {f"x{i}" for i in range(1, 8)}
    assert all(l.members[0].startswith("x") for l in cert.lines)


def test_stage_zero_confines_original_points():
    plane, log = build_plus(EDGE, 0)
    core = peel(plane)
    originals = original_points(plane, log)
    assert len(originals) == 3 * 2 + 1 + 17
    assert set(originals) <= core.points
    assert len(plane.points) == 24 + 24 * 12


def test_budget_truncates_every_stage():
    plane, log = build_plus(EDGE, 1, budget=2)
    assert log.truncated
    assert all(len(s.sites) <= 2 for s in log.stages)
    assert len(plane.points) == 24 + 2 * 12 + 2 * 11


def test_stage_log_text_round_trip():
    _, log = build_plus(EDGE, 1, budget=3)
    text = log.to_text()
    assert text.startswith("stagelog v1\n") and text.endswith("truncated true\n")
    again = StageLog.from_text(text)
    assert again.to_text() == text


@pytest.mark.parametrize("text", ["stagelog v2\n", "stagelog v1\nstage x point\n", "stagelog v1\nbogus\n",
                                  "stagelog v1\nstages 0\ntruncated true\n"])
def test_stage_log_parse_errors(text):
    with pytest.raises(ParseError):
        StageLog.from_text(text)


def test_decode_plus_round_trip():
    g = path(3)
    plane, log = build_plus(g, 1, budget=4)
    assert decode_plus(plane, log).edges == decode(encode(g)[0]).edges
    assert strip_attachments(plane, log) == encode(g)[0]


def test_decode_plus_detects_a_wrong_log():
    plane, log = build_plus(EDGE, 0, budget=3)
    _, other = build_plus(EDGE, 0, budget=2)
    with pytest.raises(LogMismatch):
        decode_plus(plane, other)


def test_replay_reproduces_plus():
    base, _ = encode(EDGE)
    plane, log = plus_stages(base, 1, budget=5)
    assert write_plane(StageLog.from_text(log.to_text()).replay(base)) == write_plane(plane)


def test_separation_scan_reports_every_threshold():
    plane, log = build_plus(EDGE, 0)
    report = separation_scan(plane, log)
    assert len(report.clauses) == 7
    assert any("claimed threshold" in c.name for c in report.clauses)

