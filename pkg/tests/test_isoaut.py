import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import pgl3_order, plane_aut_order
from projplanes.codec import encode
from projplanes.graph import complete, path
from projplanes.isoaut import automorphisms, is_rigid, isomorphic, refine, verify_isomorphism
from projplanes.pg import gf, pg2
from projplanes.plane import Plane, new_plane


def relabel(plane: Plane, mapping: dict[str, str]) -> Plane:
    return new_plane([mapping[p] for p in plane.points],
                     [[mapping[p] for p in line.members] for line in plane.lines])


def shuffled(plane: Plane, seed: int) -> tuple[Plane, dict[str, str]]:
    rng = random.Random(seed)
    names = list(plane.points)
    rng.shuffle(names)
    mapping = {p: f"x{i:03d}" for i, p in enumerate(names)}
    return relabel(plane, mapping), mapping


def test_fano_order_matches_brute_force(fano):
    assert automorphisms(fano).order == plane_aut_order(fano) == 168


def test_q_is_rigid(qplane):
    assert is_rigid(qplane)


@pytest.mark.parametrize("q, gal", [(2, 1), (3, 1), (4, 2), (5, 1), (7, 1), (8, 3)])
def test_pg2_orders_match_formula(q, gal):
    assert automorphisms(pg2(gf(q))).order == pgl3_order(q, gal)


def test_generators_are_automorphisms():
    plane = pg2(gf(3))
    group = automorphisms(plane)
    assert group.generators
    for gen in group.generators:
        assert verify_isomorphism(plane, plane, gen)
    assert group.order == math.prod(group.orbit_sizes)


def test_refine_fano_single_class(fano):
    assert len(set(refine(fano).values())) == 1


def test_refine_separates_anchor_from_gadgets():
    plane, _ = encode(path(1))
    colors = refine(plane)
    anchor = {c for p, c in colors.items() if p.startswith("anchor:")}
    gadget = {c for p, c in colors.items() if not p.startswith("anchor:")}
    assert not anchor & gadget


def test_refine_is_preserved_by_automorphisms():
    plane, _ = encode(complete(3))
    colors = refine(plane)
    for gen in automorphisms(plane).generators:
        assert all(colors[p] == colors[gen[p]] for p in plane.points)


def test_size_mismatch_is_none():
    assert isomorphic(pg2(gf(2)), pg2(gf(3))) is None


def test_non_isomorphic_encodings():
    assert isomorphic(encode(path(3))[0], encode(complete(3))[0]) is None


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000))
def test_permuted_copy_is_found_and_verified(seed):
    plane, _ = encode(path(3))
    copy, _ = shuffled(plane, seed)
    mapping = isomorphic(plane, copy)
    assert mapping is not None and verify_isomorphism(plane, copy, mapping)


def test_equivalence_relation_checks():
    a = pg2(gf(3))
    b, _ = shuffled(a, 1)
    c, _ = shuffled(b, 2)
    ab, bc = isomorphic(a, b), isomorphic(b, c)
    assert isomorphic(a, a) is not None
    inverse = {v: k for k, v in ab.items()}
    assert verify_isomorphism(b, a, inverse)
    assert verify_isomorphism(a, c, {p: bc[ab[p]] for p in a.points})


def test_verify_rejects_a_transposition(fano):
    # a collineation of the Fano plane fixing five points is the identity
    ident = {p: p for p in fano.points}
    assert verify_isomorphism(fano, fano, ident)
    a, d = fano.points[0], fano.points[-1]
    swapped = dict(ident, **{a: d, d: a})
    assert not verify_isomorphism(fano, fano, swapped)
