"""Small finite fields, the planes PG(2, q), and the Pappus checker."""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from functools import lru_cache

from .errors import UnsupportedOrder
from .parallel import ABORTED, Poller, never, first_in_order
from .plane import Plane, join, new_plane
from .report import Report

# (characteristic, degree, modulus coefficients low -> high, monic)
SUPPORTED = {
    2: (2, 1, None), 3: (3, 1, None), 5: (5, 1, None), 7: (7, 1, None),
    11: (11, 1, None), 13: (13, 1, None),
    4: (2, 2, (1, 1, 1)),          # x^2 + x + 1
    8: (2, 3, (1, 1, 0, 1)),       # x^3 + x + 1
    16: (2, 4, (1, 1, 0, 0, 1)),   # x^4 + x + 1
    9: (3, 2, (1, 0, 1)),          # x^2 + 1
}

EXHAUSTIVE_LIMIT = 4


def format_modulus(coeffs: tuple[int, ...]) -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        mono = "1" if k == 0 else ("x" if k == 1 else f"x^{k}")
        terms.append(mono if c == 1 or k == 0 and c == 1 else f"{c}{mono}" if k else str(c))
    return " + ".join(terms)


@dataclass(frozen=True)
class FiniteField:
    """GF(q) with elements 0..q-1 (base-p digit vectors of polynomial residues)."""

    q: int
    p: int
    k: int
    modulus: tuple[int, ...] | None
    add: tuple[tuple[int, ...], ...]
    mul: tuple[tuple[int, ...], ...]

    @property
    def elements(self) -> range:
        return range(self.q)

    def neg(self, a: int) -> int:
        return next(b for b in self.elements if self.add[a][b] == 0)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return next(b for b in self.elements if self.mul[a][b] == 1)

    def sub(self, a: int, b: int) -> int:
        return self.add[a][self.neg(b)]


def _digits(x: int, p: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        out.append(x % p)
        x //= p
    return out


def _number(ds: list[int], p: int) -> int:
    return sum(d * p ** i for i, d in enumerate(ds))


def _polymul_mod(a: list[int], b: list[int], mod: tuple[int, ...], p: int) -> list[int]:
    k = len(mod) - 1
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    for deg in range(len(prod) - 1, k - 1, -1):
        c = prod[deg]
        if c:
            for i in range(k + 1):
                prod[deg - k + i] = (prod[deg - k + i] - c * mod[i]) % p
    return prod[:k]


def _check_axioms(F: FiniteField) -> None:
    els = F.elements
    add, mul = F.add, F.mul
    for a in els:
        if add[0][a] != a or mul[1][a] != a:
            raise ValueError("identity fails")
        if a and not any(mul[a][b] == 1 for b in els):
            raise ValueError(f"{a} has no inverse: modulus not irreducible")
        for b in els:
            if add[a][b] != add[b][a] or mul[a][b] != mul[b][a]:
                raise ValueError("commutativity fails")
            for c in els:
                if add[add[a][b]][c] != add[a][add[b][c]]:
                    raise ValueError("additive associativity fails")
                if mul[mul[a][b]][c] != mul[a][mul[b][c]]:
                    raise ValueError("multiplicative associativity fails")
                if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]]:
                    raise ValueError("distributivity fails")


@lru_cache(maxsize=None)
def gf(q: int, modulus: tuple[int, ...] | None = None) -> FiniteField:
    """GF(q) from a fixed table of moduli; field axioms verified exhaustively."""
    if q not in SUPPORTED:
        raise UnsupportedOrder(f"order {q} is not supported (choose from {sorted(SUPPORTED)})")
    p, k, default = SUPPORTED[q]
    if k == 1:
        add = tuple(tuple((a + b) % p for b in range(p)) for a in range(p))
        mul = tuple(tuple((a * b) % p for b in range(p)) for a in range(p))
        F = FiniteField(q, p, 1, None, add, mul)
    else:
        mod = default if modulus is None else tuple(modulus)
        if len(mod) != k + 1 or mod[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {k}")
        digits = [_digits(x, p, k) for x in range(q)]
        add = tuple(
            tuple(_number([(x + y) % p for x, y in zip(digits[a], digits[b])], p) for b in range(q))
            for a in range(q)
        )
        mul = tuple(
            tuple(_number(_polymul_mod(digits[a], digits[b], mod, p), p) for b in range(q))
            for a in range(q)
        )
        F = FiniteField(q, p, k, mod, add, mul)
    _check_axioms(F)
    return F


def point_label(v: tuple[int, int, int]) -> str:
    return "(" + ",".join(map(str, v)) + ")"


def _normalized(F: FiniteField) -> list[tuple[int, int, int]]:
    out = []
    for v in itertools.product(F.elements, repeat=3):
        lead = next((x for x in v if x), None)
        if lead == 1:
            out.append(v)
    return out


def pg2(F: FiniteField) -> Plane:
    """The projective plane over F: normalized triples, lines as kernels of functionals."""
    vecs = _normalized(F)
    add, mul = F.add, F.mul
    lines = []
    for a, b, c in vecs:
        members = [
            point_label(v) for v in vecs
            if add[add[mul[a][v[0]]][mul[b][v[1]]]][mul[c][v[2]]] == 0
        ]
        lines.append(members)
    return new_plane([point_label(v) for v in vecs], lines)


# -- Pappus ----------------------------------------------------------------

@dataclass(frozen=True)
class PappusWitness:
    lines: tuple[tuple[str, ...], tuple[str, ...]]
    triple1: tuple[str, str, str]
    triple2: tuple[str, str, str]
    meets: tuple[str, str, str]
    """(p∨q')∧(p'∨q), (p∨r')∧(p'∨r), (q∨r')∧(q'∨r)."""
    verdict: str = "noncollinear"

    def key(self) -> tuple:
        return self.lines + (self.triple1, self.triple2)

    def to_text(self) -> str:
        return (
            "report v1 pappus\n"
            f"line1 {' '.join(self.lines[0])}\n"
            f"line2 {' '.join(self.lines[1])}\n"
            f"triple1 {' '.join(self.triple1)}\n"
            f"triple2 {' '.join(self.triple2)}\n"
            f"cross12 {self.meets[0]}\n"
            f"cross13 {self.meets[1]}\n"
            f"cross23 {self.meets[2]}\n"
            f"verdict {self.verdict}\n"
        )

    def revalidate(self, plane: Plane) -> bool:
        sets = [frozenset(line.members) for line in plane.lines]

        def col(*xs):
            return any(set(xs) <= s for s in sets)

        (p, q, r), (p2, q2, r2) = self.triple1, self.triple2
        six = {p, q, r, p2, q2, r2}
        if len(six) != 6 or not (six | set(self.meets)) <= set(plane.points):
            return False
        l1, l2 = set(self.lines[0]), set(self.lines[1])
        if frozenset(l1) not in sets or frozenset(l2) not in sets or l1 == l2:
            return False
        if not ({p, q, r} <= l1 and {p2, q2, r2} <= l2):
            return False
        if (l1 & l2) & six:
            return False
        for m, (a, b2, a2, b) in zip(self.meets, ((p, q2, p2, q), (p, r2, p2, r), (q, r2, q2, r))):
            if not ((m in (a, b2) or col(a, b2, m)) and (m in (a2, b) or col(a2, b, m))):
                return False
        if len(set(self.meets)) < 3:
            return False
        return not col(*self.meets)


def _pappus_from(plane: Plane, i: int, stop=never):
    poll = Poller(stop)
    lines = plane.lines
    L1 = lines[i]
    for L2 in lines[i + 1:]:
        corner = set(L1.members) & set(L2.members)
        s1 = [x for x in L1.members if x not in corner]
        s2 = [x for x in L2.members if x not in corner]
        for p, q, r in itertools.combinations(s1, 3):
            for p2, q2, r2 in itertools.permutations(s2, 3):
                if poll():
                    return ABORTED
                meets = []
                for a, b2, a2, b in ((p, q2, p2, q), (p, r2, p2, r), (q, r2, q2, r)):
                    m1, m2 = join(plane, a, b2), join(plane, a2, b)
                    common = set(m1.members) & set(m2.members) if m1 != m2 else set()
                    if not common:
                        break
                    meets.append(next(iter(common)))
                if len(meets) < 3 or len(set(meets)) < 3:
                    continue
                line = plane.stored_line(meets[0], meets[1])
                if line is not None and meets[2] in line.members:
                    continue
                return PappusWitness((L1.members, L2.members), (p, q, r), (p2, q2, r2), tuple(meets))
    return None


def pappus_check(plane: Plane, jobs: int = 1) -> PappusWitness | None:
    """First violating Pappus configuration in canonical order, or None if it holds.

    Host lines are taken in stored order (first < second), the first triple
    increasing and the second in every order; all three cross meets must
    exist and the common point of the host lines must avoid all six points.
    """
    return first_in_order(_pappus_from, plane, range(len(plane.lines)), jobs)


def pappian_pipeline(q1: int, q2: int, modulus1=None, modulus2=None, exhaustive: bool = False) -> Report:
    """Build PG(2, q1) and PG(2, q2), check Pappus on each, and compare them."""
    from .isoaut import isomorphic, verify_isomorphism

    F1, F2 = gf(q1, modulus1), gf(q2, modulus2)
    P1, P2 = pg2(F1), pg2(F2)
    rep = Report(f"pappian-pipeline q={q1} q'={q2}")
    for name, F, P in (("first", F1, P1), ("second", F2, P2)):
        if F.modulus is not None:
            rep.note(f"{name} field GF({F.q}) modulus {format_modulus(F.modulus)}")
        if F.q > EXHAUSTIVE_LIMIT and not exhaustive:
            rep.note(f"{name} plane: Pappus enumeration skipped for q={F.q} > {EXHAUSTIVE_LIMIT}")
            continue
        if F.q > EXHAUSTIVE_LIMIT:
            warnings.warn(f"exhaustive Pappus check on PG(2,{F.q}) is slow", RuntimeWarning)
        rep.add(f"{name} plane PG(2,{F.q}) is Pappian", pappus_check(P) is None)
    mapping = isomorphic(P1, P2)
    iso = mapping is not None and verify_isomorphism(P1, P2, mapping)
    rep.add("isomorphic iff equal order", iso == (q1 == q2), f"isomorphic={iso}")
    rep.note("finite fields of equal order are isomorphic, so plane isomorphism reduces to order equality")
    return rep
