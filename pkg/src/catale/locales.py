"""Finite spaces, meet-semilattices, and the opens/points adjunction.

Open sets are stored as integer bitmasks over the point list.  A *point* of a
meet-semilattice is a subset ``P`` (stored as a bitmask over the elements)
read as the kernel ``p^-1(0)`` of a map into the two-element lattice.

Two point notions are shipped:

``literal``
    ``top`` not in ``P``, ``P`` down-closed, and ``a & c in P`` implies
    ``a in P or c in P``.  This admits ``P = {}`` in every semilattice.
``strict`` (default)
    additionally ``P`` contains the bottom and is closed under binary joins,
    i.e. ``P`` is a prime ideal.  These are the frame points of a finite
    lattice, and make sober = T0 and spatial = distributive.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import permutations, product
from typing import Iterable, Sequence

import numpy as np

from ._report import Report, Verdict

VARIANTS = ("strict", "literal")


def _bits(mask: int) -> list[int]:
    return [k for k in range(mask.bit_length()) if mask >> k & 1]


def _label(names: Sequence[str], mask: int) -> str:
    return "{" + ",".join(names[k] for k in _bits(mask)) + "}"


class FinSpace:
    def __init__(self, points: Sequence[str], opens: Iterable[int]) -> None:
        self.points = tuple(points)
        self.opens = tuple(sorted(set(int(u) for u in opens), key=lambda u: (bin(u).count("1"), u)))
        if len(set(self.points)) != len(self.points):
            raise ValueError("point names must be unique")

    @classmethod
    def build(cls, points: Sequence[str], opens: Iterable[Iterable[str]]) -> "FinSpace":
        ix = {p: k for k, p in enumerate(points)}
        return cls(points, [sum(1 << ix[p] for p in set(U)) for U in opens])

    @property
    def full(self) -> int:
        return (1 << len(self.points)) - 1

    def open_sets(self) -> list[list[str]]:
        return [[self.points[k] for k in _bits(u)] for u in self.opens]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinSpace):
            return NotImplemented
        return self.points == other.points and self.opens == other.opens

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"FinSpace({len(self.points)} points, {len(self.opens)} opens)"


class MeetSemilattice:
    def __init__(self, elements: Sequence[str], leq, top: int) -> None:
        self.elements = tuple(elements)
        n = len(self.elements)
        m = np.array(leq, dtype=bool).reshape(n, n)
        m.setflags(write=False)
        self.leq = m
        self.top = int(top)
        if len(set(self.elements)) != n:
            raise ValueError("element names must be unique")

    @classmethod
    def build(cls, elements: Sequence[str], leq_pairs: Iterable[tuple[str, str]], top: str):
        ix = {e: k for k, e in enumerate(elements)}
        m = np.zeros((len(elements), len(elements)), dtype=bool)
        for a, b in leq_pairs:
            m[ix[a], ix[b]] = True
        return cls(elements, m, ix[top])

    @classmethod
    def from_order(cls, elements: Sequence[str], le) -> "MeetSemilattice":
        """From a callable ``le(i, j)``; the top is the unique maximum."""
        n = len(elements)
        m = np.array([[bool(le(i, j)) for j in range(n)] for i in range(n)], dtype=bool)
        tops = [t for t in range(n) if m[:, t].all()]
        return cls(elements, m, tops[0] if tops else 0)

    @property
    def size(self) -> int:
        return len(self.elements)

    @cached_property
    def _le(self) -> list[list[bool]]:
        return self.leq.tolist()

    def le(self, a: int, b: int) -> bool:
        return self._le[a][b]

    def _glb(self, a: int, b: int) -> int | None:
        lower = [c for c in range(self.size) if self.le(c, a) and self.le(c, b)]
        best = [c for c in lower if all(self.le(d, c) for d in lower)]
        return best[0] if len(best) == 1 else None

    def _lub(self, a: int, b: int) -> int | None:
        upper = [c for c in range(self.size) if self.le(a, c) and self.le(b, c)]
        best = [c for c in upper if all(self.le(c, d) for d in upper)]
        return best[0] if len(best) == 1 else None

    @cached_property
    def meet_table(self) -> list[list[int]]:
        return [[self._glb(a, b) for b in range(self.size)] for a in range(self.size)]

    @cached_property
    def join_table(self) -> list[list[int | None]]:
        return [[self._lub(a, b) for b in range(self.size)] for a in range(self.size)]

    def meet(self, a: int, b: int) -> int:
        return self.meet_table[a][b]

    def join(self, a: int, b: int) -> int | None:
        return self.join_table[a][b]

    @cached_property
    def bottom(self) -> int | None:
        bots = [b for b in range(self.size) if all(self.le(b, c) for c in range(self.size))]
        return bots[0] if bots else None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MeetSemilattice):
            return NotImplemented
        return (self.elements == other.elements and self.top == other.top
                and np.array_equal(self.leq, other.leq))

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"MeetSemilattice({self.size} elements)"


@dataclass(frozen=True, eq=False)
class ContinuousMap:
    source: FinSpace
    target: FinSpace
    map: tuple[int, ...]

    def preimage(self, U: int) -> int:
        return sum(1 << x for x, y in enumerate(self.map) if U >> y & 1)


@dataclass(frozen=True, eq=False)
class MslHom:
    source: MeetSemilattice
    target: MeetSemilattice
    map: tuple[int, ...]


@dataclass(frozen=True)
class Point:
    members: int  # bitmask over semilattice elements
    variant: str


# --- fixtures --------------------------------------------------------------

def sierpinski() -> FinSpace:
    return FinSpace.build(["0", "1"], [[], ["1"], ["0", "1"]])


def discrete_space(n: int) -> FinSpace:
    return FinSpace([str(k) for k in range(n)], range(1 << n))


def indiscrete_space(n: int) -> FinSpace:
    return FinSpace([str(k) for k in range(n)], {0, (1 << n) - 1})


def chain_msl(n: int) -> MeetSemilattice:
    return MeetSemilattice.from_order([str(k) for k in range(n)], lambda i, j: i <= j)


def boolean_msl(n: int) -> MeetSemilattice:
    return MeetSemilattice.from_order([_label([str(k) for k in range(n)], m) for m in range(1 << n)],
                                      lambda i, j: i & j == i)


def diamond_m3() -> MeetSemilattice:
    up = {("0", x) for x in "0abc1"} | {(x, x) for x in "abc1"} | {(x, "1") for x in "abc"}
    return MeetSemilattice.build(list("0abc1"), up, "1")


def pentagon_n5() -> MeetSemilattice:
    rel = {("0", "a"), ("a", "b"), ("0", "b"), ("0", "c")}
    rel |= {(x, x) for x in "0abc1"} | {(x, "1") for x in "0abc"}
    return MeetSemilattice.build(list("0abc1"), rel, "1")


# --- validation ----------------------------------------------------------

def validate_space(X: FinSpace) -> Report:
    rep = Report("space")
    opens = set(X.opens)
    if 0 not in opens:
        rep.fail("empty set is not open")
    if X.full not in opens:
        rep.fail(f"full set {_label(X.points, X.full)} is not open")
    for u in X.opens:
        if u & ~X.full:
            rep.fail(f"open set mask {u} mentions unknown points")
    for u, v in product(X.opens, repeat=2):
        if u < v:
            if u | v not in opens:
                rep.fail(f"missing union {_label(X.points, u | v)}")
            if u & v not in opens:
                rep.fail(f"missing intersection {_label(X.points, u & v)}")
    return rep


def validate_msl(A: MeetSemilattice) -> Report:
    rep = Report("meet-semilattice")
    n, e = A.size, A.elements
    L = A.leq
    if n == 0:
        rep.fail("empty semilattice has no top")
        return rep
    for a in range(n):
        if not L[a, a]:
            rep.fail(f"not reflexive at {e[a]}")
    for a, b in product(range(n), repeat=2):
        if a != b and L[a, b] and L[b, a]:
            if a < b:
                rep.fail(f"not antisymmetric: {e[a]}, {e[b]}")
    for a, b, c in product(range(n), repeat=3):
        if L[a, b] and L[b, c] and not L[a, c]:
            rep.fail(f"not transitive: {e[a]} <= {e[b]} <= {e[c]}")
    if not 0 <= A.top < n or not L[:, A.top].all():
        rep.fail("top is not the maximum")
    if rep.violations:
        return rep
    for a, b in product(range(n), repeat=2):
        if a < b and A._glb(a, b) is None:
            rep.fail(f"no meet of {e[a]} and {e[b]}")
    return rep


def validate_continuous(g: ContinuousMap) -> Report:
    rep = Report("continuous map")
    X, Y = g.source, g.target
    if len(g.map) != len(X.points) or any(not 0 <= y < len(Y.points) for y in g.map):
        rep.fail("map does not match the carriers")
        return rep
    opens = set(X.opens)
    for U in Y.opens:
        if g.preimage(U) not in opens:
            rep.fail(f"preimage of {_label(Y.points, U)} is not open")
    return rep


def validate_msl_hom(f: MslHom) -> Report:
    rep = Report("semilattice hom")
    A, B = f.source, f.target
    if len(f.map) != A.size or any(not 0 <= y < B.size for y in f.map):
        rep.fail("map does not match the carriers")
        return rep
    if f.map[A.top] != B.top:
        rep.fail("top not preserved")
    for a, c in product(range(A.size), repeat=2):
        if f.map[A.meet(a, c)] != B.meet(f.map[a], f.map[c]):
            rep.fail(f"meet of {A.elements[a]}, {A.elements[c]} not preserved")
    return rep


# --- opens and points -----------------------------------------------------

def opens(X: FinSpace) -> MeetSemilattice:
    """Opens ordered by inclusion; element ``k`` is ``X.opens[k]``."""
    us = X.opens
    names = [_label(X.points, u) for u in us]
    return MeetSemilattice.from_order(names, lambda i, j: us[i] & ~us[j] == 0)


def is_point(A: MeetSemilattice, P: int, variant: str = "strict") -> bool:
    """Check the point conditions on a subset mask directly."""
    _check_variant(variant)
    n = A.size
    inP = [bool(P >> a & 1) for a in range(n)]
    if inP[A.top]:
        return False
    for a, c in product(range(n), repeat=2):
        if inP[c] and A.le(a, c) and not inP[a]:
            return False
        if inP[A.meet(a, c)] and not (inP[a] or inP[c]):
            return False
    if variant == "strict":
        if A.bottom is None or not inP[A.bottom]:
            return False
        for a, c in product(range(n), repeat=2):
            j = A.join(a, c)
            if inP[a] and inP[c] and (j is None or not inP[j]):
                return False
    return True


def _check_variant(variant: str) -> None:
    if variant not in VARIANTS:
        raise ValueError(f"unknown point variant {variant!r}")


def point_masks(A: MeetSemilattice, variant: str = "strict") -> list[int]:
    """All point subsets, ascending by mask.

    Every point is the complement of a principal up-set (its complement is a
    filter, and filters of a finite semilattice are principal), so only those
    ``|A|`` candidates are tested against :func:`is_point`.
    """
    _check_variant(variant)
    full = (1 << A.size) - 1
    cands = set()
    for a in range(A.size):
        up = sum(1 << c for c in range(A.size) if A.le(a, c))
        cands.add(full & ~up)
    return sorted(P for P in cands if is_point(A, P, variant))


def points(A: MeetSemilattice, variant: str = "strict") -> FinSpace:
    """Points with the topology generated by the basic opens ``{P : a not in P}``."""
    Ps = point_masks(A, variant)
    basis = {_check_open(Ps, a) for a in range(A.size)}
    return FinSpace([_label(A.elements, P) for P in Ps], _union_closure(basis | {0}))


def _check_open(Ps: Sequence[int], a: int) -> int:
    return sum(1 << k for k, P in enumerate(Ps) if not P >> a & 1)


def _union_closure(family: set[int]) -> set[int]:
    fam = set(family)
    frontier = list(fam)
    while frontier:
        new = []
        for u in frontier:
            for v in list(fam):
                w = u | v
                if w not in fam:
                    fam.add(w)
                    new.append(w)
        frontier = new
    return fam


def unit_space(X: FinSpace, variant: str = "strict") -> ContinuousMap:
    """``x -> {U : x not in U}`` into ``points(opens(X))``."""
    O = opens(X)
    Ps = point_masks(O, variant)
    pos = {P: k for k, P in enumerate(Ps)}
    img = []
    for x in range(len(X.points)):
        hat = sum(1 << k for k, U in enumerate(X.opens) if not U >> x & 1)
        if hat not in pos:
            raise AssertionError(f"neighbourhood complement of {X.points[x]} is not a point")
        img.append(pos[hat])
    g = ContinuousMap(X, points(O, variant), tuple(img))
    assert validate_continuous(g), "unit is not continuous"
    return g


def counit_msl(A: MeetSemilattice, variant: str = "strict") -> MslHom:
    """``a -> {P : a not in P}`` into ``opens(points(A))``."""
    Ps = point_masks(A, variant)
    S = points(A, variant)
    pos = {U: k for k, U in enumerate(S.opens)}
    f = MslHom(A, opens(S), tuple(pos[_check_open(Ps, a)] for a in range(A.size)))
    assert validate_msl_hom(f), "counit does not preserve meets"
    return f


def is_homeomorphism(g: ContinuousMap) -> bool:
    X, Y = g.source, g.target
    if sorted(g.map) != list(range(len(Y.points))) or len(X.points) != len(Y.points):
        return False
    return {g.preimage(U) for U in Y.opens} == set(X.opens)


def is_order_isomorphism(f: MslHom) -> bool:
    A, B = f.source, f.target
    if A.size != B.size or sorted(f.map) != list(range(B.size)):
        return False
    return all(A.le(a, c) == B.le(f.map[a], f.map[c])
               for a, c in product(range(A.size), repeat=2))


def is_sober(X: FinSpace, variant: str = "strict") -> bool:
    return is_homeomorphism(unit_space(X, variant))


def is_spatial(A: MeetSemilattice, variant: str = "strict") -> bool:
    return is_order_isomorphism(counit_msl(A, variant))


def soberify(X: FinSpace, variant: str = "strict") -> FinSpace:
    return points(opens(X), variant)


def spatialize(A: MeetSemilattice, variant: str = "strict") -> MeetSemilattice:
    return opens(points(A, variant))


def unit_inverse_image(X: FinSpace, variant: str = "strict") -> MslHom:
    """``V -> unit^-1(V)`` from the opens of the soberification to the opens of ``X``."""
    g = unit_space(X, variant)
    S = g.target
    pos = {U: k for k, U in enumerate(X.opens)}
    return MslHom(opens(S), opens(X), tuple(pos[g.preimage(V)] for V in S.opens))


def counit_points_map(A: MeetSemilattice, variant: str = "strict") -> ContinuousMap:
    """``P -> {a : counit(a) in P}`` from the points of ``spatialize(A)`` to those of ``A``."""
    f = counit_msl(A, variant)
    B = f.target
    Ps = point_masks(A, variant)
    pos = {P: k for k, P in enumerate(Ps)}
    Qs = point_masks(B, variant)
    img = []
    for Q in Qs:
        P = sum(1 << a for a in range(A.size) if Q >> f.map[a] & 1)
        if P not in pos:
            raise AssertionError("pulled-back point is not a point")
        img.append(pos[P])
    return ContinuousMap(points(B, variant), points(A, variant), tuple(img))


# --- frames, quotients, maps into the Sierpinski space ---------------------

def is_frame(A: MeetSemilattice) -> Verdict:
    if A.bottom is None:
        return Verdict(False, "no bottom")
    n = A.size
    for a, b in product(range(n), repeat=2):
        if A.join(a, b) is None:
            return Verdict(False, ("no join", a, b))
    for a, b, c in product(range(n), repeat=3):
        lhs = A.meet(a, A.join(b, c))
        rhs = A.join(A.meet(a, b), A.meet(a, c))
        if lhs != rhs:
            return Verdict(False, (a, b, c))
    return Verdict(True)


def kolmogorov_quotient(X: FinSpace) -> FinSpace:
    n = len(X.points)
    sig = [tuple(U >> x & 1 for U in X.opens) for x in range(n)]
    classes: dict[tuple, list[int]] = {}
    for x in range(n):
        classes.setdefault(sig[x], []).append(x)
    cls = list(classes.values())
    cpos = {x: k for k, c in enumerate(cls) for x in c}
    names = ["~".join(X.points[x] for x in c) for c in cls]
    return FinSpace(names, {sum(1 << k for k in {cpos[x] for x in _bits(U)}) for U in X.opens})


def is_t0(X: FinSpace) -> bool:
    return len(kolmogorov_quotient(X).points) == len(X.points)


def sierpinski_maps(X: FinSpace) -> list[tuple[ContinuousMap, int]]:
    """Every continuous ``X -> sierpinski`` paired with ``u^-1(1)``."""
    S = sierpinski()
    out = []
    for vals in product(range(2), repeat=len(X.points)):
        g = ContinuousMap(X, S, vals)
        if validate_continuous(g):
            out.append((g, g.preimage(0b10)))
    us = [u for _, u in out]
    assert sorted(us) == sorted(X.opens) and len(set(us)) == len(us), \
        "maps into the Sierpinski space do not biject with the opens"
    return out


def find_homeomorphism(X: FinSpace, Y: FinSpace) -> tuple[int, ...] | None:
    n = len(X.points)
    if n != len(Y.points) or len(X.opens) != len(Y.opens):
        return None
    target = set(Y.opens)
    for perm in permutations(range(n)):
        if {sum(1 << perm[x] for x in _bits(U)) for U in X.opens} == target:
            return perm
    return None


def find_order_isomorphism(A: MeetSemilattice, B: MeetSemilattice) -> tuple[int, ...] | None:
    """Backtracking search for an order isomorphism ``A -> B``."""
    n = A.size
    if n != B.size:
        return None
    la, lb = A.leq, B.leq
    # elements may only go to elements with as many elements above and below
    key_a = list(zip(la.sum(0).tolist(), la.sum(1).tolist()))
    key_b = list(zip(lb.sum(0).tolist(), lb.sum(1).tolist()))
    if sorted(key_a) != sorted(key_b):
        return None
    perm = [-1] * n
    used = [False] * n

    def extend(a: int) -> bool:
        if a == n:
            return True
        for b in range(n):
            if used[b] or key_b[b] != key_a[a]:
                continue
            if all(la[a, c] == lb[b, perm[c]] and la[c, a] == lb[perm[c], b] for c in range(a)):
                perm[a], used[b] = b, True
                if extend(a + 1):
                    return True
                used[b] = False
        perm[a] = -1
        return False

    return tuple(perm) if extend(0) else None
