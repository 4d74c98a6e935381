"""Exhaustive and seeded-random generators, named fixtures, canonical forms."""
from __future__ import annotations

import re
from itertools import combinations_with_replacement, product
from typing import Iterator

import numpy as np

from . import canon, locales, psemi
from ._report import SearchBoundError, StructureError
from .fincat import FinCategory, UNDEF, codiscrete, discrete, validate_category
from .locales import FinSpace, MeetSemilattice
from .psemi import PartialSemigroup

PSG_MAX = 3
TOPOLOGY_MAX = 4
MSL_MAX = 5
MONOID_MAX = 4
CATEGORY_MAX_MORPHISMS = 4


# --- fixtures ---------------------------------------------------------------

def walking_idempotent() -> FinCategory:
    return FinCategory.build(["x"], [("id_x", "x", "x"), ("e", "x", "x")], {"x": "id_x"},
                             [("id_x", "id_x", "id_x"), ("id_x", "e", "e"),
                              ("e", "id_x", "e"), ("e", "e", "e")])


def walking_iso() -> FinCategory:
    return FinCategory.build(
        ["a", "b"],
        [("id_a", "a", "a"), ("id_b", "b", "b"), ("u", "a", "b"), ("v", "b", "a")],
        {"a": "id_a", "b": "id_b"},
        [("id_a", "id_a", "id_a"), ("id_b", "id_b", "id_b"),
         ("u", "id_a", "u"), ("id_b", "u", "u"), ("v", "id_b", "v"), ("id_a", "v", "v"),
         ("v", "u", "id_a"), ("u", "v", "id_b")])


def transformation_monoid(n: int) -> FinCategory:
    """All maps ``{0..n-1} -> {0..n-1}`` as one-object category; ``g o f`` applies ``f`` first."""
    maps = list(product(range(n), repeat=n))
    ix = {f: k for k, f in enumerate(maps)}
    table = [[ix[tuple(g[f[i]] for i in range(n))] for f in maps] for g in maps]
    return FinCategory.from_monoid(table, ["".join(map(str, f)) for f in maps])


def cyclic_group(n: int) -> FinCategory:
    return FinCategory.from_monoid([[(a + b) % n for b in range(n)] for a in range(n)],
                                   ["1"] + [f"g{k}" for k in range(1, n)])


def terminal() -> FinCategory:
    return discrete(1)


_FIXTURES = {
    "walking_idempotent": walking_idempotent,
    "walking_iso": walking_iso,
    "terminal": terminal,
    "sierpinski": locales.sierpinski,
    "M3": locales.diamond_m3,
    "diamond": locales.diamond_m3,
    "N5": locales.pentagon_n5,
}
_INDEXED = {
    "discrete": discrete,
    "codiscrete": codiscrete,
    "discrete_space": locales.discrete_space,
    "indiscrete": locales.indiscrete_space,
    "chain_msl": locales.chain_msl,
    "boolean_msl": locales.boolean_msl,
    "T": transformation_monoid,
    "Z": cyclic_group,
}


def fixture(name: str):
    """Named structure: ``walking_iso``, ``T(3)`` (also ``T3``), ``chain_msl(2)``, ..."""
    if name in _FIXTURES:
        return _FIXTURES[name]()
    m = re.fullmatch(r"([A-Za-z_]+?)_?\(?(\d+)\)?", name)
    if m and m.group(1) in _INDEXED:
        k = int(m.group(2))
        if m.group(1) == "T" and k > 4:
            raise StructureError("T(n) fixtures are limited to n <= 4")
        return _INDEXED[m.group(1)](k)
    raise KeyError(f"unknown fixture {name!r}")


# --- exhaustive enumeration -------------------------------------------------

def all_partial_tables(n: int) -> np.ndarray:
    """Every partial table on ``n`` elements, shape ``((n+1)**(n*n), n, n)``;
    cells vary in row-major order over the values ``-1, 0, ..., n-1``."""
    if n > PSG_MAX:
        raise SearchBoundError(f"exhaustive partial tables limited to n <= {PSG_MAX}")
    cells = n * n
    if cells == 0:
        return np.zeros((1, 0, 0), dtype=np.int64)
    grid = np.indices((n + 1,) * cells).reshape(cells, -1).T - 1
    return grid.reshape(-1, n, n).astype(np.int64)


def enum_psgs(n: int, dedup: bool = False) -> Iterator[PartialSemigroup]:
    tables = all_partial_tables(n)
    names = [chr(ord("a") + k) for k in range(n)]
    if n == 0:
        ok = np.ones(1, dtype=bool)
    else:
        ok = ~psemi.assoc_violations(tables).reshape(len(tables), -1).any(axis=1)
    seen = set()
    for t in tables[ok]:
        A = PartialSemigroup(names, t)
        if dedup:
            c = certificate_of(A)
            if c in seen:
                continue
            seen.add(c)
        yield A


def enum_topologies(n: int) -> Iterator[FinSpace]:
    if n > TOPOLOGY_MAX:
        raise SearchBoundError(f"topology enumeration limited to n <= {TOPOLOGY_MAX}")
    full = (1 << n) - 1
    middle = [u for u in range(1, full)]
    pts = [str(k) for k in range(n)]
    for bits in range(1 << len(middle)):
        fam = {0, full} | {u for k, u in enumerate(middle) if bits >> k & 1}
        if all(u | v in fam and u & v in fam for u in fam for v in fam):
            yield FinSpace(pts, fam)


def enum_msls(n: int, dedup: bool = False) -> Iterator[MeetSemilattice]:
    """Naturally labelled meet-semilattices (``i <= j`` only if ``i <= j`` as
    integers); every isomorphism class occurs at least once."""
    if n > MSL_MAX:
        raise SearchBoundError(f"semilattice enumeration limited to n <= {MSL_MAX}")
    if n == 0:
        return
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    names = [str(k) for k in range(n)]
    seen = set()
    for bits in range(1 << len(pairs)):
        le = np.eye(n, dtype=bool)
        for k, (i, j) in enumerate(pairs):
            if bits >> k & 1:
                le[i, j] = True
        if not le[:, n - 1].all():
            continue
        if not _transitive(le):
            continue
        A = MeetSemilattice(names, le, n - 1)
        if not locales.validate_msl(A):
            continue
        if dedup:
            c = certificate_of(A)
            if c in seen:
                continue
            seen.add(c)
        yield A


def _transitive(le: np.ndarray) -> bool:
    sq = (le.astype(np.int64) @ le.astype(np.int64)) > 0
    return bool((~sq | le).all())


def enum_monoids(n: int, dedup: bool = False) -> Iterator[FinCategory]:
    """Monoids on ``{0..n-1}`` with unit 0, as one-object categories."""
    if n > MONOID_MAX:
        raise SearchBoundError(f"monoid enumeration limited to n <= {MONOID_MAX}")
    if n == 0:
        return
    free = (n - 1) ** 2
    grid = np.indices((n,) * free).reshape(free, -1).T if free else np.zeros((1, 0), dtype=np.int64)
    tables = np.empty((len(grid), n, n), dtype=np.int64)
    tables[:, 0, :] = np.arange(n)
    tables[:, :, 0] = np.arange(n)
    if free:
        tables[:, 1:, 1:] = grid.reshape(-1, n - 1, n - 1)
    ok = np.ones(len(tables), dtype=bool)
    for start in range(0, len(tables), 65536):
        chunk = tables[start:start + 65536]
        ok[start:start + 65536] = ~psemi.assoc_violations(chunk).reshape(len(chunk), -1).any(axis=1)
    seen = set()
    for t in tables[ok]:
        C = FinCategory.from_monoid(t)
        if dedup:
            c = certificate_of(C)
            if c in seen:
                continue
            seen.add(c)
        yield C


def enum_categories(max_objects: int, max_morphisms: int, dedup: bool = False) -> Iterator[FinCategory]:
    """Every category with at most the given numbers of objects and morphisms
    (each isomorphism class at least once; exactly once with ``dedup``)."""
    if max_morphisms > CATEGORY_MAX_MORPHISMS:
        raise SearchBoundError(f"category enumeration limited to {CATEGORY_MAX_MORPHISMS} morphisms")
    seen = set()
    for m in range(max_morphisms + 1):
        for k in range(min(max_objects, m) + 1):
            if k == 0 and m > 0:
                continue
            for C in _categories_with(k, m):
                if dedup:
                    c = certificate_of(C)
                    if c in seen:
                        continue
                    seen.add(c)
                yield C


def _categories_with(k: int, m: int) -> Iterator[FinCategory]:
    r = m - k
    objs = [f"x{i}" for i in range(k)]
    for types in combinations_with_replacement(list(product(range(k), repeat=2)), r):
        dom = list(range(k)) + [t[0] for t in types]
        cod = list(range(k)) + [t[1] for t in types]
        names = [f"id_x{i}" for i in range(k)] + [f"f{j}" for j in range(r)]
        table = [[UNDEF] * m for _ in range(m)]
        for f in range(m):
            table[cod[f]][f] = f          # id_cod o f
            table[f][dom[f]] = f          # f o id_dom
        pairs = [(g, f) for g in range(k, m) for f in range(k, m) if dom[g] == cod[f]]
        homs = {}
        for f in range(m):
            homs.setdefault((dom[f], cod[f]), []).append(f)

        def assoc_ok() -> bool:
            for h, g, f in product(range(m), repeat=3):
                if dom[h] != cod[g] or dom[g] != cod[f]:
                    continue
                hg, gf = table[h][g], table[g][f]
                if hg == UNDEF or gf == UNDEF:
                    continue
                a, b = table[hg][f], table[h][gf]
                if a != UNDEF and b != UNDEF and a != b:
                    return False
            return True

        def extend(i: int):
            if i == len(pairs):
                yield FinCategory(objs, names, dom, cod, range(k), np.array(table).reshape(m, m))
                return
            g, f = pairs[i]
            for h in homs.get((dom[f], cod[g]), ()):
                table[g][f] = h
                if assoc_ok():
                    yield from extend(i + 1)
            table[g][f] = UNDEF

        for C in extend(0):
            if validate_category(C):
                yield C


# --- seeded random sampling -------------------------------------------------

def random_categories(count: int, seed: int, max_objects: int = 3, max_set_size: int = 3,
                      generators: int = 2, max_morphisms: int = 30) -> Iterator[FinCategory]:
    """Subcategories of finite sets generated by random maps between random
    small sets.  Equal seeds give identical streams."""
    rng = np.random.default_rng(seed)
    made = 0
    while made < count:
        k = int(rng.integers(1, max_objects + 1))
        sizes = [int(s) for s in rng.integers(1, max_set_size + 1, size=k)]
        mors = {(x, x, tuple(range(sizes[x]))) for x in range(k)}
        for _ in range(generators):
            a, b = (int(v) for v in rng.integers(0, k, size=2))
            mors.add((a, b, tuple(int(v) for v in rng.integers(0, sizes[b], size=sizes[a]))))
        # close under composition
        grew = True
        while grew and len(mors) <= max_morphisms:
            grew = False
            for (a, b, f), (b2, c, g) in product(list(mors), repeat=2):
                if b == b2:
                    h = (a, c, tuple(g[i] for i in f))
                    if h not in mors:
                        mors.add(h)
                        grew = True
        if len(mors) > max_morphisms:
            continue
        ms = sorted(mors)
        ix = {t: j for j, t in enumerate(ms)}
        table = np.full((len(ms), len(ms)), UNDEF, dtype=np.int64)
        for (a, b, f), (b2, c, g) in product(ms, repeat=2):
            if b == b2:
                table[ix[(b2, c, g)], ix[(a, b, f)]] = ix[(a, c, tuple(g[i] for i in f))]
        yield FinCategory([f"s{x}" for x in range(k)],
                          [f"{a}>{b}:{''.join(map(str, f))}" for a, b, f in ms],
                          [t[0] for t in ms], [t[1] for t in ms],
                          [ix[(x, x, tuple(range(sizes[x])))] for x in range(k)], table)
        made += 1


def random_psgs(count: int, seed: int, n: int = 4, density: float = 0.3) -> Iterator[PartialSemigroup]:
    """Random sparse partial tables on ``n`` elements that pass validation."""
    rng = np.random.default_rng(seed)
    names = [chr(ord("a") + k) for k in range(n)]
    made = 0
    while made < count:
        t = np.where(rng.random((n, n)) < density, rng.integers(0, n, size=(n, n)), -1)
        if not psemi.assoc_violations(t).any():
            yield PartialSemigroup(names, t)
            made += 1


# --- canonical forms -------------------------------------------------------

def relational(s):
    """``(n, colours, relations)`` encoding of a structure."""
    if isinstance(s, FinCategory):
        colors = [1 if s.is_identity(f) else 0 for f in range(s.n_morphisms)]
        dc = [(f, s.ident[s.dom[f]], s.ident[s.cod[f]]) for f in range(s.n_morphisms)]
        comp = [(g, f, int(s.table[g, f])) for g in range(s.n_morphisms)
                for f in range(s.n_morphisms) if s.table[g, f] != UNDEF]
        return s.n_morphisms, colors, [("dc", dc), ("comp", comp)]
    if isinstance(s, PartialSemigroup):
        prod = [(a, b, int(s.table[a, b])) for a in range(s.size) for b in range(s.size)
                if s.table[a, b] >= 0]
        return s.size, [0] * s.size, [("prod", prod)]
    if isinstance(s, FinSpace):
        n = len(s.points)
        mem = [(p, n + j) for j, U in enumerate(s.opens) for p in range(n) if U >> p & 1]
        return n + len(s.opens), [0] * n + [1] * len(s.opens), [("in", mem)]
    if isinstance(s, MeetSemilattice):
        le = [(a, b) for a in range(s.size) for b in range(s.size) if s.leq[a, b]]
        return s.size, [0] * s.size, [("le", le)]
    raise TypeError(f"no canonical form for {type(s).__name__}")


def certificate_of(s):
    """Hashable invariant; equal iff the structures are isomorphic."""
    return (type(s).__name__,) + canon.certificate(*relational(s))[0]


def canonical_form(s):
    """The structure relabelled by its canonical labelling, with positional names."""
    n, colors, rels = relational(s)
    _, lab = canon.certificate(n, colors, rels)
    order = sorted(range(n), key=lambda x: lab[x])
    if isinstance(s, FinCategory):
        ids = [f for f in order if s.is_identity(f)]
        opos = {s.dom[f]: k for k, f in enumerate(ids)}
        table = np.full((n, n), UNDEF, dtype=np.int64)
        for g, f in product(range(n), repeat=2):
            h = s.table[g, f]
            if h != UNDEF:
                table[lab[g], lab[f]] = lab[h]
        return FinCategory([f"o{k}" for k in range(len(ids))], [f"m{k}" for k in range(n)],
                           [opos[s.dom[f]] for f in order], [opos[s.cod[f]] for f in order],
                           [lab[f] for f in ids], table)
    if isinstance(s, PartialSemigroup):
        table = np.full((n, n), UNDEF, dtype=np.int64)
        for a, b in product(range(n), repeat=2):
            if s.table[a, b] >= 0:
                table[lab[a], lab[b]] = lab[s.table[a, b]]
        return PartialSemigroup([str(k) for k in range(n)], table)
    if isinstance(s, FinSpace):
        k = len(s.points)
        return FinSpace([str(i) for i in range(k)],
                        {sum(1 << lab[p] for p in range(k) if U >> p & 1) for U in s.opens})
    if isinstance(s, MeetSemilattice):
        le = np.zeros((n, n), dtype=bool)
        for a, b in product(range(n), repeat=2):
            le[lab[a], lab[b]] = s.leq[a, b]
        return MeetSemilattice([str(k) for k in range(n)], le, lab[s.top])
    raise TypeError(type(s).__name__)


def isomorphic(s, t) -> bool:
    return type(s) is type(t) and certificate_of(s) == certificate_of(t)


def isomorphic_brute_force(s, t) -> bool:
    """Oracle: compare least encodings over all orderings (small carriers only)."""
    if type(s) is not type(t):
        return False
    return canon.brute_force_certificate(*relational(s)) == \
        canon.brute_force_certificate(*relational(t))
