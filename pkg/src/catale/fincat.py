"""Finite categories as explicit composition tables.

Objects and morphisms are identified by position.  ``table[g, f]`` holds the
index of ``g o f`` or ``-1`` when no composite is recorded.  Constructors do
not validate; :func:`validate_category` reports every violated axiom.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from ._report import Report, StructureError, Verdict

UNDEF = -1


class FinCategory:
    def __init__(self, objects: Sequence[str], names: Sequence[str],
                 dom: Sequence[int], cod: Sequence[int],
                 ident: Sequence[int], table) -> None:
        self.objects = tuple(objects)
        self.names = tuple(names)
        self.dom = tuple(int(d) for d in dom)
        self.cod = tuple(int(c) for c in cod)
        self.ident = tuple(int(i) for i in ident)
        m = len(self.names)
        t = np.array(table, dtype=np.int64).reshape(m, m)
        t.setflags(write=False)
        self.table = t
        if len(set(self.names)) != m:
            raise ValueError("morphism names must be unique")
        if len(set(self.objects)) != len(self.objects):
            raise ValueError("object names must be unique")
        if not (len(self.dom) == len(self.cod) == m):
            raise ValueError("dom/cod must have one entry per morphism")
        if len(self.ident) != len(self.objects):
            raise ValueError("identities must have one entry per object")

    @classmethod
    def build(cls, objects: Sequence[str], morphisms: Iterable[tuple[str, str, str]],
              identities: dict[str, str], compose: Iterable[tuple[str, str, str]]) -> "FinCategory":
        """Assemble a category from labels: ``morphisms`` are ``(name, dom, cod)``
        and ``compose`` rows are ``(g, f, g o f)``."""
        objects = list(objects)
        oi = {o: k for k, o in enumerate(objects)}
        morphisms = list(morphisms)
        names = [m[0] for m in morphisms]
        mi = {n: k for k, n in enumerate(names)}
        dom = [oi[m[1]] for m in morphisms]
        cod = [oi[m[2]] for m in morphisms]
        ident = [mi[identities[o]] if o in identities else UNDEF for o in objects]
        table = np.full((len(names), len(names)), UNDEF, dtype=np.int64)
        for g, f, h in compose:
            table[mi[g], mi[f]] = mi[h]
        return cls(objects, names, dom, cod, ident, table)

    @classmethod
    def from_monoid(cls, table, names: Sequence[str] | None = None, obj: str = "*") -> "FinCategory":
        """One-object category of a monoid given by a total multiplication table
        ``table[g][f] = g*f`` (row acts after column)."""
        t = np.asarray(table, dtype=np.int64)
        n = t.shape[0]
        names = list(names) if names is not None else [str(k) for k in range(n)]
        units = [e for e in range(n)
                 if all(t[e, x] == x and t[x, e] == x for x in range(n))]
        if not units:
            raise StructureError("table has no two-sided unit")
        return cls([obj], names, [0] * n, [0] * n, [units[0]], t)

    # --- lookups -------------------------------------------------------
    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_morphisms(self) -> int:
        return len(self.names)

    @cached_property
    def _rows(self) -> list[list[int]]:
        return self.table.tolist()

    def comp(self, g: int, f: int) -> int:
        """Index of ``g o f``, or -1."""
        return self._rows[g][f]

    @cached_property
    def _homs(self) -> dict[tuple[int, int], tuple[int, ...]]:
        homs: dict[tuple[int, int], list[int]] = {}
        for k, (d, c) in enumerate(zip(self.dom, self.cod)):
            homs.setdefault((d, c), []).append(k)
        return {key: tuple(v) for key, v in homs.items()}

    def hom(self, x: int, y: int) -> tuple[int, ...]:
        return self._homs.get((x, y), ())

    def index(self, name: str) -> int:
        return self._name_index[name]

    def obj_index(self, label: str) -> int:
        return self._obj_index[label]

    @cached_property
    def _name_index(self) -> dict[str, int]:
        return {n: k for k, n in enumerate(self.names)}

    @cached_property
    def _obj_index(self) -> dict[str, int]:
        return {o: k for k, o in enumerate(self.objects)}

    def is_identity(self, f: int) -> bool:
        return self.ident[self.dom[f]] == f

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinCategory):
            return NotImplemented
        return (self.objects == other.objects and self.names == other.names
                and self.dom == other.dom and self.cod == other.cod
                and self.ident == other.ident
                and np.array_equal(self.table, other.table))

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"FinCategory({self.n_objects} objects, {self.n_morphisms} morphisms)"


@dataclass(frozen=True, eq=False)
class Functor:
    source: FinCategory
    target: FinCategory
    obj_map: tuple[int, ...]
    mor_map: tuple[int, ...]

    def __call__(self, f: int) -> int:
        return self.mor_map[f]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Functor):
            return NotImplemented
        return (self.obj_map == other.obj_map and self.mor_map == other.mor_map
                and self.source == other.source and self.target == other.target)


@dataclass(frozen=True)
class Splitting:
    """``idempotent = section o retraction`` and ``retraction o section = id``."""

    idempotent: int
    through: int
    retraction: int
    section: int


@dataclass(frozen=True)
class IsoWitness:
    u: int
    v: int


@dataclass(frozen=True)
class IsoClasses:
    classes: tuple[tuple[int, ...], ...]
    witnesses: dict  # (x, y) -> IsoWitness, for x != y in one class

    def class_of(self, x: int) -> int:
        for k, cls in enumerate(self.classes):
            if x in cls:
                return k
        raise KeyError(x)


@dataclass(frozen=True)
class SkeletonChoice:
    representative: tuple[int, ...]   # class index -> representative object
    to_rep: tuple[int, ...]           # object -> isomorphism x -> rep(x)
    from_rep: tuple[int, ...]         # object -> inverse of to_rep(x)
    class_of: tuple[int, ...]         # object -> class index

    def iota(self, C: FinCategory, x: int, y: int) -> int:
        """The chosen isomorphism ``x -> y`` within one class."""
        if self.class_of[x] != self.class_of[y]:
            raise StructureError("objects are not isomorphic")
        return C.comp(self.from_rep[y], self.to_rep[x])


# --- small constructors ----------------------------------------------------

def discrete(n: int) -> FinCategory:
    objs = [f"x{k}" for k in range(n)]
    names = [f"id_x{k}" for k in range(n)]
    table = np.full((n, n), UNDEF, dtype=np.int64)
    for k in range(n):
        table[k, k] = k
    return FinCategory(objs, names, range(n), range(n), range(n), table)


def codiscrete(n: int) -> FinCategory:
    """Exactly one morphism between any two of ``n`` objects."""
    objs = [f"x{k}" for k in range(n)]
    pairs = [(i, j) for i in range(n) for j in range(n)]
    idx = {p: k for k, p in enumerate(pairs)}
    names = [f"id_x{i}" if i == j else f"x{i}>x{j}" for i, j in pairs]
    table = np.full((len(pairs), len(pairs)), UNDEF, dtype=np.int64)
    for (j, k), (i, j2) in product(pairs, pairs):
        if j == j2:
            table[idx[(j, k)], idx[(i, j2)]] = idx[(i, k)]
    return FinCategory(objs, names, [p[0] for p in pairs], [p[1] for p in pairs],
                       [idx[(i, i)] for i in range(n)], table)


def product_category(C: FinCategory, D: FinCategory) -> FinCategory:
    pairs = list(product(range(C.n_morphisms), range(D.n_morphisms)))
    idx = {p: k for k, p in enumerate(pairs)}
    objs = [f"({a},{b})" for a in C.objects for b in D.objects]
    oidx = {(a, b): a * D.n_objects + b for a in range(C.n_objects) for b in range(D.n_objects)}
    names = [f"({C.names[f]},{D.names[g]})" for f, g in pairs]
    table = np.full((len(pairs), len(pairs)), UNDEF, dtype=np.int64)
    for (f1, g1), (f2, g2) in product(pairs, pairs):
        a, b = C.comp(f1, f2), D.comp(g1, g2)
        if a != UNDEF and b != UNDEF:
            table[idx[(f1, g1)], idx[(f2, g2)]] = idx[(a, b)]
    return FinCategory(objs, names,
                       [oidx[(C.dom[f], D.dom[g])] for f, g in pairs],
                       [oidx[(C.cod[f], D.cod[g])] for f, g in pairs],
                       [idx[(C.ident[a], D.ident[b])] for a in range(C.n_objects)
                        for b in range(D.n_objects)], table)


def disjoint_union(C: FinCategory, D: FinCategory) -> FinCategory:
    m, n = C.n_morphisms, C.n_objects
    table = np.full((m + D.n_morphisms,) * 2, UNDEF, dtype=np.int64)
    table[:m, :m] = C.table
    shifted = np.where(D.table >= 0, D.table + m, UNDEF)
    table[m:, m:] = shifted
    return FinCategory([f"0.{o}" for o in C.objects] + [f"1.{o}" for o in D.objects],
                       [f"0.{s}" for s in C.names] + [f"1.{s}" for s in D.names],
                       C.dom + tuple(d + n for d in D.dom), C.cod + tuple(c + n for c in D.cod),
                       C.ident + tuple(i + m for i in D.ident), table)


# --- validation ------------------------------------------------------------

def _padded(C: FinCategory) -> np.ndarray:
    m = C.n_morphisms
    p = np.full((m + 1, m + 1), m, dtype=np.int64)
    t = C.table
    p[:m, :m] = np.where((t >= 0) & (t < m), t, m)
    return p


def validate_category(C: FinCategory) -> Report:
    """Check every category axiom instance; never raises on bad tables."""
    rep = Report("category")
    m = C.n_morphisms
    names = C.names
    for x, i in enumerate(C.ident):
        if not 0 <= i < m:
            rep.fail(f"object {C.objects[x]} has no identity")
        elif C.dom[i] != x or C.cod[i] != x:
            rep.fail(f"identity {names[i]} of {C.objects[x]} is not an endomorphism of it")
    if m == 0:
        return rep
    dom = np.array(C.dom)
    cod = np.array(C.cod)
    t = C.table
    composable = dom[:, None] == cod[None, :]
    present = t != UNDEF
    for g, f in np.argwhere(composable & ~present):
        rep.fail(f"composable pair ({names[g]},{names[f]}) missing")
    for g, f in np.argwhere(~composable & present):
        rep.fail(f"extra composite for non-composable pair ({names[g]},{names[f]})")
    bad_value = present & ((t < 0) | (t >= m))
    for g, f in np.argwhere(bad_value):
        rep.fail(f"composite of ({names[g]},{names[f]}) is not a morphism")
    ok = composable & present & ~bad_value
    tt = np.where(ok, t, 0)
    wrong = ok & ((dom[tt] != dom[None, :]) | (cod[tt] != cod[:, None]))
    for g, f in np.argwhere(wrong):
        rep.fail(f"composite {names[g]} o {names[f]} has wrong domain or codomain")
    for f in range(m):
        d, c = C.dom[f], C.cod[f]
        if 0 <= C.ident[d] < m and C.comp(f, C.ident[d]) not in (f, UNDEF):
            rep.fail(f"right identity law fails: {names[f]} o {names[C.ident[d]]} != {names[f]}")
        if 0 <= C.ident[c] < m and C.comp(C.ident[c], f) not in (f, UNDEF):
            rep.fail(f"left identity law fails: {names[C.ident[c]]} o {names[f]} != {names[f]}")
    if rep.violations:
        # associativity is only meaningful once composites are well formed
        return rep
    p = _padded(C)
    for h in range(m):
        gs = np.flatnonzero(dom[h] == cod)
        if gs.size == 0:
            continue
        left = p[p[h, gs]][:, :m]            # (h g) f
        right = p[h, p[gs, :m]]              # h (g f)
        mask = composable[gs, :]
        bad = mask & (left != right)
        for gi, f in np.argwhere(bad):
            g = gs[gi]
            rep.fail(f"associativity fails on ({names[h]},{names[g]},{names[f]})")
    return rep


def _require_valid(C: FinCategory) -> None:
    r = validate_category(C)
    if not r:
        raise StructureError(f"invalid category: {r.violations[0]}")


# --- idempotents and splittings -------------------------------------------

def is_idempotent(C: FinCategory, f: int) -> bool:
    return C.dom[f] == C.cod[f] and C.comp(f, f) == f


def idempotents(C: FinCategory) -> list[int]:
    return [f for f in range(C.n_morphisms) if is_idempotent(C, f)]


def idempotent_preorder(C: FinCategory) -> frozenset[tuple[int, int]]:
    """Pairs ``(phi, psi)`` of idempotents on one object with ``phi = phi o psi``."""
    idem = idempotents(C)
    rel = frozenset((a, b) for a in idem for b in idem
                    if C.dom[a] == C.dom[b] and C.comp(a, b) == a)
    assert all((a, a) in rel for a in idem), "preorder not reflexive"
    assert all((a, c) in rel for a, b in rel for b2, c in rel if b == b2), \
        "preorder not transitive"
    return rel


def preorder_antisymmetry(C: FinCategory) -> Report:
    """For each pair with ``phi <= psi <= phi``: ``phi == psi`` iff they commute."""
    rel = idempotent_preorder(C)
    rep = Report("idempotent antisymmetry")
    for a, b in rel:
        if (b, a) in rel:
            commute = C.comp(a, b) == C.comp(b, a)
            if (a == b) != commute:
                rep.fail(f"({C.names[a]},{C.names[b]}): equal={a == b}, commute={commute}")
    return rep


def _require_idempotent(C: FinCategory, f: int) -> None:
    if not is_idempotent(C, f):
        raise StructureError(f"{C.names[f]} is not idempotent")


def find_splitting(C: FinCategory, phi: int) -> Splitting | None:
    """Least ``(y, q, i)`` with ``i o q = phi`` and ``q o i = id_y``."""
    _require_idempotent(C, phi)
    x = C.dom[phi]
    for y in range(C.n_objects):
        idy = C.ident[y]
        back = C.hom(y, x)
        for q in C.hom(x, y):
            for i in back:
                if C.comp(i, q) == phi and C.comp(q, i) == idy:
                    return Splitting(phi, y, q, i)
    return None


def is_absolutely_complete(C: FinCategory) -> Verdict:
    for phi in idempotents(C):
        if find_splitting(C, phi) is None:
            return Verdict(False, phi)
    return Verdict(True)


def karoubi(C: FinCategory) -> tuple[FinCategory, Functor]:
    """Idempotent completion and its embedding ``x -> id_x``."""
    idem = idempotents(C)
    pos = {a: k for k, a in enumerate(idem)}
    triples: list[tuple[int, int, int]] = []
    for a in idem:
        for b in idem:
            for f in C.hom(C.dom[a], C.dom[b]):
                if C.comp(C.comp(b, f), a) == f:
                    triples.append((a, b, f))
    tix = {t: k for k, t in enumerate(triples)}
    n = len(triples)
    table = np.full((n, n), UNDEF, dtype=np.int64)
    by_cod: dict[int, list[int]] = {}
    for k, (_, b, _) in enumerate(triples):
        by_cod.setdefault(b, []).append(k)
    for k, (b, c, g) in enumerate(triples):
        for j in by_cod.get(b, ()):
            a, _, f = triples[j]
            table[k, j] = tix[(a, c, C.comp(g, f))]
    K = FinCategory([C.names[a] for a in idem],
                    [f"{C.names[f]}:{C.names[a]}>{C.names[b]}" for a, b, f in triples],
                    [pos[a] for a, _, _ in triples], [pos[b] for _, b, _ in triples],
                    [tix[(a, a, a)] for a in idem], table)
    emb = Functor(C, K, tuple(pos[C.ident[x]] for x in range(C.n_objects)),
                  tuple(tix[(C.ident[C.dom[f]], C.ident[C.cod[f]], f)]
                        for f in range(C.n_morphisms)))
    return K, emb


# --- isomorphisms, skeleton ------------------------------------------------

def find_iso(C: FinCategory, x: int, y: int) -> IsoWitness | None:
    idx, idy = C.ident[x], C.ident[y]
    back = C.hom(y, x)
    for u in C.hom(x, y):
        for v in back:
            if C.comp(v, u) == idx and C.comp(u, v) == idy:
                return IsoWitness(u, v)
    return None


def inverse(C: FinCategory, f: int) -> int | None:
    x, y = C.dom[f], C.cod[f]
    for v in C.hom(y, x):
        if C.comp(v, f) == C.ident[x] and C.comp(f, v) == C.ident[y]:
            return v
    return None


def is_iso(C: FinCategory, f: int) -> bool:
    return inverse(C, f) is not None


def iso_classes(C: FinCategory) -> IsoClasses:
    classes: list[list[int]] = []
    for x in range(C.n_objects):
        for cls in classes:
            if find_iso(C, cls[0], x) is not None:
                cls.append(x)
                break
        else:
            classes.append([x])
    witnesses = {}
    for cls in classes:
        for x in cls:
            for y in cls:
                if x != y:
                    witnesses[(x, y)] = find_iso(C, x, y)
    return IsoClasses(tuple(tuple(c) for c in classes), witnesses)


def is_skeletal(C: FinCategory) -> Verdict:
    for cls in iso_classes(C).classes:
        if len(cls) > 1:
            return Verdict(False, (cls[0], cls[1]))
    return Verdict(True)


def _full_on_representatives(C: FinCategory, reps: Sequence[int], class_of: Sequence[int],
                             to_rep: Sequence[int], from_rep: Sequence[int],
                             ) -> tuple[FinCategory, Functor]:
    """Full subcategory on ``reps`` with the transport functor
    ``f -> to_rep(y) o f o from_rep(x)``."""
    kept = [f for f in range(C.n_morphisms)
            if C.dom[f] in reps and C.cod[f] in reps]
    pos = {f: k for k, f in enumerate(kept)}
    rpos = {r: k for k, r in enumerate(reps)}
    sub = C.table[np.ix_(kept, kept)] if kept else np.zeros((0, 0), dtype=np.int64)
    table = np.vectorize(lambda h: pos.get(int(h), UNDEF), otypes=[np.int64])(sub) \
        if kept else sub
    S = FinCategory([C.objects[r] for r in reps], [C.names[f] for f in kept],
                    [rpos[C.dom[f]] for f in kept], [rpos[C.cod[f]] for f in kept],
                    [pos[C.ident[r]] for r in reps], table)
    mor = []
    for f in range(C.n_morphisms):
        x, y = C.dom[f], C.cod[f]
        mor.append(pos[C.comp(C.comp(to_rep[y], f), from_rep[x])])
    eps = Functor(C, S, tuple(class_of), tuple(mor))
    return S, eps


def skeleton(C: FinCategory) -> tuple[FinCategory, Functor, SkeletonChoice]:
    ic = iso_classes(C)
    reps = [cls[0] for cls in ic.classes]
    class_of = [0] * C.n_objects
    to_rep = [0] * C.n_objects
    from_rep = [0] * C.n_objects
    for k, cls in enumerate(ic.classes):
        r = cls[0]
        for x in cls:
            class_of[x] = k
            if x == r:
                to_rep[x] = from_rep[x] = C.ident[x]
            else:
                w = ic.witnesses[(x, r)]
                to_rep[x], from_rep[x] = w.u, w.v
    S, eps = _full_on_representatives(C, reps, class_of, to_rep, from_rep)
    choice = SkeletonChoice(tuple(reps), tuple(to_rep), tuple(from_rep), tuple(class_of))
    assert is_equivalence(eps), "skeleton projection is not an equivalence"
    return S, eps, choice


@dataclass(frozen=True)
class AutGroup:
    representative: int
    elements: tuple[int, ...]          # automorphisms of the representative
    table: tuple[tuple[int, ...], ...]  # positions into ``elements``
    kappa: dict  # (x, x2, kappa) -> {chi: chi^-1 o kappa}


def automorphism_groups(C: FinCategory, require_groupoid: bool = False) -> list[AutGroup]:
    """Automorphism group of each iso class and the bijections
    ``chi -> chi^-1 o kappa`` from ``iso(x, x2)`` onto ``Aut(x)``.

    With ``require_groupoid`` every hom-set inside a class must consist of
    isomorphisms, otherwise :class:`StructureError` is raised.
    """
    out = []
    for cls in iso_classes(C).classes:
        if require_groupoid:
            for x, y in product(cls, cls):
                for f in C.hom(x, y):
                    if not is_iso(C, f):
                        raise StructureError(f"{C.names[f]} is not invertible")
        r = cls[0]
        G = tuple(f for f in C.hom(r, r) if is_iso(C, f))
        gpos = {g: k for k, g in enumerate(G)}
        table = tuple(tuple(gpos[C.comp(g, h)] for h in G) for g in G)
        kappas = {}
        for x, x2 in product(cls, cls):
            isos = [f for f in C.hom(x, x2) if is_iso(C, f)]
            aut_x = {f for f in C.hom(x, x) if is_iso(C, f)}
            assert len(isos) == len(G), "iso hom-set size differs from |G|"
            for kappa in isos:
                m = {chi: C.comp(inverse(C, chi), kappa) for chi in isos}
                assert set(m.values()) == aut_x and len(set(m.values())) == len(isos), \
                    "kappa map is not a bijection onto Aut(x)"
                kappas[(x, x2, kappa)] = m
        out.append(AutGroup(r, G, table, kappas))
    return out


def idempotents_isomorphic(C: FinCategory, a: int, b: int) -> IsoWitness | None:
    """Least ``(u, v)`` with ``a = u o v``, ``b = v o u``, ``uvu = u``, ``vuv = v``."""
    _require_idempotent(C, a)
    _require_idempotent(C, b)
    x, y = C.dom[a], C.dom[b]
    for u in C.hom(y, x):
        for v in C.hom(x, y):
            if (C.comp(u, v) == a and C.comp(v, u) == b
                    and C.comp(C.comp(u, v), u) == u and C.comp(C.comp(v, u), v) == v):
                return IsoWitness(u, v)
    return None


def taut_completion(C: FinCategory) -> tuple[FinCategory, Functor]:
    """Karoubi envelope cut down to one idempotent per isomorphism class."""
    K, emb = karoubi(C)
    idem = idempotents(C)
    n = len(idem)
    reps: list[int] = []
    class_of = [0] * n
    to_rep = [0] * n
    from_rep = [0] * n
    frame = _karoubi_frames(C)
    for k in range(n):
        for j, r in enumerate(reps):
            w = idempotents_isomorphic(C, idem[k], idem[r])
            if w is not None:
                class_of[k] = j
                # v : a -> r and u : r -> a in K
                to_rep[k] = frame[(idem[k], idem[r], w.v)]
                from_rep[k] = frame[(idem[r], idem[k], w.u)]
                break
        else:
            class_of[k] = len(reps)
            reps.append(k)
            to_rep[k] = from_rep[k] = K.ident[k]
    T, q = _full_on_representatives(K, reps, class_of, to_rep, from_rep)
    return T, compose_functors(emb, q)


def _karoubi_frames(C: FinCategory) -> dict[tuple[int, int, int], int]:
    """Map ``(a, b, f)`` to the index of the corresponding morphism of ``karoubi(C)``."""
    idem = idempotents(C)
    out = {}
    for a in idem:
        for b in idem:
            for f in C.hom(C.dom[a], C.dom[b]):
                if C.comp(C.comp(b, f), a) == f:
                    out[(a, b, f)] = len(out)
    return out


def is_taut(C: FinCategory) -> Verdict:
    sk = is_skeletal(C)
    if not sk:
        return Verdict(False, ("not skeletal", sk.witness))
    ac = is_absolutely_complete(C)
    if not ac:
        return Verdict(False, ("idempotent does not split", ac.witness))
    return Verdict(True)


# --- universal properties of splittings -----------------------------------

def _check_splitting(C: FinCategory, s: Splitting) -> None:
    phi, y, q, i = s.idempotent, s.through, s.retraction, s.section
    x = C.dom[phi]
    if not (C.dom[q] == x and C.cod[q] == y and C.dom[i] == y and C.cod[i] == x):
        raise StructureError("splitting maps have the wrong type")
    if C.comp(i, q) != phi:
        raise StructureError("section o retraction differs from the idempotent")
    if C.comp(q, i) != C.ident[y]:
        raise StructureError("retraction o section is not the identity")


def check_splitting_universal(C: FinCategory, s: Splitting) -> Report:
    """``i`` equalizes and ``q`` coequalizes the pair ``(id_x, phi)``, checked
    against every cone and cocone."""
    _check_splitting(C, s)
    rep = Report("splitting universality")
    phi, y, q, i = s.idempotent, s.through, s.retraction, s.section
    x = C.dom[phi]
    for w in range(C.n_objects):
        for h in C.hom(w, x):
            if C.comp(phi, h) != h:
                continue
            ks = [k for k in C.hom(w, y) if C.comp(i, k) == h]
            if len(ks) != 1:
                rep.fail(f"equalizer: cone {C.names[h]} has {len(ks)} factorizations")
        for h in C.hom(x, w):
            if C.comp(h, phi) != h:
                continue
            ks = [k for k in C.hom(y, w) if C.comp(k, q) == h]
            if len(ks) != 1:
                rep.fail(f"coequalizer: cocone {C.names[h]} has {len(ks)} factorizations")
    return rep


def check_retract_of_splitting(C: FinCategory, phi: int, psi: int) -> Report:
    """If ``phi <= psi`` the splitting object of ``phi`` is a retract of that of ``psi``."""
    _require_idempotent(C, phi)
    _require_idempotent(C, psi)
    if C.dom[phi] != C.dom[psi] or C.comp(phi, psi) != phi:
        raise StructureError(f"{C.names[phi]} is not below {C.names[psi]}")
    sp, ss = find_splitting(C, phi), find_splitting(C, psi)
    if sp is None or ss is None:
        raise StructureError("both idempotents must split")
    y, z = sp.through, ss.through
    rep = Report("retract of splitting")
    found = None
    if y == z:
        found = (C.ident[y], C.ident[y])
    else:
        for sec in C.hom(y, z):
            for ret in C.hom(z, y):
                if C.comp(ret, sec) == C.ident[y]:
                    found = (sec, ret)
                    break
            if found:
                break
    if found is None:
        rep.fail(f"no section/retraction pair between {C.objects[y]} and {C.objects[z]}")
        return rep
    sec, ret = found
    rep.data.update(section=sec, retraction=ret, idempotent_on_target=C.comp(sec, ret))
    # the retract arises by splitting the idempotent sec o ret on z
    e = C.comp(sec, ret)
    if not (is_idempotent(C, e) and C.comp(sec, ret) == e):
        rep.fail("sec o ret is not idempotent")
    return rep


# --- functors --------------------------------------------------------------

def validate_functor(F: Functor) -> Report:
    C, D = F.source, F.target
    if len(F.obj_map) != C.n_objects or len(F.mor_map) != C.n_morphisms:
        raise StructureError("functor maps do not match the source carriers")
    if any(not 0 <= o < D.n_objects for o in F.obj_map) or \
            any(not 0 <= f < D.n_morphisms for f in F.mor_map):
        raise StructureError("functor maps leave the target carriers")
    rep = Report("functor")
    for f in range(C.n_morphisms):
        g = F.mor_map[f]
        if D.dom[g] != F.obj_map[C.dom[f]] or D.cod[g] != F.obj_map[C.cod[f]]:
            rep.fail(f"{C.names[f]} -> {D.names[g]} breaks domain/codomain")
    for x in range(C.n_objects):
        if F.mor_map[C.ident[x]] != D.ident[F.obj_map[x]]:
            rep.fail(f"identity of {C.objects[x]} not preserved")
    if rep.violations:
        return rep
    for f in range(C.n_morphisms):
        for g in range(C.n_morphisms):
            h = C.comp(g, f)
            if h != UNDEF and D.comp(F.mor_map[g], F.mor_map[f]) != F.mor_map[h]:
                rep.fail(f"F({C.names[g]} o {C.names[f]}) != F({C.names[g]}) o F({C.names[f]})")
    return rep


def identity_functor(C: FinCategory) -> Functor:
    return Functor(C, C, tuple(range(C.n_objects)), tuple(range(C.n_morphisms)))


def compose_functors(F: Functor, G: Functor) -> Functor:
    """``G o F``: apply ``F`` first."""
    if F.target != G.source:
        raise StructureError("carrier mismatch: target of F is not the source of G")
    return Functor(F.source, G.target, tuple(G.obj_map[o] for o in F.obj_map),
                   tuple(G.mor_map[f] for f in F.mor_map))


def is_faithful(F: Functor) -> Verdict:
    C = F.source
    for x in range(C.n_objects):
        for y in range(C.n_objects):
            seen = {}
            for f in C.hom(x, y):
                g = F.mor_map[f]
                if g in seen:
                    return Verdict(False, (seen[g], f))
                seen[g] = f
    return Verdict(True)


def is_full(F: Functor) -> Verdict:
    C, D = F.source, F.target
    for x in range(C.n_objects):
        for y in range(C.n_objects):
            image = {F.mor_map[f] for f in C.hom(x, y)}
            for g in D.hom(F.obj_map[x], F.obj_map[y]):
                if g not in image:
                    return Verdict(False, g)
    return Verdict(True)


def is_essentially_surjective(F: Functor) -> Verdict:
    D = F.target
    hit = set(F.obj_map)
    for d in range(D.n_objects):
        if d not in hit and not any(find_iso(D, h, d) for h in hit):
            return Verdict(False, d)
    return Verdict(True)


def is_equivalence(F: Functor) -> Verdict:
    for check in (is_full, is_faithful, is_essentially_surjective):
        v = check(F)
        if not v:
            return Verdict(False, (check.__name__, v.witness))
    return Verdict(True)


def is_isomorphism(F: Functor) -> Verdict:
    C, D = F.source, F.target
    if sorted(F.obj_map) != list(range(D.n_objects)) or C.n_objects != D.n_objects:
        return Verdict(False, "not bijective on objects")
    if sorted(F.mor_map) != list(range(D.n_morphisms)) or C.n_morphisms != D.n_morphisms:
        return Verdict(False, "not bijective on morphisms")
    return Verdict(True)
