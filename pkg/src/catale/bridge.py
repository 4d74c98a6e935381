"""Passage between categories and partial semigroups.

``cat_to_psg`` forgets objects and keeps composition as a partial product;
``psg_to_cat`` takes idempotents as objects and framed elements ``<a, b, f>``
(``b*f*a = f``) as morphisms.  On catales, ``catale_to_cat`` uses the
identities alone and inverts ``cat_to_psg`` on taut categories.
"""
from __future__ import annotations

from itertools import product

import numpy as np

from . import fincat, psemi
from ._report import Report, SearchBoundError, StructureError
from .fincat import FinCategory, Functor
from .psemi import PartialSemigroup, PsgHom

UNDEF = -1
DEFAULT_MAX_SEARCH = 10 ** 7


def cat_to_psg(C: FinCategory) -> PartialSemigroup:
    dom = np.array(C.dom, dtype=np.int64)
    cod = np.array(C.cod, dtype=np.int64)
    t = np.where(dom[:, None] == cod[None, :], C.table, UNDEF) if C.n_morphisms \
        else np.zeros((0, 0), dtype=np.int64)
    return PartialSemigroup(C.names, t)


def cat_to_psg_hom(F: Functor) -> PsgHom:
    return PsgHom(cat_to_psg(F.source), cat_to_psg(F.target), F.mor_map)


def frames(A: PartialSemigroup) -> list[tuple[int, int, int]]:
    """Triples ``(a, b, f)`` with ``a, b`` idempotent and ``b*f*a = f``, in the
    morphism order of :func:`psg_to_cat`."""
    idem = psemi.idempotents_psg(A)
    return [(a, b, f) for a in idem for b in idem for f in range(A.size)
            if A.mul3(b, f, a) == f]


def psg_to_cat(A: PartialSemigroup) -> FinCategory:
    idem = psemi.idempotents_psg(A)
    pos = {a: k for k, a in enumerate(idem)}
    tri = frames(A)
    tix = {t: k for k, t in enumerate(tri)}
    n = len(tri)
    table = np.full((n, n), UNDEF, dtype=np.int64)
    by_cod: dict[int, list[int]] = {}
    for k, (_, b, _) in enumerate(tri):
        by_cod.setdefault(b, []).append(k)
    e = A.elements
    for k, (b, c, g) in enumerate(tri):
        for j in by_cod.get(b, ()):
            a, _, f = tri[j]
            gf = A.mul(g, f)
            if (a, c, gf) not in tix:
                raise StructureError(f"composite {e[g]}*{e[f]} is not framed; input not valid")
            table[k, j] = tix[(a, c, gf)]
    return FinCategory([e[a] for a in idem],
                       [f"<{e[a]},{e[b]},{e[f]}>" for a, b, f in tri],
                       [pos[a] for a, _, _ in tri], [pos[b] for _, b, _ in tri],
                       [tix[(a, a, a)] for a in idem], table)


def catale_to_cat(A: PartialSemigroup) -> FinCategory:
    rep = psemi.is_catale(A)
    if not rep:
        raise StructureError(f"not a catale: {rep.violations[0]}")
    ann = rep.data["annotations"]
    ids = ann.identities
    pos = {a: k for k, a in enumerate(ids)}
    n = A.size
    dom = np.array([pos[d] for d in ann.dom], dtype=np.int64)
    cod = np.array([pos[c] for c in ann.cod], dtype=np.int64)
    composable = dom[:, None] == cod[None, :]
    if n and (A.table[composable] < 0).any():
        raise StructureError("composable pair without product")
    table = np.where(composable, A.table, UNDEF) if n else np.zeros((0, 0), dtype=np.int64)
    return FinCategory([A.elements[a] for a in ids], A.elements, dom, cod, ids, table)


# --- unit, counit, transposes ----------------------------------------------

def unit_cat(C: FinCategory) -> Functor:
    """``x -> id_x`` and ``h -> <id_dom h, id_cod h, h>`` into ``psg_to_cat(cat_to_psg(C))``."""
    A = cat_to_psg(C)
    P = psg_to_cat(A)
    tix = {t: k for k, t in enumerate(frames(A))}
    opos = {a: k for k, a in enumerate(psemi.idempotents_psg(A))}
    F = Functor(C, P, tuple(opos[C.ident[x]] for x in range(C.n_objects)),
                tuple(tix[(C.ident[C.dom[h]], C.ident[C.cod[h]], h)]
                      for h in range(C.n_morphisms)))
    assert fincat.is_full(F) and fincat.is_faithful(F), "unit is not fully faithful"
    return F


def counit_psg(A: PartialSemigroup) -> PsgHom:
    """Projection ``<a, b, f> -> f`` from ``cat_to_psg(psg_to_cat(A))``."""
    P = psg_to_cat(A)
    h = PsgHom(cat_to_psg(P), A, tuple(f for _, _, f in frames(A)))
    return h


def framed_elements(A: PartialSemigroup) -> set[int]:
    return {f for _, _, f in frames(A)}


def transpose_left(G: PsgHom, C: FinCategory) -> Functor:
    """Functor ``C -> psg_to_cat(A)`` induced by a hom ``cat_to_psg(C) -> A``."""
    A = G.target
    P = psg_to_cat(A)
    tix = {t: k for k, t in enumerate(frames(A))}
    opos = {a: k for k, a in enumerate(psemi.idempotents_psg(A))}
    try:
        obj = tuple(opos[G.map[C.ident[x]]] for x in range(C.n_objects))
        mor = tuple(tix[(G.map[C.ident[C.dom[h]]], G.map[C.ident[C.cod[h]]], G.map[h])]
                    for h in range(C.n_morphisms))
    except KeyError as exc:
        raise StructureError("G is not a partial semigroup hom") from exc
    return Functor(C, P, obj, mor)


def transpose_right(F: Functor, A: PartialSemigroup) -> PsgHom:
    """Hom ``cat_to_psg(C) -> A`` given by ``h -> epsilon(F(h))``."""
    tri = frames(A)
    if F.target.n_morphisms != len(tri):
        raise StructureError("functor target is not psg_to_cat(A)")
    return PsgHom(cat_to_psg(F.source), A, tuple(tri[F.mor_map[h]][2]
                                                 for h in range(F.source.n_morphisms)))


# --- exhaustive enumeration -----------------------------------------------

def enumerate_functors(C: FinCategory, D: FinCategory,
                       max_search: int = DEFAULT_MAX_SEARCH) -> list[Functor]:
    """All functors ``C -> D`` by backtracking over object then morphism images."""
    bound = D.n_objects ** C.n_objects * max(1, D.n_morphisms) ** C.n_morphisms
    if bound > max_search:
        raise SearchBoundError(f"functor search space {bound} exceeds {max_search}")
    out = []
    nonid = [f for f in range(C.n_morphisms) if not C.is_identity(f)]
    comp_pairs = [(g, f, C.comp(g, f)) for g in range(C.n_morphisms)
                  for f in range(C.n_morphisms) if C.comp(g, f) != UNDEF]
    for obj in product(range(D.n_objects), repeat=C.n_objects):
        mor = [UNDEF] * C.n_morphisms
        for x in range(C.n_objects):
            mor[C.ident[x]] = D.ident[obj[x]]

        def extend(k: int) -> None:
            if k == len(nonid):
                if all(D.comp(mor[g], mor[f]) == mor[h] for g, f, h in comp_pairs):
                    out.append(Functor(C, D, obj, tuple(mor)))
                return
            f = nonid[k]
            for g in D.hom(obj[C.dom[f]], obj[C.cod[f]]):
                mor[f] = g
                if _partial_ok(C, D, mor, f):
                    extend(k + 1)
            mor[f] = UNDEF

        extend(0)
    return out


def _partial_ok(C: FinCategory, D: FinCategory, mor: list[int], f: int) -> bool:
    for g in range(C.n_morphisms):
        if mor[g] == UNDEF:
            continue
        for a, b in ((g, f), (f, g)):
            h = C.comp(a, b)
            if h != UNDEF and mor[h] != UNDEF and D.comp(mor[a], mor[b]) != mor[h]:
                return False
    return True


def enumerate_psg_homs(A: PartialSemigroup, B: PartialSemigroup,
                       max_search: int = DEFAULT_MAX_SEARCH) -> list[PsgHom]:
    bound = max(1, B.size) ** A.size
    if bound > max_search:
        raise SearchBoundError(f"hom search space {bound} exceeds {max_search}")
    out = []
    m = [UNDEF] * A.size
    pairs = [(a, b, A.mul(a, b)) for a in range(A.size) for b in range(A.size)
             if A.mul(a, b) >= 0]

    def extend(k: int) -> None:
        if k == A.size:
            out.append(PsgHom(A, B, tuple(m)))
            return
        for v in range(B.size):
            m[k] = v
            if all(B.mul(m[a], m[b]) == m[c] for a, b, c in pairs
                   if max(a, b, c) <= k):
                extend(k + 1)
        m[k] = UNDEF

    extend(0)
    return out


def verify_adjunction(C: FinCategory, A: PartialSemigroup,
                      max_search: int = DEFAULT_MAX_SEARCH) -> Report:
    """Enumerate both hom-sets and check that the transposes are inverse bijections."""
    rep = Report("adjunction")
    P = psg_to_cat(A)
    functors = enumerate_functors(C, P, max_search)
    homs = enumerate_psg_homs(cat_to_psg(C), A, max_search)
    rep.data.update(functors=len(functors), homs=len(homs))
    hom_maps = {h.map for h in homs}
    images = set()
    for F in functors:
        G = transpose_right(F, A)
        if G.map not in hom_maps:
            rep.fail(f"transpose of functor {F.mor_map} is not an enumerated hom")
        if transpose_left(G, C).mor_map != F.mor_map or transpose_left(G, C).obj_map != F.obj_map:
            rep.fail(f"functor {F.mor_map} not recovered from its transpose")
        images.add(G.map)
    functor_keys = {(F.obj_map, F.mor_map) for F in functors}
    for G in homs:
        F = transpose_left(G, C)
        if (F.obj_map, F.mor_map) not in functor_keys:
            rep.fail(f"transpose of hom {G.map} is not an enumerated functor")
        if transpose_right(F, A).map != G.map:
            rep.fail(f"hom {G.map} not recovered from its transpose")
    if len(images) != len(functors) or images != hom_maps:
        rep.fail(f"no bijection: {len(functors)} functors, {len(homs)} homs")
    return rep


# --- taut categories and catales ------------------------------------------

def taut_transpose(G: PsgHom, C: FinCategory) -> Functor:
    """Functor ``catale_to_cat(A) -> C`` sending an identity ``a`` to the object
    splitting ``G(a)`` and ``f : a -> b`` to ``q_b o G(f) o i_a``."""
    A = G.source
    taut = fincat.is_taut(C)
    if not taut:
        raise StructureError(f"target category is not taut: {taut.witness[0]}")
    D = catale_to_cat(A)
    if not psemi.validate_psg_hom(G):
        raise StructureError("G is not a partial semigroup hom")
    ids = psemi.identities_psg(A)
    splits = {}
    for a in ids:
        s = fincat.find_splitting(C, G.map[a])
        splits[a] = s
    obj = tuple(splits[a].through for a in ids)
    mor = []
    for f in range(A.size):
        a, b = ids[D.dom[f]], ids[D.cod[f]]
        mor.append(C.comp(C.comp(splits[b].retraction, G.map[f]), splits[a].section))
    Gp = Functor(D, C, obj, tuple(mor))
    r = fincat.validate_functor(Gp)
    assert r, f"induced functor invalid: {r.violations[:1]}"
    for f in range(A.size):
        a, b = ids[D.dom[f]], ids[D.cod[f]]
        back = C.comp(C.comp(splits[b].section, mor[f]), splits[a].retraction)
        assert back == G.map[f], "G is not recovered from its transpose"
    return Gp


def preserves_identities(G: PsgHom) -> bool:
    tid = set(psemi.identities_psg(G.target))
    return all(G.map[a] in tid for a in psemi.identities_psg(G.source))


def verify_equivalence(C: FinCategory | None = None, A: PartialSemigroup | None = None) -> Report:
    """Check that the taut/catale round trips are isomorphisms."""
    if (C is None) == (A is None):
        raise TypeError("pass exactly one of C or A")
    rep = Report("taut/catale equivalence")
    if C is not None:
        t = fincat.is_taut(C)
        if not t:
            raise StructureError(f"category is not taut: {t.witness[0]}")
        A = cat_to_psg(C)
        D = catale_to_cat(A)
        # counit: the object id_x goes to x, each morphism to itself
        eps = Functor(D, C, tuple(C.dom[i] for i in D.ident), tuple(range(C.n_morphisms)))
        v = fincat.validate_functor(eps)
        if not v:
            rep.fail(f"counit not a functor: {v.violations[0]}")
        elif not fincat.is_isomorphism(eps):
            rep.fail("counit is not an isomorphism")
        rep.data["counit"] = eps
    else:
        cr = psemi.is_catale(A)
        if not cr:
            raise StructureError(f"not a catale: {cr.violations[0]}")
    B = cat_to_psg(catale_to_cat(A))
    eta = PsgHom(A, B, tuple(range(A.size)))
    if not psemi.is_psg_isomorphism(eta):
        rep.fail("unit is not a partial semigroup isomorphism")
    rep.data["unit"] = eta
    return rep
