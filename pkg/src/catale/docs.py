"""JSON documents and DOT export for every structure kind."""
from __future__ import annotations

import json
from typing import Any

import numpy as np

from ._report import StructureError
from .fincat import UNDEF, FinCategory
from .locales import FinSpace, MeetSemilattice
from .psemi import PartialSemigroup

Structure = FinCategory | PartialSemigroup | FinSpace | MeetSemilattice


def to_doc(s: Structure) -> dict[str, Any]:
    if isinstance(s, FinCategory):
        n = s.names
        return {
            "objects": list(s.objects),
            "morphisms": [{"name": n[f], "dom": s.objects[s.dom[f]], "cod": s.objects[s.cod[f]]}
                          for f in range(s.n_morphisms)],
            "identities": {s.objects[x]: n[i] for x, i in enumerate(s.ident) if i != UNDEF},
            "compose": [[n[g], n[f], n[int(h)]] for (g, f), h in np.ndenumerate(s.table)
                        if h != UNDEF],
        }
    if isinstance(s, PartialSemigroup):
        e = s.elements
        return {"elements": list(e),
                "product": [[e[a], e[b], e[int(c)]] for (a, b), c in np.ndenumerate(s.table)
                            if c != UNDEF]}
    if isinstance(s, FinSpace):
        return {"points": list(s.points), "opens": s.open_sets()}
    if isinstance(s, MeetSemilattice):
        e = s.elements
        return {"elements": list(e),
                "leq": [[e[a], e[b]] for a, b in zip(*np.nonzero(s.leq))],
                "top": e[s.top]}
    raise TypeError(f"no document form for {type(s).__name__}")


def kind_of(doc: dict) -> str:
    keys = set(doc)
    if {"objects", "morphisms"} <= keys:
        return "category"
    if {"elements", "product"} <= keys:
        return "psg"
    if {"points", "opens"} <= keys:
        return "space"
    if {"elements", "leq", "top"} <= keys:
        return "msl"
    raise StructureError(f"unrecognised document with keys {sorted(keys)}")


def _names(xs, what: str) -> list[str]:
    if not isinstance(xs, list) or not all(isinstance(x, str) for x in xs):
        raise StructureError(f"{what} must be a list of strings")
    if len(set(xs)) != len(xs):
        raise StructureError(f"duplicate {what}")
    return xs


def _rows(rows, width: int, known: set[str], what: str) -> list[tuple[str, ...]]:
    if not isinstance(rows, list):
        raise StructureError(f"{what} must be a list")
    out = []
    for r in rows:
        if not isinstance(r, list) or len(r) != width:
            raise StructureError(f"{what} rows must have {width} entries: {r!r}")
        bad = [x for x in r if x not in known]
        if bad:
            raise StructureError(f"unknown name {bad[0]!r} in {what}")
        out.append(tuple(r))
    return out


def from_doc(doc: Any) -> Structure:
    """Parse a document; raises :class:`StructureError` on malformed input."""
    if not isinstance(doc, dict):
        raise StructureError("document must be a JSON object")
    kind = kind_of(doc)
    if kind == "category":
        objs = _names(doc["objects"], "objects")
        mors = doc["morphisms"]
        if not isinstance(mors, list):
            raise StructureError("morphisms must be a list")
        triples = []
        for m in mors:
            if not isinstance(m, dict) or set(m) != {"name", "dom", "cod"}:
                raise StructureError(f"bad morphism entry {m!r}")
            if m["dom"] not in objs or m["cod"] not in objs:
                raise StructureError(f"morphism {m['name']!r} has unknown endpoint")
            triples.append((m["name"], m["dom"], m["cod"]))
        names = _names([t[0] for t in triples], "morphism names")
        ids = doc.get("identities", {})
        if not isinstance(ids, dict) or any(o not in objs or i not in names for o, i in ids.items()):
            raise StructureError("identities must map objects to morphism names")
        comp = _rows(doc.get("compose", []), 3, set(names), "compose")
        if len({(g, f) for g, f, _ in comp}) != len(comp):
            raise StructureError("compose lists a pair twice")
        return FinCategory.build(objs, triples, ids, comp)
    if kind == "psg":
        els = _names(doc["elements"], "elements")
        prod = _rows(doc["product"], 3, set(els), "product")
        if len({(a, b) for a, b, _ in prod}) != len(prod):
            raise StructureError("product lists a pair twice")
        return PartialSemigroup.build(els, prod)
    if kind == "space":
        pts = _names(doc["points"], "points")
        opens = doc["opens"]
        if not isinstance(opens, list) or not all(isinstance(u, list) and set(u) <= set(pts)
                                                  for u in opens):
            raise StructureError("opens must be lists of points")
        return FinSpace.build(pts, opens)
    els = _names(doc["elements"], "elements")
    leq = _rows(doc["leq"], 2, set(els), "leq")
    if doc["top"] not in els:
        raise StructureError("top is not an element")
    return MeetSemilattice.build(els, leq, doc["top"])


def dumps(s: Structure) -> str:
    return json.dumps(to_doc(s), separators=(",", ":"))


def loads(text: str) -> Structure:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StructureError(f"not JSON: {exc}") from None
    return from_doc(doc)


def _q(s: str) -> str:
    return json.dumps(s)


def to_dot(s: Structure) -> str:
    """Graphviz text.  Categories draw non-identity morphisms as edges; a psg
    is drawn as its derived category; spaces and semilattices as Hasse diagrams."""
    if isinstance(s, PartialSemigroup):
        from .bridge import psg_to_cat
        s = psg_to_cat(s)
    lines = ["digraph {"]
    if isinstance(s, FinCategory):
        lines += [f"  {_q(o)};" for o in s.objects]
        lines += [f"  {_q(s.objects[s.dom[f]])} -> {_q(s.objects[s.cod[f]])} [label={_q(s.names[f])}];"
                  for f in range(s.n_morphisms) if not s.is_identity(f)]
    elif isinstance(s, MeetSemilattice):
        e, n = s.elements, s.size
        lines += [f"  {_q(x)};" for x in e]
        for a in range(n):
            for b in range(n):
                if a != b and s.leq[a, b] and not any(
                        c not in (a, b) and s.leq[a, c] and s.leq[c, b] for c in range(n)):
                    lines.append(f"  {_q(e[a])} -> {_q(e[b])};")
    elif isinstance(s, FinSpace):
        names = [_q(",".join(u)) for u in s.open_sets()]
        lines += [f"  {x};" for x in names]
        U = s.opens
        for a, u in enumerate(U):
            for b, v in enumerate(U):
                if u != v and u & ~v == 0 and not any(
                        w not in (u, v) and u & ~w == 0 and w & ~v == 0 for w in U):
                    lines.append(f"  {names[a]} -> {names[b]};")
    else:
        raise TypeError(f"no DOT form for {type(s).__name__}")
    lines.append("}")
    return "\n".join(lines) + "\n"
