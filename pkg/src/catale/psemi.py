"""Partial semigroups given by partial multiplication tables.

``table[a, b]`` is the index of ``a * b`` or ``-1`` when the product is
undefined.  The associativity law used throughout is the special-Frobenius
biconditional: ``a*b`` and ``b*c`` are both defined exactly when ``(a*b)*c``
and ``a*(b*c)`` are, and then the two agree.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product
from typing import Iterable, Sequence

import numpy as np

from ._report import Report, StructureError

UNDEF = -1


class PartialSemigroup:
    def __init__(self, elements: Sequence[str], table) -> None:
        self.elements = tuple(elements)
        n = len(self.elements)
        t = np.array(table, dtype=np.int64).reshape(n, n)
        t.setflags(write=False)
        self.table = t
        if len(set(self.elements)) != n:
            raise ValueError("element names must be unique")
        if ((t < UNDEF) | (t >= n)).any():
            raise ValueError("table entries must be element indices or -1")

    @classmethod
    def build(cls, elements: Sequence[str], product_rows: Iterable[tuple[str, str, str]]):
        elements = list(elements)
        ix = {e: k for k, e in enumerate(elements)}
        t = np.full((len(elements), len(elements)), UNDEF, dtype=np.int64)
        for a, b, c in product_rows:
            t[ix[a], ix[b]] = ix[c]
        return cls(elements, t)

    @property
    def size(self) -> int:
        return len(self.elements)

    @cached_property
    def _rows(self) -> list[list[int]]:
        return self.table.tolist()

    def mul(self, a: int, b: int) -> int:
        """Index of ``a * b``; -1 if undefined or either argument is -1."""
        if a < 0 or b < 0:
            return UNDEF
        return self._rows[a][b]

    def mul3(self, a: int, b: int, c: int) -> int:
        """``a*b*c`` when both bracketings are defined and agree, else -1."""
        left = self.mul(self.mul(a, b), c)
        right = self.mul(a, self.mul(b, c))
        return left if left == right else UNDEF

    def index(self, name: str) -> int:
        return self._index[name]

    @cached_property
    def _index(self) -> dict[str, int]:
        return {e: k for k, e in enumerate(self.elements)}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PartialSemigroup):
            return NotImplemented
        return self.elements == other.elements and np.array_equal(self.table, other.table)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"PartialSemigroup({self.size} elements, {int((self.table >= 0).sum())} products)"


@dataclass(frozen=True, eq=False)
class PsgHom:
    source: PartialSemigroup
    target: PartialSemigroup
    map: tuple[int, ...]

    def __call__(self, a: int) -> int:
        return self.map[a]


# --- Frobenius / associativity ----------------------------------------------

def assoc_violations(tables: np.ndarray) -> np.ndarray:
    """Boolean mask ``(..., a, b, c)`` of triples breaking the biconditional.

    ``tables`` has shape ``(..., n, n)`` with -1 for undefined products.
    """
    t = np.asarray(tables)
    n = t.shape[-1]
    # pad so that "undefined" is the absorbing index n
    p = np.full(t.shape[:-2] + (n + 1, n + 1), n, dtype=np.int64)
    p[..., :n, :n] = np.where(t < 0, n, t)
    batch = t.shape[:-2]
    idx = np.arange(n)
    ab = p[..., :n, :n]                                  # (..., a, b)
    ab_def = ab < n
    lhs = ab_def[..., :, :, None] & ab_def[..., None, :, :]
    flat = p.reshape((-1, n + 1, n + 1))
    abf = ab.reshape((-1, n, n))
    k = np.arange(flat.shape[0])[:, None, None, None]
    # (a*b)*c  and  a*(b*c)
    left = flat[k, abf[:, :, :, None], idx[None, None, None, :]]
    right = flat[k, idx[None, :, None, None], abf[:, None, :, :]]
    left = left.reshape(batch + (n, n, n))
    right = right.reshape(batch + (n, n, n))
    rhs = (left < n) & (right < n) & (left == right)
    return lhs != rhs


def validate_psg(A: PartialSemigroup) -> Report:
    rep = Report("partial semigroup")
    if A.size == 0:
        return rep
    bad = assoc_violations(A.table)
    e = A.elements
    for a, b, c in np.argwhere(bad):
        ab, bc = A.mul(a, b), A.mul(b, c)
        rep.fail(f"triple ({e[a]},{e[b]},{e[c]}): "
                 f"{e[a]}*{e[b]}{'' if ab >= 0 else ' undefined'}, "
                 f"{e[b]}*{e[c]}{'' if bc >= 0 else ' undefined'}, "
                 f"(ab)c={_name(A, A.mul(ab, c))}, a(bc)={_name(A, A.mul(a, bc))}")
    return rep


def _name(A: PartialSemigroup, k: int) -> str:
    return A.elements[k] if k >= 0 else "undefined"


def _require_valid(A: PartialSemigroup) -> None:
    r = validate_psg(A)
    if not r:
        raise StructureError(f"invalid partial semigroup: {r.violations[0]}")


# --- spider form --------------------------------------------------------------

def _partitions(length: int):
    """Cut points ``0 < n1 < ... < n_m = length - 1`` on the index interval
    ``[0, length - 1]``; blocks share their end points."""
    inner = range(1, length - 1)
    for r in range(0, length - 1):
        for cuts in combinations(inner, r):
            yield (0,) + cuts + (length - 1,)


def word_value(A: PartialSemigroup, word: tuple[int, ...], memo: dict | None = None) -> int:
    """The composite of ``word`` if every bracketing is defined and all agree, else -1."""
    memo = {} if memo is None else memo
    if len(word) == 1:
        return word[0]
    if word in memo:
        return memo[word]
    val = None
    for k in range(1, len(word)):
        left = word_value(A, word[:k], memo)
        right = word_value(A, word[k:], memo)
        v = A.mul(left, right)
        if v < 0 or (val is not None and v != val):
            val = UNDEF
            break
        val = v
    memo[word] = val
    return val


def spider_check(A: PartialSemigroup, maxlen: int, first_only: bool = False) -> Report:
    """For each word up to ``maxlen`` and each partition into overlapping blocks,
    the word is defined iff every block is."""
    if maxlen < 3:
        raise StructureError("maxlen must be at least 3")
    rep = Report("spider form")
    memo: dict = {}
    e = A.elements
    for length in range(3, maxlen + 1):
        for word in product(range(A.size), repeat=length):
            whole = word_value(A, word, memo) >= 0
            for cuts in _partitions(length):
                blocks = all(word_value(A, word[i:j + 1], memo) >= 0
                             for i, j in zip(cuts, cuts[1:]))
                if whole != blocks:
                    rep.fail(f"word {'*'.join(e[w] for w in word)} cut at {cuts[1:-1]}: "
                             f"composite {'defined' if whole else 'undefined'}, "
                             f"blocks {'all defined' if blocks else 'not all defined'}")
                    if first_only:
                        return rep
    return rep


def spider_violation_mask(tables: np.ndarray, maxlen: int) -> np.ndarray:
    """Vectorized :func:`spider_check` over a stack of tables ``(T, n, n)``;
    returns a boolean ``(T,)`` marking tables with some violation."""
    if maxlen < 3:
        raise StructureError("maxlen must be at least 3")
    t = np.asarray(tables)
    T, n = t.shape[0], t.shape[-1]
    p = np.full((T, n + 1, n + 1), n, dtype=np.int64)
    p[:, :n, :n] = np.where(t < 0, n, t)
    rows = np.arange(T)
    val: dict[tuple[int, ...], np.ndarray] = {
        (a,): np.full(T, a, dtype=np.int64) for a in range(n)}

    def value(word):
        if word in val:
            return val[word]
        out = None
        for k in range(1, len(word)):
            v = p[rows, value(word[:k]), value(word[k:])]
            out = v if out is None else np.where(out == v, out, n)
        val[word] = out
        return out

    bad = np.zeros(T, dtype=bool)
    for length in range(3, maxlen + 1):
        cuts_list = list(_partitions(length))
        for word in product(range(n), repeat=length):
            whole = value(word) < n
            for cuts in cuts_list:
                blocks = np.ones(T, dtype=bool)
                for i, j in zip(cuts, cuts[1:]):
                    blocks &= value(word[i:j + 1]) < n
                bad |= whole != blocks
    return bad


# --- identities and idempotents ----------------------------------------------

def idempotents_psg(A: PartialSemigroup) -> list[int]:
    return [a for a in range(A.size) if A.mul(a, a) == a]


def is_identity(A: PartialSemigroup, a: int) -> bool:
    """``a*a`` defined, ``f*a = f`` whenever defined and ``a*g = g`` whenever
    defined.  The self-composability clause stands in for the trailing
    "moreover a*f is defined" of the definition; the universal reading would
    rule out catales with two identities."""
    if A.mul(a, a) < 0:
        return False
    for f in range(A.size):
        fa, af = A.mul(f, a), A.mul(a, f)
        if (fa >= 0 and fa != f) or (af >= 0 and af != f):
            return False
    return True


def identities_psg(A: PartialSemigroup) -> list[int]:
    return [a for a in range(A.size) if is_identity(A, a)]


def check_identity_lemma(A: PartialSemigroup) -> Report:
    rep = Report("identity lemma")
    ids = identities_psg(A)
    e = A.elements
    for a, b in product(ids, ids):
        if a == b:
            continue
        if A.mul(a, b) >= 0:
            rep.fail(f"(a) {e[a]}*{e[b]} defined for distinct identities")
        for f in range(A.size):
            if A.mul(a, f) >= 0 and A.mul(b, f) >= 0:
                rep.fail(f"(b) {e[a]}*{e[f]} and {e[b]}*{e[f]} both defined")
            if A.mul(f, a) >= 0 and A.mul(f, b) >= 0:
                rep.fail(f"(c) {e[f]}*{e[a]} and {e[f]}*{e[b]} both defined")
    return rep


def dom_of(A: PartialSemigroup, f: int) -> int:
    """The identity ``a`` with ``f*a = f``."""
    for a in identities_psg(A):
        if A.mul(f, a) == f:
            return a
    raise StructureError(f"{A.elements[f]} has no right identity")


def cod_of(A: PartialSemigroup, f: int) -> int:
    """The identity ``b`` with ``b*f = f``."""
    for b in identities_psg(A):
        if A.mul(b, f) == f:
            return b
    raise StructureError(f"{A.elements[f]} has no left identity")


@dataclass(frozen=True)
class IdempotentOrder:
    relation: frozenset  # pairs (a, b) with a*b = a
    maximal: tuple[int, ...]


def idempotent_order_psg(A: PartialSemigroup) -> IdempotentOrder:
    idem = idempotents_psg(A)
    rel = frozenset((a, b) for a in idem for b in idem if A.mul(a, b) == a)
    maximal = tuple(a for a in idem
                    if all((b, a) in rel for b in idem if (a, b) in rel))
    return IdempotentOrder(rel, maximal)


@dataclass(frozen=True)
class CataleAnnotations:
    identities: tuple[int, ...]
    idempotents: tuple[int, ...]
    dom: tuple[int, ...]
    cod: tuple[int, ...]


def is_catale(A: PartialSemigroup) -> Report:
    """Framing axiom (a) and unique-splitting axiom (b)."""
    rep = Report("catale")
    e = A.elements
    ids = identities_psg(A)
    idset = set(ids)
    for f in range(A.size):
        if not any(A.mul3(b, f, a) >= 0 for a in ids for b in ids):
            rep.fail(f"axiom (a): {e[f]} is not framed by identities")
            rep.data.setdefault("witness", ("a", f))
    for phi in idempotents_psg(A):
        splits = {}
        for i, q in product(range(A.size), repeat=2):
            if A.mul(i, q) == phi:
                qi = A.mul(q, i)
                if qi in idset:
                    splits.setdefault(qi, (i, q))
        if not splits:
            rep.fail(f"axiom (b): idempotent {e[phi]} has no splitting through an identity")
            rep.data.setdefault("witness", ("b-missing", phi))
        elif len(splits) > 1:
            (x, (i, q)), (y, (j, r)) = sorted(splits.items())[:2]
            rep.fail(f"axiom (b): idempotent {e[phi]} splits as {e[i]}*{e[q]} through {e[x]} "
                     f"and as {e[j]}*{e[r]} through {e[y]}")
            rep.data.setdefault("witness", ("b-unique", phi, (i, q), (j, r)))
    if rep.ok:
        rep.data["annotations"] = catale_annotations(A)
    return rep


def catale_annotations(A: PartialSemigroup) -> CataleAnnotations:
    return CataleAnnotations(tuple(identities_psg(A)), tuple(idempotents_psg(A)),
                             tuple(dom_of(A, f) for f in range(A.size)),
                             tuple(cod_of(A, f) for f in range(A.size)))


# --- homomorphisms --------------------------------------------------------------

def validate_psg_hom(h: PsgHom) -> Report:
    A, B = h.source, h.target
    if len(h.map) != A.size or any(not 0 <= x < B.size for x in h.map):
        raise StructureError("hom map does not match the carriers")
    rep = Report("partial semigroup hom")
    for a, b in product(range(A.size), repeat=2):
        ab = A.mul(a, b)
        if ab < 0:
            continue
        img = B.mul(h.map[a], h.map[b])
        if img != h.map[ab]:
            rep.fail(f"h({A.elements[a]}*{A.elements[b]}) != h({A.elements[a]})*h({A.elements[b]})")
    if rep.ok:
        tid = set(identities_psg(B))
        for a in identities_psg(A):
            if h.map[a] not in tid:
                rep.notes.append(f"identity {A.elements[a]} maps to non-identity "
                                 f"idempotent {B.elements[h.map[a]]}")
    return rep


def is_psg_isomorphism(h: PsgHom) -> bool:
    """Bijective, and products are defined in the source exactly when defined
    in the target."""
    A, B = h.source, h.target
    if A.size != B.size or sorted(h.map) != list(range(B.size)):
        return False
    m = np.array(h.map, dtype=np.int64)
    mapped = np.where(A.table >= 0, m[np.where(A.table >= 0, A.table, 0)], UNDEF)
    return bool(np.array_equal(B.table[np.ix_(m, m)], mapped))
