"""Brute-force reference implementations, written without the package's numpy
tables so that they can serve as independent oracles."""
from __future__ import annotations

from itertools import combinations, permutations, product


def functions(n: int) -> list[tuple[int, ...]]:
    return list(product(range(n), repeat=n))


def after(g, f):
    """``g o f`` for functions given as value tuples."""
    return tuple(g[f[x]] for x in range(len(f)))


def category_ok(objects, dom, cod, ident, comp) -> bool:
    """``comp`` is a dict ``(g, f) -> g o f``."""
    m = len(dom)
    for g, f in product(range(m), repeat=2):
        composable = dom[g] == cod[f]
        if composable != ((g, f) in comp):
            return False
        if composable:
            h = comp[g, f]
            if dom[h] != dom[f] or cod[h] != cod[g]:
                return False
    for f in range(m):
        if comp.get((f, ident[dom[f]])) != f or comp.get((ident[cod[f]], f)) != f:
            return False
    for h, g, f in product(range(m), repeat=3):
        if (h, g) in comp and (g, f) in comp:
            if comp[comp[h, g], f] != comp[h, comp[g, f]]:
                return False
    return True


def as_dict(C) -> dict:
    return {(g, f): int(C.table[g, f]) for g in range(C.n_morphisms)
            for f in range(C.n_morphisms) if C.table[g, f] >= 0}


def psg_ok(table) -> bool:
    """Frobenius biconditional with equal composites, triple by triple."""
    n = len(table)

    def mul(a, b):
        if a is None or b is None:
            return None
        v = table[a][b]
        return None if v < 0 else v

    for a, b, c in product(range(n), repeat=3):
        lhs = mul(a, b) is not None and mul(b, c) is not None
        left, right = mul(mul(a, b), c), mul(a, mul(b, c))
        rhs = left is not None and right is not None and left == right
        if lhs != rhs:
            return False
    return True


def bracketings(word):
    """Every full bracketing of a word, as nested pairs."""
    if len(word) == 1:
        yield word[0]
        return
    for k in range(1, len(word)):
        for left in bracketings(word[:k]):
            for right in bracketings(word[k:]):
                yield (left, right)


def evaluate(table, tree):
    if isinstance(tree, int):
        return tree
    a, b = evaluate(table, tree[0]), evaluate(table, tree[1])
    if a is None or b is None or table[a][b] < 0:
        return None
    return table[a][b]


def word_defined(table, word) -> bool:
    vals = {evaluate(table, t) for t in bracketings(word)}
    return None not in vals and len(vals) == 1


def spider_ok(table, maxlen) -> bool:
    n = len(table)
    for length in range(3, maxlen + 1):
        for word in product(range(n), repeat=length):
            whole = word_defined(table, word)
            inner = range(1, length - 1)
            for r in range(length - 1):
                for cuts in combinations(inner, r):
                    cuts = (0,) + cuts + (length - 1,)
                    blocks = all(word_defined(table, word[i:j + 1]) for i, j in zip(cuts, cuts[1:]))
                    if whole != blocks:
                        return False
    return True


def topologies(n: int) -> list[frozenset[int]]:
    """Every family of subsets of ``n`` points containing empty and full and
    closed under union and intersection."""
    full = (1 << n) - 1
    middle = [u for u in range(1 << n) if u not in (0, full)]
    out = []
    for bits in range(1 << len(middle)):
        fam = {0, full} | {middle[k] for k in range(len(middle)) if bits >> k & 1}
        if all(u | v in fam and u & v in fam for u in fam for v in fam):
            out.append(frozenset(fam))
    return out


def order_points(elements, le, top, variant):
    """Subsets satisfying the point conditions, scanned over all ``2^n`` masks."""
    n = len(elements)

    def meet(a, c):
        lbs = [x for x in range(n) if le(x, a) and le(x, c)]
        return next(x for x in lbs if all(le(y, x) for y in lbs))

    bottoms = [b for b in range(n) if all(le(b, x) for x in range(n))]
    out = []
    for mask in range(1 << n):
        P = {a for a in range(n) if mask >> a & 1}
        if top in P:
            continue
        if any(a not in P for c in P for a in range(n) if le(a, c)):
            continue
        if any(meet(a, c) in P and a not in P and c not in P for a in range(n) for c in range(n)):
            continue
        if variant == "strict":
            if not bottoms or bottoms[0] not in P:
                continue
            ubs = lambda a, c: [x for x in range(n) if le(a, x) and le(c, x)]
            bad = False
            for a in P:
                for c in P:
                    us = ubs(a, c)
                    j = [x for x in us if all(le(x, y) for y in us)]
                    if not j or j[0] not in P:
                        bad = True
            if bad:
                continue
        out.append(mask)
    return out


def isomorphic_categories(C, D) -> bool:
    """Search over bijections of morphisms that respect identities and composition."""
    if C.n_morphisms != D.n_morphisms or C.n_objects != D.n_objects:
        return False
    m = C.n_morphisms
    cd, dd = as_dict(C), as_dict(D)
    for perm in permutations(range(m)):
        if {(perm[g], perm[f]): perm[h] for (g, f), h in cd.items()} == dd and \
                {perm[i] for i in C.ident} == set(D.ident):
            return True
    return False
