"""Canonical labelling by colour refinement plus individualization.

Every structure is flattened to a relational structure: a universe
``0..n-1``, an initial colour per element, and a list of named relations
(tuples over the universe).  The certificate is the lexicographically least
encoding over the leaves of the individualization tree, so two structures
get the same certificate exactly when they are isomorphic.  Subtrees that
are images of explored ones under an automorphism already found are skipped.
"""
from __future__ import annotations

from itertools import permutations
from typing import Sequence

import numpy as np

from ._report import SearchBoundError

Relations = Sequence[tuple[str, Sequence[tuple[int, ...]]]]

MAX_LEAVES = 200_000


class _Incidence:
    """Relations packed into one padded array, ready for refinement rounds."""

    def __init__(self, n: int, rels: Relations):
        self.n = n
        width = max((len(t) for _, ts in rels for t in ts), default=0)
        blocks = []
        for rid, (_, tuples) in enumerate(rels):
            for t in tuples:
                blocks.append(list(t) + [-1] * (width - len(t)) + [rid])
        self.width = width
        self.tuples = np.array(blocks, dtype=np.int64).reshape(len(blocks), width + 1)

    def refine_once(self, colors: np.ndarray) -> np.ndarray:
        """Rank elements by old colour plus the multiset of coloured tuples they sit in."""
        n, w, T = self.n, self.width, self.tuples
        if not len(T):
            return _dense(colors[:, None])
        cols = np.where(T[:, :w] >= 0, colors[np.maximum(T[:, :w], 0)], -1)
        xs, keys = [], []
        for p in range(w):
            live = T[:, p] >= 0
            xs.append(T[live, p])
            keys.append(np.column_stack([T[live, w], np.full(live.sum(), p), cols[live]]))
        x = np.concatenate(xs)
        ids = _dense(np.concatenate(keys), radix=n + 2)
        m = int(ids.max()) + 1
        uniq, counts = np.unique(x * m + ids, return_counts=True)
        owner, which = uniq // m, uniq % m
        # one padded row per element: old colour, then (id, count) pairs in order
        starts = np.searchsorted(owner, np.arange(n))
        pos = np.arange(len(owner)) - starts[owner]
        width = int(pos.max()) + 1 if len(pos) else 0
        rows = np.full((n, 1 + 2 * width), -1, dtype=np.int64)
        rows[:, 0] = colors
        rows[owner, 1 + 2 * pos] = which
        rows[owner, 2 + 2 * pos] = counts
        full = list(map(tuple, rows.tolist()))
        rank = {r: k for k, r in enumerate(sorted(set(full)))}
        return np.array([rank[r] for r in full], dtype=np.int64)


def _dense(rows: np.ndarray, radix: int | None = None) -> np.ndarray:
    """Rank of each row in lexicographic order of distinct rows."""
    if not len(rows):
        return np.zeros(0, dtype=np.int64)
    if radix is not None and rows.shape[1] * np.log2(radix) < 62 and rows.max() < radix - 1:
        # entries lie in [-1, radix - 2], so a positional code keeps the order
        code = np.zeros(len(rows), dtype=np.int64)
        for col in rows.T:
            code = code * radix + (col + 1)
        return np.unique(code, return_inverse=True)[1].reshape(-1)
    order = np.lexsort(rows.T[::-1])
    srt = rows[order]
    step = np.any(srt[1:] != srt[:-1], axis=1)
    rank = np.concatenate([[0], np.cumsum(step)])
    out = np.empty(len(rows), dtype=np.int64)
    out[order] = rank
    return out


def _refine(colors: np.ndarray, inc: _Incidence) -> np.ndarray:
    k = len(np.unique(colors))
    while True:
        new = inc.refine_once(colors)
        k_new = int(new.max()) + 1 if len(new) else 0
        if k_new == k:
            return new
        colors, k = new, k_new


def _encode(order: list[int], colors0: Sequence[int], rels: Relations):
    lab = [0] * len(order)
    for new, old in enumerate(order):
        lab[old] = new
    unary = tuple(colors0[old] for old in order)
    body = tuple((name, tuple(sorted(tuple(lab[x] for x in t) for t in tuples)))
                 for name, tuples in rels)
    return (len(order), unary, body), lab


def _orbits(cell: list[int], autos: list[list[int]]) -> dict[int, int]:
    parent = {x: x for x in cell}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in autos:
        for x in cell:
            y = g[x]
            if y in parent:
                a, b = find(x), find(y)
                if a != b:
                    parent[max(a, b)] = min(a, b)
    return {x: find(x) for x in cell}


def certificate(n: int, colors0: Sequence[int], rels: Relations,
                max_leaves: int = MAX_LEAVES):
    """Return ``(certificate, labelling)``; ``labelling[old] = new``."""
    inc = _Incidence(n, rels)
    base = sorted(set(colors0))
    start = np.array([base.index(c) for c in colors0], dtype=np.int64)
    best = None
    autos: list[list[int]] = []
    seen: dict = {}
    leaves = 0

    def search(colors: np.ndarray, fixed: tuple[int, ...]) -> None:
        nonlocal best, leaves
        colors = _refine(colors, inc)
        cells: dict[int, list[int]] = {}
        for x, c in enumerate(colors.tolist()):
            cells.setdefault(c, []).append(x)
        target = None
        for c in sorted(cells):
            if len(cells[c]) > 1:
                target = cells[c]
                break
        if target is None:
            leaves += 1
            if leaves > max_leaves:
                raise SearchBoundError("canonical labelling search too large")
            order = sorted(range(n), key=lambda x: colors[x])
            enc = _encode(order, colors0, rels)
            if best is None or enc[0] < best[0]:
                best = enc
            twin = seen.setdefault(enc[0], enc[1])
            if twin is not enc[1]:
                # two leaves give the same structure: record the automorphism
                inv = {v: k for k, v in enumerate(twin)}
                autos.append([inv[enc[1][x]] for x in range(n)])
            return
        tried: list[int] = []
        for x in target:
            stab = [g for g in autos if all(g[v] == v for v in fixed)]
            orb = _orbits(target, stab)
            if any(orb[y] == orb[x] for y in tried):
                continue
            tried.append(x)
            # split x off into its own cell, below the rest of its cell
            branched = 2 * colors + (np.arange(n) != x)
            search(branched, fixed + (x,))

    search(start, ())
    if best is None:  # empty universe
        return _encode([], colors0, rels)
    return best


def brute_force_certificate(n: int, colors0: Sequence[int], rels: Relations):
    """Least encoding over all ``n!`` orderings; the oracle for :func:`certificate`."""
    best = None
    for order in permutations(range(n)):
        enc = _encode(list(order), colors0, rels)[0]
        if best is None or enc < best:
            best = enc
    if best is None:
        best = _encode([], colors0, rels)[0]
    return best
