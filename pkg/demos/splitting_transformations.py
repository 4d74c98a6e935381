"""Split the idempotents of the monoid of self-maps of a 3-element set.

The envelope has one object per idempotent map; collapsing isomorphic ones
leaves one object per image size, and a map between the rank-r and rank-s
objects is just a function from an r-set to an s-set.
"""
from catale import fincat, smallgen

T3 = smallgen.fixture("T(3)")
print(f"T(3): {T3.n_morphisms} maps, {len(fincat.idempotents(T3))} idempotent")

K, _ = fincat.karoubi(T3)
print(f"envelope: {K.n_objects} objects, {K.n_morphisms} morphisms")

T, _ = fincat.taut_completion(T3)
rank = {x: len(set(T.objects[x])) for x in range(T.n_objects)}
print(f"taut completion: objects {list(T.objects)} (ranks {list(rank.values())})")
for x in range(T.n_objects):
    for y in range(T.n_objects):
        r, s = rank[x], rank[y]
        print(f"  |hom(rank {r}, rank {s})| = {len(T.hom(x, y)):2d}  ({s}^{r} = {s ** r})")

print("taut:", bool(fincat.is_taut(T)), "| T(3) itself taut:", bool(fincat.is_taut(T3)))
