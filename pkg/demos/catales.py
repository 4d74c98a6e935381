"""Which partial semigroups come from taut categories.

A category is forgotten into the partial semigroup of its morphisms.  For a
taut category the objects can be read back off the identities, and the round
trip is an isomorphism.  Two small categories show how each catale axiom fails.
"""
from catale import bridge, docs, fincat, psemi, smallgen


def show(name, C):
    A = bridge.cat_to_psg(C)
    r = psemi.is_catale(A)
    verdict = "catale" if r else f"not a catale: {r.violations[0]}"
    print(f"{name:22s} taut={bool(fincat.is_taut(C))!s:5s} {verdict}")


show("walking_iso", smallgen.walking_iso())
show("walking_idempotent", smallgen.walking_idempotent())
T, _ = fincat.taut_completion(smallgen.fixture("T(2)"))
show("taut completion of T(2)", T)

A = bridge.cat_to_psg(T)
D = bridge.catale_to_cat(A)
print(f"\nround trip: {T.n_objects} objects -> {A.size} elements -> {D.n_objects} objects")
print("equivalence checks:", bool(bridge.verify_equivalence(C=T)), bool(bridge.verify_equivalence(A=A)))

# a valid partial semigroup with two identities that both act on the left of a
B = docs.loads('{"elements":["a","b","c"],'
               '"product":[["b","a","a"],["b","b","b"],["c","a","a"],["c","c","c"]]}')
print("\nvalid:", bool(psemi.validate_psg(B)),
      "| identities:", [B.elements[i] for i in psemi.identities_psg(B)])
r = psemi.check_identity_lemma(B)
print("identity lemma:", r.violations[0] if not r else "holds")
print("catale:", bool(psemi.is_catale(B)))
