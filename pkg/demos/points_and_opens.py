"""Opens of finite spaces and points of finite meet-semilattices.

Under the strict reading a point is a prime ideal, so sober means T0 and
spatial means distributive.  The literal reading also admits the empty
subset, which no space ever produces.
"""
from catale import locales, smallgen

S = locales.sierpinski()
print("opens of the Sierpinski space:", list(locales.opens(S).elements))
print("sober:", locales.is_sober(S), "| indiscrete(2) sober:", locales.is_sober(locales.indiscrete_space(2)))
print("soberified indiscrete(2) has",
      len(locales.soberify(locales.indiscrete_space(2)).points), "point")

C2 = locales.chain_msl(2)
for variant in ("strict", "literal"):
    pts = locales.points(C2, variant)
    print(f"{variant:7s} points of the 2-chain: {list(pts.points)}")
print("Sierpinski sober under literal points:", locales.is_sober(S, "literal"))

for name in ("boolean_msl(2)", "diamond", "N5"):
    A = smallgen.fixture(name)
    print(f"{name:15s} frame={bool(locales.is_frame(A))!s:5s} spatial={locales.is_spatial(A)}")

counts = [sum(1 for _ in smallgen.enum_topologies(n)) for n in range(5)]
print("topologies on 0..4 points:", counts)
sober = [sum(locales.is_sober(X) for X in smallgen.enum_topologies(n)) for n in range(5)]
print("of which sober (T0):      ", sober)
