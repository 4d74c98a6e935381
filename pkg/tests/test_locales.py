import pytest

import oracles
from catale import locales as lc
from catale import smallgen as sg
from catale.locales import ContinuousMap, FinSpace, MeetSemilattice, MslHom


def one_point():
    return FinSpace(["*"], [0, 1])


def msl_corpus():
    for n in range(1, 6):
        yield from sg.enum_msls(n)
    yield lc.diamond_m3()
    yield lc.pentagon_n5()
    yield lc.boolean_msl(3)


def space_corpus():
    for n in range(5):
        yield from sg.enum_topologies(n)


# --- validation --------------------------------------------------------------

def test_validate_examples():
    assert lc.validate_space(lc.sierpinski())
    bad = FinSpace.build(["0", "1"], [[], ["0"], ["1"], ["0", "1"]][:3])
    r = lc.validate_space(bad)
    assert not r and any("{0,1}" in v for v in r.violations)
    A = lc.chain_msl(2)
    assert lc.validate_msl(A)
    assert A.elements[A.top] == "1"


def test_validate_space_reports_missing_union():
    X = FinSpace.build(["a", "b", "c"], [[], ["a"], ["b"], ["a", "b", "c"]])
    r = lc.validate_space(X)
    assert not r
    assert any("{a,b}" in v for v in r.violations)


def test_validate_msl_rejects_missing_meet():
    # two minimal elements under a top: no meet
    A = MeetSemilattice.build(["a", "b", "1"], [("a", "a"), ("b", "b"), ("1", "1"), ("a", "1"), ("b", "1")], "1")
    assert not lc.validate_msl(A)


def test_validate_maps():
    S = lc.sierpinski()
    assert lc.validate_continuous(ContinuousMap(S, S, (0, 1)))
    assert not lc.validate_continuous(ContinuousMap(S, S, (1, 0)))
    B = lc.boolean_msl(2)
    ident = MslHom(B, B, tuple(range(B.size)))
    assert lc.validate_msl_hom(ident)
    const = MslHom(B, B, (0,) * B.size)
    assert not lc.validate_msl_hom(const)


# --- opens -------------------------------------------------------------------

def test_opens_examples():
    O = lc.opens(lc.sierpinski())
    assert lc.find_order_isomorphism(O, lc.chain_msl(3)) is not None
    assert O.elements == ("{}", "{1}", "{0,1}")
    assert lc.find_order_isomorphism(lc.opens(lc.discrete_space(2)), lc.boolean_msl(2)) is not None
    assert lc.find_order_isomorphism(lc.opens(lc.indiscrete_space(2)), lc.chain_msl(2)) is not None


def test_opens_is_frame_for_every_topology():
    for X in space_corpus():
        assert lc.validate_space(X)
        assert lc.is_frame(lc.opens(X))


def test_sierpinski_maps_examples():
    assert len(lc.sierpinski_maps(lc.sierpinski())) == 3
    maps = lc.sierpinski_maps(lc.indiscrete_space(2))
    assert sorted(g.map for g, _ in maps) == [(0, 0), (1, 1)]
    assert len(lc.sierpinski_maps(one_point())) == 2


def test_sierpinski_maps_biject_with_opens():
    for X in space_corpus():
        assert sorted(u for _, u in lc.sierpinski_maps(X)) == sorted(X.opens)


# --- points --------------------------------------------------------------------

def test_points_examples():
    C2 = lc.chain_msl(2)
    assert lc.point_masks(C2, "literal") == [0b00, 0b01]
    assert lc.find_homeomorphism(lc.points(C2, "literal"), lc.sierpinski()) is not None
    assert len(lc.points(lc.opens(one_point()), "strict").points) == 1
    C1 = lc.chain_msl(1)
    assert lc.point_masks(C1, "literal") == [0]
    # the only element is the top, which is also the bottom, so no strict point
    assert lc.point_masks(C1, "strict") == []


def test_unknown_variant():
    with pytest.raises(ValueError):
        lc.points(lc.chain_msl(2), "loose")


def test_point_masks_match_subset_scan():
    for A in msl_corpus():
        for variant in ("literal", "strict"):
            assert lc.point_masks(A, variant) == oracles.order_points(A.elements, A.le, A.top, variant)


def test_points_are_valid_spaces():
    for A in msl_corpus():
        for variant in ("literal", "strict"):
            assert lc.validate_space(lc.points(A, variant))


def test_literal_points_always_contain_empty():
    for A in msl_corpus():
        assert 0 in lc.point_masks(A, "literal")


def test_literal_unit_misses_empty_point():
    for X in space_corpus():
        if len(X.points) == 0:
            continue
        g = lc.unit_space(X, "literal")
        empty = lc.point_masks(lc.opens(X), "literal").index(0)
        assert empty not in g.map
        assert not lc.is_sober(X, "literal")


# --- unit and counit ---------------------------------------------------------------

def test_unit_space_examples():
    g = lc.unit_space(lc.sierpinski())
    assert sorted(g.map) == [0, 1]
    Ps = lc.point_masks(lc.opens(lc.sierpinski()))
    # 0 lies outside {} and {1}; 1 lies outside {} only
    assert [Ps[k] for k in g.map] == [0b011, 0b001]
    g = lc.unit_space(lc.indiscrete_space(2))
    assert g.map[0] == g.map[1]
    assert lc.is_homeomorphism(lc.unit_space(one_point()))


def test_counit_examples():
    f = lc.counit_msl(lc.chain_msl(2))
    assert len(set(f.map)) == 2
    assert lc.is_order_isomorphism(lc.counit_msl(lc.boolean_msl(2)))
    for A in msl_corpus():
        f = lc.counit_msl(A)
        assert f.target.elements[f.map[A.top]] == f.target.elements[f.target.top]


def test_counit_preserves_meets():
    for A in msl_corpus():
        for variant in ("literal", "strict"):
            f = lc.counit_msl(A, variant)
            B = f.target
            for a in range(A.size):
                for c in range(A.size):
                    assert f.map[A.meet(a, c)] == B.meet(f.map[a], f.map[c])


def test_sober_and_spatial_examples():
    assert lc.is_sober(lc.sierpinski())
    assert not lc.is_sober(lc.indiscrete_space(2))
    assert lc.is_spatial(lc.boolean_msl(2))
    assert not lc.is_spatial(lc.diamond_m3())
    assert not lc.is_spatial(lc.pentagon_n5())


def test_soberify_examples():
    assert len(lc.soberify(lc.indiscrete_space(2)).points) == 1
    assert lc.find_homeomorphism(lc.soberify(lc.sierpinski()), lc.sierpinski()) is not None
    for n in range(1, 4):
        L = lc.boolean_msl(n)
        assert lc.find_order_isomorphism(lc.spatialize(L), L) is not None


def test_sober_iff_t0_and_soberify_is_kolmogorov_quotient():
    for X in space_corpus():
        assert lc.is_sober(X) == lc.is_t0(X)
        S = lc.soberify(X)
        assert lc.is_sober(S)
        assert lc.find_homeomorphism(S, lc.kolmogorov_quotient(X)) is not None
        assert lc.is_order_isomorphism(lc.unit_inverse_image(X))


def test_spatial_iff_distributive():
    for A in msl_corpus():
        assert lc.is_spatial(A) == bool(lc.is_frame(A))
        Sp = lc.spatialize(A)
        assert lc.is_spatial(Sp)
        assert lc.is_homeomorphism(lc.counit_points_map(A))


# --- frames and quotients ------------------------------------------------------------

def test_is_frame_examples():
    v = lc.is_frame(lc.diamond_m3())
    assert not v
    M = lc.diamond_m3()
    a, b, c = v.witness
    assert M.meet(a, M.join(b, c)) != M.join(M.meet(a, b), M.meet(a, c))
    for n in range(1, 5):
        assert lc.is_frame(lc.chain_msl(n))


def test_kolmogorov_quotient_examples():
    assert len(lc.kolmogorov_quotient(lc.indiscrete_space(2)).points) == 1
    assert lc.kolmogorov_quotient(lc.sierpinski()) == lc.sierpinski()
    for X in space_corpus():
        Q = lc.kolmogorov_quotient(X)
        assert lc.validate_space(Q) and lc.is_t0(Q)


def test_topology_counts_match_scan():
    for n in range(5):
        ours = {X.opens for X in sg.enum_topologies(n)}
        assert len(ours) == len(oracles.topologies(n)) == [1, 1, 4, 29, 355][n]
        assert ours == {tuple(sorted(f, key=lambda u: (bin(u).count("1"), u))) for f in oracles.topologies(n)}
