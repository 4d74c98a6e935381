import numpy as np
import pytest
from hypothesis import given

import oracles
from strategies import psgs
from catale import bridge as br
from catale import psemi as ps
from catale import smallgen as sg
from catale import StructureError
from catale.psemi import PartialSemigroup, PsgHom


def P(elements, rows):
    return PartialSemigroup.build(elements, rows)


def named(A, xs):
    return {A.elements[x] for x in xs}


# --- validation ------------------------------------------------------------

def test_empty_table_valid():
    assert ps.validate_psg(P(["x"], []))


def test_monoid_valid():
    assert ps.validate_psg(br.cat_to_psg(sg.fixture("T(2)")))


def test_frobenius_failure_reported():
    A = P(["a", "b", "c"], [("a", "b", "a"), ("b", "c", "b")])
    r = ps.validate_psg(A)
    assert not r
    assert any(v.startswith("triple (a,b,c)") for v in r.violations)


def test_validation_matches_oracle_on_all_two_element_tables():
    for t in sg.all_partial_tables(2):
        assert bool(ps.validate_psg(PartialSemigroup(["a", "b"], t))) == oracles.psg_ok(t.tolist())


def test_validation_matches_oracle_on_sampled_three_element_tables():
    tables = sg.all_partial_tables(3)
    rng = np.random.default_rng(3)
    for k in rng.choice(len(tables), 3000, replace=False):
        t = tables[k]
        assert bool(ps.validate_psg(PartialSemigroup("abc", t))) == oracles.psg_ok(t.tolist())


def test_assoc_mask_batches_agree_with_single_tables():
    tables = sg.all_partial_tables(2)
    batch = ps.assoc_violations(tables)
    for t, m in zip(tables, batch):
        assert (ps.assoc_violations(t) == m).all()


# --- spider form -----------------------------------------------------------

def test_spider_rejects_short_words():
    with pytest.raises(StructureError):
        ps.spider_check(P(["a"], []), 2)


def test_spider_monoid():
    assert ps.spider_check(br.cat_to_psg(sg.fixture("T(2)")), 5)


def test_spider_invalid_table_at_length_three():
    A = P(["a", "b", "c"], [("a", "b", "a"), ("b", "c", "b")])
    r = ps.spider_check(A, 3)
    assert not r
    assert r.violations[0].startswith("word a*b*c")


def test_spider_matches_bracketing_oracle_on_two_element_tables():
    for t in sg.all_partial_tables(2):
        A = PartialSemigroup(["a", "b"], t)
        assert bool(ps.spider_check(A, 4)) == oracles.spider_ok(t.tolist(), 4)


def test_spider_valid_three_element_tables():
    for A in sg.enum_psgs(3):
        assert ps.spider_check(A, 5, first_only=True), A.table


def test_word_value_uses_every_bracketing():
    A = br.cat_to_psg(sg.walking_iso())
    u, v = A.index("u"), A.index("v")
    assert ps.word_value(A, (u, v, u)) == u
    assert ps.word_value(A, (u, u)) == -1
    for word in [(u, v, u, v), (v, u, v)]:
        t = A.table.tolist()
        assert (ps.word_value(A, word) >= 0) == oracles.word_defined(t, word)


def test_spider_mask_matches_scalar():
    tables = sg.all_partial_tables(2)
    mask = ps.spider_violation_mask(tables, 4)
    for t, bad in zip(tables, mask):
        assert bool(ps.spider_check(PartialSemigroup(["a", "b"], t), 4)) != bad


# --- identities and idempotents ------------------------------------------------

def test_identities_examples():
    A = br.cat_to_psg(sg.walking_idempotent())
    assert named(A, ps.idempotents_psg(A)) == {"id_x", "e"}
    assert named(A, ps.identities_psg(A)) == {"id_x"}
    assert ps.identities_psg(P(["a"], [("a", "a", "a")])) == [0]
    W = br.cat_to_psg(sg.walking_iso())
    assert named(W, ps.identities_psg(W)) == {"id_a", "id_b"}


@given(psgs())
def test_identities_are_idempotent(A):
    assert set(ps.identities_psg(A)) <= set(ps.idempotents_psg(A))


def test_identity_lemma_examples():
    assert ps.check_identity_lemma(br.cat_to_psg(sg.walking_iso()))
    assert ps.check_identity_lemma(P(["a"], [("a", "a", "a")]))


def test_identity_lemma_counterexample():
    # b and c are identities (each composable with itself, neutral wherever
    # defined) and both compose with a on the left
    A = P(["a", "b", "c"], [("b", "a", "a"), ("b", "b", "b"), ("c", "a", "a"), ("c", "c", "c")])
    assert ps.validate_psg(A)
    assert named(A, ps.identities_psg(A)) == {"b", "c"}
    r = ps.check_identity_lemma(A)
    assert not r
    assert r.violations == ["(b) b*a and c*a both defined", "(b) c*a and b*a both defined"]
    # no frame exists for a, so this is not a catale
    assert not ps.is_catale(A)


def test_identity_lemma_census():
    failing = [A for n in range(4) for A in sg.enum_psgs(n) if not ps.check_identity_lemma(A)]
    assert len(failing) == 27
    assert all(A.size == 3 for A in failing)
    assert not any(ps.is_catale(A) for A in failing)


def test_identity_lemma_holds_in_categories():
    for C in sg.enum_categories(4, 4, dedup=True):
        assert ps.check_identity_lemma(br.cat_to_psg(C))


def test_dom_cod_examples():
    A = br.cat_to_psg(sg.walking_iso())
    for a in ps.identities_psg(A):
        assert ps.dom_of(A, a) == ps.cod_of(A, a) == a
    u = A.index("u")
    assert A.elements[ps.dom_of(A, u)] == "id_a"
    assert A.elements[ps.cod_of(A, u)] == "id_b"
    with pytest.raises(StructureError):
        ps.dom_of(P(["e"], []), 0)


def test_idempotent_order_examples():
    A = br.cat_to_psg(sg.walking_idempotent())
    o = ps.idempotent_order_psg(A)
    e, i = A.index("e"), A.index("id_x")
    assert (e, i) in o.relation and (i, e) not in o.relation
    assert named(A, o.maximal) == {"id_x"}
    assert ps.idempotent_order_psg(P(["a"], [("a", "a", "a")])).maximal == (0,)


# --- catales ------------------------------------------------------------------

def test_is_catale_examples():
    from catale import fincat as fc
    T, _ = fc.taut_completion(sg.fixture("T(3)"))
    assert ps.is_catale(br.cat_to_psg(T))
    W = br.cat_to_psg(sg.walking_iso())
    r = ps.is_catale(W)
    kind, phi, (i, q), (j, r2) = r.data["witness"]
    assert kind == "b-unique" and W.elements[phi] == "id_a"
    assert {W.mul(q, i), W.mul(r2, j)} == {W.index("id_a"), W.index("id_b")}
    r = ps.is_catale(br.cat_to_psg(sg.walking_idempotent()))
    assert r.data["witness"][0] == "b-missing"


def test_catale_annotations():
    from catale import fincat as fc
    T, _ = fc.taut_completion(sg.fixture("T(2)"))
    B = br.cat_to_psg(T)
    r = ps.is_catale(B)
    ann = r.data["annotations"]
    assert set(ann.identities) == {B.index(B.elements[i]) for i in T.ident}
    assert ann.dom == tuple(ps.dom_of(B, f) for f in range(B.size))
    assert r.data.keys() == {"annotations"}
    W = ps.is_catale(br.cat_to_psg(sg.walking_iso()))
    assert "annotations" not in W.data
    assert ps.is_catale(br.cat_to_psg(sg.fixture("T(2)"))).data["witness"][0] == "b-missing"


def test_catales_in_corpus_satisfy_lemmas():
    for A in sg.enum_psgs(3):
        if not ps.is_catale(A):
            continue
        ids = set(ps.identities_psg(A))
        order = ps.idempotent_order_psg(A)
        assert ids <= set(order.maximal)
        for f in range(A.size):
            d, c = ps.dom_of(A, f), ps.cod_of(A, f)
            assert A.mul(f, d) == f and A.mul(c, f) == f
            assert (f in ids) == (A.mul(f, f) == f == d == c)
        for f in range(A.size):
            for g in range(A.size):
                assert (A.mul(f, g) >= 0) == (ps.dom_of(A, f) == ps.cod_of(A, g))


# --- homomorphisms -------------------------------------------------------------

def test_hom_examples():
    A = br.cat_to_psg(sg.walking_idempotent())
    assert ps.validate_psg_hom(PsgHom(A, A, tuple(range(A.size))))
    M = br.cat_to_psg(sg.cyclic_group(2))
    sigma = M.index("g1")
    assert not ps.validate_psg_hom(PsgHom(M, M, (sigma, sigma)))
    e = A.index("e")
    h = PsgHom(A, A, (e, e))
    r = ps.validate_psg_hom(h)
    assert r and r.notes == ["identity id_x maps to non-identity idempotent e"]


def test_hom_carrier_mismatch():
    A = br.cat_to_psg(sg.walking_idempotent())
    with pytest.raises(StructureError):
        ps.validate_psg_hom(PsgHom(A, A, (0,)))


@given(psgs())
def test_permutation_is_isomorphism(A):
    perm = list(range(A.size))[::-1]
    t = np.full_like(A.table, -1)
    for a in range(A.size):
        for b in range(A.size):
            if A.table[a, b] >= 0:
                t[perm[a], perm[b]] = perm[A.table[a, b]]
    B = PartialSemigroup(A.elements, t)
    assert ps.is_psg_isomorphism(PsgHom(A, B, tuple(perm)))
