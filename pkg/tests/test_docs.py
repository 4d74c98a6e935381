import json

import pytest
from hypothesis import given

from strategies import categories, psgs
from catale import docs
from catale import locales as lc
from catale import smallgen as sg
from catale import StructureError


FIXTURES = ["walking_iso", "walking_idempotent", "T(2)", "Z(3)", "sierpinski",
            "indiscrete(2)", "chain_msl(3)", "diamond", "N5"]


@pytest.mark.parametrize("name", FIXTURES)
def test_round_trip_fixtures(name):
    s = sg.fixture(name)
    back = docs.loads(docs.dumps(s))
    assert docs.to_doc(back) == docs.to_doc(s)


@given(categories())
def test_round_trip_categories(C):
    back = docs.loads(docs.dumps(C))
    assert back.names == C.names and back.dom == C.dom and back.cod == C.cod
    assert (back.table == C.table).all()


@given(psgs())
def test_round_trip_psgs(A):
    back = docs.loads(docs.dumps(A))
    assert (back.table == A.table).all()


def test_documented_shapes():
    X = docs.loads('{"points":["0","1"],"opens":[[],["1"],["0","1"]]}')
    assert X == lc.sierpinski()
    A = docs.loads('{"elements":["a"],"product":[["a","a","a"]]}')
    assert A.table.tolist() == [[0]]
    M = docs.loads('{"elements":["0","1"],"leq":[["0","0"],["0","1"],["1","1"]],"top":"1"}')
    assert lc.find_order_isomorphism(M, lc.chain_msl(2)) is not None


def test_kind_of():
    assert docs.kind_of(docs.to_doc(sg.walking_iso())) == "category"
    assert docs.kind_of(docs.to_doc(lc.sierpinski())) == "space"
    assert docs.kind_of(docs.to_doc(lc.chain_msl(2))) == "msl"
    with pytest.raises(StructureError):
        docs.kind_of({"foo": 1})


@pytest.mark.parametrize("text", [
    "not json",
    "[1, 2]",
    '{"elements":["a","a"],"product":[]}',
    '{"elements":["a"],"product":[["a","a","b"]]}',
    '{"elements":["a"],"product":[["a","a"]]}',
    '{"elements":["a"],"product":[["a","a","a"],["a","a","a"]]}',
    '{"points":["0"],"opens":[["1"]]}',
    '{"elements":["0"],"leq":[],"top":"1"}',
    '{"objects":["x"],"morphisms":[{"name":"f","dom":"x","cod":"y"}]}',
    '{"objects":["x"],"morphisms":[{"name":"f","dom":"x"}]}',
    '{"objects":["x"],"morphisms":[{"name":"f","dom":"x","cod":"x"}],"identities":{"x":"g"}}',
])
def test_malformed_documents(text):
    with pytest.raises(StructureError):
        docs.loads(text)


def test_dot_output():
    dot = docs.to_dot(sg.walking_iso())
    assert dot.startswith("digraph")
    assert '"a" -> "b" [label="u"]' in dot and "id_a" not in dot
    for name in ["walking_idempotent", "sierpinski", "diamond"]:
        assert docs.to_dot(sg.fixture(name)).startswith("digraph")
    from catale import bridge as br
    assert docs.to_dot(br.cat_to_psg(sg.walking_idempotent())).startswith("digraph")


def test_dumps_is_compact_json():
    text = docs.dumps(sg.terminal())
    assert " " not in text
    assert json.loads(text)["identities"] == {"x0": "id_x0"}
