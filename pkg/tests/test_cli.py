import io
import json
import subprocess
import sys

import pytest

from catale import docs
from catale import smallgen as sg
from catale.cli import run


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def as_json(text):
    return json.loads(text)


def test_validate_fixture():
    code, out = call("validate", "fixture:walking_iso")
    assert code == 0 and as_json(out)["holds"] is True


def test_validate_invalid_document(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"elements":["a","b","c"],"product":[["a","b","a"],["b","c","b"]]}')
    code, out = call("validate", str(bad))
    assert code == 2 and out == ""


@pytest.mark.parametrize("argv", [
    ("validate", "fixture:nope"),
    ("validate", "/nonexistent/file.json"),
    ("karoubi", "fixture:sierpinski"),
    ("opens", "fixture:walking_iso"),
    ("frobnicate", "x"),
])
def test_invalid_inputs_exit_2(argv):
    assert call(*argv)[0] == 2


def test_enumeration_bound_exit_3():
    assert call("enumerate", "psg", "4")[0] == 3


def test_malformed_json_exit_2(tmp_path):
    f = tmp_path / "x.json"
    f.write_text("{")
    assert call("validate", str(f))[0] == 2


def test_invalid_structure_rejected_by_operations(tmp_path):
    f = tmp_path / "c.json"
    C = docs.to_doc(sg.walking_iso())
    C["compose"] = [r for r in C["compose"] if r[:2] != ["u", "v"]]
    f.write_text(json.dumps(C))
    assert call("karoubi", str(f))[0] == 2


def test_taut_and_is_taut():
    code, out = call("taut", "fixture:T3")
    T = docs.loads(out)
    assert code == 0 and T.n_morphisms == 56 and T.n_objects == 3
    assert call("is-taut", "fixture:T3")[0] == 1
    assert call("is-taut", "fixture:terminal")[0] == 0


def test_karoubi_and_skeleton():
    code, out = call("karoubi", "fixture:walking_idempotent")
    assert code == 0 and docs.loads(out).n_objects == 2
    code, out = call("skeleton", "fixture:walking_iso")
    assert code == 0 and docs.loads(out).n_objects == 1


def test_is_catale_via_to_psg():
    code, out = call("is-catale", "fixture:walking_iso", "--via", "to-psg")
    assert code == 1
    w = as_json(out)["witness"]
    assert w[0] == "b-unique" and w[1] == "id_a"
    assert call("is-catale", "fixture:terminal", "--via", "to-psg")[0] == 0


def test_to_psg_and_back(tmp_path):
    code, out = call("to-psg", "fixture:walking_idempotent")
    assert code == 0
    f = tmp_path / "a.json"
    f.write_text(out)
    code, out = call("to-cat", str(f))
    assert code == 0 and docs.loads(out).n_objects == 2
    assert call("to-cat", str(f), "--catale")[0] == 2


def test_roundtrip_and_adjunction(tmp_path):
    assert call("roundtrip", "fixture:terminal")[0] == 0
    code, out = call("to-psg", "fixture:walking_idempotent")
    f = tmp_path / "a.json"
    f.write_text(out)
    code, out = call("adjunction-verify", "fixture:walking_idempotent", str(f))
    info = as_json(out)
    assert code == 0 and info["functors"] == info["homs"] == 3
    code, _ = call("adjunction-verify", "fixture:T3", str(f), "--max-search", "10")
    assert code == 3


def test_locale_commands():
    code, out = call("opens", "fixture:sierpinski")
    assert code == 0 and docs.loads(out).size == 3
    assert call("is-sober", "fixture:sierpinski")[0] == 0
    assert call("is-sober", "fixture:indiscrete(2)")[0] == 1
    assert call("is-sober", "fixture:sierpinski", "--point-variant", "literal")[0] == 1
    assert call("is-spatial", "fixture:boolean_msl(2)")[0] == 0
    code, out = call("is-frame", "fixture:diamond")
    assert code == 1 and "witness" in as_json(out)
    code, out = call("points", "fixture:chain_msl(2)", "--point-variant", "literal")
    assert code == 0 and len(docs.loads(out).points) == 2
    code, out = call("soberify", "fixture:indiscrete(2)")
    assert len(docs.loads(out).points) == 1
    code, out = call("spatialize", "fixture:diamond")
    assert code == 0


def test_output_formats():
    code, out = call("taut", "fixture:walking_idempotent", "--format", "text")
    assert code == 0 and out.startswith("objects:")
    code, out = call("karoubi", "fixture:walking_idempotent", "--dot")
    assert out.startswith("digraph")
    code, out = call("is-taut", "fixture:T2", "--format", "text")
    assert out.splitlines()[0] == "fails"
    assert call("is-taut", "fixture:T2", "--dot")[0] == 2


def test_enumerate():
    code, out = call("enumerate", "psg", "2")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 30
    assert all(docs.kind_of(json.loads(line)) == "psg" for line in lines)
    assert len(call("enumerate", "psg", "3", "--dedup")[1].splitlines()) == 336
    assert len(call("enumerate", "topology", "3", "--dedup")[1].splitlines()) == 9
    assert len(call("enumerate", "category", "3", "--dedup")[1].splitlines()) == 16
    assert len(call("enumerate", "monoid", "3", "--count", "4")[1].splitlines()) == 4


def test_enumerate_seeded_is_deterministic():
    a = call("enumerate", "category", "3", "--seed", "7", "--count", "5")[1]
    b = call("enumerate", "category", "3", "--seed", "7", "--count", "5")[1]
    assert a == b and len(a.splitlines()) == 5
    assert call("enumerate", "msl", "3", "--seed", "1")[0] == 2


def test_suite_subcommand():
    code, out = call("suite", "3", "4")
    assert code == 0
    assert [line.split(":")[0] for line in out.splitlines()] == ["[PASS] criterion 3", "[PASS] criterion 4"]


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "catale", "validate", "fixture:Z(2)"],
                       capture_output=True, text=True)
    assert p.returncode == 0 and json.loads(p.stdout)["holds"] is True
