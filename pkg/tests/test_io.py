import io as stdio
import json
from fractions import Fraction

import pytest

from lra import io
from lra.algebra import Cochain, LeibnizAlgebra, regular_representation
from lra.deformation import EquivalenceDatum
from lra.fixtures import fixture_set
from lra.generate import Profile, gen_twisted_rb
from lra.linalg import qarray, qeye
from lra.ns import ns_from_nijenhuis
from lra.rota_baxter import TRBMorphism


def test_array_round_trip():
    a = qarray([[Fraction(1, 2), -3], [0, Fraction(-7, 4)]])
    enc = io.encode_array(a)
    assert enc == [["1/2", "-3"], ["0", "-7/4"]]
    assert (io.decode_array(enc, (2, 2), "m") == a).all()
    assert io.decode_array([[1, 2]], (1, 2), "m")[0, 1] == 2


def test_decode_rejects_bad_input():
    with pytest.raises(io.InputError, match="shape"):
        io.decode_array([[1, 2]], (2, 2), "m")
    with pytest.raises(io.InputError):
        io.decode_array([["x", "1"]], (1, 2), "m")
    with pytest.raises(io.InputError):
        io.decode_array([[0.5]], (1, 1), "m")
    with pytest.raises(io.InputError):
        io.decode_array([["1/0"]], (1, 1), "m")


def test_empty_arrays():
    g = LeibnizAlgebra.abelian(0)
    assert io.algebra_from_json(io.algebra_to_json(g)) == g


def test_missing_fields():
    with pytest.raises(io.InputError, match="dim"):
        io.algebra_from_json({"bracket": []})
    with pytest.raises(io.InputError, match="non-negative"):
        io.algebra_from_json({"dim": -1, "bracket": []})
    with pytest.raises(io.InputError, match="object"):
        io.algebra_from_json([1, 2])


def test_object_round_trips(nil2):
    d = gen_twisted_rb(4, Profile(2, 3))
    assert io.trb_from_json(io.trb_to_json(d)) == d
    rep = regular_representation(nil2)
    assert io.rep_from_json(io.rep_to_json(rep), nil2) == rep
    f = Cochain(rep, qarray([[1, 2], ["1/3", 0]]))
    assert io.cochain_from_json(io.cochain_to_json(f), rep) == f
    a = ns_from_nijenhuis(nil2, 2 * qeye(2))
    assert io.ns_from_json(io.ns_to_json(a)) == a


def test_linear_map_forms():
    m = qarray([[1, 2, 3]])
    obj = io.linear_map_to_json(m)
    assert obj == {"rows": 1, "cols": 3, "matrix": [["1", "2", "3"]]}
    assert (io.linear_map_from_json(obj) == m).all()
    assert (io.linear_map_from_json([[1, 2, 3]]) == m).all()
    with pytest.raises(io.InputError, match="2x3"):
        io.linear_map_from_json(obj, 2, 3)


def test_equivalence_and_morphism():
    d = gen_twisted_rb(1, Profile(2, 2))
    e = io.equivalence_from_json({"x": ["1", "0"]}, d)
    assert isinstance(e, EquivalenceDatum) and e.phi == ()
    back = io.equivalence_from_json(io.equivalence_to_json(e), d)
    assert (back.x == e.x).all()
    m = io.morphism_from_json({"phi": [[1, 0], [0, 1]], "psi": [[1, 0], [0, 1]]}, d, d)
    assert isinstance(m, TRBMorphism)


def test_bundle_path_references(tmp_path):
    d = gen_twisted_rb(2, Profile(2, 2))
    obj = io.trb_to_json(d)
    (tmp_path / "alg.json").write_text(io.dumps(obj["algebra"]))
    obj["algebra"] = "alg.json"
    (tmp_path / "bundle.json").write_text(io.dumps(obj))
    assert io.Bundle.load(tmp_path / "bundle.json").trb() == d


def test_bundle_accepts_reports_and_bare_algebras(nil2):
    report = {"command": "build deformed", "holds": True, "details": {"result": io.algebra_to_json(nil2)}, "elapsed_ms": None}
    assert io.Bundle(report).algebra() == nil2
    assert io.Bundle(io.algebra_to_json(nil2)).algebra() == nil2
    with pytest.raises(io.InputError, match="rep"):
        io.Bundle(io.algebra_to_json(nil2)).rep()


def test_bundle_shape_errors_become_input_errors(nil2):
    obj = {"algebra": io.algebra_to_json(nil2), "rep": {"dim_v": 1, "rho_l": [[["1"]]], "rho_r": [[["0"]]]}}
    with pytest.raises(io.InputError):
        io.Bundle(obj).rep()


def test_read_json(tmp_path, monkeypatch):
    p = tmp_path / "x.json"
    p.write_text("{not json")
    with pytest.raises(io.InputError, match="invalid JSON"):
        io.read_json(p)
    with pytest.raises(io.InputError, match="cannot read"):
        io.read_json(tmp_path / "missing.json")
    monkeypatch.setattr("sys.stdin", stdio.StringIO('{"a": 1}'))
    assert io.read_json("-")[0] == {"a": 1}


def test_dumps_is_canonical():
    assert io.dumps({"b": 1, "a": [1, 2]}) == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}\n'


def test_committed_fixtures_match_generation(fixtures_dir):
    expected = fixture_set()
    on_disk = {p.name for p in fixtures_dir.glob("*.json")}
    assert on_disk == set(expected)
    for name, obj in expected.items():
        assert (fixtures_dir / name).read_text() == io.dumps(obj), name


def test_fixtures_parse(fixtures_dir):
    for p in fixtures_dir.glob("trb-*.json"):
        obj = json.loads(p.read_text())
        io.trb_from_json(obj)
