import json

import pytest

from conlat.constructions import build_triangle
from conlat.errors import ConlatError, NotALattice, ParseError
from conlat.formats import (
    carrier_from_json,
    diagram_from_json,
    diagram_to_json,
    family_from_json,
    lattice_from_json,
    lattice_to_json,
    load_json,
    parse_arrow_key,
    semilattice_from_json,
    semilattice_to_json,
)
from conlat.lattice import is_isomorphic, m3, n5
from conlat.semilattice import FiniteJoinSemilattice0, powerset_semilattice


@pytest.mark.parametrize("L", [m3(), n5()])
def test_lattice_roundtrip(L):
    back = lattice_from_json(json.loads(json.dumps(lattice_to_json(L))))
    assert back.size == L.size
    assert back.leq == L.leq


def test_builtin_forms():
    assert lattice_from_json("chain(3)").size == 3
    assert lattice_from_json({"builtin": "m3"}).size == 5


def test_labels_dict():
    L = lattice_from_json({"size": 2, "covers": [[0, 1]], "labels": {"1": "top"}})
    assert tuple(L.labels) == ("0", "top")


def test_not_a_lattice():
    # two incomparable maximal elements
    with pytest.raises(NotALattice):
        lattice_from_json({"size": 3, "covers": [[0, 1], [0, 2]]})


def test_bad_carrier():
    with pytest.raises(ParseError):
        lattice_from_json({"covers": []})


def test_semilattice_roundtrip():
    S = powerset_semilattice(2)
    back = semilattice_from_json(semilattice_to_json(S))
    assert back.size == 4 and back.zero == S.zero
    assert [list(r) for r in back.join] == [list(r) for r in S.join]


def test_semilattice_needs_zero():
    with pytest.raises(ParseError):
        semilattice_from_json({"size": 1, "covers": []})


def test_semilattice_without_join():
    with pytest.raises(ParseError):
        semilattice_from_json({"size": 3, "zero": 0, "covers": [[0, 1], [0, 2]]})


def test_carrier_dispatch():
    assert isinstance(carrier_from_json({"size": 1, "zero": 0, "covers": []}), FiniteJoinSemilattice0)
    assert is_isomorphic(carrier_from_json("m3"), m3())


@pytest.mark.parametrize("key", ["low→mid", "low->mid", " low -> mid "])
def test_arrow_keys(key):
    assert parse_arrow_key(key) == ("low", "mid")


def test_arrow_key_invalid():
    with pytest.raises(ParseError):
        parse_arrow_key("low mid")


def test_diagram_roundtrip():
    t = build_triangle()
    back = diagram_from_json(json.loads(json.dumps(diagram_to_json(t), ensure_ascii=False)))
    assert back.is_commutative()
    assert {k: tuple(v.map) for k, v in back.arrows.items()} == {k: tuple(v.map) for k, v in t.arrows.items()}


def test_diagram_missing_object():
    with pytest.raises(ParseError):
        diagram_from_json({"poset": {"objects": ["x"], "covers": []}})


def test_family():
    fam = family_from_json({"epsilon": 3, "pairs": [[1, 2], [2, 1]], "X": [0]})
    assert fam == {"epsilon": 3, "pairs": [(1, 2), (2, 1)], "X": frozenset({0})}
    with pytest.raises(ParseError):
        family_from_json({"epsilon": 1})


def test_load_json_errors(tmp_path):
    with pytest.raises(ParseError):
        load_json(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    with pytest.raises(ParseError):
        load_json(bad)
    assert issubclass(ParseError, ConlatError)
