"""File format tests: canonical JSON, round-trips, error context."""

import json
import os
from fractions import Fraction

import pytest

from ktwist.cocycles import PullbackCocycle, TableCocycle
from ktwist.io import (
    FileFormatError,
    canonical_json,
    digest_text,
    graph_to_jsonable,
    load_cocycle,
    loads_cocycle,
    loads_graph,
    report_document,
    resolve_graph,
    serialize_cocycle,
    serialize_graph,
    serialize_report,
)
from ktwist.kgraph import builtin
from ktwist.phases import PhaseExponent

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "fixtures")
SCHEMAS = os.path.join(os.path.dirname(__file__), "..", "schemas")

GRAPH_FIXTURES = ["T2", "B2", "B2xT1", "B2xT3", "DISJOINT2"]
COCYCLE_FIXTURES = {
    "pullback_theta": "T2",
    "pullback_half": "T2",
    "pullback_b2": "B2",
    "phi_theta": "B2xT1",
    "phi_zero": "B2xT1",
    "b2t3": "B2xT3",
}


def _read(dirname, stem):
    with open(os.path.join(dirname, stem + ".json"), "r", encoding="utf-8") as fh:
        return fh.read()


# --- canonical form ----------------------------------------------------------


def test_canonical_json_shape():
    text = canonical_json({"b": 1, "a": [2, 3]})
    assert text.endswith("\n")
    assert text.index('"a"') < text.index('"b"')
    assert canonical_json({"a": [2, 3], "b": 1}) == text


def test_graph_roundtrip_is_byte_identical():
    for name in GRAPH_FIXTURES:
        text = serialize_graph(builtin(name))
        again = serialize_graph(loads_graph(text))
        assert again == text, name


def test_graph_fixtures_are_canonical():
    for name in GRAPH_FIXTURES:
        text = _read(FIXTURES, name)
        assert serialize_graph(loads_graph(text)) == text, name


def test_cocycle_fixtures_are_canonical():
    for stem, gname in COCYCLE_FIXTURES.items():
        g = builtin(gname)
        text = _read(FIXTURES, stem)
        assert serialize_cocycle(loads_cocycle(text, g)) == text, stem


def test_table_cocycle_roundtrip():
    g = builtin("T2")
    theta = PhaseExponent(Fraction(0), (("theta", Fraction(1)),))
    c = TableCocycle(
        (1, 1),
        (
            (("v", ("a",)), ("v", ("b",)), PhaseExponent(Fraction(0), ())),
            (("v", ("b",)), ("v", ("a",)), theta),
        ),
    )
    text = serialize_cocycle(c)
    back = loads_cocycle(text, g)
    assert isinstance(back, TableCocycle)
    assert serialize_cocycle(back) == text


# --- validation and error context -------------------------------------------


def test_loads_graph_rejects_invalid_json():
    with pytest.raises(FileFormatError, match="invalid JSON"):
        loads_graph("{not json")


def test_loads_graph_names_bad_edge():
    obj = graph_to_jsonable(builtin("T2"))
    obj["edges"][0]["source"] = "nowhere"
    with pytest.raises(FileFormatError, match="unknown source vertex 'nowhere'"):
        loads_graph(canonical_json(obj))


def test_loads_graph_names_bad_color():
    obj = graph_to_jsonable(builtin("T2"))
    obj["edges"][0]["color"] = 7
    eid = obj["edges"][0]["id"]
    with pytest.raises(FileFormatError, match=f"edge '{eid}'.*color 7"):
        loads_graph(canonical_json(obj))


def test_loads_graph_missing_key():
    with pytest.raises(FileFormatError, match="missing key 'vertices'"):
        loads_graph(canonical_json({"k": 1, "edges": []}))


def test_loads_graph_validation_gate():
    obj = graph_to_jsonable(builtin("T2"))
    obj["squares"] = []
    text = canonical_json(obj)
    with pytest.raises(FileFormatError, match="fails validation"):
        loads_graph(text)
    g = loads_graph(text, validate=False)
    assert g.k == 2 and not g.squares


def test_cocycle_unknown_edge():
    g = builtin("B2")
    bad = {"variant": "phi_omega", "l": 1, "symbols": [],
           "phi": {"zz": ["0"]}, "omega": [["0"]]}
    with pytest.raises(FileFormatError, match="unknown edge 'zz'"):
        loads_cocycle(canonical_json(bad), g)


def test_cocycle_bad_phase_literal_names_location():
    g = builtin("B2")
    bad = {"variant": "phi_omega", "l": 1, "symbols": [],
           "phi": {"e": ["0"], "f": ["1*oops"]}, "omega": [["0"]]}
    with pytest.raises(FileFormatError, match=r"cocycle\.phi\['f'\]\[0\]"):
        loads_cocycle(canonical_json(bad), g)


def test_cocycle_wrong_matrix_shape():
    g = builtin("T2")
    bad = {"variant": "pullback", "symbols": [], "theta_matrix": [["0"]]}
    with pytest.raises(FileFormatError, match="expected 2 rows"):
        loads_cocycle(canonical_json(bad), g)


def test_cocycle_phase_literal_with_rational_and_symbol():
    g = builtin("B2")
    obj = {"variant": "pullback", "symbols": ["theta"],
           "theta_matrix": [["1/3 + 2*theta"]]}
    c = loads_cocycle(canonical_json(obj), g)
    assert isinstance(c, PullbackCocycle)
    x = c.theta[0][0]
    assert x.rat == Fraction(1, 3)
    assert x.coeff("theta") == Fraction(2)


# --- references and digests --------------------------------------------------


def test_builtin_reference_resolution():
    g, d1 = resolve_graph("builtin:T2")
    _, d2 = resolve_graph("builtin:T2")
    assert g.name == "T2"
    assert d1 == d2 == digest_text(serialize_graph(g))


def test_file_reference_digest_matches_text():
    path = os.path.join(FIXTURES, "B2.json")
    g, d = resolve_graph(path)
    assert g.name == "B2"
    assert d == digest_text(_read(FIXTURES, "B2"))


def test_missing_files_are_reported():
    with pytest.raises(FileFormatError, match="cannot read graph file"):
        resolve_graph("/no/such/graph.json")
    with pytest.raises(FileFormatError, match="cannot read cocycle file"):
        load_cocycle("/no/such/cocycle.json", builtin("B2"))


# --- reports -----------------------------------------------------------------


def test_report_document_is_deterministic():
    doc1 = report_document("analyze", {"graph": "abc", "cocycle": "def"},
                           {"verdict": "x"})
    doc2 = report_document("analyze", {"cocycle": "def", "graph": "abc"},
                           {"verdict": "x"})
    assert serialize_report(doc1) == serialize_report(doc2)
    assert list(doc1["inputs"]) == ["cocycle", "graph"]
    assert "time" not in serialize_report(doc1).lower()
    assert doc1["tool"] == "ktwist"


# --- schemas (optional dependency) ------------------------------------------


def test_fixtures_match_schemas():
    jsonschema = pytest.importorskip("jsonschema")
    gschema = json.loads(_read(SCHEMAS, "graph.schema"))
    cschema = json.loads(_read(SCHEMAS, "cocycle.schema"))
    for name in GRAPH_FIXTURES:
        jsonschema.validate(json.loads(_read(FIXTURES, name)), gschema)
    for stem in COCYCLE_FIXTURES:
        jsonschema.validate(json.loads(_read(FIXTURES, stem)), cschema)
