import json

import pytest

from pmq.catalog import (
    natural_with_double_one,
    rack_three_example,
    segre_pmq,
    sym_geodesic_pmq,
    transposition_quandle,
)
from pmq.core import validate
from pmq.errors import StructureError
from pmq.serialize import dump_pmq, load_pmq, pmq_from_json, pmq_to_json


@pytest.mark.parametrize(
    "q,rack",
    [
        (sym_geodesic_pmq(3), False),
        (segre_pmq(), False),
        (natural_with_double_one(3), False),
        (transposition_quandle(3), False),
        (rack_three_example(), True),
    ],
)
def test_round_trip(q, rack, tmp_path):
    path = tmp_path / "structure.json"
    dump_pmq(q, str(path), rack=rack)
    loaded, loaded_rack = load_pmq(str(path))
    assert loaded.labels == q.labels
    assert loaded.unit == q.unit
    assert loaded.conj == q.conj
    assert dict(loaded.prod) == dict(q.prod)
    assert loaded.norm == q.norm
    assert loaded_rack == rack


def test_minimal_abelian_document():
    q, rack = pmq_from_json(
        {"elements": ["1", "x"], "unit": "1", "prod": [], "norm": {"1": 0, "x": 1}}
    )
    assert not rack
    assert validate(q).ok
    assert q.conj[1][1] == 1           # conjugation defaults to trivial
    assert (1, 1) not in q.prod        # but unit products exist
    assert q.prod[(0, 1)] == 1


def test_unknown_labels_are_structural_errors():
    with pytest.raises(StructureError):
        pmq_from_json({"elements": ["1"], "unit": "?"})
    with pytest.raises(StructureError):
        pmq_from_json({"elements": ["1"], "unit": "1", "prod": [["1", "1", "y"]]})
    with pytest.raises(StructureError):
        pmq_from_json({"elements": ["1", "a"], "unit": "1", "conj": {"a": {"a": "z"}}})
    with pytest.raises(StructureError):
        pmq_from_json({"elements": ["1", "a"], "unit": "1", "norm": {"1": 0}})


def test_conflicting_products_rejected():
    with pytest.raises(StructureError):
        pmq_from_json(
            {
                "elements": ["1", "a"],
                "unit": "1",
                "prod": [["a", "a", "1"], ["a", "a", "a"]],
            }
        )


def test_json_is_stable(tmp_path):
    q = sym_geodesic_pmq(3)
    doc1 = json.dumps(pmq_to_json(q), sort_keys=True)
    doc2 = json.dumps(pmq_to_json(q), sort_keys=True)
    assert doc1 == doc2
