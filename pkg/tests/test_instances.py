import json
from pathlib import Path

import pytest

from qexp.lattice import MalformedInput
from qexp.instances import (
    Instance,
    canonical_json,
    dump_instance,
    lattice_from_json,
    lattice_to_json,
    load_instance,
    load_instance_file,
    quantaloid_from_json,
    quantaloid_to_json,
    validate_instance,
)

from helpers import BOOL, chain_preorder

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
CHAIN3 = FIXTURES / "preorder_chain3.json"


class TestLatticeJson:
    def test_round_trip(self):
        from qexp.lattice import m3_lattice
        m3 = m3_lattice()
        assert lattice_from_json(lattice_to_json(m3)) == m3

    def test_non_transitive_rejected(self):
        data = {"elements": ["a", "b", "c"],
                "leq": [[0, 0], [1, 1], [2, 2], [0, 1], [1, 2]]}
        with pytest.raises(MalformedInput, match="transitive"):
            lattice_from_json(data)

    def test_shape_errors(self):
        with pytest.raises(MalformedInput):
            lattice_from_json({"elements": ["a"]})
        with pytest.raises(MalformedInput):
            lattice_from_json({"elements": ["a"], "leq": [[0]]})


class TestQuantaloidJson:
    def test_round_trip(self):
        data = quantaloid_to_json(BOOL)
        assert quantaloid_from_json(data) == BOOL

    def test_bad_hom_key(self):
        data = quantaloid_to_json(BOOL)
        data["hom"]["*->missing"] = data["hom"]["*->*"]
        with pytest.raises(MalformedInput, match="unknown objects"):
            quantaloid_from_json(data)

    def test_object_names_may_not_contain_arrows(self):
        data = quantaloid_to_json(BOOL)
        data["objects"] = ["a->b"]
        with pytest.raises(MalformedInput, match="may not contain"):
            quantaloid_from_json(data)


class TestInstanceFiles:
    def test_fixture_loads_and_validates(self):
        inst = load_instance_file(str(CHAIN3))
        assert set(inst.functors) == {"skip_middle", "id3", "embed_c"}
        reports = validate_instance(inst)
        assert all(not v for v in reports.values())

    def test_round_trip_is_canonical(self):
        inst = load_instance_file(str(CHAIN3))
        text = canonical_json(dump_instance(inst))
        again = load_instance(text)
        assert canonical_json(dump_instance(again)) == text

    def test_missing_reference(self):
        data = json.loads(CHAIN3.read_text())
        data["functors"]["broken"] = {"dom": "nope", "cod": "B", "map": []}
        with pytest.raises(MalformedInput, match="unknown category"):
            load_instance(json.dumps(data))

    def test_invalid_json(self):
        with pytest.raises(MalformedInput, match="not valid JSON"):
            load_instance("{nope")

    def test_unreadable_file(self):
        with pytest.raises(MalformedInput, match="cannot read"):
            load_instance_file(str(FIXTURES / "does_not_exist.json"))

    def test_axiom_violations_are_reports_not_errors(self):
        data = json.loads(CHAIN3.read_text())
        # break a unit law in the composition table: 1 o 0 becomes 1
        data["quantaloid"]["Q"]["compose"]["*->*->*"][1][0] = 1
        inst = load_instance(json.dumps(data))
        reports = validate_instance(inst)
        assert any(v for k, v in reports.items() if k.startswith("quantaloid"))

    def test_dump_preserves_distributors(self):
        inst = load_instance_file(str(CHAIN3))
        data = dump_instance(inst)
        assert data["distributors"]["phi"]["entries"] == [[1, 0], [1, 1]]
