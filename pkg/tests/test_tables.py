import json

import pytest

from braidweyl.pbw import RelationTable
from braidweyl.tables import BUNDLED, TABLE_IDS, generate_table, load_table


@pytest.mark.parametrize("tid", BUNDLED)
def test_bundled_equals_regeneration(tid):
    assert load_table(tid).same_relations(generate_table(tid))


def test_load_from_path(tmp_path):
    p = tmp_path / "t.json"
    p.write_text(load_table("mREA").dumps())
    assert load_table(str(p)).same_relations(load_table("mREA"))


def test_unknown_table():
    with pytest.raises(KeyError):
        load_table("no-such-table")
    with pytest.raises(KeyError):
        generate_table("no-such-table")


def test_all_recipes_have_their_name():
    for tid in TABLE_IDS:
        assert generate_table(tid).name == tid


def test_json_is_plain_data():
    doc = json.loads(load_table("weyl-N").dumps())
    assert doc["name"] == "weyl-N"
    assert RelationTable.from_json(doc).same_relations(load_table("weyl-N"))
