import pytest

from ribbonx.tables import TABLES, expected_cartan, fusion_rules


@pytest.mark.parametrize("name", sorted(TABLES))
def test_table_passes(name):
    res = TABLES[name](1729)
    assert res.passed, [c.name for c in res.report.failures()]
    assert res.markdown().startswith("## ")


def test_expected_cartan_shape():
    m = expected_cartan(1)
    assert len(m) == 8 and all(len(r) == 8 for r in m)
    assert sum(map(sum, m)) == 4 * 4 + 4


def test_fusion_rule_count():
    rules = fusion_rules(1)
    # 7 families, 21 printed rules per sign pair including the duplicated line
    assert len(rules) == 4 * 21
    assert {f for f, *_ in rules} == {"SS", "SMa", "SMb", "SB", "MM", "MB", "BB"}


def test_fusion_records_unprinted_products():
    res = TABLES["fusion-n1"](1729)
    data = res.report.data
    assert data["smb_duplicate_line"]
    assert data["computed_VKbar_times_VKKbar"]["VKbar+ x VKKbar+"] == "VK+"
    assert data["seed"] == 1729


def test_cartan_records_seed():
    assert TABLES["cartan-n1"](7).report.data["seed"] == 7
