"""Golden-table embedding and the table runner."""

import pytest

from trapfun.tables import TABLES, run_table

from helpers import assert_rel


def test_structure():
    assert sorted(TABLES) == [1, 2, 3, 4, 5, 6, 7]
    t1 = TABLES[1]
    assert [c.depth for c in t1.columns] == [5, 5, 5]
    assert [c.final_terms for c in t1.columns] == [153, 151, 153]
    t2 = TABLES[2]
    assert [c.depth for c in t2.columns] == [5, 6, 7]
    assert [c.final_terms for c in t2.columns] == [151, 285, 841]
    t3 = TABLES[3]
    assert [c.depth for c in t3.columns] == [3, 4, 6]
    assert [c.scale_exp for c in t3.columns] == [0, 0, -41]
    assert [c.scale_exp for c in TABLES[5].columns] == [0, 0, -29]
    assert [c.scale_exp for c in TABLES[7].columns] == [0, 0, -44]


def test_golden_parsing():
    col = TABLES[1].columns[0]  # printed = value * 10
    assert_rel(col.golden(0), 0.985296263621983, 1e-14)
    big = TABLES[7].columns[2]  # printed = value * 1e-44
    assert_rel(big.golden(5), 1.6150416242989859e44, 1e-9)


def test_run_table_1():
    res = run_table(1)
    assert res.passed
    assert res.max_rel_dev <= 1e-13
    assert [c.final.terms for c in res.columns] == [153, 151, 153]
    # rows are 1/h = 1, 2, 4, 8, 16
    assert [cell.inv_h for cell in res.columns[0].cells] == [1, 2, 4, 8, 16]


def test_run_table_3_spot_row():
    res = run_table(3)
    cell = res.columns[1].cells[2]  # x = 1 column, 1/h = 4
    assert cell.inv_h == 4
    assert_rel(cell.value, 1.718281828459079, 1e-13)


@pytest.mark.parametrize("tid", [2, 4, 5, 6, 7])
def test_run_table_passes(tid):
    res = run_table(tid)
    assert res.passed, f"table {tid} max rel dev {res.max_rel_dev:.3e}"


def test_unknown_table():
    with pytest.raises(KeyError):
        run_table(8)
