from conetract.reference import (
    TABLE3,
    TABLE4,
    all_discrepancies,
    table1_discrepancies,
    cone_row_diffs,
    table1_rows,
    table2_discrepancies,
    table3_discrepancies,
    table4_discrepancies,
    text_discrepancies,
)
from conetract.lattice import catalog_entry


def test_table1_verified():
    assert all(r["general"] for r in table1_rows())
    assert table1_discrepancies() == []


def test_table2_flags_interchanged_genera():
    flagged = {(x.row, x.column) for x in table2_discrepancies()}
    rows = {r for r, _ in flagged}
    assert rows == {"C_6", "C_{2,3}", "C_9A", "C_{3,3}"}
    assert {c for _, c in flagged} == {"g", "K_C"}


def test_table3_swap_is_one_entry():
    swaps = [x for x in table3_discrepancies() if x.column == "row"]
    assert len(swaps) == 1 and swaps[0].row == "C_9A/C_9B"


def test_table4_cells():
    cells = {(x.row, x.column) for x in table4_discrepancies()}
    assert ("C_7B", "deg_Y") in cells
    assert ("C_3", "deg_Y") not in cells


def test_reference_tables_have_every_row():
    assert len(TABLE3) == 23 and len(TABLE4) == 23


def test_discrepancy_render():
    x = table2_discrepancies()[0]
    d = x.to_dict()
    assert set(d) == {"table", "row", "column", "computed", "published", "note"}
    assert x.row in str(x)


def test_text_notes_and_aggregate():
    assert len(text_discrepancies()) == 4
    assert len(all_discrepancies()) == len(all_discrepancies(("1", "2", "3", "4")))


def test_cone_row_diffs():
    assert cone_row_diffs("C_3", catalog_entry("C_3").cls) == []
    assert cone_row_diffs("C_1", catalog_entry("C_1").cls)
