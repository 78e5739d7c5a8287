from pathlib import Path

import pytest

from equicohom import tables

GOLDEN = Path(__file__).resolve().parent.parent / "tables"
FIGS = sorted(tables.FIGURES)


@pytest.fixture(autouse=True)
def _no_env(monkeypatch):
    monkeypatch.delenv(tables.BOUNDS_ENV, raising=False)


@pytest.mark.parametrize("which", FIGS)
def test_golden_ascii(which):
    assert tables.table(which, ascii=True) == (GOLDEN / f"{which}.txt").read_text(encoding="utf-8")


@pytest.mark.parametrize("which", FIGS)
def test_golden_unicode(which):
    assert tables.table(which, ascii=False) == (GOLDEN / f"{which}.unicode.txt").read_text(encoding="utf-8")


@pytest.mark.parametrize("which", FIGS)
def test_golden_csv(which):
    assert tables.table(which, fmt="csv") == (GOLDEN / f"{which}.csv").read_text(encoding="utf-8")


def test_fig1_shape():
    rows = tables.grid("fig1")
    header = rows[0]
    origin_col = header.index("0")
    by_b = {int(r[0]): r for r in rows[1:]}
    assert by_b[0][origin_col] == "A"
    assert all(by_b[b][origin_col] == "<Z>" for b in range(1, 8))


def test_fig3_diagonal_and_wedge():
    rows = tables.grid("fig3")
    cols = [int(a) for a in rows[0][1:]]
    for r in rows[1:]:
        b = int(r[0])
        for a, cell in zip(cols, r[1:]):
            if a + b == 0 and a % 2 == 0:
                assert cell == "R"
            elif a + b > 0 and a % 2 == 0:
                assert cell == "<Z/2>"


def test_empty_bounds_header_only():
    assert tables.table("fig1", (1, 0, 0, 0)) == "b\\a\n"
    assert tables.table("fig1", (0, 0, 1, 0)) == "b\\a  0\n"


def test_env_bounds(monkeypatch):
    monkeypatch.setenv(tables.BOUNDS_ENV, "0,1,0,1")
    assert tables.grid("fig2") == [["b\\a", "0", "1"], ["1", "eps", "."], ["0", "1", "."]]


def test_bad_bounds():
    with pytest.raises(ValueError):
        tables.parse_bounds("1,2,3")


def test_deterministic():
    assert tables.table("fig6") == tables.table("fig6")


def test_product_table_doc_is_current():
    doc = Path(__file__).resolve().parent.parent / "docs" / "PRODUCT_TABLE.md"
    assert tables.product_table_doc() == doc.read_text(encoding="utf-8")


def _cells(which, bounds):
    rows = tables.grid(which, bounds)
    cols = [int(a) for a in rows[0][1:]]
    return {(a, int(r[0])): cell for r in rows[1:] for a, cell in zip(cols, r[1:])}


def test_eap_generator_cells():
    cells = _cells("fig6", (0, 9, -6, 1))
    assert cells[(0, 0)] == "kappa"
    assert cells[(0, 1)] == "eps*kappa"
    assert cells[(3, -3)] == "tau_3"
    assert cells[(5, -5)] == "tau_5"
    assert cells[(9, 1)] == "eps^10*tau_9"
    # the ε-power drops by exactly one per row down a column
    assert [cells[(9, b)] for b in range(1, -7, -1)] == [f"eps^{m}*tau_9" for m in range(10, 2, -1)]
    assert cells[(1, 0)] == cells[(2, 0)] == "."


def test_ep_generator_cells():
    cells = _cells("fig4", (-4, 4, -2, 2))
    assert cells[(0, 0)] == "1"
    assert cells[(-2, 2)] == "xi"
    assert cells[(2, -2)] == "xi^-1"
    assert cells[(4, 0)] == "eps^4*xi^-2"
