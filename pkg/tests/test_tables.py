from decimal import Decimal
from fractions import Fraction

import pytest

from fiberlrc import tables
from fiberlrc.errors import UnknownTable
from tests import expected_tables as X

# Cells whose printed decimal disagrees with k/n under every rounding rule.
MISPRINTED_RATES = {("as_p3t2", 0): "0.006", ("as_p3t2", 60): "0.334",
                    ("as_rate", "(3,2,74)"): "0.415", ("as_rate", "(7,2,2329)"): "0.712"}


def _same_decimal(a, b):
    return Decimal(a) == Decimal(b)


def test_hermitian_table():
    rows = tables.table("hermitian")
    assert len(rows) == len(X.HERMITIAN)
    for row, exp in zip(rows, X.HERMITIAN):
        got = (row["q2"], row["r"], row["n"], row["k"], row["d"], row["bound"])
        assert got == exp[:6]
        assert _same_decimal(row["relative_defect"], exp[6])


def test_thc_table():
    rows = tables.table("thc")
    assert len(rows) == len(X.THC)
    for row, exp in zip(rows, X.THC):
        assert (row["q"], row["n"], row["l"], row["k"], row["d"], row["bound"]) == exp[:6]
        assert _same_decimal(row["relative_defect"], exp[6])


@pytest.mark.parametrize("tid,expected", [("as_p3t2", X.AS_P3T2), ("as_p5t2", X.AS_P5T2)])
def test_fixed_as_tables(tid, expected):
    for row, exp in zip(tables.table(tid), expected):
        assert (row["l"], row["k"], row["d"], row["bound"]) == (exp[0], exp[1], exp[3], exp[4])
        misprint = MISPRINTED_RATES.get((tid, row["l"]))
        if misprint:
            assert row["rate"] != misprint
            assert abs(row.exact["rate"] - Fraction(misprint)) <= Fraction(1, 1000)
        else:
            assert row["rate"] == exp[2]


def test_as_rate_table():
    for row, exp in zip(tables.table("as_rate"), X.AS_RATE):
        got = (row["ptl"], row["q2"], row["r"], row["n"], row["k"], row["d_range"], row["rate_bound"])
        assert got == exp[:6] + (exp[7],)
        misprint = MISPRINTED_RATES.get(("as_rate", row["ptl"]))
        if misprint:
            assert row["rate"] != misprint
        else:
            assert row["rate"] == exp[6]


def test_as_dist_table():
    for row, exp in zip(tables.table("as_dist"), X.AS_DIST):
        got = (row["p"], row["t"], row["r"], row["n"], row["k"], row["d"], row["bound"])
        assert got == exp[:7]
        assert row["relative_defect"] == exp[7]


def test_enumerate_mode_certifies_small_rows():
    rows = tables.table("hermitian", "enumerate")
    assert rows[0]["provenance"] == "certified-exact" and rows[0]["d"] == 4
    assert rows[4]["provenance"] == "certified-exact" and rows[4]["d"] == 14
    assert "too large" in rows[-1]["provenance"]


def test_unknown():
    with pytest.raises(UnknownTable):
        tables.table("nope")
    with pytest.raises(UnknownTable):
        tables.table("thc", "guess")


@pytest.mark.parametrize("p", [3, 5, 7])
def test_figure_rates_approach_product_code(p):
    pts = tables.figure_data(p, range(2, 11))
    gaps = [pt.product_rate - pt.rate for pt in pts]
    assert all(g > 0 for g in gaps)
    assert all(b < a for a, b in zip(gaps, gaps[1:]))
    assert all(pt.rate <= pt.tb_cap for pt in pts)
