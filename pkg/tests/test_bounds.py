from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from fiberlrc.bounds import (
    bhadane_thangaraj,
    bmq,
    bound_report,
    hermitian_defect,
    product_code,
    reference_constructions,
    render,
    singleton,
    tamo_barg,
    tamo_barg_rate_cap,
    wang_code,
)
from fiberlrc.errors import BadParams


def test_known_values():
    assert tamo_barg(729, 4, 2, 2)[0] == 725
    assert render(tamo_barg_rate_cap(2, 2), 3) == "0.533"
    assert render(tamo_barg_rate_cap(4, 2), 3) == "0.711"
    assert bhadane_thangaraj(60, 12, (3, 4)) == 46
    assert bhadane_thangaraj(24, 6, (2, 3)) == 17
    assert bhadane_thangaraj(240, 48, (4, 3)) == 175
    assert bmq(60, 12, (3, 4)) == 47
    assert singleton(10, 4) == 7


def test_reference_codes():
    assert (product_code(2, 2).n, product_code(2, 2).k, product_code(2, 2).d) == (9, 4, 4)
    w = wang_code(4, 2)
    assert (w.n, w.k, w.d) == (15, 10, 3)


def test_hermitian_defect():
    assert hermitian_defect(4) == (8, Fraction(8, 60))
    for q in (2, 3, 5, 7):
        n, k = q**3 - q, q * q - q
        d = q**3 - 2 * q * q + q + 2
        assert hermitian_defect(q)[0] == bhadane_thangaraj(n, k, (q - 1, q)) - d


def test_rate_cap_formula():
    # (1 + 1/r)(1 + 1/(2r)) for t = 2
    assert tamo_barg_rate_cap(3, 2) == 1 / (Fraction(4, 3) * Fraction(7, 6))


@given(st.integers(1, 8), st.integers(1, 5))
def test_cap_dominates_product_rate(r, t):
    assert tamo_barg_rate_cap(r, t) >= product_code(r, t).rate
    if t >= 2:
        assert tamo_barg_rate_cap(r, t) > product_code(r, t).rate


@given(st.integers(2, 400), st.data())
def test_bound_ordering(n, data):
    k = data.draw(st.integers(1, n))
    rs = data.draw(st.lists(st.integers(1, 6), min_size=1, max_size=4))
    assert bhadane_thangaraj(n, k, rs) <= singleton(n, k)
    assert bhadane_thangaraj(n, k, []) == singleton(n, k)
    assert bhadane_thangaraj(n, k, rs) == bhadane_thangaraj(n, k, list(reversed(rs)))
    assert tamo_barg(n, k, max(rs), 1)[0] <= singleton(n, k)


def test_render_rules():
    assert render(Fraction(2, 3), 4) == "0.6667"
    assert render(Fraction(2, 3), 4, "truncate") == "0.6666"
    assert render(Fraction(1, 8), 2) == "0.12"
    assert render(0, 4) == "0.0000"


def test_report():
    rep = bound_report(60, 12, (3, 4), d=38)
    assert rep.bound == 46 and rep.defect == 8 and rep.consistent()
    assert rep.to_json()["relative_defect"] == "0.1333"
    assert not bound_report(60, 12, (3, 4), d=50).consistent()


def test_errors():
    with pytest.raises(BadParams):
        singleton(3, 4)
    with pytest.raises(BadParams):
        tamo_barg_rate_cap(0, 2)
    with pytest.raises(BadParams):
        bmq(10, 2, [])
    with pytest.raises(BadParams):
        reference_constructions(2, 0)
