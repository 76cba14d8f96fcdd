import csv
import io
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from fiberlrc.code_builder import MonomialBasis, build_code, max_l_positive, theorem3_params
from fiberlrc.curves import family_params, family_spec
from fiberlrc.errors import LengthMismatch, LTooLarge
from fiberlrc.linalg import rank, row_reduce, solve

SMALL = [
    ("hermitian_rational", 3, 1, None),
    ("hermitian_lrc2", 3, 1, None),
    ("hermitian_lrc2", 2, 2, None),
    ("thc", 3, 1, None),
    ("thc", 2, 2, None),
    ("as", 3, 2, 2),
    ("as", 2, 2, 2),
]


def test_named_examples(code_of):
    c = code_of("thc", 3, 1, None, 3)
    assert (c.n, c.k, c.params.d_lower) == (72, 24, 2)
    c = code_of("as", 3, 2, 2, 0)
    assert (c.n, c.k, c.params.d_lower) == (729, 4, 669)
    c = code_of("hermitian_lrc2", 2, 2, None, 0)
    assert (c.n, c.k) == (60, 12)


def test_closed_form_examples():
    p = theorem3_params(family_params("hermitian_lrc2", 7, 4), 0)
    assert (p.n, p.k, p.d_lower) == (13841284800, 5762400, 13829760002)
    p = theorem3_params(family_params("as", 5, 2, 2), 572)
    assert (p.k, p.d_lower) == (9168, 545)


def test_max_l_positive():
    assert max_l_positive(family_params("as", 3, 2, 2)) == 74
    assert max_l_positive(family_params("thc", 3, 1)) == 3
    assert max_l_positive(family_params("as", 5, 2, 2)) == 593
    assert max_l_positive(family_params("thc", 2, 2)) == 7


@pytest.mark.parametrize("family,p,h,t", SMALL)
def test_rank_and_params_over_l_range(family, p, h, t):
    spec = family_spec(family, p, h, t)
    top = max_l_positive(spec)
    prev = None
    for l in sorted({0, 1, top // 2, top}):
        c = build_code(spec, l)
        assert rank(spec.field, c.G) == c.k == (l + 1) * np.prod([d - 1 for d in spec.map_degrees])
        assert c.params.rate == Fraction(c.k, c.n)
        if prev is not None:
            assert c.k > prev.k and c.params.d_theorem < prev.params.d_theorem
        prev = c
        assert c.params.d_theorem >= 1


@pytest.mark.parametrize("family,p,h,t", SMALL)
def test_rows_are_monomial_evaluations(family, p, h, t):
    spec = family_spec(family, p, h, t)
    c = build_code(spec, 1)
    f = spec.field
    rng = np.random.default_rng(0)
    exps = c.basis.exponent_tuples
    for r in rng.choice(len(exps), size=min(5, len(exps)), replace=False):
        for col in rng.choice(c.n, size=10, replace=False):
            pt = c.eval_set.point(int(col))
            val = 1
            for coord, e in zip(pt, exps[r]):
                val = f.mul(val, f.pow(coord, e))
            assert c.G[r, col] == val


def test_basis_order_and_count():
    b = MonomialBasis(2, (3, 4))
    assert len(b) == 3 * 2 * 3 == len(b.exponent_tuples)
    assert b.exponent_tuples[:4] == [(0, 0, 0), (0, 0, 1), (0, 0, 2), (0, 1, 0)]
    assert b.exponent_tuples == sorted(b.exponent_tuples)


def test_encode(code_of):
    c = code_of("thc", 2, 2, None, 2)
    assert not c.encode(np.zeros(c.k, dtype=np.int64)).any()
    e1 = np.zeros(c.k, dtype=np.int64)
    e1[0] = 1
    assert (c.encode(e1) == 1).all()
    with pytest.raises(LengthMismatch):
        c.encode([1, 2])


@given(st.integers(0, 2**32 - 1))
def test_encode_roundtrip_through_information_set(seed):
    from tests.conftest import cached_code

    c = cached_code("thc", 3, 1, None, 2)
    rng = np.random.default_rng(seed)
    msg = c.random_messages(1, rng)[0]
    word = c.encode(msg)
    _, piv = row_reduce(c.field, c.G)
    assert np.array_equal(solve(c.field, c.G[:, piv], word[piv]), msg)


def test_l_range_errors():
    spec = family_spec("thc", 3, 1)
    with pytest.raises(LTooLarge):
        build_code(spec, 6)
    with pytest.raises(LTooLarge):
        build_code(spec, -1)


@pytest.mark.parametrize("p,t", [(3, 2), (3, 3), (5, 2), (5, 3), (7, 2)])
def test_uniform_rate_cap(p, t):
    fp = family_params("as", p, t, t)
    r = p - 1
    for l in (0, max_l_positive(fp) // 2, max_l_positive(fp)):
        assert theorem3_params(fp, l).rate <= Fraction(r, r + 1) ** t


def test_exports(code_of):
    c = code_of("as", 2, 2, 2, 1)
    rows = list(csv.reader(io.StringIO(c.generator_csv())))
    assert len(rows) == c.k and len(rows[0]) == c.n
    meta = c.to_json()
    assert {"p", "h", "t", "l", "n", "k", "d_lower", "localities", "rate"} <= set(meta)
