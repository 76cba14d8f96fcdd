import itertools

import numpy as np
import pytest

from fiberlrc.errors import LengthMismatch, NotEnoughSurvivors, RepeatedAbscissa
from fiberlrc.gf import make_field
from fiberlrc.recovery import build_recovery_index, recover, recover_all, recover_multi

CODES = [
    ("hermitian_lrc2", 3, 1, None, 0),
    ("thc", 3, 1, None, 3),
    ("thc", 2, 2, None, 4),
    ("as", 3, 2, 2, 20),
    ("hermitian_rational", 3, 1, None, 3),
]


@pytest.mark.parametrize("args", CODES)
def test_set_structure(code_of, args):
    c = code_of(*args)
    idx = build_recovery_index(c)
    pts = c.eval_set.points
    for j in range(1, idx.t + 1):
        A = idx.others[j - 1]
        assert A.shape == (c.n, c.eval_set.spec.map_degrees[j - 1] - 1)
        assert not (A == np.arange(c.n)[:, None]).any()
        others = np.delete(pts, j, axis=1)
        assert (others[A] == others[:, None, :]).all()
    for i in range(c.n):
        sets = [set(idx.recovery_set(i, j)) for j in range(1, idx.t + 1)]
        for a, b in itertools.combinations(sets, 2):
            assert not a & b


@pytest.mark.parametrize("args", CODES)
def test_interpolation_recovers_codewords(code_of, args):
    c = code_of(*args)
    idx = build_recovery_index(c)
    W = c.encode_many(c.random_messages(30, np.random.default_rng(1)))
    for w in W:
        for j in range(1, idx.t + 1):
            assert np.array_equal(recover_all(idx, w, j), w)


def test_fit_residual_is_zero(code_of):
    # the polynomial through a full group has degree <= d_h - 2
    c = code_of("thc", 2, 2, None, 4)
    idx = build_recovery_index(c)
    f = c.field
    w = c.encode(c.random_messages(1, np.random.default_rng(3))[0])
    for i in range(0, c.n, 17):
        for j in (1, 2):
            group = [i] + idx.recovery_set(i, j)
            xs = [idx.abscissa(a, j) for a in group]
            # leading coefficient of the full interpolant: sum w_a / prod (x_a - x_b)
            lead = 0
            for a, xa in zip(group, xs):
                den = 1
                for xb in xs:
                    if xb != xa:
                        den = f.mul(den, f.sub(xa, xb))
                lead = f.add(lead, f.div(int(w[a]), den))
            assert lead == 0


def test_trivial_words(code_of):
    c = code_of("as", 3, 2, 2, 20)
    idx = build_recovery_index(c)
    zero = np.zeros(c.n, dtype=np.int64)
    ones = np.ones(c.n, dtype=np.int64)
    for i in (0, 100, 728):
        for j in (1, 2):
            assert recover(idx, zero, i, j) == 0
            assert recover(idx, ones, i, j) == 1


def test_multi_erasure_exhaustive_pairs(code_of):
    c = code_of("thc", 3, 1, None, 3)
    idx = build_recovery_index(c)
    w = c.encode(c.random_messages(1, np.random.default_rng(5))[0])
    for a, b in itertools.combinations(range(c.n), 2):
        present = np.ones(c.n, dtype=bool)
        present[[a, b]] = False
        rep = recover_multi(idx, np.where(present, w, 0), present)
        assert rep.success and np.array_equal(rep.word, w)


def test_unrepairable_pattern_reported(code_of):
    c = code_of("hermitian_rational", 3, 1, None, 3)
    idx = build_recovery_index(c)
    w = c.encode(c.random_messages(1, np.random.default_rng(2))[0])
    present = np.ones(c.n, dtype=bool)
    present[[0] + idx.recovery_set(0, 1)] = False
    rep = recover_multi(idx, w, present)
    assert not rep.success and 0 in rep.failed
    with pytest.raises(NotEnoughSurvivors):
        recover(idx, w, 0, 1, present=present)
    with pytest.raises(LengthMismatch):
        recover(idx, w[:-1], 0, 1)


def test_repeated_abscissa_detected():
    f = make_field(3, 1)
    pts = np.array([[0, 1], [0, 1]], dtype=np.int64)
    with pytest.raises(RepeatedAbscissa):
        build_recovery_index((f, pts))


def test_declared_localities(code_of):
    def sizes(args):
        return sorted(o.shape[1] for o in build_recovery_index(code_of(*args)).others)

    assert sizes(("hermitian_lrc2", 3, 1, None, 0)) == [2, 3]
    assert sizes(("thc", 3, 1, None, 3)) == [2, 3]
    assert sizes(("as", 3, 2, 2, 0)) == [2, 2]
    assert sizes(("hermitian_rational", 3, 1, None, 0)) == [2]
