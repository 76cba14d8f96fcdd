import numpy as np
import pytest

from fiberlrc.code_builder import build_code
from fiberlrc.curves import family_spec
from fiberlrc.distance import (
    WitnessSpec,
    as_f0_pool,
    certify_distance,
    check_counting,
    check_witness,
    exact_distance_bruteforce,
    expected_weight,
    find_F_sets,
    find_mu,
    search_low_weight,
    witness_AS,
    witness_codeword,
    witness_hermitian_lrc2,
    witness_hermitian_rational,
    witness_message,
    witness_THC,
    witness_weight,
)
from fiberlrc.errors import FieldTooSmall, InvalidWitness, LOutOfRange, TooLarge
from fiberlrc.gf import make_field


def _zero_positions(code, w):
    """Points meeting F0 on y0 or a used F_i value on y_i."""
    pts = code.eval_set.points
    hit = np.isin(pts[:, 0], w.F0)
    for i, vals in enumerate(w.used(code.eval_set.spec.map_degrees)):
        hit |= np.isin(pts[:, i + 1], vals)
    return hit


WITNESSED = [
    (("hermitian_rational", 3, 1, None, 0), lambda s: witness_hermitian_rational(s, 0)),
    (("hermitian_rational", 3, 1, None, 4), lambda s: witness_hermitian_rational(s, 4)),
    (("hermitian_lrc2", 3, 1, None, 0), witness_hermitian_lrc2),
    (("as", 3, 2, 2, 0), lambda s: witness_AS(s, 0)),
    (("as", 3, 2, 2, 60), lambda s: witness_AS(s, 60)),
]


@pytest.mark.parametrize("args,make", WITNESSED)
def test_witness_valid_and_weight(code_of, args, make):
    code = code_of(*args)
    w = make(code.eval_set.spec)
    assert check_witness(code, w).ok
    word, wt = witness_weight(code, w)
    zeros = _zero_positions(code, w)
    assert np.array_equal(word == 0, zeros)
    assert wt == expected_weight(code) == w.certified_weight == code.params.d_lower
    assert np.array_equal(code.encode(witness_message(code, w)), witness_codeword(code, w))


def test_named_witness_weights(code_of):
    assert witness_weight(code_of("as", 3, 2, 2, 0), witness_AS(family_spec("as", 3, 2, 2), 0))[1] == 669
    assert witness_weight(code_of("as", 3, 2, 2, 60), witness_AS(family_spec("as", 3, 2, 2), 60))[1] == 129
    assert witness_weight(
        code_of("hermitian_lrc2", 3, 1, None, 0), witness_hermitian_lrc2(family_spec("hermitian_lrc2", 3, 1))
    )[1] == 14


def test_empty_witness_gives_constant_codeword(code_of):
    code = code_of("as", 2, 2, 2, 0)
    w = WitnessSpec((), ((), ()))
    word, wt = witness_weight(code, w, strict=False)
    assert wt == code.n


def test_witness_errors(code_of):
    with pytest.raises(LOutOfRange):
        witness_hermitian_rational(family_spec("hermitian_rational", 3, 1), 5)
    with pytest.raises(LOutOfRange):
        witness_AS(family_spec("as", 3, 2, 2), 75)
    with pytest.raises(FieldTooSmall):
        witness_hermitian_lrc2(family_spec("hermitian_lrc2", 2, 1))
    with pytest.raises(FieldTooSmall):
        witness_THC(family_spec("thc", 3, 1), 0)
    code = code_of("as", 3, 2, 2, 0)
    bad = WitnessSpec((), ((1,), (1,)))
    with pytest.raises(InvalidWitness):
        witness_weight(code, bad)


def test_find_mu():
    assert find_mu(make_field(2, 4)) == 1
    assert find_mu(make_field(5, 2)) == 2
    assert find_mu(make_field(11, 2)) == 5


def test_thc_witness_structure():
    # on X_4 the construction's codeword exists but misses the bound
    spec = family_spec("thc", 2, 2)
    code = build_code(spec, 4)
    w = witness_THC(spec, 4)
    word, wt = witness_weight(code, w, strict=False)
    assert code.n == 240 and code.k == 60
    assert wt == int(np.count_nonzero(~_zero_positions(code, w)))
    assert wt >= code.params.d_lower


def test_bruteforce_small():
    c2 = build_code(family_spec("hermitian_lrc2", 2, 1), 0)
    assert exact_distance_bruteforce(c2) == 4 == c2.params.d_lower
    c3 = build_code(family_spec("hermitian_lrc2", 3, 1), 0)
    assert exact_distance_bruteforce(c3) == 14 == c3.params.d_lower
    with pytest.raises(TooLarge):
        exact_distance_bruteforce(c3, cap=100)


def test_bruteforce_agrees_with_oracle_on_tiny_code():
    # independent oracle: list every message over GF(4)
    import itertools

    code = build_code(family_spec("hermitian_lrc2", 2, 1), 0)
    f = code.field
    best = code.n
    for msg in itertools.product(range(f.order), repeat=code.k):
        if any(msg):
            best = min(best, int(np.count_nonzero(code.encode(np.array(msg)))))
    assert exact_distance_bruteforce(code, jobs=1) == best


@pytest.mark.parametrize("args", [
    ("hermitian_lrc2", 3, 1, None, 0),
    ("thc", 3, 1, None, 3),
    ("as", 3, 2, 2, 74),
    ("as", 2, 2, 2, 1),
    ("hermitian_rational", 3, 1, None, 5),
])
def test_certificate_sandwich(code_of, args):
    code = code_of(*args)
    cert = certify_distance(code, bruteforce_cap=10**5)
    assert code.params.d_lower <= cert.lower <= cert.upper <= code.n
    if cert.witness is not None:
        assert int(np.count_nonzero(witness_codeword(code, cert.witness))) == cert.upper
    _, wt = search_low_weight(code, 5, np.random.default_rng(0), pair_rows=code.k <= 40)
    if cert.exact:
        assert wt >= cert.lower


def test_as_l74_interval(code_of):
    cert = certify_distance(code_of("as", 3, 2, 2, 74))
    assert cert.lower == 3 and not cert.exact
    assert cert.to_json()["status"] == "not certified exact"


def test_as_example_pool():
    spec = family_spec("as", 3, 2, 2, kernel=["14", "32"], modulus=[1, 1, 1, 1, 1])
    assert len(as_f0_pool(spec, [[12], [45]])) == 61


@pytest.mark.parametrize("l", [0, 6, 12, 18, 24])
def test_counting_condition_implies_search_success(l):
    spec = family_spec("as", 3, 2, 1)
    cc = check_counting(spec, l)
    if cc.verdict:
        code = build_code(spec, l)
        res = find_F_sets(code)
        assert res.found and check_witness(code, res.witness).ok
        assert witness_weight(code, res.witness)[1] == code.params.d_lower


def test_counting_formula():
    cc = check_counting(None, 2, eta=(3, 4), psi=(1, 2), S0=100)
    assert cc.factor_sums == ((3 - 2) * 1 * (1 * 2 + 4 * 2), (4 - 2) * 2 * (1 * 2 + 3 * 1))
    assert cc.base_sum == 2 + 3 + 8 and cc.base_ok


def test_search_on_x3_exhausts(code_of):
    res = find_F_sets(code_of("thc", 3, 1, None, 3))
    assert res.status == "exhausted"


def test_witness_json_roundtrip():
    w = WitnessSpec((1, 2), ((3,), (4, 5)), "constructed", 9)
    assert WitnessSpec.from_json(w.to_json()) == w
