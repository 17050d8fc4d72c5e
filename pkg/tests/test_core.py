from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from boolsep.core import (
    Dyadic,
    TruthTable,
    all_tables,
    and_type,
    constant,
    cube_points,
    dictator,
    evaluate,
    flip_point,
    from_hex,
    hex_length,
    majority,
    mask_of,
    parity,
    point_index,
    restrict,
    variables_of,
)

from conftest import tables
from oracles import points


# -- Dyadic ------------------------------------------------------------------------

@given(st.integers(-10**6, 10**6), st.integers(0, 40), st.integers(-10**6, 10**6), st.integers(0, 40))
def test_dyadic_arithmetic_matches_fractions(a, e, b, f):
    x, y = Dyadic(a, e), Dyadic(b, f)
    fx, fy = Fraction(a, 2**e), Fraction(b, 2**f)
    assert (x + y).as_fraction() == fx + fy
    assert (x - y).as_fraction() == fx - fy
    assert (x * y).as_fraction() == fx * fy
    assert (x < y) == (fx < fy)
    assert (x == y) == (fx == fy)
    assert abs(-x).as_fraction() == abs(fx)


@given(st.integers(-10**6, 10**6), st.integers(0, 30))
def test_dyadic_canonical_form(a, e):
    d = Dyadic(a, e)
    assert d.numerator == 0 and d.exponent == 0 or d.numerator % 2 or d.exponent == 0
    assert hash(d) == hash(d.as_fraction())
    assert Dyadic.from_fraction(d.as_fraction()) == d


def test_dyadic_rejects_non_dyadic_fraction():
    with pytest.raises(ValueError):
        Dyadic.from_fraction(Fraction(1, 3))


def test_dyadic_scaled_and_json():
    d = Dyadic(3, 2)
    assert d.scaled(4) == 12
    with pytest.raises(ValueError):
        d.scaled(1)
    assert str(d) == "3/4"
    assert d.to_json() == {"numerator": 3, "exponent": 2, "value": 0.75}
    assert Dyadic(6, 3) == Dyadic(3, 2)
    assert Dyadic(1, 0) == 1 and Dyadic(1, 1) == 0.5 and Dyadic(1, 1) == Fraction(1, 2)


# -- encoding ---------------------------------------------------------------------

def test_cube_points_follow_index_encoding():
    for n in range(1, 6):
        assert [tuple(int(v) for v in p) for p in cube_points(n)] == points(n)


def test_point_index_roundtrip():
    for n in range(1, 6):
        for j, p in enumerate(points(n)):
            assert point_index(p) == j
    with pytest.raises(ValueError):
        point_index((1, 0))


def test_mask_helpers():
    assert mask_of([1, 3]) == 0b101
    assert variables_of(0b101) == [1, 3]


@given(tables(max_n=8))
def test_hex_roundtrip(tt):
    s = tt.to_hex()
    assert len(s) == hex_length(tt.n)
    assert from_hex(s, tt.n) == tt
    assert from_hex(s.upper(), tt.n) == tt
    assert TruthTable.from_int(tt.n, tt.to_int()) == tt


def test_hex_examples():
    assert from_hex("08", 2).bits.tolist() == [0, 0, 0, 1]
    assert majority(3).to_hex() == "e8"
    assert from_hex("0x96", 3) == parity(3)
    assert from_hex("9669", 4) == parity(4)  # byte 0 holds inputs 0..7


@pytest.mark.parametrize("text,n,msg", [
    ("0", 2, "hex digits"),
    ("080", 2, "hex digits"),
    ("0g", 2, "non-hex"),
    ("18", 2, "padding"),
    ("e8e8", 3, "hex digits"),
])
def test_hex_rejects_bad_input(text, n, msg):
    with pytest.raises(ValueError, match=msg):
        from_hex(text, n)


def test_truth_table_validation_and_immutability():
    with pytest.raises(ValueError):
        TruthTable(2, [0, 1, 0])
    with pytest.raises(ValueError):
        TruthTable(1, [0, 2])
    with pytest.raises(ValueError):
        TruthTable(0, [0])
    with pytest.raises(ValueError):
        TruthTable(21, [0])
    src = np.array([0, 1, 1, 0], dtype=np.uint8)
    tt = TruthTable(2, src)
    src[0] = 1
    assert tt.bits[0] == 0
    assert src.flags.writeable
    with pytest.raises(ValueError):
        tt.bits[0] = 1


def test_evaluate_accepts_index_or_point():
    tt = majority(3)
    for j, p in enumerate(points(3)):
        assert evaluate(tt, j) == evaluate(tt, p) == tt(p)
        assert evaluate(tt, p) == (1 if sum(p) > 0 else -1)
    with pytest.raises(IndexError):
        evaluate(tt, 8)
    with pytest.raises(ValueError):
        evaluate(tt, (1, 1))


def test_flip_point():
    tt = parity(3)
    assert flip_point(tt, 0, 0b101) == 5
    with pytest.raises(IndexError):
        flip_point(tt, 8, 1)
    with pytest.raises(ValueError):
        flip_point(tt, 0, 8)


def test_named_functions():
    assert constant(2).bits.tolist() == [0, 0, 0, 0]
    assert constant(2, -1).bits.tolist() == [1, 1, 1, 1]
    for n in range(1, 5):
        pts = points(n)
        for i in range(1, n + 1):
            assert dictator(n, i).values.tolist() == [p[i - 1] for p in pts]
        assert parity(n).values.tolist() == [int(np.prod(p)) for p in pts]
        assert and_type(n).values.tolist() == [-1 if all(v == -1 for v in p) else 1 for p in pts]
    assert majority(2).values.tolist() == [1, -1, -1, -1]  # sign(0) = -1
    assert and_type(2).to_hex() == "08"
    with pytest.raises(ValueError):
        dictator(3, 4)


def test_negation_and_from_callable():
    tt = TruthTable.from_callable(3, lambda x: x[0] * x[2])
    assert (-tt).values.tolist() == (-tt.values).tolist()
    assert tt == TruthTable.from_values(3, [p[0] * p[2] for p in points(3)])


@given(tables(min_n=2, max_n=6), st.data())
def test_restrict_matches_definition(tt, data):
    n = tt.n
    k = data.draw(st.integers(1, n - 1))
    fixed_vars = data.draw(st.permutations(range(1, n + 1)))[:k]
    fixed = {i: data.draw(st.sampled_from([-1, 1])) for i in fixed_vars}
    r = restrict(tt, fixed)
    free = [i for i in range(1, n + 1) if i not in fixed]
    assert r.n == len(free)
    for y in points(r.n):
        x = [0] * n
        for i, v in fixed.items():
            x[i - 1] = v
        for pos, i in enumerate(free):
            x[i - 1] = y[pos]
        assert r(y) == tt(x)


def test_restrict_errors():
    tt = majority(3)
    with pytest.raises(ValueError):
        restrict(tt, {})
    with pytest.raises(ValueError):
        restrict(tt, {1: 1, 2: 1, 3: 1})
    with pytest.raises(ValueError):
        restrict(tt, {4: 1})
    with pytest.raises(ValueError):
        restrict(tt, {1: 0})


def test_all_tables():
    t = all_tables(2)
    assert t.shape == (16, 4)
    assert TruthTable(2, t[8]).to_int() == 8
    with pytest.raises(ValueError):
        all_tables(5)
