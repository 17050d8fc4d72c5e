import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from boolsep.core import Dyadic, and_type, constant, dictator, majority, parity
from boolsep.influence import (
    InconsistentInfluence,
    average_sensitivity,
    flip_counts_rows,
    fourier_influence_rows,
    influence_profile,
    influence_set,
    influence_var,
    sensitivity,
    sensitivity_rows,
    total_influence,
    unate_influence_rows,
)
from boolsep.spectral import wht, wht_rows

from conftest import tables
import oracles


@given(tables(max_n=6))
def test_single_influence_matches_flipping(tt):
    for i in range(1, tt.n + 1):
        assert influence_var(tt, i).as_fraction() == oracles.influence(tt, [i - 1])


@given(tables(max_n=5), st.data())
def test_set_influence_matches_flipping(tt, data):
    mask = data.draw(st.integers(0, tt.size - 1))
    S = [i for i in range(tt.n) if mask >> i & 1]
    assert influence_set(tt, mask).as_fraction() == oracles.influence(tt, S)


@given(tables(max_n=8))
def test_total_influence_equals_average_sensitivity(tt):
    I = total_influence(tt)
    assert I == average_sensitivity(tt)
    assert I == influence_profile(tt).total
    assert 0 <= I <= tt.n


def test_known_influences():
    assert total_influence(and_type(2)) == 1
    assert influence_var(and_type(2), 1) == Dyadic(1, 1)
    assert total_influence(majority(3)) == Dyadic(3, 1)
    assert total_influence(parity(5)) == 5
    assert total_influence(dictator(4, 3)) == 1
    assert total_influence(constant(3)) == 0
    assert influence_set(parity(3), 0) == 0
    assert influence_set(parity(3), 0b011) == 0
    assert influence_set(parity(3), 0b111) == 1


def test_index_errors():
    with pytest.raises(ValueError):
        influence_var(majority(3), 0)
    with pytest.raises(ValueError):
        influence_set(majority(3), 8)
    with pytest.raises(IndexError):
        sensitivity(majority(3), 8)


def test_sensitivity_pointwise():
    tt = majority(3)
    # at (1,1,1) no single flip changes the majority; at (1,1,-1) two flips do
    assert sensitivity(tt, 0) == 0
    assert sensitivity(tt, 0b100) == 2
    assert sensitivity_rows(tt.bits)[0].tolist() == [sensitivity(tt, j) for j in range(8)]


def test_rows_helpers_agree(rng):
    bits = rng.integers(0, 2, (10, 32), dtype=np.uint8)
    W = wht_rows(1 - 2 * bits.astype(np.int64))
    flips = flip_counts_rows(bits)
    assert np.array_equal(flips << 5, fourier_influence_rows(W, 5))
    with pytest.raises(ValueError):
        flip_counts_rows(np.zeros((1, 3), dtype=np.uint8))


def test_unate_shortcut_only_for_unate_functions():
    maj = majority(5)
    assert np.array_equal(unate_influence_rows(wht(maj).W, 5)[0], flip_counts_rows(maj.bits)[0])
    par = parity(3)
    assert not np.array_equal(unate_influence_rows(wht(par).W, 3)[0], flip_counts_rows(par.bits)[0])


def test_profile_json():
    js = influence_profile(majority(3)).to_json()
    assert js["total"] == {"numerator": 3, "exponent": 1, "value": 1.5}
    assert [p["value"] for p in js["per_variable"]] == [0.5, 0.5, 0.5]


def test_cross_check_can_be_skipped():
    tt = majority(5)
    assert total_influence(tt, cross_check=False) == total_influence(tt)
    assert issubclass(InconsistentInfluence, AssertionError)
