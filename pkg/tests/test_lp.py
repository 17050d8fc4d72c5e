from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from boolsep.classify import feature_matrix
from boolsep.core import majority, parity
from boolsep.lp import (
    SignCertificate,
    phase_one,
    sign_representation,
    verify_weights,
    verify_witness,
)

from conftest import tables


def test_phase_one_feasible_and_infeasible():
    A = [[Fraction(1), Fraction(1), Fraction(0)], [Fraction(1), Fraction(0), Fraction(1)]]
    x = phase_one(A, [Fraction(2), Fraction(1)])
    assert x is not None and all(v >= 0 for v in x)
    assert [sum(a * v for a, v in zip(row, x)) for row in A] == [2, 1]
    # x1 + x2 = 1 and x1 + x2 = 2 cannot both hold
    assert phase_one([[Fraction(1), Fraction(1)], [Fraction(1), Fraction(1)]], [Fraction(1), Fraction(2)]) is None
    # negative right-hand side with x >= 0 is infeasible
    assert phase_one([[Fraction(1)]], [Fraction(-1)]) is None


def test_phase_one_degenerate_cycling_example():
    # Beale-style degenerate system; Bland's rule must terminate
    A = [[Fraction(v) for v in row] for row in (
        [Fraction(1, 4), -8, -1, 9, 1, 0, 0],
        [Fraction(1, 2), -12, Fraction(-1, 2), 3, 0, 1, 0],
        [0, 0, 1, 0, 0, 0, 1],
    )]
    x = phase_one(A, [Fraction(0), Fraction(0), Fraction(1)])
    assert x is not None
    for row, rhs in zip(A, [0, 0, 1]):
        assert sum(a * v for a, v in zip(row, x)) == rhs


def test_verify_weights_sign_zero_is_negative():
    phi = feature_matrix(2, 1)
    labels = majority(2).values
    assert verify_weights(phi, labels, [0, 1, 1])
    assert not verify_weights(phi, labels, [Fraction(1, 2), 1, 1])
    assert not verify_weights(phi, labels, [0, 1])


def test_verify_witness_rejects_bad_witnesses():
    phi = feature_matrix(2, 1)
    y = parity(2).values
    good = {j: Fraction(1, 4) for j in range(4)}
    assert verify_witness(phi, y, good)
    assert not verify_witness(phi, y, {})
    assert not verify_witness(phi, y, {0: Fraction(1)})
    assert not verify_witness(phi, y, {0: Fraction(-1, 4), 1: Fraction(1, 4), 2: Fraction(1, 4), 3: Fraction(1, 4)})


@given(tables(max_n=4), st.integers(1, 2))
def test_float_and_exact_paths_agree(tt, d):
    d = min(d, tt.n)
    phi = feature_matrix(tt.n, d)
    fast = sign_representation(phi, tt.values)
    exact = sign_representation(phi, tt.values, exact_only=True)
    assert fast.member == exact.member
    for cert in (fast, exact):
        if cert.member:
            assert verify_weights(phi, tt.values, cert.weights)
        else:
            assert verify_witness(phi, tt.values, cert.witness)


def test_requires_constant_column():
    phi = feature_matrix(2, 1)[:, 1:]
    with pytest.raises(ValueError):
        sign_representation(phi, majority(2).values)


def test_certificate_json():
    cert = SignCertificate(True, (Fraction(1, 2), Fraction(1)))
    assert cert.to_json() == {"verdict": "member", "method": "float+verify", "weights": ["1/2", "1"]}
    cert = SignCertificate(False, witness={3: Fraction(1, 2), 1: Fraction(1, 2)})
    assert cert.to_json()["witness"] == [{"index": 1, "multiplier": "1/2"}, {"index": 3, "multiplier": "1/2"}]
    assert cert.verdict == "non-member"
