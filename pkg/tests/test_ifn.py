import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ifdea.ifn import (
    TIFN,
    DomainError,
    TIFNError,
    add,
    div,
    expected_value,
    hesitation_at,
    membership_at,
    mul,
    nonmembership_at,
    parse_tifn,
    scalar_mul,
    sub,
    tifn_from_crisp,
    tifn_new,
)

X10 = tifn_new(21.88, 3105.55, 15086.61, 18, 18000)
X19 = tifn_new(21.88, 3105.55, 15086.61, 21, 15500)


def components(p):
    return (p.mem_lower, p.mode, p.mem_upper, p.nonmem_lower, p.nonmem_upper)


reals = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)


@st.composite
def tifns(draw, positive=False):
    lo = 0.01 if positive else -1e3
    vals = sorted(draw(st.lists(st.floats(lo, 1e3, allow_nan=False), min_size=5, max_size=5)))
    return TIFN.from_chain(vals)


def test_new_valid():
    assert components(X10) == (21.88, 3105.55, 15086.61, 18.0, 18000.0)
    assert components(tifn_new(5, 5, 5, 5, 5)) == (5,) * 5


def test_new_ordering_violation_names_pair():
    with pytest.raises(TIFNError, match="mem_lower=2.0 > mode=1.0"):
        tifn_new(2, 1, 3, 0, 4)
    with pytest.raises(TIFNError, match="nonmem_lower"):
        tifn_new(1, 2, 3, 1.5, 4)
    with pytest.raises(TIFNError, match="nonmem_upper"):
        tifn_new(1, 2, 3, 0, 2.5)


@pytest.mark.parametrize("c", [3973.34, 0.0, -2.0])
def test_from_crisp(c):
    assert components(tifn_from_crisp(c)) == (c,) * 5


def test_add_componentwise():
    assert components(add(tifn_new(1, 2, 3, 0, 4), tifn_new(1, 1, 1, 1, 1))) == (2, 3, 4, 1, 5)
    shifted = X10 + tifn_from_crisp(10)
    assert components(shifted) == tuple(v + 10 for v in components(X10))


def test_sub_reverses_spreads():
    p = tifn_new(1, 2, 3, 0, 4)
    assert components(sub(p, p)) == (-2, 0, 2, -4, 4)
    assert components(p - tifn_new(0.5, 1, 1.5, 0, 2)) == (1 - 1.5, 1, 3 - 0.5, 0 - 2, 4 - 0)


def test_mul_div_scalar():
    p = tifn_new(1, 2, 3, 0.5, 4)
    assert mul(p, tifn_from_crisp(1)) == p
    assert components(mul(tifn_new(2, 4, 6, 1, 8), p)) == (2, 8, 18, 0.5, 32)
    assert components(scalar_mul(-1, p)) == (-3, -2, -1, -4, -0.5)
    assert components(2 * p) == (2, 4, 6, 1, 8)
    q = div(tifn_new(2, 4, 6, 1, 8), tifn_new(1, 2, 3, 0.5, 4))
    assert components(q) == (2 / 3, 2, 6, 1 / 4, 16)


def test_mul_div_domain():
    with pytest.raises(DomainError):
        mul(tifn_new(1, 2, 3, 0, 4), tifn_new(1, 2, 3, 0.5, 4))
    with pytest.raises(DomainError):
        div(tifn_new(1, 2, 3, 0.5, 4), tifn_new(-1, 2, 3, -2, 4))


def test_expected_value_paper_values():
    assert expected_value(X10) == pytest.approx(5693.586, abs=1e-3)
    assert expected_value(X19) == pytest.approx(5381.461, abs=1e-3)
    assert expected_value(tifn_from_crisp(7.25)) == 7.25


def test_grades_paper_cell():
    assert membership_at(X10, 3105.55) == 1.0
    assert nonmembership_at(X10, 3105.55) == 0.0
    assert membership_at(X10, 21.88) == 0.0
    nu = (3105.55 - 21.88) / (3105.55 - 18)  # printed left leg of the non-membership function
    assert nonmembership_at(X10, 21.88) == pytest.approx(nu, rel=1e-15)
    assert hesitation_at(X10, 21.88) == pytest.approx(1 - nu, rel=1e-12)
    # right legs use this cell's own uppers
    assert membership_at(X10, 9000) == pytest.approx((15086.61 - 9000) / (15086.61 - 3105.55))
    assert membership_at(X10, 16000) == 0.0
    assert nonmembership_at(X19, 9000) == pytest.approx((9000 - 3105.55) / (15500 - 3105.55))
    assert nonmembership_at(X10, 10) == 1.0 and nonmembership_at(X10, 20000) == 1.0


def test_degenerate_grades():
    p = tifn_from_crisp(4.0)
    assert membership_at(p, 4.0) == 1.0
    assert nonmembership_at(p, 4.0) == 0.0
    assert membership_at(p, 4.1) == 0.0
    assert nonmembership_at(p, 3.9) == 1.0
    # collapsed left membership leg
    q = tifn_new(2, 2, 5, 1, 6)
    assert membership_at(q, 2) == 1.0 and membership_at(q, 1.5) == 0.0


def test_text_round_trip():
    assert str(X10) == "(21.88,3105.55,15086.61;18,18000)"
    assert parse_tifn(str(X10)) == X10
    assert parse_tifn(" ( -1 , 0.5,2e1 ; -3,25 ) ") == tifn_new(-1, 0.5, 20, -3, 25)
    with pytest.raises(TIFNError):
        parse_tifn("(1,2,3,4,5)")


@given(tifns(), tifns())
def test_add_sub_closed(p, q):
    add(p, q)
    sub(p, q)


@given(tifns(positive=True), tifns(positive=True), st.floats(-100, 100))
def test_mul_div_scalar_closed(p, q, lam):
    mul(p, q)
    div(p, q)
    scalar_mul(lam, p)


@given(tifns(), tifns(), st.floats(0, 100))
def test_expected_value_linear(p, q, lam):
    ev_sum = expected_value(p) + expected_value(q)
    assert math.isclose(expected_value(add(p, q)), ev_sum, rel_tol=1e-12, abs_tol=1e-9)
    assert math.isclose(expected_value(scalar_mul(lam, p)), lam * expected_value(p), rel_tol=1e-12, abs_tol=1e-9)


@given(reals, reals)
def test_degenerate_collapse(a, b):
    A, B = tifn_from_crisp(a), tifn_from_crisp(b)
    assert add(A, B) == tifn_from_crisp(a + b)
    assert sub(A, B) == tifn_from_crisp(a - b)
    if a > 0 and b > 0:
        assert mul(A, B) == tifn_from_crisp(a * b)
        assert div(A, B) == tifn_from_crisp(a / b)


@given(tifns(), st.floats(-2e3, 2e3))
def test_grades_bounded(p, x):
    mu, nu = membership_at(p, x), nonmembership_at(p, x)
    assert 0 <= mu <= 1 and 0 <= nu <= 1
    assert mu + nu <= 1 + 1e-12
    assert -1e-12 <= hesitation_at(p, x) <= 1


def test_grade_extremes_sampled():
    rng = np.random.default_rng(11)
    for _ in range(50):
        p = TIFN.from_chain(np.sort(rng.uniform(-50, 50, 5)))
        for x in rng.uniform(p.nonmem_lower - 5, p.nonmem_upper + 5, 200):
            if x != p.mode:
                assert membership_at(p, x) < 1
                assert nonmembership_at(p, x) > 0
