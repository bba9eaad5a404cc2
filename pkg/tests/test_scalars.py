import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hcaff.errors import NegativeRadicand, ZeroInverse
from hcaff.scalars import (
    LaurentPoly,
    Rat,
    Surd,
    parse_surd,
    q_integer,
    rat,
    squarefree_decompose,
)


def S(r):
    return Surd.from_rational(r)


def sqrt(n):
    return Surd.sqrt_rational(n)


def test_squarefree_decompose():
    assert squarefree_decompose(12) == (2, 3)
    assert squarefree_decompose(1) == (1, 1)
    assert squarefree_decompose(49) == (7, 1)
    assert squarefree_decompose(360) == (6, 10)


def test_product_reduces_radicands():
    assert sqrt(2) * sqrt(6) == S(2) * sqrt(3)
    assert (S(1) + sqrt(2)) * (S(1) - sqrt(2)) == S(-1)
    i = Surd.i()
    assert (i * sqrt(2)) * (i * sqrt(2)) == S(-2)


def test_inverse_examples():
    half = Surd.from_rational(rat(1, 2))
    assert sqrt(2).inverse() == half * sqrt(2)
    assert (S(1) + sqrt(2)).inverse() == S(-1) + sqrt(2)
    assert Surd.i().inverse() == -Surd.i()
    with pytest.raises(ZeroInverse):
        Surd().inverse()


def test_sqrt_of_rational():
    assert sqrt(rat(9, 4)) == S(rat(3, 2))
    assert sqrt(rat(1, 2)) == Surd.from_rational(rat(1, 2)) * sqrt(2)
    assert sqrt(6) * sqrt(6) == S(6)  # q(2) = 2*3 = 6
    assert sqrt(0).is_zero()
    with pytest.raises(NegativeRadicand):
        sqrt(-1)


def test_laurent_specialize_q1():
    p = LaurentPoly.q_power(2) - LaurentPoly.q_power(-2)
    assert p.specialize_q1() == 0
    p = LaurentPoly.q_power(1) + LaurentPoly.q_power(-1)
    assert p.specialize_q1() == 2
    assert LaurentPoly.from_rational(1).specialize_q1() == 1


def test_q_integer():
    # (2)_0 with d_0 = 1 is q + q^-1
    assert q_integer(2, 1) == LaurentPoly.q_power(1) + LaurentPoly.q_power(-1)
    assert q_integer(1, 2) == LaurentPoly.from_rational(1)
    assert q_integer(3, 1).specialize_q1() == 3


surd_strategy = st.builds(
    lambda parts: sum(
        (Surd({d: (Rat(a, b), Rat(c, b))}) for (d, a, c, b) in parts if a or c),
        Surd(),
    ),
    st.lists(
        st.tuples(
            st.sampled_from([1, 2, 3, 5, 6, 30]),
            st.integers(-9, 9),
            st.integers(-9, 9),
            st.integers(1, 7),
        ),
        max_size=4,
    ),
)


@given(surd_strategy, surd_strategy, surd_strategy)
@settings(max_examples=120, deadline=None)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c


@given(surd_strategy, surd_strategy)
@settings(max_examples=80, deadline=None)
def test_float_oracle(a, b):
    # the float image of exact results matches float arithmetic
    assert math.isclose(
        abs((a * b).to_complex() - a.to_complex() * b.to_complex()), 0.0, abs_tol=1e-6
    )
    assert math.isclose(
        abs((a + b).to_complex() - (a.to_complex() + b.to_complex())), 0.0, abs_tol=1e-6
    )


@given(surd_strategy)
@settings(max_examples=60, deadline=None)
def test_inverse_roundtrip(a):
    if a.is_zero():
        return
    assert a.inverse() * a == Surd.from_rational(1)


@given(st.integers(0, 400), st.integers(1, 40))
@settings(max_examples=60, deadline=None)
def test_sqrt_squares_back(p, q):
    r = Rat(p, q)
    s = Surd.sqrt_rational(r)
    assert s * s == Surd.from_rational(r)


@given(surd_strategy)
@settings(max_examples=80, deadline=None)
def test_str_parse_roundtrip(a):
    assert parse_surd(str(a)) == a


def test_parse_specific():
    assert parse_surd("1/2 + (1+1/2*i)*sqrt(6) - i*sqrt(2)") == (
        Surd.from_rational(rat(1, 2))
        + Surd({6: (Rat(1), Rat(1, 2))})
        + Surd({2: (Rat(0), Rat(-1))})
    )
    assert parse_surd("0").is_zero()
    assert parse_surd("-sqrt(3)") == -sqrt(3)
