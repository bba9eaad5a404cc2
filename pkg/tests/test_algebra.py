import random

import pytest

import hcaff.algebra as alg
from hcaff.algebra import (
    PbwElement,
    intertwiner_phi,
    intertwiner_phi_squared_rhs,
    jucys_murphy,
    parse_element,
    verify_algebra,
    x_selector,
)
from hcaff.combinatorics import identity_perm, simple_transposition
from hcaff.errors import IndexOutOfRange, RankMismatch
from hcaff.scalars import ONE, Surd


def X(d, i):
    return PbwElement.x(d, i)


def C(d, i):
    return PbwElement.c(d, i)


def S(d, i):
    return PbwElement.s(d, i)


def test_basic_relations():
    d = 2
    one = PbwElement.one(d)
    assert S(d, 1) * X(d, 1) == X(d, 2) * S(d, 1) - one + C(d, 1) * C(d, 2)
    assert C(d, 1) * C(d, 1) == -one
    assert X(d, 1) * X(d, 2) == PbwElement.monomial(d, (1, 1))


def test_phi_support_and_signs():
    # hand-expanded: phi_1 = (x2^2 - x1^2) s1 - x1 - x2 - x1 c1c2 + x2 c1c2
    d = 2
    phi = intertwiner_phi(d, 1)
    s1 = simple_transposition(2, 1)
    e = identity_perm(2)
    cc = 0b11
    expected = {
        ((0, 2), 0, s1): ONE,
        ((2, 0), 0, s1): -ONE,
        ((1, 0), 0, e): -ONE,
        ((0, 1), 0, e): -ONE,
        ((1, 0), cc, e): -ONE,
        ((0, 1), cc, e): ONE,
    }
    assert phi.terms == expected


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_phi_squared(d):
    for i in range(1, d):
        phi = intertwiner_phi(d, i)
        assert phi * phi == intertwiner_phi_squared_rhs(d, i)


def test_phi_commutes_with_distant_x():
    d = 3
    phi = intertwiner_phi(d, 1)
    assert phi * X(d, 3) == X(d, 3) * phi


def test_jucys_murphy():
    d = 3
    assert jucys_murphy(d, 1).is_zero()
    l2 = jucys_murphy(d, 2)
    expected = PbwElement.from_perm(d, simple_transposition(d, 1)) - C(d, 1) * C(
        d, 2
    ) * PbwElement.from_perm(d, simple_transposition(d, 1))
    assert l2 == expected
    l3 = jucys_murphy(d, 3)
    assert l2 * l3 == l3 * l2


def test_x_selector():
    d = 2
    kappas = {1: Surd.sqrt_rational(2), 2: Surd.sqrt_rational(6)}
    elem = x_selector(d, set(), kappas)
    expect = (
        PbwElement.monomial(d, (1, 1))
        + X(d, 1).scale(Surd.sqrt_rational(6))
        + X(d, 2).scale(Surd.sqrt_rational(2))
        + PbwElement.scalar(d, Surd.from_rational(2) * Surd.sqrt_rational(3))
    )
    assert elem == expect
    assert x_selector(d, {1, 2}, kappas) == PbwElement.one(d)


def test_sigma_on_generators():
    d = 3
    assert S(d, 1).sigma_twist() == -S(d, 2)
    assert X(d, 1).sigma_twist() == X(d, 3)
    assert C(d, 2).sigma_twist() == C(d, 2)
    rng = random.Random(5)
    for _ in range(20):
        a = alg.random_monomial(d, rng)
        assert a.sigma_twist().sigma_twist() == a


def test_tau_examples():
    d = 2
    assert C(d, 1).tau_antiauto() == -C(d, 1)
    assert (S(d, 1) * X(d, 1)).tau_antiauto() == X(d, 1) * S(d, 1)
    # tau(c1 c2) = tau(c2) tau(c1) = c2 c1 = -c1 c2
    assert (C(d, 1) * C(d, 2)).tau_antiauto() == -(C(d, 1) * C(d, 2))
    # tau respects every defining relation exactly (plain antiautomorphism)
    rel = S(d, 1) * X(d, 1) - (X(d, 2) * S(d, 1) - PbwElement.one(d) + C(d, 1) * C(d, 2))
    assert rel.is_zero() and rel.tau_antiauto().is_zero()


def test_rank_mismatch_and_bad_index():
    with pytest.raises(RankMismatch):
        X(2, 1) * X(3, 1)
    with pytest.raises(IndexOutOfRange):
        PbwElement.s(2, 2)
    with pytest.raises(IndexOutOfRange):
        intertwiner_phi(2, 2)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_verify_algebra_passes(d):
    rep = verify_algebra(d, samples=40)
    assert rep.ok, rep.first_failure()


def test_verify_algebra_negative_control(monkeypatch):
    monkeypatch.setattr(alg, "CLIFFORD_SQUARE", 1)
    rep = verify_algebra(2, samples=10)
    assert not rep.ok
    names = {c.law for c in rep.checks if not c.ok}
    assert "(s&x)-compatibility" in names


def test_literal_roundtrip():
    d = 3
    elem = parse_element("x1^2*c1*c2*s1 + 3*s2", d)
    expect = (X(d, 1) ** 2) * C(d, 1) * C(d, 2) * S(d, 1) + S(d, 2).scale_int(3)
    assert elem == expect
    again = parse_element(str(elem), d)
    assert again == elem
    assert parse_element("1/2*sqrt(2)*x1", 2) == X(2, 1).scale(
        Surd.sqrt_rational(2).scale(__import__("hcaff.scalars", fromlist=["rat"]).rat(1, 2))
    )
