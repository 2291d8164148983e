from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qfano.basket import (
    Basket,
    BasketPoint,
    InconsistentTorsion,
    NoSolution,
    TorsionAssignment,
    allowed_discrepancies,
    canonical_torsion,
    check_torsion,
    cover_basket,
    global_index,
    kawamata_degree,
    max_discrepancy,
    qW_equals_qQ,
    solve_l_classes,
    twist_classes,
)
from qfano.numerics import InvalidInput


def test_twist_normalization():
    assert BasketPoint(7, 5).b == 2
    assert BasketPoint(2).b == 1
    assert BasketPoint(5).b is None
    with pytest.raises(InvalidInput):
        BasketPoint(6, 3)
    with pytest.raises(InvalidInput):
        BasketPoint(1)


def test_parse_and_print():
    b = Basket.parse("7:3, 2, 5:2")
    assert b.indices == (2, 5, 7)
    assert str(b) == "2,5:2,7:3"
    assert Basket.parse("") == Basket()
    with pytest.raises(InvalidInput):
        Basket.parse("2,x")


def test_kawamata_degree():
    assert kawamata_degree(Basket.parse("2,3,3,5,7")) == Fraction(1157, 210)
    assert kawamata_degree(Basket()) == 24


def test_l_classes_q13():
    # 1 + 13 l = 0 mod r
    b = Basket.parse("2,3,3,5:2,7:2")
    for p, l in zip(b, solve_l_classes(13, b)):
        assert (1 + 13 * l) % p.r == 0
    with pytest.raises(NoSolution):
        solve_l_classes(6, Basket.parse("2"))


def test_global_index_and_coprimality():
    b = Basket.parse("2,6,10")
    assert global_index(b) == 30
    assert qW_equals_qQ(7, b)
    assert not qW_equals_qQ(5, b)


def test_torsion_cover():
    b = Basket.parse("2,6,10:3")
    t = TorsionAssignment((0, 3, 5), 2)
    assert cover_basket(b, t).indices == (2, 2, 3, 5)
    with pytest.raises(InconsistentTorsion):
        check_torsion(b, TorsionAssignment((0, 2, 5), 2))


def test_discrepancies():
    assert allowed_discrepancies(9, 2) == {Fraction(1, 9), Fraction(2, 9)}
    assert max_discrepancy(Basket.parse("2,9,9"), 3) == Fraction(2, 9)
    assert max_discrepancy(Basket.parse("2,2,3,14"), 2) == 1
    assert max_discrepancy(Basket.parse("5,7"), 2) is None


def test_canonical_torsion_merges_symmetric_choices():
    b = Basket.parse("2,9,9")
    assert canonical_torsion(b, (0, 3, 6), 3) == canonical_torsion(b, (0, 6, 3), 3)
    assert canonical_torsion(b, (0, 3, 6), 3) == canonical_torsion(b, (0, 3, 6), 3)


@given(st.integers(2, 40))
def test_twist_classes_coprime_and_canonical(r):
    for b in twist_classes(r):
        assert b <= r - b
        assert BasketPoint(r, b).b == b
        assert BasketPoint(r, r - b).b == b


@given(st.lists(st.integers(2, 13), max_size=6), st.integers(3, 19))
def test_l_classes_property(indices, q):
    from math import gcd
    indices = [r for r in indices if gcd(r, q) == 1]
    b = Basket.of(*indices)
    for p, l in zip(b, solve_l_classes(q, b)):
        assert 0 <= l < p.r and (1 + q * l) % p.r == 0
