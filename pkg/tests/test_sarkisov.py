from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from oracles import naive_link_solutions
from qfano.basket import Basket
from qfano.numerics import InvalidInput
from qfano.sarkisov import (
    AXIOMS,
    FANO_INDICES,
    LinkContext,
    LinkEquation,
    MalformedEquation,
    MalformedSpec,
    NoBound,
    Unbounded,
    check_solution,
    corpus_files,
    derive_caps,
    discrepancy_lower_bound,
    gcd_obstruction,
    m_fraction,
    parse_case,
    run_case,
    run_corpus,
    solve_main,
    threshold_min_m,
    threshold_multiple,
    torsion_discrepancy_bound,
)


@pytest.mark.parametrize("q,r,k,want", [
    (7, 5, 3, Fraction(4, 5)),
    (13, 7, 8, Fraction(6, 7)),
    (8, 13, 1, Fraction(5, 13)),
    (7, 12, 3, Fraction(3, 4)),
    (11, 7, 6, Fraction(5, 7)),
])
def test_m_fraction(q, r, k, want):
    assert m_fraction(q, r, k) == want


@given(st.integers(2, 30), st.integers(2, 24), st.integers(1, 30))
def test_main_coefficient_integral(q, r, k):
    if gcd(q, r) != 1:
        return
    frac = m_fraction(q, r, k)
    assert 0 <= frac < 1
    assert ((q * frac - Fraction(k, r)) * r) % r == 0


@pytest.mark.parametrize("frac,tm,alpha,want", [
    (Fraction(1, 2), 6, Fraction(1, 2), 3),
    (Fraction(4, 5), 4, Fraction(1, 5), 0),
    (Fraction(0), 0, Fraction(1, 3), 0),
    (Fraction(1, 7), Fraction(7, 4), Fraction(1, 7), 1),
])
def test_threshold_min_m(frac, tm, alpha, want):
    assert threshold_min_m(frac, tm, alpha) == want


@pytest.mark.parametrize("q,basket,k,want", [
    (13, "2,3,3,5:2,7:2", 8, 6),
    (7, "2,2,3,5:2", 3, 4),
    (7, "2,2,3,12:5", 3, 9),
    (11, "2,5:1,7:3", 5, 3),
    (9, "2,2,2,5:2,7:3", 5, 6),
    (8, "5:2,7:2", 4, 4),
    (8, "7:2,13:5", 4, 7),
    (8, "3,5:2,11:4", 4, 6),
])
def test_threshold_multiple(q, basket, k, want):
    assert threshold_multiple(q, Basket.parse(basket), k) == want


def test_discrepancy_bounds():
    assert discrepancy_lower_bound(9, 7, 2, 1, 5, 2) == Fraction(17, 4)
    assert discrepancy_lower_bound(13, 5, 3, 1, 8, 2) == Fraction(7, 3)
    assert discrepancy_lower_bound(8, 5, 1, 1, 8, 5) == 0
    with pytest.raises(NoBound):
        discrepancy_lower_bound(9, 7, 2, 1, 5, 0)


def test_gcd_obstruction():
    assert gcd_obstruction(13, 3) and gcd_obstruction(11, 2)
    assert not gcd_obstruction(9, 3)
    assert not gcd_obstruction(7, 1)


def test_torsion_discrepancy_bounds():
    assert torsion_discrepancy_bound(2) == 1
    assert torsion_discrepancy_bound(3) == Fraction(2, 9)
    with pytest.raises(NoBound):
        torsion_discrepancy_bound(5)


def _ctx(q, r, q_hats=range(1, 10)):
    return LinkContext(q=q, basket=None, r=r, q_hat_allowed=frozenset(q_hats) & FANO_INDICES)


def test_q9_r5_unique_pair():
    eq = LinkEquation(k=5, t=0, s_min=1, m_min=2)
    sols = solve_main([eq], _ctx(9, 5), Fraction(1, 5))
    assert {(s.q_hat, s.e) for s in sols} == {(7, 1)}
    assert {s.s(5) + s.m(5) for s in sols} == {4}


def test_q11_joint_r7():
    eqs = [LinkEquation(k=5, t=3, s_min=1), LinkEquation(k=6, t=5, s_min=1)]
    sols = solve_main(eqs, _ctx(11, 7, set(range(1, 12)) - {9, 10}), Fraction(1, 7))
    assert [(s.q_hat, s.e, s.s(5), s.s(6)) for s in sols] == [(3, 1, 1, 1), (6, 2, 2, 2)]


def test_malformed_equation():
    with pytest.raises(MalformedEquation):
        solve_main([LinkEquation(k=5, t=1)], _ctx(9, 5), Fraction(1, 5))


def test_unbounded_system():
    # c0 = -1 with m >= 0 gives a non-positive e coefficient
    with pytest.raises(Unbounded):
        derive_caps([LinkEquation(k=5, t=0)], _ctx(9, 5), Fraction(1, 5))


def test_empty_bounds_give_no_solutions():
    eq = LinkEquation(k=5, t=0, s_min=3, s_max=1, m_min=2)
    assert solve_main([eq], _ctx(9, 5), Fraction(1, 5)) == []


def test_context_rejects_bad_alpha():
    with pytest.raises(InvalidInput):
        LinkContext(q=9, basket=None, r=5, alpha_set=frozenset({Fraction(1, 3)}))
    with pytest.raises(InvalidInput):
        LinkContext(q=9, basket=None, r=5, q_hat_allowed=frozenset({12}))


@st.composite
def link_instances(draw):
    q = draw(st.integers(3, 19))
    r = draw(st.integers(2, 13).filter(lambda r: gcd(r, q) == 1))
    a = draw(st.integers(1, r - 1)) if draw(st.booleans()) else 1
    eqs = []
    for _ in range(draw(st.integers(1, 2))):
        k = draw(st.integers(1, q))
        t = (k * a * pow(q, -1, r)) % r
        s_min = draw(st.integers(0, 2))
        m_min = draw(st.integers(0, 3))
        eqs.append(dict(k=k, t=t, s_min=s_min, s_max=s_min + draw(st.integers(-1, 6)),
                        m_min=m_min, m_max=m_min + draw(st.integers(0, 5))))
    q_hats = draw(st.sets(st.sampled_from(sorted(FANO_INDICES)), min_size=1))
    e_max = draw(st.integers(1, 6))
    return q, r, Fraction(a, r), eqs, q_hats, e_max


@settings(max_examples=100)
@given(link_instances())
def test_solve_main_matches_naive_loops(inst):
    q, r, alpha, eqs, q_hats, e_max = inst
    link_eqs = [LinkEquation(e_max=e_max, **e) for e in eqs]
    ctx = LinkContext(q=q, basket=None, r=r, q_hat_allowed=frozenset(q_hats))
    sols = solve_main(link_eqs, ctx, alpha)
    got = {(s.q_hat, s.e, s.values) for s in sols}
    assert len(got) == len(sols)
    assert got == naive_link_solutions(q, r, alpha, eqs, sorted(q_hats), e_max)
    assert sols == sorted(sols, key=lambda s: (s.q_hat, s.e))
    for s in sols:
        assert check_solution(s, link_eqs, ctx, alpha)


def test_corpus_size_and_axioms():
    files = corpus_files()
    assert len(files) >= 25
    for res in run_corpus():
        assert set(res.axioms) <= set(AXIOMS)


@pytest.mark.parametrize("path", corpus_files(), ids=lambda p: f"{p.parent.name}/{p.stem}")
def test_corpus_case(path):
    from qfano.sarkisov import load_case
    res = run_case(load_case(path))
    assert res.passed, res.failures


def test_mismatch_is_reported_not_raised():
    spec = parse_case("kind: main\nq: 9\ncenter: 5\nq_hat: 1..9\neq: k=5 tM=6 s>=1\nexpect: none\n")
    res = run_case(spec)
    assert not res.passed and "expected no solutions" in res.failures[0]


@pytest.mark.parametrize("text,fragment", [
    ("q: 9\nexpect: none\n", "missing field 'kind'"),
    ("kind: sideways\nq: 9\nexpect: none\n", "unknown kind"),
    ("kind: main\nq: 9\neq: k=5 z>=1\nexpect: none\n", ":3:"),
    ("kind: main\nq: 9\ncenter: 5\neq: k=5\nexpect: none\naxioms: Made-up\n", "unknown axiom"),
    ("kind: main\nq: 9\nq: 8\n", "duplicate"),
    ("kind main\n", ":1:"),
])
def test_spec_diagnostics(text, fragment):
    with pytest.raises(MalformedSpec, match=fragment):
        parse_case(text, "x.case")
