from fractions import Fraction

import pytest

from qfano.basket import Basket
from qfano.numerics import InvalidInput
from qfano.search import (
    DimsConstraint,
    Rejection,
    SearchConfig,
    default_genus_threshold,
    enumerate_baskets,
    filter_candidate,
    find_candidate,
    kawamata_degree,
    reduced_order,
    search_q,
    search_q_drop,
    search_torsion,
    verify_tables,
)


def test_dims_constraint_parse():
    c = DimsConstraint.parse("dim2A>=1")
    assert (c.t, c.s, c.op, c.value) == (2, 0, ">=", 1)
    assert c.holds(1) and not c.holds(0)
    c = DimsConstraint.parse("dim3A+1Xi<=2")
    assert (c.t, c.s) == (3, 1) and str(c) == "dim3A+1Xi<=2"
    with pytest.raises(InvalidInput):
        DimsConstraint.parse("dim A >= 1")


def test_config_validation():
    with pytest.raises(InvalidInput):
        SearchConfig(q=7, mode="nope")
    with pytest.raises(InvalidInput):
        SearchConfig(q=2, mode="q-drop")
    with pytest.raises(InvalidInput):
        SearchConfig(q=7, workers=0)


def test_basket_enumeration_is_canonical():
    cfg = SearchConfig(q=7, max_index=5)
    baskets = list(enumerate_baskets(cfg))
    assert baskets[0] == Basket()
    assert len(set(baskets)) == len(baskets)
    assert all(kawamata_degree(b) > 0 for b in baskets)
    assert all(list(b.points) == sorted(b.points, key=lambda p: p.sort_key) for b in baskets)


def test_rejection_names_filter():
    rej = filter_candidate(13, Basket.parse("2,2"))
    assert isinstance(rej, Rejection) and not rej
    assert rej.filter == "integrality"
    with pytest.raises(InvalidInput):
        filter_candidate(13, Basket.parse("2"), mode="q-drop")


@pytest.mark.parametrize("q,basket,name", [
    (7, "7", "coprimality"),
    (7, "2,3,6", "a3-positivity"),
    (5, "", "integrality"),
    (5, "2,2,2,8,8", "bogomolov-miyaoka"),
    (5, "3,3,3,3", "vanishing"),
])
def test_each_filter_rejects(q, basket, name):
    assert filter_candidate(q, Basket.parse(basket)).filter == name


def test_q13_single_candidate():
    recs = search_q(SearchConfig(q=13, genus_threshold=default_genus_threshold(13)))
    assert [r.basket.indices for r in recs] == [(2, 3, 3, 5, 7)]
    assert recs[0].a_cubed == Fraction(1, 210)


def test_genus_and_dims_filters():
    recs = search_q(SearchConfig(q=7, genus_min=11, dims_filter=(DimsConstraint.parse("dim2A>=1"),)))
    assert recs and all(r.genus >= 11 and r.dim(2) >= 1 for r in recs)
    with pytest.raises(InvalidInput):
        search_q(SearchConfig(q=7, dims_filter=(DimsConstraint.parse("dim9A>=1"),)))


def test_worker_count_does_not_change_results():
    a = search_q(SearchConfig(q=7))
    b = search_q(SearchConfig(q=7, workers=3))
    assert a == b


def test_torsion_rows_q7():
    recs = search_torsion(SearchConfig(q=7, mode="torsion"))
    got = {(r.basket.indices, r.torsion.k, str(r.torsion.cover)) for r in recs}
    assert got == {((2, 6, 10), (0, 3, 5), "2,2,3,5"), ((2, 2, 3, 4, 8), (1, 1, 0, 2, 4), "2,3,3,4")}
    for r in recs:
        assert r.torsion.cover_a_cubed == 2 * r.a_cubed


def test_torsion_needs_q5():
    with pytest.raises(InvalidInput):
        search_torsion(SearchConfig(q=4, mode="torsion"))


def test_cover_genus_bound_removes_two_rows():
    free = search_torsion(SearchConfig(q=5, mode="torsion", external_bounds={}))
    bounded = search_torsion(SearchConfig(q=5, mode="torsion"))
    dropped = {r.basket.indices for r in free} - {r.basket.indices for r in bounded}
    assert dropped == {(2, 14), (4, 12)}
    assert all(r.torsion.cover_genus > 32 for r in free if r.basket.indices in dropped)


def test_reduced_order():
    assert reduced_order(3, 6) == 3
    assert reduced_order(4, 2) == 2
    assert reduced_order(5, 2) == 1


def test_q_drop_small_indices():
    res = search_q_drop([4, 5, 13])
    assert [(r.q, r.n) for r in res] == [(4, 2)]
    with pytest.raises(InvalidInput):
        search_q_drop([3])


@pytest.mark.parametrize("table", ["candidate-table", "torsion-dims", "q7-cases", "q11-table"])
def test_tables_that_match(table):
    rep = verify_tables(table)
    assert rep.ok, [r for r in rep.rows if not r.ok]


def test_candidate_table_notes_excluded_baskets():
    rows = {r.row.split(" ")[0]: r for r in verify_tables("candidate-table").rows}
    assert any("(3,3,5:2,9:4)" in n for n in rows["q=8"].notes)


def test_torsion_table_differs_only_in_genus_column():
    # the tabulated g(X) there is dim|-K|, one more than the genus
    rep = verify_tables("torsion-table")
    assert len(rep.rows) == 9
    for row in rep.rows:
        assert len(row.diffs) == 1 and row.diffs[0].startswith("genus")
        got, want = [int(x) for x in row.diffs[0].replace(",", "").split() if x.lstrip("-").isdigit()]
        assert want == got + 1


def test_find_candidate_picks_matching_twist():
    assert find_candidate(8, "3,5,11").a_cubed != Fraction(4, 165)
    assert find_candidate(8, "3,5,11", Fraction(4, 165)).a_cubed == Fraction(4, 165)


def test_unknown_table():
    with pytest.raises(InvalidInput):
        verify_tables("no-such")
