import pytest

from corpora import bouquet_corpus
from ordgl.bouquet import (ROOT, BouquetError, Fails, FiniteRank, Holds, Progression,
                           bouquet_to_dot, bouquet_to_json, build_model, check_root, lottery_sum,
                           sigma_nbhd, stage_parts, tree_rank)
from ordgl.formulas import TOP, diamonds, parse_formula
from ordgl.kripke import KripkeTree, chain, kripke_eval
from ordgl.lab import gamma_fragment
from ordgl.ordinals import OMEGA, CnfOrdinal
from ordgl.tableau import Finite, Inconsistent, char_bound


def F(text):
    return parse_formula(text)


@pytest.mark.parametrize("gamma", bouquet_corpus(), ids=lambda g: " ; ".join(map(str, g)))
def test_every_member_holds(gamma):
    m = build_model(gamma, 8)
    for f in gamma:
        assert isinstance(check_root(m, f, 8), Holds), str(f)
    ch = char_bound(gamma, 8)
    if isinstance(ch, Finite):
        assert isinstance(m, KripkeTree) and tree_rank(m) <= CnfOrdinal.of(ch.n + 1)
    else:
        assert tree_rank(m) == OMEGA


def test_children_satisfy_delta():
    m = build_model([F("<>p0"), F("<>~p0"), F("[](p0 -> <>p1)")])
    for xi, delta, tree in m.children(12):
        assert all(kripke_eval(tree, tree.root, d) for d in delta)
        assert len(delta) >= 1


def test_schedule_cycles_diamonds():
    m = build_model([F("<>p0"), F("<>~p0")])
    assert len(m.schedule) == 3  # p0, ~p0, and the depth family seed <>^7 True
    bodies = {str(d): p for d, p in m.schedule.items()}
    assert bodies["p0"].period == 4 and bodies["~p0"].period == 4
    assert kripke_eval(m.tree(bodies["p0"].offset), 0, F("p0"))


def test_finite_characteristic_gives_tree():
    m = build_model([F("[]False"), F("p0")])
    assert isinstance(m, KripkeTree) and m.size == 1
    assert isinstance(check_root(m, F("[]False")), Holds)


def test_root_verdicts():
    m = build_model([F("<>p0"), F("<>~p0")])
    assert isinstance(check_root(m, F("<>p0")), Holds)
    assert isinstance(check_root(m, F("[]p0")), Fails)
    assert isinstance(check_root(m, F("<><><>True")), Holds)
    assert isinstance(check_root(m, F("[]<>True")), Fails)
    assert isinstance(check_root(m, F("False")), Fails)


def test_box_certificate_mentions_tail():
    m = build_model(list(gamma_fragment(2)))
    v = check_root(m, F("[](p0 -> <>p1)"), 8)
    assert isinstance(v, Holds) and "tail index" in v.certificate


def test_inconsistent():
    with pytest.raises(Inconsistent):
        build_model([F("<>p0"), F("[]~p0")])


def test_progression():
    pr = Progression(2, 3)
    assert 5 in pr and 4 not in pr and 0 not in pr
    assert pr.first_at_least(0) == 2 and pr.first_at_least(6) == 8


def test_lottery_sum_finite_catalogue():
    a, b = chain(1), chain(3)
    m = lottery_sum([([TOP], a), ([F("<><>True")], b)])
    assert [m.tree(i).size for i in range(4)] == [1, 3, 1, 3]
    assert tree_rank(m) == CnfOrdinal.of(3)


def test_lottery_sum_rejects_empty():
    with pytest.raises(ValueError):
        lottery_sum([])


def test_lottery_sum_unbounded():
    m = lottery_sum(lambda k: ((diamonds(k),), chain(k + 1)), unbounded=True)
    assert tree_rank(m) == OMEGA
    assert [m.tree(k).height() for k in range(5)] == [0, 1, 2, 3, 4]
    with pytest.raises(ValueError):
        lottery_sum(lambda k: ((TOP,), chain(1)))


def test_child_validation():
    m = lottery_sum(lambda k: ((F("p0"),), chain(1)), unbounded=True)
    with pytest.raises(BouquetError):
        m.child(0)


@pytest.mark.parametrize("k", [1, 4, 8])
def test_tree_rank_finite(k):
    assert tree_rank(chain(k)) == CnfOrdinal.of(k - 1)


def test_depth_slots_grow():
    m = build_model([F("<>p0")])
    ds = m.depth_slots
    heights = [m.tree(ds.offset + k * ds.period).height() for k in range(6)]
    assert all(h >= k for k, h in enumerate(heights))


def test_sigma_nbhd():
    m = build_model([F("<>p0"), F("<>~p0")])
    whole = sigma_nbhd(m, 0)
    assert ROOT in whole and (3, 0) in whole
    tail = sigma_nbhd(m, 5)
    assert (3, 0) not in tail and (5, 0) in tail and (9, 0) in tail
    with pytest.raises(FiniteRank):
        sigma_nbhd(chain(3), 0)
    with pytest.raises(IndexError):
        (2, 99) in tail


@pytest.mark.parametrize("j", [0, 2, 5])
def test_stage_two_equals_stage_one(j):
    m = build_model([F("<>p0"), F("<>(p1 & <>p0)")])
    one = stage_parts(sigma_nbhd(m, j, 1), 10)
    two = stage_parts(sigma_nbhd(m, j, 2), 10)
    assert one == two


def test_exports():
    m = build_model([F("<>p0"), F("[]p1")])
    data = bouquet_to_json(m, 3)
    assert data["rank"] == "w" and len(data["children"]) == 3
    assert {b["formula"] for b in data["schedule"]["boxes"]} >= {"p1"}
    assert data["children"][0]["tree"]["root"] == 0
    dot = bouquet_to_dot(m, 2)
    assert dot.startswith("digraph bouquet {") and "root -> c1_0;" in dot
