import itertools
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ordgl.formulas import parse_formula
from ordgl.lab import (BudgetExceeded, ColoringFormatError, NoBound, NoWitness, PairColoring, arrow_check,
                       arrow_counterexample, chain_ranks, descending_extraction, find_homogeneous,
                       gamma_fragment, gamma_ordinal_model, open_interval, proof_coloring)
from ordgl.ordinals import CnfOrdinal, fundamental_seq, omega_power, parse_ordinal
from ordgl.regions import Region, intersect, member
from ordgl.tableau import Sat, gl_sat
from ordgl.topology import OrdinalValuation, eval_formula, eval_pointwise_i1

PENTAGON = PairColoring(5, {(i, j): 0 if (j - i) % 5 in (1, 4) else 1 for i, j in itertools.combinations(range(5), 2)})


@st.composite
def colorings(draw, max_n=7, palette=3):
    n = draw(st.integers(0, max_n))
    c = draw(st.integers(1, palette))
    pairs = list(itertools.combinations(range(n), 2))
    return PairColoring(n, {pr: draw(st.integers(0, c - 1)) for pr in pairs}, c)


def brute_homogeneous(col, k):
    return [s for s in itertools.combinations(range(col.n), k)
            if len({col(i, j) for i, j in itertools.combinations(s, 2)}) <= 1]


def test_homogeneous_examples():
    assert find_homogeneous(PairColoring.constant(5), 5).subset == (0, 1, 2, 3, 4)
    assert find_homogeneous(PENTAGON, 3) is None


@given(colorings(), st.integers(0, 4))
def test_find_homogeneous_is_least(col, k):
    if k > col.n:
        return
    w = find_homogeneous(col, k)
    brute = brute_homogeneous(col, k)
    if w is None:
        assert not brute
    else:
        assert w.verify(col) and w.subset == brute[0]


@given(colorings(6, 2).filter(lambda c: c.n == 6))
def test_six_points_always_have_a_triangle(col):
    assert find_homogeneous(col, 3) is not None


@pytest.mark.parametrize("n, k, c, expected", [(6, 3, 2, True), (5, 3, 2, False), (4, 4, 1, True), (3, 2, 2, True)])
def test_arrow(n, k, c, expected):
    assert arrow_check(n, k, c) is expected


def test_arrow_counterexample_is_genuine():
    ce = arrow_counterexample(5, 3, 2)
    assert ce is not None and find_homogeneous(ce, 3) is None


def test_arrow_budget():
    with pytest.raises(BudgetExceeded):
        arrow_check(8, 3, 2, budget=1000)


def test_coloring_json():
    data = PENTAGON.to_json()
    assert data["colors"]["0,1"] == 0 and data["palette"] == 2
    assert PairColoring.from_json(json.loads(json.dumps(data))) == PENTAGON


@pytest.mark.parametrize("data", [
    {"n": 3, "colors": {"0,1": 0}},
    {"n": 2, "palette": 2, "colors": {"0,1": 5}},
    {"n": 2, "colors": {"0-1": 0}},
    {"colors": {}},
])
def test_coloring_json_errors(data):
    with pytest.raises(ColoringFormatError):
        PairColoring.from_json(data)


def test_gamma_fragment_small():
    assert [str(f) for f in gamma_fragment(1)] == ["<>p0"]
    assert {str(f) for f in gamma_fragment(2)} == {"<>p0", "<>p1", "[](p0 -> <>p1)"}


@pytest.mark.parametrize("n", range(1, 7))
def test_gamma_fragment_sat_and_modelled(n):
    frag = gamma_fragment(n)
    assert len(frag) == n + n * (n - 1) // 2
    assert isinstance(gl_sat(frag), Sat)
    m = gamma_ordinal_model(n)
    assert m.alpha == omega_power(n + 1)
    for f in frag:
        assert member(m.alpha, eval_formula(f, m.valuation))
        assert eval_pointwise_i1(f, m.valuation, m.alpha)


def test_gamma_model_one():
    m = gamma_ordinal_model(1)
    assert m.space.theta == parse_ordinal("w^2+1")
    assert eval_pointwise_i1(parse_formula("<>p0"), m.valuation, m.alpha)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_proof_coloring_of_gamma_model(n):
    m = gamma_ordinal_model(n)
    c = proof_coloring(m.space, m.valuation, m.alpha, n, 4)
    assert set(c.colors.values()) == {0}
    assert find_homogeneous(c, 3).subset == (0, 1, 2)


def shifted_model():
    m = gamma_ordinal_model(3)
    above = Region.interval(m.space, fundamental_seq(m.alpha, 2), None)
    props = dict(m.valuation.props)
    props[1] = intersect(props[1], above)
    return m, OrdinalValuation(m.space, props)


def test_proof_coloring_after_shift():
    m, val = shifted_model()
    c = proof_coloring(m.space, val, m.alpha, 3, 5)
    assert c(0, 1) == 2 and c(0, 2) == 0 and c(1, 2) == 0
    # the bound is sharp: points of p0 below alpha_2 see no p1 below them
    target = eval_formula(parse_formula("p0 -> <>p1"), val)
    assert not member(parse_ordinal("w^3*2"), target)
    assert member(parse_ordinal("w^3*3"), target)
    assert proof_coloring(m.space, val, m.alpha, 3, 2) == NoBound(0, 1)


def test_proof_coloring_without_room():
    m = gamma_ordinal_model(3)
    assert proof_coloring(m.space, m.valuation, m.alpha, 3, 0) == NoBound(0, 1)


def test_open_interval():
    m = gamma_ordinal_model(2)
    r = open_interval(m.space, CnfOrdinal.of(0), m.alpha)
    assert not member(m.alpha, r) and member(parse_ordinal("w^2*5"), r) and not member(0, r)


@pytest.mark.parametrize("n", range(1, 7))
def test_descending_extraction(n):
    m = gamma_ordinal_model(n)
    chain = descending_extraction(m.space, m.valuation, m.alpha, list(range(n)), 0)
    assert len(chain) == n
    assert all(a.beta > b.beta for a, b in zip(chain, chain[1:]))
    assert chain_ranks(chain) == [CnfOrdinal.of(n - i) for i in range(n)]


def test_descending_extraction_edges():
    m = gamma_ordinal_model(3)
    assert descending_extraction(m.space, m.valuation, m.alpha, [], 0) == []
    assert len(descending_extraction(m.space, m.valuation, m.alpha, [0], 1)) == 1
    # p2 lives at rank 1; nothing of rank 3 lies below omega
    chain = descending_extraction(m.space, m.valuation, m.alpha, [2, 0], 0)
    assert len(chain) == 1
    with pytest.raises(NoWitness):
        empty = OrdinalValuation(m.space, {0: Region.empty(m.space)})
        descending_extraction(m.space, empty, m.alpha, [0], 0)
