import itertools
import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import formulas
from ordgl.formulas import BOT, TOP, Box, Diamond, Not, Or, Var, parse_formula
from ordgl.ordinals import OMEGA, CnfOrdinal, fundamental_seq, hyper_log, omega_power, parse_ordinal, predecessor
from ordgl.regions import (Region, SpaceSpec, canonical_points, equal, intersect, is_empty, is_subset, member,
                           union)
from ordgl.sampling import random_region, random_valuation
from ordgl.topology import (InvalidSpec, OrdinalValuation, UnboundVariable, ValuationFormatError, WrongLambda,
                            basic_nbhd, derived_set, eval_formula, eval_pointwise_i1, holds, is_cofinal_in,
                            iterate_derived, rank_of, region_from_json, region_to_json, valuation_from_json,
                            valuation_to_json)

P = parse_ordinal
W2 = SpaceSpec(P("w^2+1"), 1)
RANK1 = Region.rank(W2, 1, 0, 1)


def test_derived_set_examples():
    assert equal(derived_set(Region.full(W2)), Region.rank(W2, 1, 0, None))
    assert is_empty(derived_set(Region.points(W2, [0, 5, OMEGA, omega_power(2)])))
    d = derived_set(RANK1)
    assert [x for x in canonical_points(W2) if member(x, d)] == [omega_power(2)]


def test_eval_examples():
    val = OrdinalValuation(W2, {0: RANK1})
    assert equal(eval_formula(Diamond(Var(0)), val), Region.points(W2, [omega_power(2)]))
    assert equal(eval_formula(Or(Var(0), Not(Var(0))), val), Region.full(W2))
    assert equal(eval_formula(Diamond(TOP), val), Region.rank(W2, 1, 0, None))


@pytest.mark.parametrize("f, theta, expected", [
    (Diamond(Var(0)), P("w^2"), True),
    (Diamond(Var(0)), P("w*3"), False),
    (Box(BOT), CnfOrdinal.of(5), True),
])
def test_pointwise_examples(f, theta, expected):
    val = OrdinalValuation(W2, {0: RANK1})
    assert eval_pointwise_i1(f, val, theta) is expected
    assert holds(theta, f, val) is expected


def test_pointwise_needs_lambda_one():
    sp = SpaceSpec(P("w^2+1"), 2)
    with pytest.raises(WrongLambda):
        eval_pointwise_i1(TOP, OrdinalValuation(sp, {}), 0)


def test_unbound_variable():
    with pytest.raises(UnboundVariable):
        eval_formula(Var(3), OrdinalValuation(W2, {}))


@pytest.mark.parametrize("alpha, expected", [(P("w^2"), True), (P("w*3"), False)])
def test_is_cofinal_in(alpha, expected):
    assert is_cofinal_in(RANK1, alpha) is expected
    assert is_cofinal_in(Region.full(W2), alpha)


@pytest.mark.parametrize("theta, lam, expected", [
    ("w^w*2 + w^3", 1, "3"),
    ("w^(w^3)", 2, "3"),
    ("w^2 + 5", 0, "w^2 + 5"),
    ("w^w", "w", "0"),
])
def test_rank_of(theta, lam, expected):
    t = P(theta)
    assert rank_of(t, SpaceSpec(t + 1, CnfOrdinal.of(lam) if isinstance(lam, int) else P(lam))) == P(expected)


@pytest.mark.parametrize("lam", [1, 2, 3])
@pytest.mark.parametrize("theta", ["w^3+1", "w^w+1", "w^(w^w)+1"])
def test_rank_theorem(lam, theta):
    sp = SpaceSpec(P(theta), lam)
    cur = Region.full(sp)
    for m in range(6):
        assert equal(cur, Region.rank(sp, lam, m - 1 if m else None, None))
        nxt = derived_set(cur)
        assert is_subset(nxt, cur)
        cur = nxt


def test_rank_agrees_with_derived_iterates():
    sp = SpaceSpec(P("w^(w^2)+1"), 2)
    for x in canonical_points(sp):
        r = rank_of(x, sp)
        if r.is_finite:
            assert member(x, iterate_derived(Region.full(sp), int(r)))
            assert not member(x, iterate_derived(Region.full(sp), int(r) + 1))


def test_left_topology():
    sp = SpaceSpec(P("w^2+1"), 0)
    r = Region.points(sp, [P("w+3")])
    assert equal(derived_set(r), Region.interval(sp, P("w+3"), None))
    assert is_empty(derived_set(Region.empty(sp)))


def test_discrete_above_omega():
    sp = SpaceSpec(P("w^2+1"), OMEGA)
    assert is_empty(derived_set(Region.full(sp)))


W2L2 = SpaceSpec(P("w^2+1"), 2)


@pytest.mark.parametrize("theta, r, expected", [
    ("w^2", {1: 0}, Region.rank(W2L2, 1, 0, 2)),
    ("w^2", {}, Region.full(W2L2)),
    ("w^2", {0: OMEGA}, Region.interval(W2L2, OMEGA, omega_power(2))),
])
def test_basic_nbhd(theta, r, expected):
    nb = basic_nbhd(P(theta), r, W2L2)
    assert equal(nb, expected)
    assert member(P(theta), nb)


@pytest.mark.parametrize("r", [{1: 2}, {0: P("w^2")}, {2: 0}])
def test_basic_nbhd_precondition(r):
    with pytest.raises(InvalidSpec):
        basic_nbhd(P("w^2"), r, W2L2)


@given(st.integers(0, 10_000))
@settings(max_examples=30)
def test_basic_nbhd_shrinks(seed):
    rng = random.Random(seed)
    sp = SpaceSpec(P("w^(w^2)+1"), 3)
    theta = rng.choice([x for x in canonical_points(sp) if not x.is_zero])
    small = {xi: _shrinking(theta, xi, 0) for xi in range(3) if _shrinking(theta, xi, 0) is not None}
    tight = {xi: _shrinking(theta, xi, 3) for xi in small}
    assert member(theta, basic_nbhd(theta, small, sp))
    assert is_subset(basic_nbhd(theta, tight, sp), basic_nbhd(theta, small, sp))


def _shrinking(theta, xi, n):
    """Candidate values r(xi) < l^xi(theta), moving up towards it as n grows."""
    top = hyper_log(xi, theta)
    if top.is_zero:
        return None
    return predecessor(top) if top.is_successor else fundamental_seq(top, n)


def _limit_point_by_definition(theta, region, lam, depth=6):
    """theta is a limit point iff every basic neighbourhood meets region - {theta}.

    Basic neighbourhoods are [0, theta] intersected with some B_r(theta).

    Neighbourhoods shrink as r approaches l^xi(theta), so checking a
    cofinal family of r values up to ``depth`` decides the small cases.
    """
    punctured = intersect(region, Region(region.space, (Region.full(region.space).cells[0],), frozenset(),
                                         frozenset({theta})))
    initial = Region.interval(region.space, None, theta)
    for n in range(depth):
        r = {xi: v for xi in range(lam) if (v := _shrinking(theta, xi, n)) is not None}
        if is_empty(intersect(intersect(basic_nbhd(theta, r, region.space), initial), punctured)):
            return False
    return True


@pytest.mark.parametrize("lam", [1, 2, 3])
def test_derived_set_matches_neighbourhood_definition(lam):
    rng = random.Random(lam)
    sp = SpaceSpec(P("w^(w^2)+1"), lam)
    pts = canonical_points(sp, 30)
    for _ in range(12):
        region = random_region(rng, sp)
        d = derived_set(region)
        for x in pts:
            assert member(x, d) == _limit_point_by_definition(x, region, lam), (str(region), str(x))


SP3 = SpaceSpec(P("w^3+1"), 1)


@given(formulas(3), st.integers(0, 10_000))
@settings(max_examples=60)
def test_symbolic_matches_pointwise(f, seed):
    val = random_valuation(random.Random(seed), SP3)
    region = eval_formula(f, val)
    for x in canonical_points(SP3):
        assert member(x, region) == eval_pointwise_i1(f, val, x)


@given(st.integers(0, 10_000))
@settings(max_examples=40)
def test_derived_set_additive_and_monotone(seed):
    rng = random.Random(seed)
    a, b = random_region(rng, SP3), random_region(rng, SP3)
    assert equal(derived_set(union(a, b)), union(derived_set(a), derived_set(b)))
    assert is_subset(derived_set(intersect(a, b)), derived_set(a))


@given(st.integers(0, 10_000))
@settings(max_examples=30)
def test_finite_sets_have_no_limit_points(seed):
    rng = random.Random(seed)
    pts = rng.sample(canonical_points(SP3), 5)
    assert is_empty(derived_set(Region.points(SP3, pts)))


@given(st.integers(0, 10_000))
@settings(max_examples=30)
def test_json_roundtrip(seed):
    val = random_valuation(random.Random(seed), SP3)
    again = valuation_from_json(json.loads(json.dumps(valuation_to_json(val))))
    for i in val.props:
        assert equal(again[i], val[i])


def test_valuation_json_shape():
    data = {"theta": "w^2+1", "lambda": "1", "props": {"p0": {"cells": [{"constraints": [
        {"xi": 1, "lo": "0", "hi": "1"}]}], "plus": [], "minus": []}}}
    val = valuation_from_json(data)
    assert equal(val[0], RANK1)
    assert region_to_json(val[0])["cells"][0]["constraints"][0] == {"xi": 1, "lo": "0", "hi": "1"}


@pytest.mark.parametrize("data", [
    {"lambda": "1", "props": {}},
    {"theta": "w^2+1", "props": {"q": {}}},
    {"theta": "w^2+1", "props": {"p0": {"cells": [{"constraints": [{"xi": "1"}]}]}}},
    {"theta": "w^2+1", "props": {"p0": {"cells": [{"constraints": [{"lo": "0"}]}]}}},
])
def test_valuation_json_errors(data):
    with pytest.raises(ValuationFormatError):
        valuation_from_json(data)


def test_region_json_sentinels():
    r = region_from_json({"cells": [{"constraints": [{"xi": 0, "lo": "-1", "hi": "top"}]}]}, W2)
    assert equal(r, Region.full(W2))
