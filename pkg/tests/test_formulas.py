import pytest
from hypothesis import given

from conftest import formulas
from ordgl.formulas import (BOT, TOP, And, Box, Diamond, FormulaSyntaxError, Implies, Not, Or, Var, closure,
                            core, format_formula, modal_depth, neg, parse_formula, size, variables)

p0, p1 = Var(0), Var(1)


@pytest.mark.parametrize("text, expected", [
    ("[](p0 -> <>p1)", Box(Implies(p0, Diamond(p1)))),
    ("~False", Not(BOT)),
    ("<> <> True", Diamond(Diamond(TOP))),
    ("p0 -> p1 -> p0", Implies(p0, Implies(p1, p0))),
    ("p0 | p1 & p0", Or(p0, And(p1, p0))),
    ("~p0 & p1", And(Not(p0), p1)),
    ("[]p0 | ~<>p1 -> p12", Implies(Or(Box(p0), Not(Diamond(p1))), Var(12))),
])
def test_parse(text, expected):
    assert parse_formula(text) == expected


@pytest.mark.parametrize("f, text", [
    (Not(BOT), "~False"),
    (Implies(Implies(p0, p1), p0), "(p0 -> p1) -> p0"),
    (And(Or(p0, p1), p0), "(p0 | p1) & p0"),
    (Box(And(p0, p1)), "[](p0 & p1)"),
    (Diamond(Diamond(TOP)), "<><>True"),
])
def test_format(f, text):
    assert format_formula(f) == text


@pytest.mark.parametrize("text, pos", [("p0 &", 4), ("(p0", 3), ("p0 p1", 3), ("q", 0), ("[]", 2), ("p0)", 2)])
def test_syntax_error_position(text, pos):
    with pytest.raises(FormulaSyntaxError) as info:
        parse_formula(text)
    assert info.value.pos == pos


@given(formulas(4, 3))
def test_roundtrip(f):
    assert parse_formula(format_formula(f)) == f


@given(formulas(4))
def test_core_uses_primitive_connectives(f):
    def prim(g):
        if isinstance(g, (Or, Implies, Diamond)) or g == TOP:
            return False
        return all(prim(x) for x in vars(g).values() if not isinstance(x, int))
    assert prim(core(f))
    assert variables(core(f)) == variables(f)
    assert modal_depth(core(f)) == modal_depth(f)


def test_closure_examples():
    assert set(closure([Box(p0)])) == {Box(p0), p0, Not(Box(p0)), Not(p0)}
    assert closure([]) == ()
    cl = closure([Diamond(TOP)])
    assert Box(BOT) in cl and Not(BOT) in cl


@given(formulas(3))
def test_closure_closed_under_negation(f):
    cl = set(closure([f]))
    assert all(neg(g) in cl for g in cl)


def test_size_and_depth():
    f = parse_formula("[](p0 -> <>p1)")
    assert size(f) == 5
    assert modal_depth(f) == 2
