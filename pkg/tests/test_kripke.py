import pytest

from ordgl.formulas import parse_formula
from ordgl.kripke import (KripkeTree, TreeFormatError, UnknownNode, chain, kripke_eval, tree_from_json,
                          tree_to_dot, tree_to_json)


def F(text):
    return parse_formula(text)


@pytest.mark.parametrize("model, node, text, expected", [
    (chain(1), 0, "[]False", True),
    (chain(2, {0: frozenset({1})}), 0, "<>p0", True),
    (chain(2), 0, "<><>True", False),
    (chain(3), 0, "<><>True", True),
    (chain(3, {0: frozenset({2})}), 0, "[]p0", False),
    (chain(3, {0: frozenset({2})}), 1, "[]p0", True),
])
def test_eval(model, node, text, expected):
    assert kripke_eval(model, node, F(text)) is expected


def test_descendants_are_transitive():
    t = KripkeTree((None, 0, 1, 0, 3))
    assert t.descendants[0] == frozenset({1, 2, 3, 4})
    assert t.descendants[1] == frozenset({2})
    assert t.height() == 2


@pytest.mark.parametrize("parent", [(), (None, None), (1, 0), (None, 5)])
def test_rejects_bad_parents(parent):
    with pytest.raises(TreeFormatError):
        KripkeTree(parent)


def test_unknown_node():
    with pytest.raises(UnknownNode):
        kripke_eval(chain(2), 7, F("p0"))


def test_json_roundtrip():
    t = KripkeTree((None, 0, 0, 1), {0: frozenset({1, 3}), 2: frozenset({0})})
    assert tree_from_json(tree_to_json(t)) == t


def test_json_errors():
    with pytest.raises(TreeFormatError):
        tree_from_json({"nodes": [{"id": 1, "parent": None}]})
    with pytest.raises(TreeFormatError):
        tree_from_json({"nodes": [{"id": 0, "parent": None, "true": ["<>p0"]}]})


def test_dot():
    dot = tree_to_dot(chain(2, {0: frozenset({1})}))
    assert dot.startswith("digraph model {")
    assert "n0 -> n1;" in dot and 'label="1: p0"' in dot


def test_subtree():
    t = KripkeTree((None, 0, 1, 0), {0: frozenset({2})})
    s = t.subtree(1)
    assert s.parent == (None, 0)
    assert s.valuation[0] == frozenset({1})
