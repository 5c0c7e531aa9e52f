"""Finite transitive irreflexive trees with a valuation."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping

from .formulas import (And, Bot, Box, Diamond, Formula, Implies, Not, Or, Top, Var,
                       format_formula, parse_formula)


class UnknownNode(KeyError):
    pass


class TreeFormatError(ValueError):
    pass


@dataclass(frozen=True)
class KripkeTree:
    """Nodes ``0..n-1``; ``parent[root]`` is None. R is the strict-descendant relation."""

    parent: tuple[int | None, ...]
    valuation: Mapping[int, frozenset[int]] = field(default_factory=dict)
    root: int = 0
    labels: tuple[tuple[Formula, ...], ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        n = len(self.parent)
        if n == 0:
            raise TreeFormatError("a tree needs at least one node")
        roots = [i for i, q in enumerate(self.parent) if q is None]
        if roots != [self.root]:
            raise TreeFormatError(f"expected unique root {self.root}, found {roots}")
        for i, q in enumerate(self.parent):
            if q is not None and not 0 <= q < n:
                raise TreeFormatError(f"node {i} has unknown parent {q}")
        # every node must reach the root (no cycles)
        for i in range(n):
            seen = 0
            j = i
            while self.parent[j] is not None:
                j = self.parent[j]
                seen += 1
                if seen > n:
                    raise TreeFormatError("parent links contain a cycle")
        for var, nodes in self.valuation.items():
            if any(not 0 <= v < n for v in nodes):
                raise TreeFormatError(f"valuation of p{var} mentions unknown nodes")
        object.__setattr__(self, "valuation", {k: frozenset(v) for k, v in self.valuation.items()})

    @property
    def size(self) -> int:
        return len(self.parent)

    @cached_property
    def children(self) -> tuple[tuple[int, ...], ...]:
        kids: list[list[int]] = [[] for _ in self.parent]
        for i, q in enumerate(self.parent):
            if q is not None:
                kids[q].append(i)
        return tuple(tuple(k) for k in kids)

    @cached_property
    def descendants(self) -> tuple[frozenset[int], ...]:
        out: list[frozenset[int]] = [frozenset()] * self.size
        for node in reversed(self._preorder):
            acc = set()
            for c in self.children[node]:
                acc.add(c)
                acc |= out[c]
            out[node] = frozenset(acc)
        return tuple(out)

    @cached_property
    def _preorder(self) -> tuple[int, ...]:
        order, stack = [], [self.root]
        while stack:
            node = stack.pop()
            order.append(node)
            stack.extend(reversed(self.children[node]))
        return tuple(order)

    def height(self, node: int | None = None) -> int:
        """Length of the longest chain above ``node``: its rank in the upset topology."""
        node = self.root if node is None else node
        kids = self.children[node]
        return 0 if not kids else 1 + max(self.height(c) for c in kids)

    def true_vars(self, node: int) -> frozenset[int]:
        return frozenset(v for v, nodes in self.valuation.items() if node in nodes)

    def subtree(self, node: int) -> "KripkeTree":
        """The generated submodel above ``node``, renumbered from 0."""
        keep = [node] + sorted(self.descendants[node])
        index = {old: new for new, old in enumerate(keep)}
        parent = tuple(None if old == node else index[self.parent[old]] for old in keep)
        val = {v: frozenset(index[x] for x in nodes if x in index) for v, nodes in self.valuation.items()}
        return KripkeTree(parent, val, 0)


def kripke_eval(model: KripkeTree, node: int, f: Formula) -> bool:
    if not 0 <= node < model.size:
        raise UnknownNode(node)
    return _eval(model, node, f)


def _eval(m: KripkeTree, w: int, f: Formula) -> bool:
    if isinstance(f, Var):
        return w in m.valuation.get(f.index, ())
    if isinstance(f, Bot):
        return False
    if isinstance(f, Top):
        return True
    if isinstance(f, Not):
        return not _eval(m, w, f.arg)
    if isinstance(f, And):
        return _eval(m, w, f.left) and _eval(m, w, f.right)
    if isinstance(f, Or):
        return _eval(m, w, f.left) or _eval(m, w, f.right)
    if isinstance(f, Implies):
        return (not _eval(m, w, f.left)) or _eval(m, w, f.right)
    if isinstance(f, Box):
        return all(_eval(m, v, f.arg) for v in m.descendants[w])
    if isinstance(f, Diamond):
        return any(_eval(m, v, f.arg) for v in m.descendants[w])
    raise TypeError(f"not a formula: {f!r}")


def chain(n: int, valuation: Mapping[int, frozenset[int]] | None = None) -> KripkeTree:
    """A chain of ``n`` nodes 0 -> 1 -> ... -> n-1."""
    return KripkeTree(tuple([None] + list(range(n - 1))), valuation or {})


# ---------------------------------------------------------------------------
# export
# ---------------------------------------------------------------------------

def tree_to_json(model: KripkeTree) -> dict:
    nodes = []
    for i, q in enumerate(model.parent):
        entry = {"id": i, "parent": q, "true": [f"p{v}" for v in sorted(model.true_vars(i))]}
        if model.labels is not None:
            entry["label"] = [format_formula(f) for f in model.labels[i]]
        nodes.append(entry)
    return {"root": model.root, "nodes": nodes}


def tree_from_json(data: dict) -> KripkeTree:
    try:
        nodes = sorted(data["nodes"], key=lambda e: e["id"])
        if [e["id"] for e in nodes] != list(range(len(nodes))):
            raise TreeFormatError("node ids must be 0..n-1")
        parent = tuple(e["parent"] for e in nodes)
        val: dict[int, set[int]] = {}
        for e in nodes:
            for name in e.get("true", []):
                var = parse_formula(name)
                if not isinstance(var, Var):
                    raise TreeFormatError(f"not a variable: {name!r}")
                val.setdefault(var.index, set()).add(e["id"])
        return KripkeTree(parent, {k: frozenset(v) for k, v in val.items()}, data.get("root", 0))
    except (KeyError, TypeError) as exc:
        raise TreeFormatError(f"malformed tree: {exc}") from exc


def tree_to_dot(model: KripkeTree, name: str = "model", prefix: str = "n") -> str:
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    lines += _dot_body(model, prefix)
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dot_body(model: KripkeTree, prefix: str) -> list[str]:
    lines = []
    for i in range(model.size):
        props = ",".join(f"p{v}" for v in sorted(model.true_vars(i)))
        lines.append(f'  {prefix}{i} [label="{i}: {props}"];')
    for i, q in enumerate(model.parent):
        if q is not None:
            lines.append(f"  {prefix}{q} -> {prefix}{i};")
    return lines
