"""Tableau decision procedure for GL with finite irreflexive tree countermodels.

Formulas are normalised to {Bot, Var, Not, And, Box}. A node is expanded
propositionally until only literals, boxes and negated boxes remain; every
negated box ``~[]x`` then spawns a child seeded with
``{~x, []x} U {y, []y : []y at the node}``. Boxes strictly accumulate along
a branch, so the search terminates. All choices follow the canonical formula
order, so results are deterministic.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .formulas import (BOT, And, Bot, Box, Formula, Not, Top, Var, canonical, core, diamonds,
                       neg, sort_key)
from .kripke import KripkeTree, kripke_eval

DEFAULT_BUDGET = 2_000_000


class ResourceLimitExceeded(RuntimeError):
    pass


class Inconsistent(ValueError):
    pass


@dataclass(frozen=True)
class Sat:
    model: KripkeTree
    witness: int = 0


@dataclass(frozen=True)
class Unsat:
    pass


SatResult = Sat | Unsat


@dataclass(frozen=True)
class Finite:
    n: int


@dataclass(frozen=True)
class AtLeast:
    n: int


@dataclass
class _Node:
    label: tuple[Formula, ...]
    children: tuple["_Node", ...]


def _is_literal(f: Formula) -> bool:
    if isinstance(f, (Var, Box)):
        return True
    return isinstance(f, Not) and isinstance(f.arg, (Var, Box))


class Tableau:
    """One search session; memoises node results across calls."""

    def __init__(self, budget: int = DEFAULT_BUDGET):
        self.budget = budget
        self.steps = 0
        self._memo: dict[frozenset[Formula], _Node | None] = {}

    def _tick(self):
        self.steps += 1
        if self.steps > self.budget:
            raise ResourceLimitExceeded(f"tableau exceeded {self.budget} expansion steps")

    def saturations(self, gamma: Iterable[Formula]) -> Iterator[frozenset[Formula]]:
        """Open propositionally saturated extensions of ``gamma``, in canonical order."""
        yield from self._expand(sorted(set(gamma), key=sort_key), frozenset())

    def _expand(self, todo: list[Formula], done: frozenset[Formula]) -> Iterator[frozenset[Formula]]:
        self._tick()
        todo = list(todo)
        while todo:
            f = todo.pop(0)
            if f in done:
                continue
            if isinstance(f, Bot):
                return
            if isinstance(f, Not) and isinstance(f.arg, Bot):
                continue
            if isinstance(f, Not) and isinstance(f.arg, Not):
                todo.insert(0, f.arg.arg)
                continue
            if _is_literal(f):
                if neg(f) in done:
                    return
                done = done | {f}
                continue
            if isinstance(f, And):
                todo[:0] = [f.left, f.right]
                continue
            # f = ~(a & b): branch on ~a | ~b
            a, b = neg(f.arg.left), neg(f.arg.right)
            if a in done or b in done:
                continue
            options = [a, b]
            if neg(a) in done:
                options = [b]
            elif neg(b) in done:
                options = [a]
            for choice in options:
                yield from self._expand([choice] + todo, done | {f})
            return
        yield done

    def solve(self, gamma: frozenset[Formula]) -> _Node | None:
        if gamma in self._memo:
            return self._memo[gamma]
        self._memo[gamma] = None  # cycles cannot occur, but keep recursion safe
        result = None
        for branch in self.saturations(gamma):
            boxes = sorted((f.arg for f in branch if isinstance(f, Box)), key=sort_key)
            carried = set()
            for b in boxes:
                carried.update((b, Box(b)))
            wants = sorted((f.arg.arg for f in branch if isinstance(f, Not) and isinstance(f.arg, Box)),
                           key=sort_key)
            kids = []
            for x in wants:
                child = self.solve(frozenset(carried | {neg(x), Box(x)}))
                if child is None:
                    break
                kids.append(child)
            else:
                label = tuple(sorted(branch, key=sort_key))
                result = _Node(label, tuple(kids))
                break
        self._memo[gamma] = result
        return result


def _to_tree(node: _Node) -> KripkeTree:
    parent: list[int | None] = []
    labels: list[tuple[Formula, ...]] = []
    val: dict[int, set[int]] = {}
    stack: list[tuple[_Node, int | None]] = [(node, None)]
    while stack:
        cur, up = stack.pop()
        me = len(parent)
        parent.append(up)
        labels.append(cur.label)
        for f in cur.label:
            if isinstance(f, Var):
                val.setdefault(f.index, set()).add(me)
        for kid in reversed(cur.children):
            stack.append((kid, me))
    return KripkeTree(tuple(parent), {k: frozenset(v) for k, v in val.items()}, 0, tuple(labels))


def gl_sat(gamma: Iterable[Formula], budget: int = DEFAULT_BUDGET, session: Tableau | None = None) -> SatResult:
    """Satisfiability in GL; a ``Sat`` carries a finite tree model rooted at its witness."""
    gamma = canonical(gamma)
    session = session or Tableau(budget)
    node = session.solve(frozenset(core(g) for g in gamma))
    if node is None:
        return Unsat()
    model = _to_tree(node)
    for g in gamma:
        if not kripke_eval(model, 0, g):
            raise AssertionError(f"tableau model fails {g}")  # internal soundness guard
    return Sat(model, 0)


def root_saturation(gamma: Iterable[Formula], budget: int = DEFAULT_BUDGET) -> tuple[Formula, ...] | None:
    """The saturated label chosen for the root of the model of ``gamma``."""
    node = Tableau(budget).solve(frozenset(core(g) for g in gamma))
    return None if node is None else node.label


def gl_prove(f: Formula, budget: int = DEFAULT_BUDGET) -> bool:
    return isinstance(gl_sat([Not(f)], budget), Unsat)


def char_bound(gamma: Iterable[Formula], max_n: int, budget: int = DEFAULT_BUDGET) -> Finite | AtLeast:
    """Least n < max_n with gamma + <>^(n+1) True unsatisfiable, if any."""
    gamma = canonical(gamma)
    session = Tableau(budget)
    if isinstance(gl_sat(gamma, session=session), Unsat):
        raise Inconsistent("the premise set is unsatisfiable")
    for n in range(max_n):
        if isinstance(gl_sat(gamma + (diamonds(n + 1, Top()),), session=session), Unsat):
            return Finite(n)
    return AtLeast(max_n)


def countermodel(f: Formula, budget: int = DEFAULT_BUDGET) -> KripkeTree | None:
    res = gl_sat([Not(f)], budget)
    return res.model if isinstance(res, Sat) else None


__all__ = ["Sat", "Unsat", "Finite", "AtLeast", "Tableau", "gl_sat", "gl_prove", "char_bound",
           "countermodel", "root_saturation", "ResourceLimitExceeded", "Inconsistent", "BOT"]
