"""Modal formulas over indexed variables p0, p1, ...

The surface syntax keeps the derived connectives (``Top``, ``Or``,
``Implies``, ``Diamond``) so that printing round-trips; ``core`` rewrites a
formula into the primitive fragment {Bot, Var, Not, And, Box}.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Union


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


class Formula:
    __slots__ = ()

    def __str__(self):
        return format_formula(self)

    # operator sugar for building formulas in code and tests
    def __and__(self, other):
        return And(self, other)

    def __or__(self, other):
        return Or(self, other)

    def __invert__(self):
        return Not(self)

    def __rshift__(self, other):
        return Implies(self, other)


@dataclass(frozen=True)
class Bot(Formula):
    pass


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Var(Formula):
    index: int


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Box(Formula):
    arg: Formula


@dataclass(frozen=True)
class Diamond(Formula):
    arg: Formula


BOT = Bot()
TOP = Top()


def p(i: int) -> Var:
    return Var(i)


def diamonds(n: int, body: Formula = TOP) -> Formula:
    """<>^n body."""
    for _ in range(n):
        body = Diamond(body)
    return body


# ---------------------------------------------------------------------------
# normalisation
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def core(f: Formula) -> Formula:
    """Rewrite into {Bot, Var, Not, And, Box}, cancelling double negations."""
    if isinstance(f, (Bot, Var)):
        return f
    if isinstance(f, Top):
        return Not(BOT)
    if isinstance(f, Not):
        return neg(core(f.arg))
    if isinstance(f, And):
        return And(core(f.left), core(f.right))
    if isinstance(f, Or):
        return neg(And(neg(core(f.left)), neg(core(f.right))))
    if isinstance(f, Implies):
        return neg(And(core(f.left), neg(core(f.right))))
    if isinstance(f, Box):
        return Box(core(f.arg))
    if isinstance(f, Diamond):
        return Not(Box(neg(core(f.arg))))
    raise TypeError(f"not a formula: {f!r}")


def neg(f: Formula) -> Formula:
    return f.arg if isinstance(f, Not) else Not(f)


def sort_key(f: Formula) -> tuple:
    """Canonical total order on formulas: by size, then printed form."""
    return (size(f), format_formula(f))


def canonical(formulas: Iterable[Formula]) -> tuple[Formula, ...]:
    """A ``FormulaSet``: duplicates removed, canonical order."""
    return tuple(sorted(set(formulas), key=sort_key))


@lru_cache(maxsize=None)
def size(f: Formula) -> int:
    if isinstance(f, (Bot, Top, Var)):
        return 1
    if isinstance(f, (Not, Box, Diamond)):
        return 1 + size(f.arg)
    return 1 + size(f.left) + size(f.right)


@lru_cache(maxsize=None)
def modal_depth(f: Formula) -> int:
    if isinstance(f, (Bot, Top, Var)):
        return 0
    if isinstance(f, Not):
        return modal_depth(f.arg)
    if isinstance(f, (Box, Diamond)):
        return 1 + modal_depth(f.arg)
    return max(modal_depth(f.left), modal_depth(f.right))


def variables(f: Formula) -> frozenset[int]:
    if isinstance(f, Var):
        return frozenset((f.index,))
    if isinstance(f, (Bot, Top)):
        return frozenset()
    if isinstance(f, (Not, Box, Diamond)):
        return variables(f.arg)
    return variables(f.left) | variables(f.right)


def subformulas(f: Formula) -> Iterable[Formula]:
    yield f
    if isinstance(f, (Not, Box, Diamond)):
        yield from subformulas(f.arg)
    elif isinstance(f, (And, Or, Implies)):
        yield from subformulas(f.left)
        yield from subformulas(f.right)


def closure(gamma: Iterable[Formula]) -> tuple[Formula, ...]:
    """Subformulas of the core forms of ``gamma``, closed under single negation."""
    subs = set()
    for g in gamma:
        subs.update(subformulas(core(g)))
    return canonical(subs | {neg(s) for s in subs})


# ---------------------------------------------------------------------------
# syntax
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(p\d+)|(True)|(False)|(->)|(\[\])|(<>)|(~)|(&)|(\|)|(\()|(\)))")
_KINDS = ("var", "True", "False", "->", "[]", "<>", "~", "&", "|", "(", ")")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise FormulaSyntaxError("unexpected character", text, len(text[pos:]) - len(text[pos:].lstrip()) + pos)
        kind = _KINDS[m.lastindex - 1]
        tokens.append((kind, m.group(m.lastindex), m.start(m.lastindex)))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message, tok):
        raise FormulaSyntaxError(message, self.text, tok[2])

    def parse(self) -> Formula:
        f = self.implication()
        if self.peek()[0] != "eof":
            self.fail(f"unexpected {self.peek()[1]!r}", self.peek())
        return f

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.peek()[0] == "->":
            self.advance()
            return Implies(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        f = self.conjunction()
        while self.peek()[0] == "|":
            self.advance()
            f = Or(f, self.conjunction())
        return f

    def conjunction(self) -> Formula:
        f = self.unary()
        while self.peek()[0] == "&":
            self.advance()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        tok = self.advance()
        kind = tok[0]
        if kind == "~":
            return Not(self.unary())
        if kind == "[]":
            return Box(self.unary())
        if kind == "<>":
            return Diamond(self.unary())
        if kind == "var":
            return Var(int(tok[1][1:]))
        if kind == "True":
            return TOP
        if kind == "False":
            return BOT
        if kind == "(":
            f = self.implication()
            if self.peek()[0] != ")":
                self.fail("expected ')'", self.peek())
            self.advance()
            return f
        self.fail("expected a formula" if kind != "eof" else "unexpected end of input", tok)


def parse_formula(text: str) -> Formula:
    return _Parser(text).parse()


_PREC = {Implies: 1, Or: 2, And: 3}


def _prec(f: Formula) -> int:
    return _PREC.get(type(f), 4)


def format_formula(f: Formula) -> str:
    if isinstance(f, Var):
        return f"p{f.index}"
    if isinstance(f, Top):
        return "True"
    if isinstance(f, Bot):
        return "False"
    if isinstance(f, (Not, Box, Diamond)):
        op = {Not: "~", Box: "[]", Diamond: "<>"}[type(f)]
        inner = format_formula(f.arg)
        if _prec(f.arg) < 4:
            inner = f"({inner})"
        return op + inner
    prec = _prec(f)
    left, right = format_formula(f.left), format_formula(f.right)
    if isinstance(f, Implies):
        # right-associative
        if _prec(f.left) <= prec:
            left = f"({left})"
        if _prec(f.right) < prec:
            right = f"({right})"
        return f"{left} -> {right}"
    op = "&" if isinstance(f, And) else "|"
    if _prec(f.left) < prec:
        left = f"({left})"
    if _prec(f.right) <= prec:
        right = f"({right})"
    return f"{left} {op} {right}"


FormulaLike = Union[Formula, str]


def formula(value: FormulaLike) -> Formula:
    return parse_formula(value) if isinstance(value, str) else value
