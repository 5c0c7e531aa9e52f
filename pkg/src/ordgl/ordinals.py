"""Ordinals below epsilon-zero in Cantor normal form.

An ordinal is stored as a tuple of ``(exponent, coefficient)`` pairs with
strictly decreasing exponents; exponents are themselves ``CnfOrdinal``.
All values are immutable and hashable.
"""
from __future__ import annotations

import enum
import re
from functools import total_ordering
from typing import Iterable, Union

DEFAULT_NESTING_LIMIT = 32


class OrdinalError(ValueError):
    pass


class OrdinalSyntaxError(OrdinalError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


class Underflow(OrdinalError):
    pass


class NotLimit(OrdinalError):
    pass


class IndexOutOfRange(OrdinalError):
    pass


class RepresentationOverflow(OrdinalError):
    pass


class Cofinality(enum.Enum):
    ZERO = "0"
    ONE = "1"
    OMEGA = "w"


OrdLike = Union["CnfOrdinal", int]


@total_ordering
class CnfOrdinal:
    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Iterable[tuple["CnfOrdinal", int]] = ()):
        terms = tuple(terms)
        prev = None
        for e, c in terms:
            if not isinstance(e, CnfOrdinal) or not isinstance(c, int) or c < 1:
                raise OrdinalError(f"bad CNF term ({e!r}, {c!r})")
            if prev is not None and not e < prev:
                raise OrdinalError("CNF exponents must strictly decrease")
            prev = e
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("CnfOrdinal is immutable")

    @classmethod
    def _raw(cls, terms: tuple) -> "CnfOrdinal":
        obj = object.__new__(cls)
        object.__setattr__(obj, "terms", terms)
        object.__setattr__(obj, "_hash", None)
        return obj

    @classmethod
    def of(cls, value: OrdLike) -> "CnfOrdinal":
        if isinstance(value, CnfOrdinal):
            return value
        if isinstance(value, bool) or not isinstance(value, int):
            raise TypeError(f"cannot convert {value!r} to an ordinal")
        if value < 0:
            raise Underflow(f"negative integer {value}")
        if value == 0:
            return ZERO
        return cls._raw(((ZERO, value),))

    # -- structure -------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0].is_zero)

    @property
    def is_successor(self) -> bool:
        return bool(self.terms) and self.terms[-1][0].is_zero

    @property
    def is_limit(self) -> bool:
        return bool(self.terms) and not self.terms[-1][0].is_zero

    @property
    def finite_part(self) -> int:
        if self.terms and self.terms[-1][0].is_zero:
            return self.terms[-1][1]
        return 0

    @property
    def leading_exponent(self) -> "CnfOrdinal":
        return self.terms[0][0] if self.terms else ZERO

    @property
    def nesting(self) -> int:
        """Height of the exponent tower: 0 for finite ordinals, 1 for w*k + n, ..."""
        if self.is_finite:
            return 0
        return 1 + max(e.nesting for e, _ in self.terms)

    def __int__(self) -> int:
        if not self.is_finite:
            raise OrdinalError(f"{self} is infinite")
        return self.terms[0][1] if self.terms else 0

    # -- comparison --------------------------------------------------------

    def _cmp(self, other: "CnfOrdinal") -> int:
        if self is other:
            return 0
        for (e1, c1), (e2, c2) in zip(self.terms, other.terms):
            k = e1._cmp(e2)
            if k:
                return k
            if c1 != c2:
                return -1 if c1 < c2 else 1
        n1, n2 = len(self.terms), len(other.terms)
        return (n1 > n2) - (n1 < n2)

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            if other < 0:
                return False
            other = CnfOrdinal.of(other)
        if not isinstance(other, CnfOrdinal):
            return NotImplemented
        return self._cmp(other) == 0

    def __lt__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            if other < 0:
                return False
            other = CnfOrdinal.of(other)
        if not isinstance(other, CnfOrdinal):
            return NotImplemented
        return self._cmp(other) < 0

    def __hash__(self):
        h = self._hash
        if h is None:
            if self.is_finite:
                h = hash(int(self))
            else:
                h = hash(self.terms)
            object.__setattr__(self, "_hash", h)
        return h

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, CnfOrdinal)):
            return add(self, other)
        return NotImplemented

    def __radd__(self, other):
        if isinstance(other, int):
            return add(other, self)
        return NotImplemented

    def __repr__(self):
        return f"CnfOrdinal({format_ordinal(self)!r})"

    def __str__(self):
        return format_ordinal(self)


ZERO = CnfOrdinal._raw(())
ONE = CnfOrdinal._raw(((ZERO, 1),))
OMEGA = CnfOrdinal._raw(((ONE, 1),))


def omega_power(exponent: OrdLike, coefficient: int = 1) -> CnfOrdinal:
    """w^exponent * coefficient."""
    if coefficient < 0:
        raise Underflow("negative coefficient")
    if coefficient == 0:
        return ZERO
    return CnfOrdinal._raw(((CnfOrdinal.of(exponent), coefficient),))


def ordinal(value: Union[OrdLike, str]) -> CnfOrdinal:
    """Coerce an int, literal string or ordinal to ``CnfOrdinal``."""
    if isinstance(value, str):
        return parse_ordinal(value)
    return CnfOrdinal.of(value)


# ---------------------------------------------------------------------------
# literal grammar
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(w)|(\^)|(\*)|(\+)|(\()|(\)))")


class _OrdinalParser:
    def __init__(self, text: str, nesting_limit: int):
        self.text = text
        self.limit = nesting_limit
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m:
                raise OrdinalSyntaxError("unexpected character", text, pos)
            kinds = ("nat", "w", "^", "*", "+", "(", ")")
            for kind, group in zip(kinds, m.groups()):
                if group is not None:
                    self.tokens.append((kind, group, m.start(m.lastindex)))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("eof", "", len(self.text))

    def take(self, kind):
        tok = self.peek()
        if tok[0] != kind:
            raise OrdinalSyntaxError(f"expected {kind!r}, found {tok[1] or 'end of input'!r}", self.text, tok[2])
        self.i += 1
        return tok

    def parse(self) -> CnfOrdinal:
        value = self.expr(0)
        tok = self.peek()
        if tok[0] != "eof":
            raise OrdinalSyntaxError(f"unexpected {tok[1]!r}", self.text, tok[2])
        return value

    def expr(self, depth: int) -> CnfOrdinal:
        if depth > self.limit:
            raise RepresentationOverflow(f"exponent nesting deeper than {self.limit}")
        value = self.term(depth)
        while self.peek()[0] == "+":
            self.i += 1
            value = add(value, self.term(depth))
        return value

    def term(self, depth: int) -> CnfOrdinal:
        tok = self.peek()
        if tok[0] == "nat":
            self.i += 1
            return CnfOrdinal.of(int(tok[1]))
        self.take("w")
        exponent = ONE
        if self.peek()[0] == "^":
            self.i += 1
            nxt = self.peek()
            if nxt[0] == "(":
                self.i += 1
                exponent = self.expr(depth + 1)
                self.take(")")
            elif nxt[0] == "w":
                self.i += 1
                exponent = OMEGA
            elif nxt[0] == "nat":
                self.i += 1
                exponent = CnfOrdinal.of(int(nxt[1]))
            else:
                raise OrdinalSyntaxError("expected exponent", self.text, nxt[2])
        coefficient = 1
        if self.peek()[0] == "*":
            self.i += 1
            coefficient = int(self.take("nat")[1])
        return omega_power(exponent, coefficient)


def parse_ordinal(text: str, nesting_limit: int = DEFAULT_NESTING_LIMIT) -> CnfOrdinal:
    return _OrdinalParser(text, nesting_limit).parse()


def format_ordinal(a: CnfOrdinal) -> str:
    if a.is_zero:
        return "0"
    parts = []
    for e, c in a.terms:
        if e.is_zero:
            parts.append(str(c))
            continue
        if e == ONE:
            s = "w"
        elif e == OMEGA or e.is_finite:
            s = f"w^{format_ordinal(e)}"
        else:
            s = f"w^({format_ordinal(e)})"
        if c != 1:
            s += f"*{c}"
        parts.append(s)
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# arithmetic
# ---------------------------------------------------------------------------

def compare(a: OrdLike, b: OrdLike) -> int:
    """-1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
    return CnfOrdinal.of(a)._cmp(CnfOrdinal.of(b))


def add(a: OrdLike, b: OrdLike) -> CnfOrdinal:
    a, b = CnfOrdinal.of(a), CnfOrdinal.of(b)
    if b.is_zero:
        return a
    if a.is_zero:
        return b
    lead, lc = b.terms[0]
    keep = []
    for e, c in a.terms:
        k = e._cmp(lead)
        if k > 0:
            keep.append((e, c))
        elif k == 0:
            keep.append((e, c + lc))
            return CnfOrdinal._raw(tuple(keep) + b.terms[1:])
        else:
            break
    return CnfOrdinal._raw(tuple(keep) + b.terms)


def left_sub(a: OrdLike, b: OrdLike) -> CnfOrdinal:
    """The unique g with a + g = b."""
    a, b = CnfOrdinal.of(a), CnfOrdinal.of(b)
    if a > b:
        raise Underflow(f"{a} > {b}")
    i = 0
    while i < len(a.terms) and i < len(b.terms) and a.terms[i] == b.terms[i]:
        i += 1
    if i == len(a.terms):
        return CnfOrdinal._raw(b.terms[i:])
    # a and b first differ at position i; b is larger there
    eb, cb = b.terms[i]
    ea, ca = a.terms[i]
    if ea == eb:
        return CnfOrdinal._raw(((eb, cb - ca),) + b.terms[i + 1:])
    return CnfOrdinal._raw(b.terms[i:])


def predecessor(a: OrdLike) -> CnfOrdinal:
    a = CnfOrdinal.of(a)
    if not a.is_successor:
        raise OrdinalError(f"{a} has no predecessor")
    e, c = a.terms[-1]
    if c == 1:
        return CnfOrdinal._raw(a.terms[:-1])
    return CnfOrdinal._raw(a.terms[:-1] + ((e, c - 1),))


def successor(a: OrdLike) -> CnfOrdinal:
    return add(a, ONE)


def classify(a: OrdLike) -> Cofinality:
    a = CnfOrdinal.of(a)
    if a.is_zero:
        return Cofinality.ZERO
    if a.is_successor:
        return Cofinality.ONE
    return Cofinality.OMEGA


def end_log(a: OrdLike) -> CnfOrdinal:
    """Exponent of the last CNF term; 0 at 0 by convention."""
    a = CnfOrdinal.of(a)
    if a.is_zero:
        return ZERO
    return a.terms[-1][0]


def hyper_log(xi: OrdLike, a: OrdLike) -> CnfOrdinal:
    """Iterated end logarithm.

    Finite ``xi`` iterates ``end_log``. Every ordinal here lies below
    epsilon-zero, so ``hyper_log(xi, a)`` is 0 once ``xi`` is infinite.
    """
    xi, a = CnfOrdinal.of(xi), CnfOrdinal.of(a)
    if not xi.is_finite:
        return ZERO
    for _ in range(int(xi)):
        if a.is_zero:
            break
        a = a.terms[-1][0]
    return a


def hyper_exp(n: OrdLike, a: OrdLike, nesting_limit: int = DEFAULT_NESTING_LIMIT) -> CnfOrdinal:
    """n-fold iterate of x -> -1 + w^x."""
    n, a = CnfOrdinal.of(n), CnfOrdinal.of(a)
    if not n.is_finite:
        raise IndexOutOfRange(f"hyperexponential index {n} is infinite; e^w(1) is epsilon-zero")
    for _ in range(int(n)):
        if a.is_zero:
            break
        a = omega_power(a)
        if a.nesting > nesting_limit:
            raise RepresentationOverflow(f"tower exceeds nesting limit {nesting_limit}")
    return a


def truncate_at(a: OrdLike, e: OrdLike) -> CnfOrdinal:
    """The prefix of ``a`` made of terms with exponent >= e."""
    a, e = CnfOrdinal.of(a), CnfOrdinal.of(e)
    keep = tuple(t for t in a.terms if not t[0] < e)
    return CnfOrdinal._raw(keep)


def next_with_log(a: CnfOrdinal | None, e: OrdLike) -> CnfOrdinal:
    """Least x > a with end_log(x) = e (``a=None`` means no lower bound).

    With no lower bound the answer for ``e = 0`` is 0 itself, since
    ``end_log(0) = 0``.
    """
    e = CnfOrdinal.of(e)
    if a is None:
        return ZERO if e.is_zero else omega_power(e)
    return add(truncate_at(a, e), omega_power(e))


def fundamental_seq(a: OrdLike, n: int) -> CnfOrdinal:
    """Canonical fundamental sequence a[n] of a limit ordinal a."""
    a = CnfOrdinal.of(a)
    if not a.is_limit:
        raise NotLimit(f"{a} is not a limit ordinal")
    if n < 0:
        raise ValueError("n must be non-negative")
    e, c = a.terms[-1]
    prefix = a.terms[:-1]
    if c > 1:
        prefix = prefix + ((e, c - 1),)
    head = CnfOrdinal._raw(prefix)
    if e.is_successor:
        tail = omega_power(predecessor(e), n)
    else:
        tail = omega_power(fundamental_seq(e, n))
    return add(head, tail)
