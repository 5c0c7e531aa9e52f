"""Decidable subsets of an ordinal space [0, Theta).

A ``Cell`` is an intersection of rank constraints ``lo < l^xi(theta) <= hi``;
a ``Region`` is a finite union of cells with finitely many points added and
removed. Everything reduces to one fact about end logarithms: for an
interval (a, B) the set ``{end_log(x) : a < x < B}`` is an initial segment
of the ordinals, computed by ``log_image``.

Bounds use ``None`` for the two sentinels: a lower bound of ``None`` is the
-1 of ``(-1, b]`` (no lower bound) and an upper bound of ``None`` is "top".
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from .ordinals import (ONE, ZERO, CnfOrdinal, OrdLike, add, end_log, hyper_log, next_with_log,
                       omega_power, predecessor, successor)

Bound = Optional[CnfOrdinal]

CLUB_JUSTIFICATION = (
    "club topology refused: every ordinal below epsilon-zero has cofinality at most omega, "
    "and points of countable cofinality are isolated in the club topology, so the space is "
    "discrete and every model over it is trivial"
)


class RegionError(ValueError):
    pass


class SpaceMismatch(RegionError):
    pass


class OutOfSpace(RegionError):
    pass


class InvalidConstraint(RegionError):
    pass


class UnsupportedTopology(RegionError):
    pass


@dataclass(frozen=True)
class SpaceSpec:
    """The space [0, theta) with the generalized Icard topology of index ``lam``."""

    theta: CnfOrdinal
    lam: CnfOrdinal = ONE
    topology: str = "icard"

    def __post_init__(self):
        object.__setattr__(self, "theta", CnfOrdinal.of(self.theta))
        object.__setattr__(self, "lam", CnfOrdinal.of(self.lam))
        if self.topology == "club":
            raise UnsupportedTopology(CLUB_JUSTIFICATION)
        if self.topology != "icard":
            raise UnsupportedTopology(f"unknown topology {self.topology!r}")
        if self.theta.is_zero:
            raise RegionError("the space must be non-empty")

    @property
    def effective_lambda(self) -> int | None:
        """Finite index, or None when every point is isolated (lam >= w)."""
        return int(self.lam) if self.lam.is_finite else None

    def contains(self, x: OrdLike) -> bool:
        return CnfOrdinal.of(x) < self.theta


# ---------------------------------------------------------------------------
# intervals and end-log images
# ---------------------------------------------------------------------------

def _first_above(lo: Bound) -> CnfOrdinal:
    return ZERO if lo is None else successor(lo)


def _nonempty(lo: Bound, ub: Bound) -> bool:
    return ub is None or _first_above(lo) < ub


def _min_bound(a: Bound, b: Bound) -> Bound:
    if a is None:
        return b
    if b is None:
        return a
    return a if a <= b else b


def _max_lo(a: Bound, b: Bound) -> Bound:
    if a is None:
        return b
    if b is None:
        return a
    return a if a >= b else b


def log_image(lo: Bound, ub: Bound) -> Bound:
    """Exclusive bound E with ``{end_log(x) : lo < x < ub} = [0, E)``.

    ``next_with_log(lo, e)`` is strictly increasing in e, so the image is
    an initial segment; E is found by locating where ``lo`` and ``ub`` first
    differ in Cantor normal form.
    """
    if ub is None:
        return None
    if lo is None:
        if ub.is_zero:
            return ZERO
        e = log_image(ZERO, ub)
        return e if e >= ONE else ONE
    if lo >= ub:
        return ZERO
    i = 0
    while i < len(lo.terms) and lo.terms[i] == ub.terms[i]:
        i += 1
    f, cb = ub.terms[i]
    ca = lo.terms[i][1] if i < len(lo.terms) and lo.terms[i][0] == f else 0
    if ca + 1 < cb or len(ub.terms) > i + 1:
        return successor(f)
    return f


# ---------------------------------------------------------------------------
# constraints and cells
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class RankConstraint:
    """``lo < hyper_log(xi, theta) <= hi``."""

    xi: int
    lo: Bound = None
    hi: Bound = None

    def __post_init__(self):
        if not isinstance(self.xi, int) or self.xi < 0:
            raise InvalidConstraint(f"constraint index must be a natural number, got {self.xi!r}")
        if self.lo is not None:
            object.__setattr__(self, "lo", CnfOrdinal.of(self.lo))
        if self.hi is not None:
            object.__setattr__(self, "hi", CnfOrdinal.of(self.hi))
        if self.lo is not None and self.hi is not None and not self.lo < self.hi:
            raise InvalidConstraint(f"empty constraint ({self.lo}, {self.hi}]_{self.xi}")

    @property
    def upper(self) -> Bound:
        return None if self.hi is None else successor(self.hi)

    def holds(self, x: CnfOrdinal) -> bool:
        v = hyper_log(self.xi, x)
        return (self.lo is None or self.lo < v) and (self.hi is None or v <= self.hi)

    @property
    def trivial(self) -> bool:
        return self.lo is None and self.hi is None

    def __str__(self):
        lo = "-1" if self.lo is None else str(self.lo)
        hi = "top" if self.hi is None else str(self.hi)
        return f"({lo}, {hi}]_{self.xi}"


@dataclass(frozen=True)
class Cell:
    """Intersection of rank constraints with pairwise distinct indices."""

    constraints: tuple[RankConstraint, ...] = ()

    def __post_init__(self):
        cs = tuple(sorted(c for c in self.constraints if not c.trivial))
        xs = [c.xi for c in cs]
        if len(set(xs)) != len(xs):
            raise InvalidConstraint("cell constraints must have distinct indices")
        object.__setattr__(self, "constraints", cs)

    @classmethod
    def of(cls, *constraints: RankConstraint) -> "Cell":
        return cls(tuple(constraints))

    @classmethod
    def rank(cls, xi: int, lo: OrdLike | None = None, hi: OrdLike | None = None) -> "Cell":
        return cls((RankConstraint(xi, lo, hi),))

    def get(self, xi: int) -> RankConstraint | None:
        for c in self.constraints:
            if c.xi == xi:
                return c
        return None

    @property
    def top_index(self) -> int:
        return max((c.xi for c in self.constraints), default=0)

    def holds(self, x: CnfOrdinal) -> bool:
        return all(c.holds(x) for c in self.constraints)

    def holds_from(self, x: CnfOrdinal, level: int) -> bool:
        """Constraints of index >= level, applied to ``x`` read at that level."""
        return all(RankConstraint(c.xi - level, c.lo, c.hi).holds(x)
                   for c in self.constraints if c.xi >= level)

    def __str__(self):
        return " & ".join(map(str, self.constraints)) or "(all)"


FULL_CELL = Cell()


def intersect_cells(a: Cell, b: Cell) -> Cell | None:
    merged: dict[int, tuple[Bound, Bound]] = {}
    for c in a.constraints + b.constraints:
        if c.xi in merged:
            lo, hi = merged[c.xi]
            merged[c.xi] = (_max_lo(lo, c.lo), _min_bound(hi, c.hi))
        else:
            merged[c.xi] = (c.lo, c.hi)
    out = []
    for xi, (lo, hi) in merged.items():
        if lo is not None and hi is not None and lo >= hi:
            return None
        out.append(RankConstraint(xi, lo, hi))
    return Cell(tuple(out))


def complement_cell(c: Cell) -> list[Cell]:
    out = []
    for k in c.constraints:
        if k.lo is not None:
            out.append(Cell.rank(k.xi, None, k.lo))
        if k.hi is not None:
            out.append(Cell.rank(k.xi, k.hi, None))
    return out


def cell_subset_syntactic(small: Cell, big: Cell) -> bool:
    """Sufficient test for ``small <= big`` by comparing intervals index-wise."""
    for k in big.constraints:
        s = small.get(k.xi)
        if s is None:
            return False
        if k.lo is not None and (s.lo is None or s.lo < k.lo):
            return False
        if k.hi is not None and (s.hi is None or s.hi > k.hi):
            return False
    return True


def _forward(cell: Cell, level: int, lo0: Bound, ub0: Bound) -> list[tuple[Bound, Bound]] | None:
    """Effective intervals for levels ``level..top`` of ``cell``, or None if unrealizable.

    Level ``level`` is restricted to (lo0, ub0); each later level to the
    constraint's interval intersected with the end-log image of the one
    below it.
    """
    top = max(cell.top_index, level)
    ivs = []
    lo, ub = lo0, ub0
    for xi in range(level, top + 1):
        k = cell.get(xi)
        if k is not None:
            lo = _max_lo(lo, k.lo)
            ub = _min_bound(ub, k.upper)
        if not _nonempty(lo, ub):
            return None
        ivs.append((lo, ub))
        lo, ub = None, log_image(lo, ub)
    return ivs


def _least(ivs: list[tuple[Bound, Bound]]) -> CnfOrdinal:
    m = _first_above(ivs[-1][0])
    for lo, _ in reversed(ivs[:-1]):
        m = next_with_log(lo, m)
    return m


def cell_min(cell: Cell, space: SpaceSpec, above: Bound = None) -> CnfOrdinal | None:
    """Least member of ``cell`` in the space that exceeds ``above``."""
    ivs = _forward(cell, 0, above, space.theta)
    return None if ivs is None else _least(ivs)


def level_min(cell: Cell, level: int) -> CnfOrdinal | None:
    """Least value v such that v read at ``level`` satisfies all constraints of index >= level."""
    ivs = _forward(cell, level, None, None)
    return None if ivs is None else _least(ivs)


def cell_sup(cell: Cell, space: SpaceSpec, below: CnfOrdinal) -> tuple[CnfOrdinal, bool] | None:
    """sup of ``cell`` below the exclusive bound ``below``, with an attained flag."""
    k0 = cell.get(0)
    lo = k0.lo if k0 is not None else None
    bound = _min_bound(_min_bound(below, space.theta), k0.upper if k0 is not None else None)
    first_log = level_min(cell, 1)
    if first_log is None:
        return None
    while True:
        if not _nonempty(lo, bound):
            return None
        if bound.is_successor:
            b = predecessor(bound)
            if cell.holds_from(end_log(b), 1):
                return b, True
            if b.is_successor:
                bound = successor(_drop_finite(b))
            else:
                bound = b
        else:
            # elements with end log below end_log(bound) are cofinal in bound
            if first_log < end_log(bound):
                return bound, False
            bound = successor(_drop_last(bound))


def _drop_finite(a: CnfOrdinal) -> CnfOrdinal:
    if a.is_successor:
        return CnfOrdinal(a.terms[:-1])
    return a


def _drop_last(a: CnfOrdinal) -> CnfOrdinal:
    """``a`` with one copy of its last w-power removed."""
    e, c = a.terms[-1]
    return CnfOrdinal(a.terms[:-1] + (((e, c - 1),) if c > 1 else ()))


# ---------------------------------------------------------------------------
# regions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Region:
    """``(union(cells) | plus) - minus`` inside the space."""

    space: SpaceSpec
    cells: tuple[Cell, ...] = ()
    plus: frozenset[CnfOrdinal] = field(default_factory=frozenset)
    minus: frozenset[CnfOrdinal] = field(default_factory=frozenset)

    def __post_init__(self):
        plus = frozenset(CnfOrdinal.of(x) for x in self.plus)
        minus = frozenset(CnfOrdinal.of(x) for x in self.minus)
        for x in plus | minus:
            if not self.space.contains(x):
                raise OutOfSpace(f"{x} is outside [0, {self.space.theta})")
        if plus & minus:
            raise RegionError("plus and minus points overlap")
        object.__setattr__(self, "plus", plus)
        object.__setattr__(self, "minus", minus)
        object.__setattr__(self, "cells", tuple(self.cells))

    # constructors ---------------------------------------------------------

    @classmethod
    def empty(cls, space: SpaceSpec) -> "Region":
        return cls(space)

    @classmethod
    def full(cls, space: SpaceSpec) -> "Region":
        return cls(space, (FULL_CELL,))

    @classmethod
    def points(cls, space: SpaceSpec, pts: Iterable[OrdLike]) -> "Region":
        return cls(space, (), frozenset(CnfOrdinal.of(p) for p in pts))

    @classmethod
    def rank(cls, space: SpaceSpec, xi: int, lo: OrdLike | None = None, hi: OrdLike | None = None) -> "Region":
        return cls(space, (Cell.rank(xi, lo, hi),))

    @classmethod
    def interval(cls, space: SpaceSpec, lo: OrdLike | None, hi: OrdLike | None) -> "Region":
        """Plain interval (lo, hi] of points."""
        return cls.rank(space, 0, lo, hi)

    # queries ----------------------------------------------------------------

    def __contains__(self, x: OrdLike) -> bool:
        return member(x, self)

    def __str__(self):
        parts = [str(c) for c in self.cells]
        if self.plus:
            parts.append("{" + ", ".join(map(str, sorted(self.plus))) + "}")
        s = " | ".join(parts) or "empty"
        if self.minus:
            s += " minus {" + ", ".join(map(str, sorted(self.minus))) + "}"
        return s


def _in_cells(cells: Iterable[Cell], x: CnfOrdinal) -> bool:
    return any(c.holds(x) for c in cells)


def member(x: OrdLike, region: Region) -> bool:
    x = CnfOrdinal.of(x)
    if not region.space.contains(x):
        raise OutOfSpace(f"{x} is outside [0, {region.space.theta})")
    if x in region.plus:
        return True
    if x in region.minus:
        return False
    return _in_cells(region.cells, x)


def _prune(cells: Iterable[Cell], space: SpaceSpec) -> tuple[Cell, ...]:
    live = []
    for c in cells:
        if c is None or c in live:
            continue
        if cell_min(c, space) is None:
            continue
        live.append(c)
    kept = []
    for i, c in enumerate(live):
        if any(j != i and cell_subset_syntactic(c, d) and not (cell_subset_syntactic(d, c) and j > i)
               for j, d in enumerate(live)):
            continue
        kept.append(c)
    return tuple(kept)


def _build(space: SpaceSpec, cells: Iterable[Cell], exceptional: Iterable[CnfOrdinal], truth) -> Region:
    cells = _prune(cells, space)
    plus, minus = set(), set()
    for x in exceptional:
        inside = truth(x)
        in_cells = _in_cells(cells, x)
        if inside and not in_cells:
            plus.add(x)
        elif in_cells and not inside:
            minus.add(x)
    return Region(space, cells, frozenset(plus), frozenset(minus))


def _check_space(a: Region, b: Region):
    if a.space != b.space:
        raise SpaceMismatch(f"{a.space} vs {b.space}")


def union(a: Region, b: Region) -> Region:
    _check_space(a, b)
    pts = a.plus | a.minus | b.plus | b.minus
    return _build(a.space, a.cells + b.cells, pts, lambda x: member(x, a) or member(x, b))


def intersect(a: Region, b: Region) -> Region:
    _check_space(a, b)
    cells = [intersect_cells(c, d) for c in a.cells for d in b.cells]
    pts = a.plus | a.minus | b.plus | b.minus
    return _build(a.space, cells, pts, lambda x: member(x, a) and member(x, b))


def complement(a: Region) -> Region:
    acc: list[Cell] = [FULL_CELL]
    for c in a.cells:
        parts = complement_cell(c)
        acc = list(_prune((intersect_cells(x, y) for x in acc for y in parts), a.space))
        if not acc:
            break
    return _build(a.space, acc, a.plus | a.minus, lambda x: not member(x, a))


def difference(a: Region, b: Region) -> Region:
    return intersect(a, complement(b))


def normalized(a: Region) -> Region:
    """Same denotation with empty cells dropped and point corrections made minimal."""
    return _build(a.space, a.cells, a.plus | a.minus, lambda x: member(x, a))


def region_combine(op: str, a: Region, b: Region | None = None) -> Region:
    op = op.lower()
    if op == "complement":
        if b is not None:
            raise RegionError("complement takes one region")
        return complement(a)
    if b is None:
        raise RegionError(f"{op} takes two regions")
    table = {"union": union, "intersect": intersect, "difference": difference}
    if op not in table:
        raise RegionError(f"unknown operation {op!r}")
    return table[op](a, b)


def iter_cell(cell: Cell, space: SpaceSpec, above: Bound = None) -> Iterator[CnfOrdinal]:
    """Members of ``cell`` in increasing order."""
    while True:
        x = cell_min(cell, space, above)
        if x is None:
            return
        yield x
        above = x


def region_min(region: Region, above: Bound = None) -> CnfOrdinal | None:
    """Least member of ``region`` exceeding ``above``."""
    best = None
    for x in region.plus:
        if (above is None or x > above) and (best is None or x < best):
            best = x
    for c in region.cells:
        for x in iter_cell(c, region.space, above):
            if best is not None and x >= best:
                break
            if x not in region.minus:
                best = x
                break
    return best


def is_empty(region: Region) -> bool:
    return region_min(region) is None


def is_subset(a: Region, b: Region) -> bool:
    _check_space(a, b)
    return is_empty(difference(a, b))


def equal(a: Region, b: Region) -> bool:
    return is_subset(a, b) and is_subset(b, a)


def sup_below(region: Region, alpha: OrdLike) -> tuple[CnfOrdinal, bool] | None:
    """sup of ``region`` below ``alpha`` and whether it is attained; None if nothing lies below."""
    alpha = CnfOrdinal.of(alpha)
    if alpha > region.space.theta:
        raise OutOfSpace(f"{alpha} exceeds theta = {region.space.theta}")
    cands: list[tuple[CnfOrdinal, bool]] = [(x, True) for x in region.plus if x < alpha]
    for c in region.cells:
        bound = alpha
        while True:
            res = cell_sup(c, region.space, bound)
            if res is None:
                break
            s, attained = res
            if attained and s in region.minus:
                bound = s
                continue
            cands.append(res)
            break
    if not cands:
        return None
    top = max(s for s, _ in cands)
    return top, any(att for s, att in cands if s == top)


def witness_between(region: Region, lo: Bound, hi: CnfOrdinal) -> CnfOrdinal | None:
    """Least member of ``region`` strictly between ``lo`` and ``hi``."""
    x = region_min(region, lo)
    return x if x is not None and x < hi else None


# ---------------------------------------------------------------------------
# sample points
# ---------------------------------------------------------------------------

def canonical_points(space: SpaceSpec, count: int = 50) -> list[CnfOrdinal]:
    """Deterministic spread of ``count`` points of the space.

    Built from small sums of w-powers whose exponents are themselves small,
    so limits of each rank up to the space's height are represented.
    """
    theta = space.theta
    exps: list[CnfOrdinal] = [ZERO, ONE, CnfOrdinal.of(2), CnfOrdinal.of(3), omega_power(1),
                              add(omega_power(1), 1), omega_power(1, 2), omega_power(2),
                              omega_power(omega_power(1)), omega_power(omega_power(1), 2),
                              omega_power(omega_power(2)), omega_power(omega_power(omega_power(1)))]
    pool = set()
    for e1 in exps:
        for c1 in (1, 2, 3):
            head = omega_power(e1, c1)
            pool.add(head)
            for e2 in exps:
                if e2 < e1:
                    for c2 in (1, 3):
                        mid = add(head, omega_power(e2, c2))
                        pool.add(mid)
                        for e3 in exps:
                            if e3 < e2:
                                pool.add(add(mid, omega_power(e3)))
    for x in list(pool):
        pool.add(successor(x))
    pool.add(ZERO)
    if theta.is_successor:
        pool.add(predecessor(theta))
    pts = sorted(x for x in pool if x < theta)
    if len(pts) <= count:
        return pts
    # always keep the top point; spread the rest evenly
    step = (len(pts) - 1) / (count - 1)
    return sorted({pts[round(i * step)] for i in range(count)})
