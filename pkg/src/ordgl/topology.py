"""Derived sets and topological model checking over (Theta, I_lambda)."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .formulas import And, Bot, Box, Diamond, Formula, Implies, Not, Or, Top, Var
from .ordinals import CnfOrdinal, OrdLike, hyper_log, parse_ordinal, format_ordinal
from .ordinals import NotLimit
from .regions import (Cell, RankConstraint, Region, RegionError, SpaceMismatch, SpaceSpec, complement,
                      intersect, is_empty, level_min, member, normalized, region_min, sup_below, union)


class UnboundVariable(KeyError):
    pass


class WrongLambda(RegionError):
    pass


class InvalidSpec(RegionError):
    pass


class ValuationFormatError(ValueError):
    pass


@dataclass(frozen=True)
class OrdinalValuation:
    space: SpaceSpec
    props: Mapping[int, Region]

    def __post_init__(self):
        for i, r in self.props.items():
            if r.space != self.space:
                raise SpaceMismatch(f"valuation of p{i} lives in a different space")

    def __getitem__(self, i: int) -> Region:
        try:
            return self.props[i]
        except KeyError:
            raise UnboundVariable(f"variable p{i} has no region in the valuation") from None


def derived_set(region: Region) -> Region:
    """Limit points of ``region`` in I_lambda.

    For lambda >= 1 a point theta is a limit point of a cell exactly when
    theta meets the cell's constraints below level lambda and
    ``l^lambda theta`` exceeds the least value the cell's constraints of
    index >= lambda can take. Finite point corrections never matter since
    the topology is T1.
    """
    space = region.space
    lam = space.effective_lambda
    if lam is None:
        return Region.empty(space)
    if lam == 0:
        m = region_min(region)
        return Region.empty(space) if m is None else Region.rank(space, 0, m, None)
    cells = []
    for c in region.cells:
        m = level_min(c, lam)
        if m is None:
            continue
        kept = tuple(k for k in c.constraints if k.xi < lam)
        cells.append(Cell(kept + (RankConstraint(lam, m, None),)))
    return normalized(Region(space, tuple(cells)))


def iterate_derived(region: Region, times: int) -> Region:
    for _ in range(times):
        region = derived_set(region)
    return region


def is_cofinal_in(region: Region, alpha: OrdLike) -> bool:
    alpha = CnfOrdinal.of(alpha)
    if not alpha.is_limit:
        raise NotLimit(f"{alpha} is not a limit ordinal")
    return sup_below(region, alpha) == (alpha, False)


def basic_nbhd(theta: OrdLike, r: Mapping[int, OrdLike], space: SpaceSpec) -> Region:
    """Intersection over xi in dom r of (r(xi), l^xi theta]_xi."""
    theta = CnfOrdinal.of(theta)
    if not space.contains(theta):
        raise InvalidSpec(f"{theta} is outside the space")
    lam = space.effective_lambda
    constraints = []
    for xi, v in sorted(r.items()):
        v = CnfOrdinal.of(v)
        if lam is not None and xi >= lam:
            raise InvalidSpec(f"index {xi} is not below lambda = {lam}")
        top = hyper_log(xi, theta)
        if not v < top:
            raise InvalidSpec(f"r({xi}) = {v} is not below l^{xi}({theta}) = {top}")
        constraints.append(RankConstraint(xi, v, top))
    return Region(space, (Cell(tuple(constraints)),))


def rank_of(theta: OrdLike, space: SpaceSpec) -> CnfOrdinal:
    theta = CnfOrdinal.of(theta)
    if not space.contains(theta):
        raise RegionError(f"{theta} is outside the space")
    return hyper_log(space.lam, theta)


def eval_formula(f: Formula, val: OrdinalValuation) -> Region:
    """The truth set of ``f``; diamonds are derived sets."""
    return _Evaluator(val).run(f)


class _Evaluator:
    def __init__(self, val: OrdinalValuation):
        self.val = val
        self.space = val.space
        self.memo: dict[Formula, Region] = {}

    def run(self, f: Formula) -> Region:
        if f in self.memo:
            return self.memo[f]
        out = self._eval(f)
        self.memo[f] = out
        return out

    def _eval(self, f: Formula) -> Region:
        if isinstance(f, Var):
            return self.val[f.index]
        if isinstance(f, Bot):
            return Region.empty(self.space)
        if isinstance(f, Top):
            return Region.full(self.space)
        if isinstance(f, Not):
            return complement(self.run(f.arg))
        if isinstance(f, And):
            return intersect(self.run(f.left), self.run(f.right))
        if isinstance(f, Or):
            return union(self.run(f.left), self.run(f.right))
        if isinstance(f, Implies):
            return union(complement(self.run(f.left)), self.run(f.right))
        if isinstance(f, Diamond):
            return derived_set(self.run(f.arg))
        if isinstance(f, Box):
            return complement(derived_set(complement(self.run(f.arg))))
        raise TypeError(f"not a formula: {f!r}")


def holds(theta: OrdLike, f: Formula, val: OrdinalValuation) -> bool:
    return member(theta, eval_formula(f, val))


def eval_pointwise_i1(f: Formula, val: OrdinalValuation, theta: OrdLike, *, _regions: _Evaluator | None = None) -> bool:
    """Truth at a point of the interval topology, diamonds decided by cofinality.

    ``<>g`` holds at theta iff theta is a limit and the points below it where
    g holds are cofinal in it. The outermost modalities go through
    ``sup_below`` rather than ``derived_set``, so this checks the latter.
    """
    if val.space.lam != 1:
        raise WrongLambda(f"pointwise evaluation needs lambda = 1, got {val.space.lam}")
    return _pointwise(f, _regions or _Evaluator(val), CnfOrdinal.of(theta))


def pointwise_checker(val: OrdinalValuation):
    """``eval_pointwise_i1`` specialised to one valuation, sharing subformula regions."""
    if val.space.lam != 1:
        raise WrongLambda(f"pointwise evaluation needs lambda = 1, got {val.space.lam}")
    ev = _Evaluator(val)
    return lambda f, theta: _pointwise(f, ev, CnfOrdinal.of(theta))


def _pointwise(f: Formula, ev: _Evaluator, theta: CnfOrdinal) -> bool:
    if isinstance(f, Var):
        return member(theta, ev.val[f.index])
    if isinstance(f, Bot):
        return False
    if isinstance(f, Top):
        return True
    if isinstance(f, Not):
        return not _pointwise(f.arg, ev, theta)
    if isinstance(f, And):
        return _pointwise(f.left, ev, theta) and _pointwise(f.right, ev, theta)
    if isinstance(f, Or):
        return _pointwise(f.left, ev, theta) or _pointwise(f.right, ev, theta)
    if isinstance(f, Implies):
        return (not _pointwise(f.left, ev, theta)) or _pointwise(f.right, ev, theta)
    if isinstance(f, Diamond):
        return theta.is_limit and is_cofinal_in(ev.run(f.arg), theta)
    if isinstance(f, Box):
        return not (theta.is_limit and is_cofinal_in(ev.run(Not(f.arg)), theta))
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

def _bound_to_text(b, sentinel: str) -> str:
    return sentinel if b is None else format_ordinal(b)


def region_to_json(region: Region) -> dict:
    return {
        "cells": [{"constraints": [{"xi": k.xi, "lo": _bound_to_text(k.lo, "-1"), "hi": _bound_to_text(k.hi, "top")}
                                   for k in c.constraints]} for c in region.cells],
        "plus": [format_ordinal(x) for x in sorted(region.plus)],
        "minus": [format_ordinal(x) for x in sorted(region.minus)],
    }


def region_from_json(data: Mapping, space: SpaceSpec) -> Region:
    try:
        cells = []
        for c in data.get("cells", []):
            cons = []
            for k in c.get("constraints", []):
                lo = None if str(k.get("lo", "-1")).strip() == "-1" else parse_ordinal(str(k["lo"]))
                hi = None if str(k.get("hi", "top")).strip() == "top" else parse_ordinal(str(k["hi"]))
                xi = k["xi"]
                if not isinstance(xi, int):
                    raise ValuationFormatError(f"constraint index must be an integer, got {xi!r}")
                cons.append(RankConstraint(xi, lo, hi))
            cells.append(Cell(tuple(cons)))
        plus = frozenset(parse_ordinal(str(x)) for x in data.get("plus", []))
        minus = frozenset(parse_ordinal(str(x)) for x in data.get("minus", []))
        return normalized(Region(space, tuple(cells), plus - minus, minus))
    except (KeyError, TypeError, AttributeError) as exc:
        raise ValuationFormatError(f"malformed region: {exc}") from exc


def valuation_from_json(data: Mapping) -> OrdinalValuation:
    try:
        space = SpaceSpec(parse_ordinal(str(data["theta"])), parse_ordinal(str(data.get("lambda", "1"))),
                          data.get("topology", "icard"))
        props = {}
        for name, spec in data.get("props", {}).items():
            if not (name.startswith("p") and name[1:].isdigit()):
                raise ValuationFormatError(f"bad variable name {name!r}")
            props[int(name[1:])] = region_from_json(spec, space)
    except (KeyError, TypeError, AttributeError) as exc:
        raise ValuationFormatError(f"malformed valuation: {exc}") from exc
    return OrdinalValuation(space, props)


def valuation_to_json(val: OrdinalValuation) -> dict:
    return {
        "theta": format_ordinal(val.space.theta),
        "lambda": format_ordinal(val.space.lam),
        "props": {f"p{i}": region_to_json(r) for i, r in sorted(val.props.items())},
    }


__all__ = ["OrdinalValuation", "derived_set", "iterate_derived", "is_cofinal_in", "basic_nbhd", "rank_of",
           "eval_formula", "holds", "eval_pointwise_i1", "pointwise_checker", "region_to_json", "region_from_json",
           "valuation_from_json", "valuation_to_json", "is_empty", "UnboundVariable", "WrongLambda",
           "InvalidSpec"]
