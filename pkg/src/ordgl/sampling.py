"""Seeded generators for ordinals, formulas and interval valuations."""
from __future__ import annotations

import random

from .formulas import BOT, TOP, And, Box, Diamond, Formula, Implies, Not, Or, Var
from .ordinals import CnfOrdinal, add, omega_power
from .regions import Cell, Region, SpaceSpec, canonical_points, normalized
from .topology import OrdinalValuation


def random_ordinal(rng: random.Random, nesting: int = 3, max_terms: int = 3, max_coeff: int = 4) -> CnfOrdinal:
    """A random ordinal whose exponents nest at most ``nesting`` deep."""
    if nesting <= 0:
        return CnfOrdinal.of(rng.randint(0, max_coeff))
    exps = {random_ordinal(rng, nesting - 1, max_terms, max_coeff) for _ in range(rng.randint(0, max_terms))}
    out = CnfOrdinal.of(0)
    for e in sorted(exps, reverse=True):
        out = add(out, omega_power(e, rng.randint(1, max_coeff)))
    return out


def random_formula(rng: random.Random, depth: int = 3, nvars: int = 2) -> Formula:
    """A random formula of modal and connective depth at most ``depth``."""
    if depth == 0 or rng.random() < 0.2:
        return rng.choice([Var(i) for i in range(nvars)] + [TOP, BOT])
    kind = rng.choice(["not", "and", "or", "imp", "box", "dia", "dia"])
    if kind == "not":
        return Not(random_formula(rng, depth - 1, nvars))
    if kind == "box":
        return Box(random_formula(rng, depth - 1, nvars))
    if kind == "dia":
        return Diamond(random_formula(rng, depth - 1, nvars))
    op = {"and": And, "or": Or, "imp": Implies}[kind]
    return op(random_formula(rng, depth - 1, nvars), random_formula(rng, depth - 1, nvars))


def random_region(rng: random.Random, space: SpaceSpec, max_cells: int = 2) -> Region:
    """Union of a few plain intervals and rank bands, plus a few isolated points."""
    pts = canonical_points(space)
    lam = space.effective_lambda or 0
    cells = []
    for _ in range(rng.randint(0, max_cells)):
        if lam == 0 or rng.random() < 0.5:
            lo, hi = sorted(rng.sample(pts, 2))
            cells.append(Cell.rank(0, None if rng.random() < 0.2 else lo, hi))
        else:
            xi = rng.randint(1, lam)
            lo = rng.choice([None, 0, 1, 2])
            hi = rng.choice([None, 1, 2, 3])
            if lo is not None and hi is not None and lo >= hi:
                hi = None
            cells.append(Cell.rank(xi, lo, hi))
    plus = frozenset(rng.sample(pts, rng.randint(0, 2)))
    return normalized(Region(space, tuple(cells), plus))


def random_valuation(rng: random.Random, space: SpaceSpec, nvars: int = 2) -> OrdinalValuation:
    return OrdinalValuation(space, {i: random_region(rng, space) for i in range(nvars)})
