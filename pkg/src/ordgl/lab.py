"""Finite-scale laboratory for the Erdos-Rado incompleteness argument.

Pair colorings on {0..n-1}, brute-force homogeneous sets, the Gamma
fragments with an explicit rank-layer model on (w^(N+1) + 1, I_1), the
coloring read off a fundamental sequence, and greedy descent extraction.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .formulas import Box, Diamond, Formula, Implies, Var, canonical
from .ordinals import CnfOrdinal, OrdLike, fundamental_seq, hyper_log, omega_power, successor
from .regions import Region, SpaceSpec, is_subset, member, witness_between
from .topology import OrdinalValuation, eval_formula

DEFAULT_ARROW_BUDGET = 1 << 22


class BudgetExceeded(RuntimeError):
    pass


class NoWitness(LookupError):
    pass


class ColoringFormatError(ValueError):
    pass


@dataclass(frozen=True)
class PairColoring:
    """A coloring of the unordered pairs of {0..n-1}; keys are (i, j) with i < j."""

    n: int
    colors: Mapping[tuple[int, int], int]
    palette: int | None = None

    def __post_init__(self):
        colors = {}
        for (i, j), c in self.colors.items():
            if i == j:
                raise ColoringFormatError(f"pair ({i}, {j}) is not a pair")
            colors[(min(i, j), max(i, j))] = c
        missing = [pr for pr in itertools.combinations(range(self.n), 2) if pr not in colors]
        if missing:
            raise ColoringFormatError(f"coloring is not total, missing {missing[0]}")
        if len(colors) != self.n * (self.n - 1) // 2:
            raise ColoringFormatError("coloring mentions points outside the ground set")
        palette = self.palette if self.palette is not None else (max(colors.values(), default=-1) + 1)
        if any(not 0 <= c < max(palette, 1) for c in colors.values()):
            raise ColoringFormatError(f"colors must lie in 0..{palette - 1}")
        object.__setattr__(self, "colors", colors)
        object.__setattr__(self, "palette", palette)

    def __call__(self, i: int, j: int) -> int:
        return self.colors[(min(i, j), max(i, j))]

    @classmethod
    def constant(cls, n: int, color: int = 0) -> "PairColoring":
        return cls(n, {pr: color for pr in itertools.combinations(range(n), 2)}, color + 1)

    def to_json(self) -> dict:
        return {"n": self.n, "palette": self.palette,
                "colors": {f"{i},{j}": c for (i, j), c in sorted(self.colors.items())}}

    @classmethod
    def from_json(cls, data: Mapping) -> "PairColoring":
        try:
            colors = {}
            for key, c in data["colors"].items():
                i, j = (int(s) for s in key.split(","))
                if not isinstance(c, int):
                    raise ColoringFormatError(f"color of {key} must be an integer")
                colors[(i, j)] = c
            return cls(int(data["n"]), colors, data.get("palette"))
        except (KeyError, ValueError, AttributeError, TypeError) as exc:
            if isinstance(exc, ColoringFormatError):
                raise
            raise ColoringFormatError(f"malformed coloring: {exc}") from exc


@dataclass(frozen=True)
class HomogeneousWitness:
    subset: tuple[int, ...]
    color: int

    def verify(self, coloring: PairColoring) -> bool:
        return all(coloring(i, j) == self.color for i, j in itertools.combinations(self.subset, 2))


def find_homogeneous(coloring: PairColoring, k: int) -> HomogeneousWitness | None:
    """Lexicographically least size-k monochromatic subset, by exhaustion."""
    if k > coloring.n:
        raise ValueError(f"k = {k} exceeds the ground set size {coloring.n}")
    for subset in itertools.combinations(range(coloring.n), k):
        if k < 2:
            return HomogeneousWitness(subset, 0)
        c = coloring(subset[0], subset[1])
        if all(coloring(i, j) == c for i, j in itertools.combinations(subset, 2)):
            return HomogeneousWitness(subset, c)
    return None


def all_colorings(n: int, c: int) -> Iterator[PairColoring]:
    pairs = list(itertools.combinations(range(n), 2))
    for assignment in itertools.product(range(c), repeat=len(pairs)):
        yield PairColoring(n, dict(zip(pairs, assignment)), c)


def arrow_counterexample(n: int, k: int, c: int, budget: int = DEFAULT_ARROW_BUDGET) -> PairColoring | None:
    """First c-coloring of pairs of {0..n-1} without a size-k homogeneous set."""
    if c < 1:
        raise ValueError("need at least one color")
    total = c ** (n * (n - 1) // 2)
    if total > budget:
        raise BudgetExceeded(f"{total} colorings exceed the budget of {budget}")
    if k > n:
        # nothing of size k exists at all
        return next(all_colorings(n, c))
    # fast path over raw tuples; a coloring is built only for the answer
    pairs = list(itertools.combinations(range(n), 2))
    index = {pr: t for t, pr in enumerate(pairs)}
    groups = [[index[pr] for pr in itertools.combinations(s, 2)] for s in itertools.combinations(range(n), k)]
    for assignment in itertools.product(range(c), repeat=len(pairs)):
        if not any(len({assignment[t] for t in g}) <= 1 for g in groups):
            return PairColoring(n, dict(zip(pairs, assignment)), c)
    return None


def arrow_check(n: int, k: int, c: int, budget: int = DEFAULT_ARROW_BUDGET) -> bool:
    """n -> (k)^2_c, decided by exhaustion."""
    return arrow_counterexample(n, k, c, budget) is None


# ---------------------------------------------------------------------------
# Gamma fragments and their ordinal models
# ---------------------------------------------------------------------------

def gamma_fragment(n: int) -> tuple[Formula, ...]:
    """{<>p_i : i < n} together with {[](p_i -> <>p_j) : i < j < n}."""
    if n < 1:
        raise ValueError("N must be at least 1")
    out: list[Formula] = [Diamond(Var(i)) for i in range(n)]
    out += [Box(Implies(Var(i), Diamond(Var(j)))) for i in range(n) for j in range(i + 1, n)]
    return canonical(out)


def gamma_star(n: int) -> tuple[Formula, ...]:
    """Prefix {<>p0} U {[](p_i -> <>p_(i+1)) : i < n}."""
    return canonical([Diamond(Var(0))] + [Box(Implies(Var(i), Diamond(Var(i + 1)))) for i in range(n)])


@dataclass(frozen=True)
class GammaModel:
    space: SpaceSpec
    valuation: OrdinalValuation
    alpha: CnfOrdinal


class ModelCheckFailed(AssertionError):
    pass


def gamma_ordinal_model(n: int, verify: bool = True) -> GammaModel:
    """Theta = w^(N+1) + 1 with p_i true exactly on the points of end log N - i.

    The point alpha = w^(N+1) has, for every i, points of each rank below
    N + 1 cofinally below it, and any point of rank N - i sees points of
    every smaller rank cofinally below it, which is what every member of
    the fragment asks for.
    """
    if n < 1:
        raise ValueError("N must be at least 1")
    alpha = omega_power(n + 1)
    space = SpaceSpec(successor(alpha), 1)
    props = {i: Region.rank(space, 1, n - i - 1, n - i) for i in range(n)}
    model = GammaModel(space, OrdinalValuation(space, props), alpha)
    if verify:
        for f in gamma_fragment(n):
            if not member(alpha, eval_formula(f, model.valuation)):
                raise ModelCheckFailed(f"{f} fails at {alpha}")
    return model


# ---------------------------------------------------------------------------
# the coloring along a fundamental sequence
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NoBound:
    i: int
    j: int


def open_interval(space: SpaceSpec, lo: CnfOrdinal, hi: CnfOrdinal) -> Region:
    """(lo, hi) as a region; hi must lie in the space."""
    return Region(space, (Region.interval(space, lo, hi).cells[0],), frozenset(), frozenset({hi}))


def proof_coloring(space: SpaceSpec, val: OrdinalValuation, alpha: OrdLike, n: int,
                   limit: int) -> PairColoring | NoBound:
    """c(i, j) = least m < limit with (alpha_m, alpha) inside [[p_i -> <>p_j]]."""
    alpha = CnfOrdinal.of(alpha)
    seq = [fundamental_seq(alpha, m) for m in range(limit)]
    colors = {}
    for i, j in itertools.combinations(range(n), 2):
        target = eval_formula(Implies(Var(i), Diamond(Var(j))), val)
        for m, a_m in enumerate(seq):
            if is_subset(open_interval(space, a_m, alpha), target):
                colors[(i, j)] = m
                break
        else:
            return NoBound(i, j)
    return PairColoring(n, colors, max(colors.values(), default=0) + 1)


@dataclass(frozen=True)
class DescentStep:
    beta: CnfOrdinal
    index: int


def descending_extraction(space: SpaceSpec, val: OrdinalValuation, alpha: OrdLike,
                          indices: Sequence[int], n_star: int, max_steps: int = 64) -> list[DescentStep]:
    """Greedy chain beta_0 > beta_1 > ... above alpha_(n*) with p_(i_m) at beta_m.

    Each beta is the least witness in its interval. The chain stops when
    the indices run out, ``max_steps`` is reached, or no witness exists.
    """
    alpha = CnfOrdinal.of(alpha)
    floor = fundamental_seq(alpha, n_star)
    chain: list[DescentStep] = []
    top = alpha
    for m, i in enumerate(indices[:max_steps]):
        beta = witness_between(val[i], floor, top)
        if beta is None:
            if m == 0:
                raise NoWitness(f"no point of p{i} in ({floor}, {alpha})")
            break
        if not beta < top:
            raise AssertionError("extraction is not strictly decreasing")
        chain.append(DescentStep(beta, i))
        top = beta
    return chain


def chain_ranks(chain: Sequence[DescentStep]) -> list[CnfOrdinal]:
    return [hyper_log(1, s.beta) for s in chain]


__all__ = ["PairColoring", "HomogeneousWitness", "find_homogeneous", "arrow_check", "arrow_counterexample",
           "gamma_fragment", "gamma_star", "gamma_ordinal_model", "GammaModel", "proof_coloring", "NoBound",
           "descending_extraction", "DescentStep", "chain_ranks", "open_interval", "BudgetExceeded",
           "NoWitness", "ColoringFormatError", "ModelCheckFailed"]
