"""Bouquet models: a root over countably many finite trees, built lazily.

The root's neighbourhoods are the tails ``{root} U T_j U T_(j+1) U ...``;
every other point lives in a finite child tree with the upset topology.
So at the root ``<>psi`` means psi holds somewhere in cofinally many
children and ``[]phi`` means phi holds everywhere in some tail.

``build_model`` follows the usual completeness argument at countable
scale. The root is a saturated tableau label S. The diamonds of S are
scheduled round-robin together with the family ``<>^k True``, and child
xi is a tableau model of

    Delta_xi = {psi_xi} U {phi_z & []phi_z : z < xi}

where phi_0, phi_1, ... lists the boxes of S. A box of S with index z
therefore holds throughout every child from z + 1 on.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

from .formulas import (TOP, And, Bot, Box, Diamond, Formula, Implies, Not, Or, Var, canonical, core,
                       diamonds, format_formula, neg, sort_key)
from .kripke import KripkeTree, _dot_body, kripke_eval, tree_to_json
from .ordinals import OMEGA, CnfOrdinal
from .tableau import (DEFAULT_BUDGET, Finite, Inconsistent, Sat, Tableau, Unsat, char_bound, gl_prove,
                      gl_sat)


class BouquetError(RuntimeError):
    pass


class FiniteRank(ValueError):
    pass


@dataclass(frozen=True)
class Progression:
    """The indices offset, offset + period, offset + 2 period, ..."""

    offset: int
    period: int

    def __post_init__(self):
        if self.period < 1 or self.offset < 0:
            raise ValueError("a progression needs offset >= 0 and period >= 1")

    def __contains__(self, xi: int) -> bool:
        return xi >= self.offset and (xi - self.offset) % self.period == 0

    def first_at_least(self, j: int) -> int:
        if j <= self.offset:
            return self.offset
        return self.offset + -(-(j - self.offset) // self.period) * self.period

    def __str__(self):
        return f"{self.offset} + {self.period}k"


@dataclass
class BouquetTree:
    """A root with children ``xi -> (delta, tree)`` materialised on demand.

    ``schedule`` maps a diamond body to the progression of children built
    to contain it; ``tails`` maps a box body to the index from which every
    child satisfies it throughout.
    """

    root_label: tuple[Formula, ...]
    make_child: Callable[[int], tuple[tuple[Formula, ...], KripkeTree]]
    rank: CnfOrdinal
    schedule: dict[Formula, Progression] = field(default_factory=dict)
    tails: dict[Formula, int] = field(default_factory=dict)
    depth_slots: Progression | None = None
    entails: Callable[[Sequence[Formula], Formula], bool] | None = None
    _cache: dict[int, tuple[tuple[Formula, ...], KripkeTree]] = field(default_factory=dict, repr=False)

    def child(self, xi: int) -> tuple[tuple[Formula, ...], KripkeTree]:
        if xi < 0:
            raise IndexError(xi)
        if xi not in self._cache:
            delta, tree = self.make_child(xi)
            for d in delta:
                if not kripke_eval(tree, tree.root, d):
                    raise BouquetError(f"child {xi} does not satisfy {d} at its root")
            self._cache[xi] = (canonical(delta), tree)
        return self._cache[xi]

    def tree(self, xi: int) -> KripkeTree:
        return self.child(xi)[1]

    def children(self, count: int) -> Iterator[tuple[int, tuple[Formula, ...], KripkeTree]]:
        for xi in range(count):
            delta, tree = self.child(xi)
            yield xi, delta, tree

    @property
    def true_vars(self) -> frozenset[int]:
        return frozenset(f.index for f in self.root_label if isinstance(f, Var))


def lottery_sum(children, *, unbounded: bool = False, rank: CnfOrdinal | None = None,
                label: Iterable[Formula] = ()) -> BouquetTree:
    """A fresh root whose xi-th child is the xi-th entry of ``children``.

    A finite non-empty list is cycled and the root rank is one more than
    the largest child height. A callable ``xi -> (delta, tree)`` is used
    as is; its rank must be declared, either ``unbounded`` (rank w) or an
    explicit ``rank``.
    """
    if callable(children):
        if unbounded:
            r = OMEGA
        elif rank is not None:
            r = CnfOrdinal.of(rank)
        else:
            raise ValueError("a lazy child sequence needs unbounded=True or an explicit rank")
        make = children
    else:
        items = [(canonical(d), t) for d, t in children]
        if not items:
            raise ValueError("a bouquet root needs infinitely many children; got an empty sequence")
        r = CnfOrdinal.of(max(t.height() for _, t in items) + 1)
        make = lambda xi: items[xi % len(items)]  # noqa: E731
    return BouquetTree(canonical(label), make, r)


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def _conj(fs: Sequence[Formula]) -> Formula:
    out: Formula = TOP
    for f in fs:
        out = f if out is TOP else And(out, f)
    return out


def _box_bodies(label: Iterable[Formula]) -> list[Formula]:
    return sorted({f.arg for f in label if isinstance(f, Box)}, key=sort_key)


def _diamond_bodies(label: Iterable[Formula]) -> list[Formula]:
    return sorted({neg(f.arg.arg) for f in label if isinstance(f, Not) and isinstance(f.arg, Box)}, key=sort_key)


def build_model(gamma: Iterable[Formula], max_n: int = 8, budget: int = DEFAULT_BUDGET) -> KripkeTree | BouquetTree:
    """A model of ``gamma``: a finite tree if its characteristic is finite, else a bouquet."""
    gamma = canonical(gamma)
    session = Tableau(budget)
    ch = char_bound(gamma, max_n, budget)
    if isinstance(ch, Finite):
        res = gl_sat(gamma, session=session)
        assert isinstance(res, Sat)
        return res.model
    root = session.solve(frozenset(core(g) for g in gamma) | {core(diamonds(max_n))})
    if root is None:
        raise Inconsistent("premises together with <>^maxN True are unsatisfiable")
    label = root.label
    dia = _diamond_bodies(label)
    boxes = _box_bodies(label)
    period = len(dia) + 1
    carried = [And(b, Box(b)) for b in boxes]

    def psi(xi: int) -> Formula:
        r = xi % period
        return dia[r] if r < len(dia) else core(diamonds(xi // period))

    def make_child(xi: int):
        delta = (psi(xi),) + tuple(carried[:xi])
        res = gl_sat(delta, session=session)
        if isinstance(res, Unsat):
            raise BouquetError(f"Delta_{xi} is unsatisfiable; raise maxN above {max_n}")
        return delta, res.model

    def entails(premises: Sequence[Formula], goal: Formula) -> bool:
        return isinstance(gl_sat(list(premises) + [neg(core(goal))], session=session), Unsat)

    return BouquetTree(
        root_label=canonical(label),
        make_child=make_child,
        rank=OMEGA,
        schedule={d: Progression(r, period) for r, d in enumerate(dia)},
        tails={b: z + 1 for z, b in enumerate(boxes)},
        depth_slots=Progression(len(dia), period),
        entails=entails,
    )


# ---------------------------------------------------------------------------
# checking at the root
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Holds:
    certificate: str


@dataclass(frozen=True)
class Fails:
    witness: str


@dataclass(frozen=True)
class Unverified:
    reason: str


Verdict = Holds | Fails | Unverified


def _flip(v: Verdict) -> Verdict:
    if isinstance(v, Holds):
        return Fails(v.certificate)
    if isinstance(v, Fails):
        return Holds(v.witness)
    return v


def check_root(model: KripkeTree | BouquetTree, f: Formula, k: int = 8) -> Verdict:
    """Decide ``f`` at the root, with a certificate.

    A finite tree is checked directly. For a bouquet a box is certified by
    a tail index and a diamond by a schedule progression; both claims are
    then tested on concrete children, ``k`` of them per claim.
    """
    if k < 1:
        raise ValueError("the sampling width k must be at least 1")
    if isinstance(model, KripkeTree):
        ok = kripke_eval(model, model.root, f)
        return Holds("finite tree, checked directly") if ok else Fails("finite tree, checked directly")
    return _RootChecker(model, k).check(core(f))


class _RootChecker:
    def __init__(self, model: BouquetTree, k: int):
        self.m = model
        self.k = k
        self.boxes = sorted(model.tails, key=sort_key)
        self.premises = [And(b, Box(b)) for b in self.boxes]
        self.full_tail = len(self.boxes)

    def check(self, f: Formula) -> Verdict:
        if isinstance(f, Bot):
            return Fails("False")
        if isinstance(f, Var):
            if f.index in self.m.true_vars:
                return Holds(f"p{f.index} in the root label")
            return Fails(f"p{f.index} not in the root label")
        if isinstance(f, Not):
            return _flip(self.check(f.arg))
        if isinstance(f, And):
            a = self.check(f.left)
            if isinstance(a, Fails):
                return a
            b = self.check(f.right)
            if isinstance(b, Fails) or isinstance(a, Unverified):
                return b if isinstance(b, Fails) else a
            if isinstance(b, Unverified):
                return b
            return Holds(f"{a.certificate}; {b.certificate}")
        if isinstance(f, Box):
            cert = self._box(f.arg)
            if cert is not None:
                return Holds(cert)
            cert = self._diamond(neg(f.arg))
            if cert is not None:
                return Fails(cert)
            return Unverified(f"no tail or schedule covers {format_formula(f)}")
        raise TypeError(f"not a core formula: {f!r}")

    def _entails(self, premises, goal) -> bool:
        return self.m.entails is not None and self.m.entails(premises, goal)

    def _box(self, body: Formula) -> str | None:
        if body in self.m.tails:
            t = self.m.tails[body]
            how = f"tail index {t} for [] {format_formula(body)}"
        elif self._entails(self.premises, And(body, Box(body))):
            t = self.full_tail
            how = f"tail index {t}, entailed by all boxes"
        else:
            return None
        for xi in range(t, t + self.k):
            tree = self.m.tree(xi)
            for node in range(tree.size):
                if not kripke_eval(tree, node, body):
                    raise BouquetError(f"tail claim for {body} broken at child {xi}, node {node}")
        return f"{how}; children {t}..{t + self.k - 1} checked"

    def _diamond(self, body: Formula) -> str | None:
        goal = Or(body, Diamond(body))
        prog = None
        for d, pr in sorted(self.m.schedule.items(), key=lambda kv: kv[1].offset):
            if d == body or self._entails(self.premises + [d], goal):
                prog = Progression(pr.first_at_least(self.full_tail) if d != body else pr.offset, pr.period)
                break
        if prog is None and self.m.depth_slots is not None:
            ds = self.m.depth_slots
            for depth in range(self.k + 2):
                if self._entails(self.premises + [core(diamonds(depth))], goal):
                    start = max(ds.offset + depth * ds.period, self.full_tail)
                    prog = Progression(ds.first_at_least(start), ds.period)
                    break
        if prog is None:
            return None
        seen = []
        for j in range(self.k):
            xi = prog.first_at_least(j)
            tree = self.m.tree(xi)
            hit = next((n for n in range(tree.size) if kripke_eval(tree, n, body)), None)
            if hit is None:
                raise BouquetError(f"schedule claim for <>{body} broken at child {xi}")
            seen.append(f"{xi}:{hit}")
        return f"progression {prog} for <> {format_formula(body)}; witnesses " + ", ".join(seen)


# ---------------------------------------------------------------------------
# rank and neighbourhoods
# ---------------------------------------------------------------------------

def tree_rank(model: KripkeTree | BouquetTree, k: int = 8) -> CnfOrdinal:
    """Root rank: the height of a finite tree, or the declared rank of a bouquet.

    For a bouquet with depth slots the first ``k`` such children are
    spot-checked to have height at least their depth index.
    """
    if isinstance(model, KripkeTree):
        return CnfOrdinal.of(model.height())
    if model.depth_slots is not None:
        for depth in range(k):
            xi = model.depth_slots.offset + depth * model.depth_slots.period
            if model.tree(xi).height() < depth:
                raise BouquetError(f"child {xi} has height below {depth}")
    return model.rank


Node = tuple  # ("root",) or (xi, node)
ROOT: Node = ("root",)


@dataclass(frozen=True)
class SigmaNbhd:
    """``{root} U T_j U T_(j+1) U ...`` with per-child parts (None = whole child)."""

    model: BouquetTree
    j: int
    stage: int = 1

    def __contains__(self, node: Node) -> bool:
        if node == ROOT:
            return True
        xi, n = node
        if not 0 <= n < self.model.tree(xi).size:
            raise IndexError(f"child {xi} has no node {n}")
        return xi >= self.j

    def describe(self) -> str:
        return f"{{root}} U T_xi for xi >= {self.j}"


def _least_upset(tree: KripkeTree, node: int) -> frozenset[int]:
    return frozenset({node}) | tree.descendants[node]


def sigma_nbhd(model: KripkeTree | BouquetTree, j: int, stage: int = 1) -> SigmaNbhd:
    """Least stage-``stage`` neighbourhood of the root determined by the tail index j.

    At stage 2 each child contributes the least open set of its own
    topology containing its root; in a finite child with the upset
    topology that is the whole child, so stage 2 agrees with stage 1.
    """
    if isinstance(model, KripkeTree) or model.rank.is_finite:
        raise FiniteRank("the root has finite rank; its neighbourhoods are upsets")
    if j < 0:
        raise ValueError("j must be a natural number")
    if stage not in (1, 2):
        raise ValueError("only stages 1 and 2 are supported")
    return SigmaNbhd(model, j, stage)


def stage_parts(nbhd: SigmaNbhd, count: int) -> dict[int, frozenset[int]]:
    """Materialised node sets of the first ``count`` children inside ``nbhd``."""
    out = {}
    for xi in range(count):
        tree = nbhd.model.tree(xi)
        if xi < nbhd.j:
            out[xi] = frozenset()
        elif nbhd.stage == 1:
            out[xi] = frozenset(range(tree.size))
        else:
            out[xi] = _least_upset(tree, tree.root)
    return out


# ---------------------------------------------------------------------------
# export
# ---------------------------------------------------------------------------

def bouquet_to_json(model: BouquetTree, k: int = 8) -> dict:
    return {
        "root_label": [format_formula(f) for f in model.root_label],
        "rank": str(model.rank),
        "schedule": {
            "diamonds": [{"formula": format_formula(d), "offset": p.offset, "period": p.period}
                         for d, p in sorted(model.schedule.items(), key=lambda kv: kv[1].offset)],
            "depth_slots": None if model.depth_slots is None else
            {"offset": model.depth_slots.offset, "period": model.depth_slots.period},
            "boxes": [{"formula": format_formula(b), "tail": t}
                      for b, t in sorted(model.tails.items(), key=lambda kv: kv[1])],
        },
        "children": [{"index": xi, "delta": [format_formula(d) for d in delta], "tree": tree_to_json(tree)}
                     for xi, delta, tree in model.children(k)],
    }


def bouquet_to_dot(model: BouquetTree, k: int = 8, name: str = "bouquet") -> str:
    props = ",".join(f"p{v}" for v in sorted(model.true_vars))
    lines = [f"digraph {name} {{", "  rankdir=BT;", f'  root [label="root: {props}", shape=box];']
    for xi, _, tree in model.children(k):
        prefix = f"c{xi}_"
        lines += _dot_body(tree, prefix)
        lines.append(f"  root -> {prefix}{tree.root};")
    lines.append("}")
    return "\n".join(lines) + "\n"


__all__ = ["BouquetTree", "Progression", "lottery_sum", "build_model", "check_root", "tree_rank",
           "sigma_nbhd", "SigmaNbhd", "stage_parts", "Holds", "Fails", "Unverified", "ROOT",
           "bouquet_to_json", "bouquet_to_dot", "BouquetError", "FiniteRank"]
