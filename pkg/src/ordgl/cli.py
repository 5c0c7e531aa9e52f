"""Command-line front end.

Exit codes: 0 success (sat, valid, holds, true), 1 a negative answer
(unsat, not valid, fails, false), 2 a usage or data error.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field
from typing import Any, Sequence

from . import bouquet as bq
from . import lab
from .formulas import FormulaSyntaxError, Not, canonical, format_formula, parse_formula
from .kripke import TreeFormatError, tree_to_dot, tree_to_json
from .ordinals import (OrdinalError, add, classify, compare, end_log, format_ordinal, fundamental_seq,
                       hyper_exp, hyper_log, left_sub, parse_ordinal, successor)
from .regions import RegionError, SpaceSpec, member
from .sampling import random_formula, random_ordinal
from .tableau import DEFAULT_BUDGET, Finite, Inconsistent, ResourceLimitExceeded, Sat, char_bound, gl_sat
from .topology import (UnboundVariable, ValuationFormatError, eval_formula, iterate_derived, pointwise_checker,
                       rank_of, region_to_json, valuation_from_json, valuation_to_json)


class UsageError(Exception):
    pass


@dataclass
class Outcome:
    code: int
    text: str
    data: Any = None
    extra: list[str] = field(default_factory=list)


def _ord(text: str):
    return parse_ordinal(text)


def _nat(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise UsageError(f"expected a natural number, got {text!r}") from None
    if v < 0:
        raise UsageError(f"expected a natural number, got {text!r}")
    return v


def _load_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None


# ---------------------------------------------------------------------------
# handlers
# ---------------------------------------------------------------------------

def cmd_ord(args) -> Outcome:
    op, xs = args.op, args.args
    arity = {"add": 2, "sub": 2, "cmp": 2, "log": 1, "hlog": 2, "hexp": 2, "cf": 1, "fund": 2}[op]
    if len(xs) != arity:
        raise UsageError(f"ord {op} takes {arity} argument(s)")
    if op == "add":
        r = format_ordinal(add(_ord(xs[0]), _ord(xs[1])))
    elif op == "sub":
        r = format_ordinal(left_sub(_ord(xs[0]), _ord(xs[1])))
    elif op == "cmp":
        r = {-1: "less", 0: "equal", 1: "greater"}[compare(_ord(xs[0]), _ord(xs[1]))]
    elif op == "log":
        r = format_ordinal(end_log(_ord(xs[0])))
    elif op == "hlog":
        r = format_ordinal(hyper_log(_ord(xs[0]), _ord(xs[1])))
    elif op == "hexp":
        r = format_ordinal(hyper_exp(_ord(xs[0]), _ord(xs[1])))
    elif op == "cf":
        r = classify(_ord(xs[0])).name.lower()
    else:
        r = format_ordinal(fundamental_seq(_ord(xs[0]), _nat(xs[1])))
    return Outcome(0, r, {"op": op, "result": r})


def cmd_prove(args) -> Outcome:
    f = parse_formula(args.formula)
    res = gl_sat([Not(f)], args.budget)
    if isinstance(res, Sat):
        out = Outcome(1, "not valid", {"formula": format_formula(f), "valid": False,
                                        "countermodel": tree_to_json(res.model)})
        if args.model:
            out.extra.append(_render_model(res.model, args.model))
        return out
    return Outcome(0, "valid", {"formula": format_formula(f), "valid": True})


def _render_model(model, kind: str) -> str:
    if kind == "dot":
        return tree_to_dot(model).rstrip("\n")
    return json.dumps(tree_to_json(model), indent=2)


def cmd_sat(args) -> Outcome:
    gamma = canonical(parse_formula(t) for t in args.formulas)
    res = gl_sat(gamma, args.budget)
    if isinstance(res, Sat):
        out = Outcome(0, "sat", {"sat": True, "model": tree_to_json(res.model), "witness": res.witness})
        if args.model:
            out.extra.append(_render_model(res.model, args.model))
        return out
    return Outcome(1, "unsat", {"sat": False})


def cmd_char(args) -> Outcome:
    gamma = canonical(parse_formula(t) for t in args.formulas)
    r = char_bound(gamma, args.max_n, args.budget)
    text = f"finite {r.n}" if isinstance(r, Finite) else f"at least {r.n}"
    return Outcome(0, text, {"kind": type(r).__name__, "n": r.n})


class OracleMismatch(RuntimeError):
    pass


def cmd_mc(args) -> Outcome:
    f = parse_formula(args.formula)
    val = valuation_from_json(_load_json(args.file))
    theta = _ord(args.point)
    symbolic = member(theta, eval_formula(f, val))
    data = {"formula": format_formula(f), "point": format_ordinal(theta), "holds": symbolic}
    if args.pointwise:
        data["pointwise"] = pointwise_checker(val)(f, theta)
        if data["pointwise"] != symbolic:
            raise OracleMismatch(f"symbolic and pointwise evaluation disagree on {format_formula(f)} at {format_ordinal(theta)}")
    return Outcome(0 if symbolic else 1, "holds" if symbolic else "fails", data)


def cmd_derive(args) -> Outcome:
    val = valuation_from_json(_load_json(args.file))
    region = iterate_derived(eval_formula(parse_formula(args.formula), val), args.n)
    return Outcome(0, str(region), region_to_json(region))


def cmd_rank(args) -> Outcome:
    theta = _ord(args.point)
    space = SpaceSpec(_ord(args.theta) if args.theta else successor(theta), _ord(args.lam))
    r = format_ordinal(rank_of(theta, space))
    return Outcome(0, r, {"point": format_ordinal(theta), "lambda": format_ordinal(space.lam), "rank": r})


def cmd_gamma(args) -> Outcome:
    n = args.n
    if n < 1:
        raise UsageError("N must be at least 1")
    if args.coloring is not None:
        m = lab.gamma_ordinal_model(n)
        c = lab.proof_coloring(m.space, m.valuation, m.alpha, n, args.coloring)
        if isinstance(c, lab.NoBound):
            return Outcome(1, f"no bound below {args.coloring} for pair ({c.i}, {c.j})",
                           {"no_bound": [c.i, c.j]})
        lines = [f"c({i},{j}) = {v}" for (i, j), v in sorted(c.colors.items())]
        return Outcome(0, "\n".join(lines) or "no pairs", c.to_json())
    if args.extract:
        m = lab.gamma_ordinal_model(n)
        chain = lab.descending_extraction(m.space, m.valuation, m.alpha, list(range(n)), args.n_star)
        lines = [f"beta_{k} = {format_ordinal(s.beta)}  (p{s.index})" for k, s in enumerate(chain)]
        return Outcome(0, "\n".join(lines), {"chain": [{"beta": format_ordinal(s.beta), "index": s.index}
                                                       for s in chain]})
    if args.model:
        m = lab.gamma_ordinal_model(n, verify=False)
        lines = [f"Theta = {format_ordinal(m.space.theta)}", f"alpha = {format_ordinal(m.alpha)}"]
        lines += [f"p{i}: {r}" for i, r in sorted(m.valuation.props.items())]
        data = valuation_to_json(m.valuation)
        data["alpha"] = format_ordinal(m.alpha)
        code = 0
        if args.verify:
            frag = lab.gamma_fragment(n)
            point = pointwise_checker(m.valuation)
            bad = [f for f in frag if not (member(m.alpha, eval_formula(f, m.valuation)) and point(f, m.alpha))]
            if bad:
                code = 1
                lines += [f"fails: {format_formula(f)}" for f in bad]
            else:
                lines.append(f"all {len(frag)} formulas hold")
            data["verified"] = not bad
        return Outcome(code, "\n".join(lines), data)
    frag = lab.gamma_fragment(n)
    return Outcome(0, "\n".join(map(format_formula, frag)), {"gamma": [format_formula(f) for f in frag]})


def cmd_ramsey(args) -> Outcome:
    if args.action == "arrow":
        ce = lab.arrow_counterexample(args.N, args.k, args.c, budget=args.budget)
        if ce is None:
            return Outcome(0, "true", {"arrow": True})
        return Outcome(1, "false", {"arrow": False, "counterexample": ce.to_json()})
    c = lab.PairColoring.from_json(_load_json(args.file))
    w = lab.find_homogeneous(c, args.k)
    if w is None:
        return Outcome(1, "none", {"witness": None})
    return Outcome(0, f"{list(w.subset)} color {w.color}", {"witness": list(w.subset), "color": w.color})


def _read_gamma(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    if text.lstrip().startswith(("{", "[")):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from None
        items = data.get("gamma") if isinstance(data, dict) else data
        if not isinstance(items, list) or not all(isinstance(s, str) for s in items):
            raise UsageError(f"{path}: expected a list of formula strings")
    else:
        items = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    return canonical(parse_formula(s) for s in items)


def cmd_bouquet(args) -> Outcome:
    gamma = _read_gamma(args.input)
    model = bq.build_model(gamma, args.max_n, args.budget)
    kind = "finite" if not isinstance(model, bq.BouquetTree) else "bouquet"
    rank = format_ordinal(bq.tree_rank(model))
    lines = [f"{kind} model, root rank {rank}"]
    data: dict = {"kind": kind, "rank": rank}
    if isinstance(model, bq.BouquetTree):
        data["bouquet"] = bq.bouquet_to_json(model, args.check or 4)
    else:
        data["tree"] = tree_to_json(model)
    code = 0
    if args.check:
        verdicts = []
        for f in gamma:
            v = bq.check_root(model, f, args.check)
            name = type(v).__name__.lower()
            verdicts.append({"formula": format_formula(f), "verdict": name})
            lines.append(f"{name}: {format_formula(f)}")
            if not isinstance(v, bq.Holds):
                code = 1
        data["check"] = verdicts
    out = Outcome(code, "\n".join(lines), data)
    if args.dot:
        out.extra.append((bq.bouquet_to_dot(model, args.check or 4) if kind == "bouquet"
                          else tree_to_dot(model)).rstrip("\n"))
    return out


def cmd_sample(args) -> Outcome:
    rng = random.Random(args.seed)
    if args.kind == "formulas":
        items = [format_formula(random_formula(rng, args.depth, args.vars)) for _ in range(args.count)]
    else:
        items = [format_ordinal(random_ordinal(rng, args.depth)) for _ in range(args.count)]
    return Outcome(0, "\n".join(items), {"items": items})


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="ordgl", description="GL over ordinal spaces: ordinals, tableaux, regions, bouquets.")
    ap.add_argument("--json", action="store_true", help="machine-readable output")
    ap.add_argument("--seed", type=int, default=0, help="seed for random generation")
    ap.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search budget")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("ord", help="ordinal arithmetic")
    p.add_argument("op", choices=["add", "sub", "cmp", "log", "hlog", "hexp", "cf", "fund"])
    p.add_argument("args", nargs="*")
    p.set_defaults(func=cmd_ord)

    p = sub.add_parser("prove", help="GL validity")
    p.add_argument("formula")
    p.add_argument("--model", choices=["dot", "json"], help="print a countermodel when not valid")
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("sat", help="GL satisfiability of a set of formulas")
    p.add_argument("formulas", nargs="+")
    p.add_argument("--model", choices=["dot", "json"])
    p.set_defaults(func=cmd_sat)

    p = sub.add_parser("char", help="characteristic bound of a set of formulas")
    p.add_argument("formulas", nargs="+")
    p.add_argument("--max-n", type=int, default=8)
    p.set_defaults(func=cmd_char)

    p = sub.add_parser("mc", help="model-check a formula at a point of an ordinal space")
    p.add_argument("formula")
    p.add_argument("file", help="valuation JSON")
    p.add_argument("point")
    p.add_argument("--pointwise", action="store_true", help="also run the cofinality evaluator (lambda = 1)")
    p.set_defaults(func=cmd_mc)

    p = sub.add_parser("derive", help="iterated derived set of a formula's region")
    p.add_argument("file")
    p.add_argument("formula")
    p.add_argument("-n", type=int, default=1)
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("rank", help="rank of a point in (Theta, I_lambda)")
    p.add_argument("point")
    p.add_argument("--lambda", dest="lam", default="1")
    p.add_argument("--theta", default=None, help="defaults to point + 1")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("gamma", help="Gamma fragments and their ordinal model")
    p.add_argument("n", type=int)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--model", action="store_true")
    g.add_argument("--coloring", type=int, metavar="L")
    g.add_argument("--extract", action="store_true")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--n-star", type=int, default=0)
    p.set_defaults(func=cmd_gamma)

    p = sub.add_parser("ramsey", help="finite partition relations")
    rs = p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    a = rs.add_parser("arrow")
    a.add_argument("N", type=int)
    a.add_argument("k", type=int)
    a.add_argument("c", type=int)
    h = rs.add_parser("homogeneous")
    h.add_argument("file")
    h.add_argument("k", type=int)
    p.set_defaults(func=cmd_ramsey)

    p = sub.add_parser("bouquet", help="strong-completeness model builder")
    bs = p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    b = bs.add_parser("build")
    b.add_argument("--input", required=True, help="formulas, one per line, or a JSON list")
    b.add_argument("--check", type=int, default=0, metavar="K")
    b.add_argument("--max-n", type=int, default=8)
    b.add_argument("--dot", action="store_true")
    p.set_defaults(func=cmd_bouquet)

    p = sub.add_parser("sample", help="seeded random formulas or ordinals")
    p.add_argument("kind", choices=["formulas", "ordinals"])
    p.add_argument("--count", type=int, default=5)
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--vars", type=int, default=2)
    p.set_defaults(func=cmd_sample)
    return ap


_DATA_ERRORS = (OrdinalError, FormulaSyntaxError, RegionError, ValuationFormatError, TreeFormatError,
                lab.ColoringFormatError, lab.BudgetExceeded, lab.NoWitness, UnboundVariable, Inconsistent,
                ResourceLimitExceeded, bq.BouquetError, OracleMismatch, ValueError)


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        out = args.func(args)
    except UsageError as exc:
        print(f"ordgl: error: {exc}", file=sys.stderr)
        return 2
    except _DATA_ERRORS as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"ordgl: error: {msg}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps({"exit": out.code, "result": out.text, "data": out.data}, indent=2, sort_keys=True))
    else:
        print(out.text)
        for block in out.extra:
            print(block)
    return out.code


if __name__ == "__main__":
    sys.exit(main())
