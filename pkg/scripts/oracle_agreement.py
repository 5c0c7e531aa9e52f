"""Symbolic evaluation versus the cofinality evaluator at lambda = 1 on random formulas."""
import argparse
import random
from dataclasses import dataclass

from ordgl.ordinals import parse_ordinal
from ordgl.regions import SpaceSpec, canonical_points, member
from ordgl.sampling import random_formula, random_valuation
from ordgl.topology import eval_formula, pointwise_checker


@dataclass
class Config:
    formulas: int = 200
    depth: int = 3
    nvars: int = 2
    theta: str = "w^3+1"
    seed: int = 0


def run(cfg: Config) -> int:
    rng = random.Random(cfg.seed)
    space = SpaceSpec(parse_ordinal(cfg.theta), 1)
    points = canonical_points(space)
    queries = mismatches = nontrivial = 0
    for _ in range(cfg.formulas):
        f = random_formula(rng, cfg.depth, cfg.nvars)
        val = random_valuation(rng, space, cfg.nvars)
        region, pw = eval_formula(f, val), pointwise_checker(val)
        seen = set()
        for x in points:
            sym = member(x, region)
            seen.add(sym)
            queries += 1
            if sym != pw(f, x):
                mismatches += 1
                print(f"mismatch: {f} at {x}")
        nontrivial += len(seen) == 2
    print(f"{queries} queries over {len(points)} points, {mismatches} mismatches, "
          f"{nontrivial}/{cfg.formulas} formulas take both values")
    return mismatches


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--formulas", type=int, default=200)
    ap.add_argument("--depth", type=int, default=3)
    ap.add_argument("--vars", type=int, default=2)
    ap.add_argument("--theta", default="w^3+1")
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    raise SystemExit(1 if run(Config(a.formulas, a.depth, a.vars, a.theta, a.seed)) else 0)


if __name__ == "__main__":
    main()
