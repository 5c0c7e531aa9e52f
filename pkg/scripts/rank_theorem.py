"""Compare iterated derived sets of (Theta, I_lambda) with the rank bands l^lambda >= m."""
import argparse
import time
from dataclasses import dataclass, field

from ordgl.ordinals import parse_ordinal
from ordgl.regions import Region, SpaceSpec, equal
from ordgl.topology import derived_set


@dataclass
class Config:
    lambdas: list[int] = field(default_factory=lambda: [1, 2, 3])
    thetas: list[str] = field(default_factory=lambda: ["w^3+1", "w^w+1", "w^(w^w)+1"])
    max_m: int = 5


def run(cfg: Config) -> bool:
    ok = True
    print(f"{'lambda':>6}  {'Theta':<12} {'m':>2}  equal  seconds")
    for lam in cfg.lambdas:
        for theta in cfg.thetas:
            sp = SpaceSpec(parse_ordinal(theta), lam)
            cur = Region.full(sp)
            for m in range(cfg.max_m + 1):
                t0 = time.perf_counter()
                same = equal(cur, Region.rank(sp, lam, m - 1 if m else None, None))
                ok &= same
                print(f"{lam:>6}  {theta:<12} {m:>2}  {str(same):<5}  {time.perf_counter() - t0:.4f}")
                cur = derived_set(cur)
    return ok


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lambdas", type=int, nargs="+", default=Config().lambdas)
    ap.add_argument("--thetas", nargs="+", default=Config().thetas)
    ap.add_argument("--max-m", type=int, default=Config().max_m)
    a = ap.parse_args()
    raise SystemExit(0 if run(Config(a.lambdas, a.thetas, a.max_m)) else 1)


if __name__ == "__main__":
    main()
