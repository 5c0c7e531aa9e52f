"""Gamma fragments: tableau satisfiability, ordinal models, colorings and descents for N = 1..max."""
import argparse
from dataclasses import dataclass

from ordgl.lab import (NoBound, descending_extraction, find_homogeneous, gamma_fragment, gamma_ordinal_model,
                       proof_coloring)
from ordgl.ordinals import format_ordinal
from ordgl.tableau import Sat, gl_sat


@dataclass
class Config:
    max_n: int = 6
    limit: int = 8
    n_star: int = 0


def run(cfg: Config) -> None:
    for n in range(1, cfg.max_n + 1):
        frag = gamma_fragment(n)
        sat = isinstance(gl_sat(frag), Sat)
        m = gamma_ordinal_model(n)
        col = proof_coloring(m.space, m.valuation, m.alpha, n, cfg.limit)
        if isinstance(col, NoBound):
            colors = f"no bound for ({col.i}, {col.j})"
            triple = "-"
        else:
            colors = f"{col.palette} color(s)"
            w = find_homogeneous(col, 3) if n >= 3 else None
            triple = f"{list(w.subset)} color {w.color}" if w else "-"
        chain = descending_extraction(m.space, m.valuation, m.alpha, list(range(n)), cfg.n_star)
        betas = " > ".join(format_ordinal(s.beta) for s in chain)
        print(f"N={n}: {len(frag)} formulas, tableau {'sat' if sat else 'unsat'}, "
              f"alpha = {format_ordinal(m.alpha)}, coloring {colors}, triple {triple}")
        print(f"      descent: {betas}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=6)
    ap.add_argument("--limit", type=int, default=8)
    ap.add_argument("--n-star", type=int, default=0)
    a = ap.parse_args()
    run(Config(a.max_n, a.limit, a.n_star))


if __name__ == "__main__":
    main()
