"""Build a model for each set in a corpus and report the root verdict of every member."""
import argparse
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from ordgl.bouquet import Holds, build_model, check_root, tree_rank
from ordgl.formulas import parse_formula
from ordgl.ordinals import format_ordinal
from ordgl.tableau import char_bound


@dataclass
class Config:
    k: int = 8
    max_n: int = 8
    input: str | None = None


def load(cfg: Config):
    if cfg.input is None:
        sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))
        from corpora import bouquet_corpus
        return bouquet_corpus()
    sets = []
    for line in Path(cfg.input).read_text().splitlines():
        if line.strip() and not line.startswith("#"):
            sets.append([parse_formula(s) for s in line.split(";")])
    return sets


def run(cfg: Config) -> bool:
    ok = True
    for gamma in load(cfg):
        t0 = time.perf_counter()
        m = build_model(gamma, cfg.max_n)
        verdicts = [check_root(m, f, cfg.k) for f in gamma]
        good = all(isinstance(v, Holds) for v in verdicts)
        ok &= good
        print(f"{'ok ' if good else 'BAD'} char {char_bound(gamma, cfg.max_n)}, rank {format_ordinal(tree_rank(m))}, "
              f"{time.perf_counter() - t0:.3f} s: {' ; '.join(map(str, gamma))}")
        for f, v in zip(gamma, verdicts):
            if not isinstance(v, Holds):
                print(f"    {f}: {v}")
    return ok


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, default=8, help="children inspected per check")
    ap.add_argument("--max-n", type=int, default=8)
    ap.add_argument("--input", help="one set per line, members separated by ';'")
    a = ap.parse_args()
    raise SystemExit(0 if run(Config(a.k, a.max_n, a.input)) else 1)


if __name__ == "__main__":
    main()
