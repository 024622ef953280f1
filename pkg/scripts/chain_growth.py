#!/usr/bin/env python3
"""Measure instantiation counts on growing ground chains.

The two-clause p/q theory walks one chain step per instantiation, so the
count should stay linear in the chain length k (comfortably inside the
quadratic envelope the Horn/2SAT complexity argument promises).

Usage: python3 scripts/chain_growth.py [max_k]
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from trigsat.ordering import OrderingSpec
from trigsat.parser import parse_problem
from trigsat.pipeline import SolveOptions, solve_problem

THEORY = ("~p(X1, Y1) | *q(f(X1), Y1)\n"
          "~q(X2, Y2) | *p(X2, f(Y2))\n")


def chain_problem(k: int):
    s, t = "a", "b"
    for _ in range(k):
        s, t = f"f({s})", f"f({t})"
    return parse_problem(THEORY + f"~p({s}, {t})\n")


def main() -> int:
    max_k = int(sys.argv[1]) if len(sys.argv) > 1 else 10
    options = SolveOptions(ordering=OrderingSpec(kind="subterm"))
    print(f"{'k':>3} {'instantiations':>15} {'propagations':>13} "
          f"{'decides':>8} {'verdict':>8}")
    for k in range(1, max_k + 1):
        result = solve_problem(chain_problem(k), options)
        stats = result.run.stats
        print(f"{k:>3} {stats.instantiations:>15} {stats.propagates:>13} "
              f"{stats.decides:>8} {result.verdict_line:>8}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
