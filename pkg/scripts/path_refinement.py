#!/usr/bin/env python3
"""Numeric demonstration that the canonical connecting paths are continuous.

For each path kind the script halves the step size repeatedly and prints the
largest single increment of the operator-norm distance along the path.  A
continuous path shows increments shrinking roughly linearly with the step;
an isolated operator would keep a bounded-below increment no matter how fine
the grid.

Usage: python3 scripts/path_refinement.py [--max-steps 32]
"""

import argparse
import sys

from focklab.quadrature import CHECK_SPEC
from focklab.symbols import AffineMap
from focklab import symbols
from focklab.topology import path_profile


def largest_increment(kind: str, steps: int, **kwargs) -> float:
    profile = path_profile(kind, steps=steps, p=2.0, q=2.0, spec=CHECK_SPEC,
                           matrix_order=32, **kwargs)
    return max(d for _, d in profile)


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--max-steps", type=int, default=32)
    args = parser.parse_args()

    cases = [
        ("dilate", {"phi": AffineMap(0.5, 0.3)}),
        ("translate", {"b1": 0.0 + 0j, "b2": 1.0 + 0j}),
        ("weight", {"phi": AffineMap(0.5, 0.0), "psi1": symbols.ONE,
                    "psi2": symbols.add(symbols.ONE, symbols.variable())}),
    ]
    print("kind,steps,max_increment")
    for kind, kwargs in cases:
        steps = 4
        while steps <= args.max_steps:
            print(f"{kind},{steps},{largest_increment(kind, steps, **kwargs):.8g}")
            steps *= 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
