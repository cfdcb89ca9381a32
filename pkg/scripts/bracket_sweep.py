#!/usr/bin/env python3
"""Sweep the map slope and compare norm brackets against matrix witnesses.

For composition operators with phi(z) = a z + b on the Hilbert Fock space,
prints the gauge supremum (theoretical lower bound), the truncated-matrix
sigma, the empirical family bound, and the theoretical upper bound.  The
sigma and empirical columns must sit inside the bracket; watching the gap
close as |a| -> 1 shows how the bracket constant (q/(p|a|^2))^{1/q} loses
tightness for strongly contracting maps.

Usage: python3 scripts/bracket_sweep.py [--b 0.4] [--order 64]
"""

import argparse
import sys

from focklab.criteria import classify
from focklab.operators import composition_operator, empirical_norm, f2_matrix, matrix_sigma_max
from focklab.quadrature import CHECK_SPEC
from focklab.symbols import AffineMap


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--b", type=float, default=0.4, help="translation part of the map")
    parser.add_argument("--order", type=int, default=64, help="truncation order")
    args = parser.parse_args()

    print("a,gauge_sup,sigma_max,empirical,upper")
    for a in (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9):
        op = composition_operator(AffineMap(a, args.b), 2.0, 2.0)
        c = classify(op, CHECK_SPEC)
        sigma = matrix_sigma_max(f2_matrix(op, args.order, check_tail=False))
        empirical = empirical_norm(op, spec=CHECK_SPEC)
        print(f"{a},{c.norm_lower:.10g},{sigma:.10g},{empirical:.10g},{c.norm_upper:.10g}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
