"""Dual-route checks: the polar quadrature engine against independent oracles.

The Hilbert-space route expands a symbol in the normalized monomial basis
and sums squared coefficients (Parseval); the lattice route is a plain
Cartesian Riemann sum, converged offline and frozen here.  Neither touches
the polar engine's panels, tails, or angular rules.
"""

import math

import numpy as np
import pytest

from focklab import symbols as sy
from focklab.fock import fock_norm, kernel
from focklab.operators import _basis_coefficients
from focklab.quadrature import CHECK_SPEC
from focklab.sampling import random_entire_function


def parseval_norm(f, order=160):
    alpha, tail_fraction = _basis_coefficients(f, order)
    assert tail_fraction < 1e-9
    return math.sqrt(float(np.sum(np.abs(alpha) ** 2)))


def test_hilbert_norm_matches_parseval(rng):
    cases = [kernel(1 + 2j), sy.add(sy.monomial(3), sy.exp_term(0.5 - 1j))]
    cases += [random_entire_function(rng, max_terms=2, max_degree=3, rate_radius=1.0)
              for _ in range(8)]
    for f in cases:
        series = parseval_norm(f)
        quad = fock_norm(f, 2.0).value
        assert math.isclose(series, quad, rel_tol=1e-9)


@pytest.mark.parametrize(
    "p, frozen, tol",
    [
        # Cartesian Riemann sums on [-11, 11]^2, 4800^2 points, convergence
        # checked across three grid refinements
        (0.5, 1.84520080, 5e-7),
        (1.0, 1.54857246, 2e-7),
    ],
)
def test_cusp_norm_matches_lattice_oracle(p, frozen, tol):
    f = sy.sub(sy.variable(), sy.ONE)
    nv = fock_norm(f, p, CHECK_SPEC)
    assert abs(nv.value - frozen) <= tol + nv.error_estimate
