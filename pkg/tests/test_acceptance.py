"""Acceptance suite: one test per criterion, each printing its pass/fail line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines; the same checks back the ``focklab verify`` subcommand.
"""

import numpy as np

from focklab.verification import CHECKS

SEED = 7

_INDEX = {name: k for k, (name, _) in enumerate(CHECKS)}


def _run(name: str):
    fn = CHECKS[_INDEX[name]][1]
    rng = np.random.default_rng([SEED, _INDEX[name]])
    result = fn(rng, False)
    status = "PASS" if result.passed else "FAIL"
    print(f"{status} criterion {_INDEX[name] + 1:02d} {result.name}: {result.detail}")
    assert result.passed, result.detail


def test_c01_kernel_normalization():
    _run("kernel-normalization")


def test_c02_monomial_oracle():
    _run("monomial-oracle")


def test_c03_growth_bound_suite():
    _run("growth-bound-suite")


def test_c04_embedding_suite():
    _run("embedding-suite")


def test_c05_norm_chain():
    _run("norm-chain")


def test_c06_diagonal_sigma_bracket():
    _run("diagonal-sigma-bracket")


def test_c07_classification_table():
    _run("classification-table")


def test_c08_essential_norm():
    _run("essential-norm")


def test_c09_separation():
    _run("separation")


def test_c10_compact_difference_table():
    _run("compact-difference-table")


def test_c11_components_isolation():
    _run("components-isolation")


def test_c12_large_to_small_bound():
    _run("large-to-small-bound")
