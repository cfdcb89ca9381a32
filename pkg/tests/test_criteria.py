"""Gauge machinery and the classification theorems' exact decisions."""

import math

import pytest

from focklab import symbols as sy
from focklab.criteria import (
    Verdict,
    classify,
    dilation_compose,
    essential_norm_bracket,
    gauge_at,
    gauge_plane_norm,
    gauge_profile,
)
from focklab.errors import HypothesisViolated
from focklab.operators import (
    FamilySpec,
    WeightedCompositionOperator,
    composition_operator,
    f2_matrix,
    matrix_sigma_max,
)
from focklab.quadrature import CHECK_SPEC
from focklab.sampling import (
    random_affine,
    random_bounded_operator,
    random_complex,
    random_entire_function,
    unit_leaf_weight,
)
from focklab.symbols import AffineMap, IDENTITY

SMALL_FAMILY = FamilySpec(kernel_radius=4.0, kernel_radii=6, kernel_angles=8, monomial_degree=8)
UNIT = complex(math.cos(0.8), math.sin(0.8))


def test_gauge_at_examples():
    assert math.isclose(gauge_at(sy.ONE, IDENTITY, 2 - 1j), 1.0)
    z = 1.5 + 0.5j
    assert math.isclose(gauge_at(sy.variable(), IDENTITY, z), abs(z))
    b = 0.7 - 0.4j
    phi = AffineMap(UNIT, b)
    psi = unit_leaf_weight(phi, 1.0)
    level = math.exp(abs(b) ** 2 / 2.0)
    for z in (0j, 2 + 1j, -3j):
        assert math.isclose(gauge_at(psi, phi, z), level, rel_tol=1e-12)


def test_gauge_sup_oracles():
    for a in (0.3, 0.9, UNIT):
        prof = gauge_profile(sy.ONE, AffineMap(a, 0.0))
        assert math.isclose(prof.symbolic_sup, 1.0, rel_tol=1e-9)

    a, b = 0.6, 1.2 + 0.3j
    prof = gauge_profile(sy.ONE, AffineMap(a, b))
    exact = math.exp(abs(b) ** 2 / (2.0 * (1.0 - a**2)))
    assert math.isclose(prof.symbolic_sup, exact, rel_tol=1e-9)

    assert math.isinf(gauge_profile(sy.variable(), IDENTITY).symbolic_sup)

    phi = AffineMap(UNIT, 1.0)
    prof = gauge_profile(unit_leaf_weight(phi, 1.0), phi)
    assert math.isclose(prof.symbolic_sup, math.exp(0.5), rel_tol=1e-12)
    assert math.isclose(prof.symbolic_limsup, math.exp(0.5), rel_tol=1e-12)
    assert not prof.limsup_exact_zero


def test_gauge_limsup_regimes():
    prof = gauge_profile(sy.ONE, AffineMap(0.5, 1.0))
    assert prof.limsup_exact_zero and prof.symbolic_limsup == 0.0
    assert not prof.divergence_evidence

    prof = gauge_profile(sy.ONE, AffineMap(UNIT, 1.0))
    assert math.isinf(prof.symbolic_limsup)
    assert prof.witness_direction is not None
    assert prof.divergence_evidence


def test_numeric_matches_symbolic_sup(rng):
    regimes = ("zero", "interior", "interior", "unit")
    moduli = (0.0, 0.3, 0.9, 1.0)
    for k in range(50):
        regime = regimes[k % 4]
        if regime == "interior":
            phi = random_affine(rng, regime="interior", a_max=moduli[k % 4])
        else:
            phi = random_affine(rng, regime=regime)
        psi = random_entire_function(rng, max_terms=2, max_degree=2, rate_radius=1.0)
        if regime == "unit":
            # give divergent profiles an honest exponential scale to witness
            g_rate = psi.terms[0].rate + phi.b.conjugate() * phi.a
            if abs(g_rate) < 0.3:
                psi = sy.mul(psi, sy.exp_term(0.5))
        prof = gauge_profile(psi, phi)
        if math.isinf(prof.symbolic_sup):
            assert max(s for _, s in prof.annulus_sups) > 1e6
        else:
            assert prof.numeric_sup <= prof.symbolic_sup * (1 + 1e-6)
            assert math.isclose(prof.numeric_sup, prof.symbolic_sup, rel_tol=1e-6)


def test_plane_norm_oracles():
    got = gauge_plane_norm(sy.ONE, AffineMap(0.5, 0.0), 4.0, 2.0)
    assert math.isclose(got, (2.0 * math.pi / 3.0) ** 0.25, rel_tol=1e-9)

    got2 = gauge_plane_norm(sy.constant(2.0), AffineMap(0.5, 0.0), 4.0, 2.0)
    assert math.isclose(got2, 2.0 * (2.0 * math.pi / 3.0) ** 0.25, rel_tol=1e-9)

    assert math.isinf(gauge_plane_norm(sy.ONE, AffineMap(UNIT, 0.0), 4.0, 2.0))
    with pytest.raises(HypothesisViolated):
        gauge_plane_norm(sy.ONE, AffineMap(0.5, 0.0), 2.0, 4.0)
    with pytest.raises(HypothesisViolated):
        gauge_plane_norm(sy.ONE, AffineMap(0.0, 0.5), 4.0, 2.0)


def test_classify_bracket_example():
    c = classify(composition_operator(AffineMap(0.5, 0.0), 2.0, 2.0))
    assert c.verdict is Verdict.COMPACT
    assert math.isclose(c.norm_lower, 1.0, rel_tol=1e-10)
    assert math.isclose(c.norm_upper, 2.0, rel_tol=1e-10)
    assert (c.ess_lower, c.ess_upper) == (0.0, 0.0)


def test_classify_rank_one_branch():
    psi = sy.add(sy.ONE, sy.variable())
    op = WeightedCompositionOperator(psi, AffineMap(0.0, 1.0), 2.0, 2.0)
    c = classify(op, CHECK_SPEC)
    assert c.verdict is Verdict.COMPACT
    assert c.norm_lower <= c.norm_upper
    assert "rank-one-compact" in c.rules


def test_classify_rank_one_kernel_weight_equality():
    # for kernel-type weights the gauge sup equals the rank-one upper bound;
    # the bracket must stay ordered despite quadrature noise
    from focklab.fock import kernel

    for w in (1 + 1j, 2.0, 0.5j):
        op = WeightedCompositionOperator(kernel(w), AffineMap(0.0, 1.0), 2.0, 2.0)
        c = classify(op)
        assert c.norm_lower <= c.norm_upper
        assert math.isclose(c.norm_lower, c.norm_upper, rel_tol=1e-9)


def test_classify_unbounded_witness_direction():
    c = classify(WeightedCompositionOperator(sy.variable(), IDENTITY, 2.0, 2.0))
    assert c.verdict is Verdict.UNBOUNDED
    assert c.witness is not None
    # psi = exp(z), phi = az with |a| = 1: gauge grows along conj(rate)
    psi = sy.exp_term(1 + 1j)
    c2 = classify(WeightedCompositionOperator(psi, AffineMap(UNIT, 0.0), 2.0, 2.0))
    assert c2.verdict is Verdict.UNBOUNDED
    assert abs(c2.witness - (1 - 1j) / abs(1 + 1j)) < 1e-12


def test_classify_scale_invariance(rng):
    for _ in range(6):
        op = random_bounded_operator(rng, 1.0, 2.0, allow_unit=True)
        c = random_complex(rng, 2.0) + 0.3
        scaled = WeightedCompositionOperator(sy.scale(op.psi, c), op.phi, op.p, op.q)
        assert classify(op, CHECK_SPEC).verdict is classify(scaled, CHECK_SPEC).verdict


def test_classify_small_codomain_consistency(rng):
    # q < p: verdict Compact <-> plane norm finite <-> |a| < 1
    for regime, expected in (("interior", Verdict.COMPACT), ("unit", Verdict.UNBOUNDED)):
        phi = random_affine(rng, regime=regime, a_max=0.6)
        psi = random_entire_function(rng, max_terms=2, max_degree=1, rate_radius=0.5)
        op = WeightedCompositionOperator(psi, phi, 3.0, 2.0)
        c = classify(op, CHECK_SPEC, SMALL_FAMILY)
        assert c.verdict is expected
        assert math.isinf(c.ls_norm) == (expected is Verdict.UNBOUNDED)
        if expected is Verdict.COMPACT:
            assert c.norm_lower <= c.norm_upper * (1 + 1e-9)


def test_empirical_within_bracket(rng):
    from focklab.operators import empirical_norm

    for _ in range(3):
        op = random_bounded_operator(rng, 2.0, 2.0, a_max=0.6, b_radius=0.5, rate_radius=0.5)
        c = classify(op, CHECK_SPEC)
        e = empirical_norm(op, SMALL_FAMILY, CHECK_SPEC)
        assert c.norm_lower * (1 - 1e-6) <= e <= c.norm_upper * (1 + 1e-6)


def test_classification_essential_fields_stay_inside_norm_bracket():
    # raw essential bracket for the unit rotation is (1, 2) but the operator
    # norm bound is 1; the classification keeps the tighter upper bound
    rotation = composition_operator(AffineMap(UNIT, 0.0), 2.0, 2.0)
    c = classify(rotation)
    assert c.verdict is Verdict.BOUNDED_NONCOMPACT
    assert c.ess_lower <= c.ess_upper <= c.norm_upper
    assert math.isclose(c.ess_lower, 1.0, rel_tol=1e-12)
    assert math.isclose(c.ess_upper, 1.0, rel_tol=1e-12)


def test_essential_norm_brackets():
    rotation = composition_operator(AffineMap(UNIT, 0.0), 2.0, 2.0)
    assert essential_norm_bracket(rotation) == (1.0, 2.0)

    compact = composition_operator(AffineMap(0.5, 0.2), 2.0, 2.0)
    assert essential_norm_bracket(compact) == (0.0, 0.0)

    phi = AffineMap(UNIT, 1.0)
    op = WeightedCompositionOperator(unit_leaf_weight(phi, 1.0), phi, 2.0, 4.0)
    lo, hi = essential_norm_bracket(op)
    assert math.isclose(lo, math.exp(0.5), rel_tol=1e-12)
    assert math.isclose(hi, 2.0 * 2.0**0.25 * math.exp(0.5), rel_tol=1e-12)


def test_essential_norm_refusals():
    with pytest.raises(HypothesisViolated):
        essential_norm_bracket(composition_operator(AffineMap(0.5, 0.0), 0.5, 2.0))
    with pytest.raises(HypothesisViolated):
        essential_norm_bracket(composition_operator(AffineMap(0.5, 0.0), 3.0, 2.0))
    with pytest.raises(HypothesisViolated):
        essential_norm_bracket(composition_operator(AffineMap(UNIT, 0.0), 2.0, 2.0).__class__(
            sy.variable(), IDENTITY, 2.0, 2.0))


def test_dilation_compose():
    base = composition_operator(AffineMap(0.8, 0.5), 2.0, 2.0)
    shrunk = dilation_compose(base, 0.5)
    assert shrunk.phi.isclose(AffineMap(0.4, 0.5))
    with pytest.raises(ValueError):
        dilation_compose(base, 1.0)

    # sigma gap for the rotation against its dilates stays at most 1
    rotation = composition_operator(AffineMap(UNIT, 0.0), 2.0, 2.0)
    m_full = f2_matrix(rotation, 48)
    for r in (0.3, 0.9):
        m_r = f2_matrix(dilation_compose(rotation, r), 48)
        gap = matrix_sigma_max(m_full.entries - m_r.entries)
        assert math.isclose(gap, 1.0 - r**47, rel_tol=1e-8)
        assert gap <= 1.0 + 1e-12


def test_norm_chain_small(rng):
    from focklab.operators import berezin

    op = random_bounded_operator(rng, 1.5, 3.0)
    upper = classify(op, CHECK_SPEC).norm_upper
    for z in (0.5 + 0.5j, -1 + 2j, 2.0):
        witness = berezin(op, op.phi(z), CHECK_SPEC) ** (1.0 / op.q)
        assert gauge_at(op.psi, op.phi, z) <= witness * (1 + 1e-6)
        assert witness <= upper * (1 + 1e-6)
