"""Boundedness, compactness and norm-bracket decisions for weighted
composition operators between Fock spaces.

Everything pivots on the pointwise gauge of a symbol pair,

    gauge_z(psi, phi) = |psi(z)| * exp((|phi(z)|^2 - |z|^2) / 2),

whose supremum, limit at infinity and plane integrability decide the
operator-theoretic trichotomy.  For the poly-exp symbol class all of these
are decided symbolically (exactly), with numerics attached only as
cross-checks:

* |a| < 1 (and a = 0): the exponent is a negative-definite quadratic, so
  the supremum is finite and attained, and the gauge vanishes at infinity.
* |a| = 1: the quadratic cancels and gauge_z = |g(z)| e^{|b|^2/2} with
  g = psi * exp(conj(b) a z), a member of the class.  The gauge is bounded
  iff g is constant (an entire function bounded on the plane is constant),
  in which case the gauge is identically |g(0)| e^{|b|^2/2}; otherwise the
  supremum and the limsup are both infinite.
* plane integrability (needed for q < p): a nonzero entire function is
  never in any L^s of the plane, so |a| = 1 always fails; for |a| < 1 the
  Gaussian factor wins and the L^s norm is finite, computed by quadrature.

Decision rules carry stable tags (``rules`` on the classification) that
reports cite; see the README catalog.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import maximize, symbols
from .errors import HypothesisViolated, TailNotDominated
from .fock import fock_norm, gauge_at, gauge_ascent_seeds, gauge_peak, log_gauge_at
from .operators import FamilySpec, WeightedCompositionOperator, empirical_norm
from .quadrature import (
    DEFAULT_SPEC,
    GrowthEnvelope,
    PolarIntegrand,
    QuadratureSpec,
    plane_integral,
    polar_grid,
)
from .symbols import AffineMap, EntireFunction

ANNULUS_RADII = tuple(float(2**k) for k in range(1, 11))

RULE_RANK_ONE = "rank-one-compact"
RULE_SUP_BOUNDED = "sup-gauge-boundedness"
RULE_SUP_BRACKET = "sup-gauge-norm-bracket"
RULE_VANISHING = "vanishing-gauge-compactness"
RULE_UNIT_LEAF = "unit-modulus-leaf-weight"
RULE_INTEGRABILITY = "plane-integrability-equivalence"
RULE_HOLDER_UPPER = "holder-norm-upper"
RULE_EMPIRICAL_LOWER = "empirical-lower-bound"
RULE_ESS_BRACKET = "essential-norm-gauge-bracket"
RULE_ESS_UNIT = "unit-modulus-essential-floor"
RULE_ESS_TRIVIAL = "trivial-essential-bounds"


def _safe_exp(x: float) -> float:
    if x == -math.inf:
        return 0.0
    if x > 709.0:
        return math.inf
    return math.exp(x)


@dataclass(frozen=True)
class GaugeProfile:
    """Symbolic sup/limsup of the gauge with numeric cross-checks attached.

    ``limsup_exact_zero`` distinguishes the exact symbolic zero (Gaussian
    decay) from a merely small numeric value; classification decisions only
    ever read the symbolic fields.
    """

    symbolic_sup: float
    symbolic_limsup: float
    limsup_exact_zero: bool
    numeric_sup: float
    annulus_sups: tuple[tuple[float, float], ...]
    witness_direction: complex | None = None

    @property
    def divergence_evidence(self) -> bool:
        """Numeric hint that the profile diverges: an annulus supremum past 1e12.

        Evidence only; it never overrules the symbolic finiteness decision.
        """
        return any(s > 1e12 for _, s in self.annulus_sups)


def _unit_leaf_factor(psi: EntireFunction, phi: AffineMap) -> complex | None:
    """For |a| = 1: the constant value of psi * exp(conj(b) a z), if constant."""
    g = symbols.mul(psi, symbols.exp_term(phi.b.conjugate() * phi.a))
    return symbols.constant_value(g, tol=symbols.TOL_SYM * max(1.0, abs(phi.a * phi.b)))


def _divergence_direction(psi: EntireFunction, phi: AffineMap) -> complex:
    """A unit direction along which the gauge grows without bound (|a| = 1 case)."""
    g = symbols.mul(psi, symbols.exp_term(phi.b.conjugate() * phi.a))
    dominant = max(g.terms, key=lambda t: (abs(t.rate), t.degree))
    if abs(dominant.rate) <= symbols.TOL_SYM:
        return 1 + 0j
    return dominant.rate.conjugate() / abs(dominant.rate)


def _annulus_sup(psi: EntireFunction, phi: AffineMap, radius: float, n_angles: int = 512) -> float:
    angles = 2.0 * math.pi * np.arange(n_angles) / n_angles
    zs = radius * np.exp(1j * angles)
    a, b = phi.a, phi.b
    logs = (
        symbols.log_abs_grid(psi, zs)
        + 0.5 * ((abs(a) ** 2 - 1.0) * radius**2 + 2.0 * (b.conjugate() * a * zs).real + abs(b) ** 2)
    )
    k = int(np.argmax(logs))
    best = float(logs[k])
    # one-dimensional refinement around the best angle
    theta, h = float(angles[k]), math.pi / n_angles
    while h > 1e-10:
        moved = False
        for dt in (h, -h):
            candidate = log_gauge_at(psi, phi, radius * complex(math.cos(theta + dt), math.sin(theta + dt)))
            if candidate > best:
                best, theta = candidate, theta + dt
                moved = True
        if not moved:
            h *= 0.5
    return _safe_exp(best)


def gauge_profile(psi: EntireFunction, phi: AffineMap,
                  annulus_radii: tuple[float, ...] = ANNULUS_RADII) -> GaugeProfile:
    """Full sup/limsup profile of the gauge for one symbol pair."""
    annulus = tuple((r, _annulus_sup(psi, phi, r)) for r in annulus_radii)

    if psi.is_zero:
        return GaugeProfile(0.0, 0.0, True, 0.0, annulus)

    if phi.is_unit_modulus:
        factor = _unit_leaf_factor(psi, phi)
        if factor is None:
            direction = _divergence_direction(psi, phi)
            numeric = max(s for _, s in annulus)
            return GaugeProfile(math.inf, math.inf, False, numeric, annulus, direction)
        level = abs(factor) * _safe_exp(abs(phi.b) ** 2 / 2.0)
        numeric = max(s for _, s in annulus)
        return GaugeProfile(level, level, False, numeric, annulus)

    # |a| < 1 (constant maps included): Gaussian decay wins, limsup is exactly 0
    def objective(z: complex) -> float:
        return log_gauge_at(psi, phi, z)

    _, cap = gauge_ascent_seeds(psi, phi)
    _, best = gauge_peak(psi, phi)
    symbolic_sup = _safe_exp(best)

    # independent cross-check: ascend from the best points of a coarse polar scan
    grid = polar_grid(cap, 24, 16, include_origin=True)
    grid_logs = sorted(((objective(complex(z)), complex(z)) for z in grid),
                       key=lambda pair: pair[0], reverse=True)
    _, numeric_best = maximize.maximize(objective, [z for _, z in grid_logs[:4]])
    numeric_sup = _safe_exp(numeric_best)

    return GaugeProfile(symbolic_sup, 0.0, True, numeric_sup, annulus)


def gauge_sup(psi: EntireFunction, phi: AffineMap) -> GaugeProfile:
    """Profile with the supremum decision (finite iff the operator family is bounded, p <= q)."""
    return gauge_profile(psi, phi)


def gauge_limsup(psi: EntireFunction, phi: AffineMap) -> GaugeProfile:
    """Profile with the limit decision (zero iff compact, p <= q)."""
    return gauge_profile(psi, phi)


def gauge_plane_norm(psi: EntireFunction, phi: AffineMap, p: float, q: float,
                     spec: QuadratureSpec | None = None) -> float:
    """L^{pq/(p-q)} plane norm of the gauge (q < p); inf when not integrable.

    Symbolic prefilter: for |a| = 1 a nonzero entire profile is never plane
    integrable, so the norm is infinite without quadrature.
    """
    if not 0 < q < p:
        raise HypothesisViolated("plane norm of the gauge requires 0 < q < p")
    if phi.is_constant_map:
        raise HypothesisViolated("a = 0 is decided by the rank-one branch, not integrability")
    if phi.is_unit_modulus:
        return math.inf
    s = p * q / (p - q)
    a, b = phi.a, phi.b
    amp, degree, rate = symbols.envelope_majorant(psi)
    envelope = GrowthEnvelope.single(
        amplitude=(amp**s) * math.exp(min(s * abs(b) ** 2 / 2.0, 700.0)),
        degree=degree * s,
        rate=s * (rate + abs(a * b)),
        curvature=s * (abs(a) ** 2 - 1.0) / 2.0,
    )

    def log_gauge_power(zs: np.ndarray) -> np.ndarray:
        quad = (abs(a) ** 2 - 1.0) * np.abs(zs) ** 2
        linear = 2.0 * (b.conjugate() * a * zs).real
        return s * (symbols.log_abs_grid(psi, zs) + 0.5 * (quad + linear + abs(b) ** 2))

    integrand = PolarIntegrand(
        log_magnitude=log_gauge_power,
        envelope=envelope,
        angular_degree=s * degree,
        angular_rate=s * (rate + abs(a * b)),
    )
    try:
        result = plane_integral(integrand, spec or DEFAULT_SPEC)
    except TailNotDominated:
        return math.inf
    return result.value ** (1.0 / s)


class Verdict(str, Enum):
    UNBOUNDED = "Unbounded"
    BOUNDED_NONCOMPACT = "BoundedNonCompact"
    COMPACT = "Compact"


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    witness: complex | None
    norm_lower: float
    norm_upper: float
    ess_lower: float
    ess_upper: float
    ls_norm: float | None
    rules: tuple[str, ...]

    def __post_init__(self):
        if self.norm_lower > self.norm_upper * (1 + 1e-12):
            raise ValueError("norm_lower must not exceed norm_upper")
        if self.ess_lower > self.ess_upper * (1 + 1e-12):
            raise ValueError("ess_lower must not exceed ess_upper")
        if self.ess_upper > self.norm_upper * (1 + 1e-12):
            raise ValueError("ess_upper must not exceed norm_upper")
        if self.verdict is Verdict.COMPACT and (self.ess_lower, self.ess_upper) != (0.0, 0.0):
            raise ValueError("compact operators have essential norm zero")


def classify(op: WeightedCompositionOperator,
             spec: QuadratureSpec | None = None,
             family: FamilySpec | None = None) -> Classification:
    """Complete verdict with norm and essential-norm brackets.

    p <= q: bounded iff the gauge supremum is finite, compact iff the gauge
    vanishes at infinity, with bracket m <= ||W|| <= (q/(p|a|^2))^{1/q} m.
    q < p: bounded iff compact iff the gauge is plane integrable; the upper
    bound is the Hoelder constant times the plane norm, the lower bound is
    empirical.  a = 0: rank one, hence compact, with ||W|| <= e^{|b|^2/2} ||psi||_q.
    """
    spec = spec or DEFAULT_SPEC
    psi, phi, p, q = op.psi, op.phi, op.p, op.q
    profile = gauge_profile(psi, phi)

    if phi.is_constant_map:
        # the gauge sup can equal the bound exactly (kernel-type weights), so
        # the quadrature-based upper side carries its certified error
        norm_psi = fock_norm(psi, q, spec)
        upper = _safe_exp(abs(phi.b) ** 2 / 2.0) * (norm_psi.value + norm_psi.error_estimate)
        return Classification(
            Verdict.COMPACT, None, profile.symbolic_sup, upper, 0.0, 0.0,
            None, (RULE_RANK_ONE,),
        )

    if q < p:
        if phi.is_unit_modulus:
            return Classification(
                Verdict.UNBOUNDED, _divergence_direction(psi, phi),
                math.inf, math.inf, math.inf, math.inf, math.inf,
                (RULE_INTEGRABILITY,),
            )
        ls = gauge_plane_norm(psi, phi, p, q, spec)
        upper = (q / (2.0 * math.pi)) ** (1.0 / q) * (2.0 * math.pi / (p * abs(phi.a) ** 2)) ** (1.0 / p) * ls
        lower = empirical_norm(op, family, spec)
        return Classification(
            Verdict.COMPACT, None, lower, upper, 0.0, 0.0, ls,
            (RULE_INTEGRABILITY, RULE_HOLDER_UPPER, RULE_EMPIRICAL_LOWER),
        )

    # p <= q, 0 < |a| <= 1
    if math.isinf(profile.symbolic_sup):
        return Classification(
            Verdict.UNBOUNDED, profile.witness_direction,
            math.inf, math.inf, math.inf, math.inf, None,
            (RULE_SUP_BOUNDED,),
        )
    m = profile.symbolic_sup
    bracket_factor = (q / (p * abs(phi.a) ** 2)) ** (1.0 / q)
    upper = bracket_factor * m
    if profile.limsup_exact_zero:
        return Classification(
            Verdict.COMPACT, None, m, upper, 0.0, 0.0, None,
            (RULE_SUP_BOUNDED, RULE_SUP_BRACKET, RULE_VANISHING),
        )
    rules = [RULE_SUP_BOUNDED, RULE_SUP_BRACKET, RULE_UNIT_LEAF]
    limsup = profile.symbolic_limsup
    if p > 1.0:
        # the bracket's raw upper side can exceed the operator-norm bound
        # (both bound the essential norm); the classification keeps the min
        ess = (limsup, min(2.0 * bracket_factor * limsup, upper))
        rules.append(RULE_ESS_BRACKET)
    else:
        ess = (0.0, upper)
        rules.append(RULE_ESS_TRIVIAL)
    return Classification(
        Verdict.BOUNDED_NONCOMPACT, None, m, upper, ess[0], ess[1], None, tuple(rules),
    )


def essential_norm_bracket(op: WeightedCompositionOperator) -> tuple[float, float]:
    """(limsup, 2 (q/(p|a|^2))^{1/q} limsup) for bounded operators with 1 < p <= q.

    Refuses outside that exponent range: the bracket is not available there.
    """
    p, q = op.p, op.q
    if p <= 1.0:
        raise HypothesisViolated("essential norm bracket requires p > 1")
    if p > q:
        raise HypothesisViolated("essential norm bracket requires p <= q")
    profile = gauge_profile(op.psi, op.phi)
    if math.isinf(profile.symbolic_sup):
        raise HypothesisViolated("essential norm is defined for bounded operators only")
    limsup = 0.0 if profile.limsup_exact_zero else profile.symbolic_limsup
    if limsup == 0.0:
        return (0.0, 0.0)
    factor = 2.0 * (q / (p * abs(op.phi.a) ** 2)) ** (1.0 / q)
    return (limsup, factor * limsup)


def dilation_compose(op: WeightedCompositionOperator, r: float) -> WeightedCompositionOperator:
    """Shrink the map's slope: same weight, phi_r(z) = phi(r z) = (r a) z + b.

    The r -> 1 family realizes the compact approximants whose distance to the
    original operator witnesses the essential-norm upper bound numerically.
    """
    if not 0.0 < r < 1.0:
        raise ValueError("dilation parameter must lie in (0, 1)")
    return WeightedCompositionOperator(op.psi, AffineMap(r * op.phi.a, op.phi.b), op.p, op.q)
