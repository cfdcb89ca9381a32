"""Exact arithmetic for entire functions of the form sum_i P_i(z) exp(c_i z).

This class (finite sums of polynomial-times-exponential-of-linear terms) is
the smallest one that contains the constants, the monomials and every
normalized kernel function, and is closed under addition, multiplication,
differentiation and composition with affine maps z -> a z + b.  Crucially,
the admissible weights for unit-modulus affine symbols, c * exp(-conj(b) a z),
are exactly representable, so boundedness and connectivity decisions can be
made symbolically instead of by sampling.

Canonical form: terms sorted by rate, rates pairwise distinct (merged within
``TOL_SYM``), each polynomial stored with ascending coefficients and a
nonzero leading coefficient.  The zero function is the empty term tuple.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

TOL_SYM = 1e-12

_LOG_OVERFLOW = 709.0


def _check_finite(w: complex, what: str) -> complex:
    w = complex(w)
    if not (math.isfinite(w.real) and math.isfinite(w.imag)):
        raise ValueError(f"{what} must have finite real and imaginary parts, got {w!r}")
    return w


def _cexp(w: complex) -> complex:
    # exp with overflow reported as directional infinity instead of OverflowError
    if w.real > _LOG_OVERFLOW:
        c, s = math.cos(w.imag), math.sin(w.imag)
        return complex(math.inf * c if c else 0.0, math.inf * s if s else 0.0)
    return cmath.exp(w)


def _poly_add(p: list[complex], q: list[complex]) -> list[complex]:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for k, c in enumerate(q):
        out[k] += c
    return out


def _poly_mul(p: Sequence[complex], q: Sequence[complex]) -> list[complex]:
    out = [0j] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def _poly_horner(coeffs: Sequence[complex], z: complex) -> complex:
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


@dataclass(frozen=True)
class PolyExpTerm:
    """One term P(z) * exp(rate * z), coefficients ascending in degree."""

    coeffs: tuple[complex, ...]
    rate: complex

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("PolyExpTerm needs at least one coefficient")
        object.__setattr__(self, "coeffs", tuple(_check_finite(c, "coefficient") for c in self.coeffs))
        object.__setattr__(self, "rate", _check_finite(self.rate, "rate"))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


def _canonical(terms: Iterable[PolyExpTerm]) -> tuple[PolyExpTerm, ...]:
    items: list[tuple[complex, list[complex]]] = []
    for t in terms:
        items.append((t.rate, list(t.coeffs)))
    items.sort(key=lambda it: (it[0].real, it[0].imag))

    merged: list[tuple[complex, list[complex]]] = []
    for rate, coeffs in items:
        if merged and abs(rate - merged[-1][0]) <= TOL_SYM * max(1.0, abs(rate), abs(merged[-1][0])):
            merged[-1] = (merged[-1][0], _poly_add(merged[-1][1], coeffs))
        else:
            merged.append((rate, coeffs))

    out = []
    for rate, coeffs in merged:
        scale = max(abs(c) for c in coeffs)
        if scale == 0.0:
            continue
        cut = TOL_SYM * scale
        k = len(coeffs)
        while k > 0 and abs(coeffs[k - 1]) <= cut:
            k -= 1
        if k:
            out.append(PolyExpTerm(tuple(coeffs[:k]), rate))
    return tuple(out)


@dataclass(frozen=True)
class EntireFunction:
    """Canonical finite sum of PolyExpTerm; the zero function has no terms."""

    terms: tuple[PolyExpTerm, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "terms", _canonical(self.terms))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        """Largest polynomial degree across terms (0 for the zero function)."""
        return max((t.degree for t in self.terms), default=0)

    @property
    def max_rate(self) -> float:
        return max((abs(t.rate) for t in self.terms), default=0.0)

    def __call__(self, z: complex) -> complex:
        return evaluate(self, z)


ZERO = EntireFunction()
ONE = EntireFunction((PolyExpTerm((1 + 0j,), 0j),))


def constant(c: complex) -> EntireFunction:
    c = complex(c)
    if c == 0:
        return ZERO
    return EntireFunction((PolyExpTerm((c,), 0j),))


def monomial(n: int, coefficient: complex = 1.0) -> EntireFunction:
    if n < 0:
        raise ValueError("monomial degree must be nonnegative")
    coeffs = (0j,) * n + (complex(coefficient),)
    return EntireFunction((PolyExpTerm(coeffs, 0j),))


def variable() -> EntireFunction:
    return monomial(1)


def exp_term(rate: complex, coefficient: complex = 1.0) -> EntireFunction:
    """coefficient * exp(rate * z)."""
    return EntireFunction((PolyExpTerm((complex(coefficient),), complex(rate)),))


def add(f: EntireFunction, g: EntireFunction) -> EntireFunction:
    return EntireFunction(f.terms + g.terms)


def scale(f: EntireFunction, c: complex) -> EntireFunction:
    c = _check_finite(c, "scalar")
    if c == 0:
        return ZERO
    return EntireFunction(tuple(PolyExpTerm(tuple(c * a for a in t.coeffs), t.rate) for t in f.terms))


def negate(f: EntireFunction) -> EntireFunction:
    return scale(f, -1.0)


def sub(f: EntireFunction, g: EntireFunction) -> EntireFunction:
    return add(f, negate(g))


def mul(f: EntireFunction, g: EntireFunction) -> EntireFunction:
    terms = []
    for s in f.terms:
        for t in g.terms:
            terms.append(PolyExpTerm(tuple(_poly_mul(s.coeffs, t.coeffs)), s.rate + t.rate))
    return EntireFunction(tuple(terms))


def differentiate(f: EntireFunction) -> EntireFunction:
    # P exp(cz) -> (P' + cP) exp(cz)
    terms = []
    for t in f.terms:
        n = len(t.coeffs)
        coeffs = []
        for k in range(n):
            val = t.rate * t.coeffs[k]
            if k + 1 < n:
                val += (k + 1) * t.coeffs[k + 1]
            coeffs.append(val)
        terms.append(PolyExpTerm(tuple(coeffs), t.rate))
    return EntireFunction(tuple(terms))


def evaluate(f: EntireFunction, z: complex) -> complex:
    """Pointwise value by Horner evaluation per term; may overflow to inf."""
    z = complex(z)
    total = 0j
    for t in f.terms:
        total += _poly_horner(t.coeffs, z) * _cexp(t.rate * z)
    return total


def log_abs(f: EntireFunction, z: complex) -> float:
    """log |f(z)|, overflow-safe; -inf at zeros of f."""
    if not f.terms:
        return -math.inf
    z = complex(z)
    args = [t.rate * z for t in f.terms]
    m = max(a.real for a in args)
    acc = 0j
    for t, a in zip(f.terms, args):
        acc += _poly_horner(t.coeffs, z) * cmath.exp(complex(a.real - m, a.imag))
    mag = abs(acc)
    if mag == 0.0:
        return -math.inf
    return m + math.log(mag)


def log_abs_grid(f: EntireFunction, zs: np.ndarray) -> np.ndarray:
    """Vectorized log |f| on an array of complex points."""
    zs = np.asarray(zs, dtype=complex)
    if not f.terms:
        return np.full(zs.shape, -np.inf)
    exponents = [t.rate * zs for t in f.terms]
    m = exponents[0].real
    for e in exponents[1:]:
        m = np.maximum(m, e.real)
    acc = np.zeros(zs.shape, dtype=complex)
    for t, e in zip(f.terms, exponents):
        poly = np.polynomial.polynomial.polyval(zs, np.asarray(t.coeffs))
        acc += poly * np.exp((e.real - m) + 1j * e.imag)
    with np.errstate(divide="ignore"):
        return m + np.log(np.abs(acc))


def compose_affine(f: EntireFunction, phi: "AffineMap") -> EntireFunction:
    """f(a z + b), re-expanded inside the class.

    The polynomial part is rebased by iterated multiplication with (b + a z),
    the rate becomes c*a and the constant exp(c*b) folds into the coefficients.
    """
    a, b = phi.a, phi.b
    terms = []
    for t in f.terms:
        rebased: list[complex] = [0j]
        power: list[complex] = [1 + 0j]
        for k, pk in enumerate(t.coeffs):
            if k:
                power = _poly_mul(power, [b, a])
            if pk != 0:
                rebased = _poly_add(rebased, [pk * c for c in power])
        front = _cexp(t.rate * b)
        terms.append(PolyExpTerm(tuple(front * c for c in rebased), t.rate * a))
    return EntireFunction(tuple(terms))


def growth_envelope(f: EntireFunction, r: float) -> float:
    """sum_i phat_i(r) exp(|c_i| r) with phat the coefficient-modulus polynomial.

    Upper-bounds max_{|z|=r} |f(z)| for every r >= 0.
    """
    if r < 0:
        raise ValueError("radius must be nonnegative")
    total = 0.0
    for t in f.terms:
        phat = sum(abs(c) * r**k for k, c in enumerate(t.coeffs))
        total += phat * math.exp(abs(t.rate) * r)
    return total


def envelope_majorant(f: EntireFunction) -> tuple[float, int, float]:
    """(amplitude, degree, rate) with |f(z)| <= amplitude (1+|z|)^degree e^{rate |z|}."""
    amp = sum(abs(c) for t in f.terms for c in t.coeffs)
    return amp, f.degree, f.max_rate


def constant_value(f: EntireFunction, tol: float = TOL_SYM) -> complex | None:
    """The constant value of f if f is constant (0 included), else None."""
    if not f.terms:
        return 0j
    if len(f.terms) > 1:
        return None
    t = f.terms[0]
    if t.degree == 0 and abs(t.rate) <= tol:
        return t.coeffs[0]
    return None


def isclose(f: EntireFunction, g: EntireFunction, tol: float = 1e-9) -> bool:
    """Canonical-form comparison with a mixed absolute/relative tolerance."""
    d = sub(f, g)
    if d.is_zero:
        return True
    scale_ref = max(
        max((abs(c) for t in h.terms for c in t.coeffs), default=0.0) for h in (f, g)
    )
    cut = tol * max(1.0, scale_ref)
    return all(abs(c) <= cut for t in d.terms for c in t.coeffs)


def proportionality_ratio(f: EntireFunction, g: EntireFunction, tol: float = 1e-9) -> complex | None:
    """lam with g = lam * f (both nonzero), or None if not proportional."""
    if f.is_zero or g.is_zero:
        return None
    if len(f.terms) != len(g.terms):
        return None
    lead_f = f.terms[0].coeffs[-1]
    lead_g = g.terms[0].coeffs[-1]
    lam = lead_g / lead_f
    return lam if isclose(scale(f, lam), g, tol) else None


@dataclass(frozen=True)
class AffineMap:
    """phi(z) = a z + b with |a| <= 1, the only maps admissible as symbols."""

    a: complex
    b: complex = 0j

    def __post_init__(self):
        object.__setattr__(self, "a", _check_finite(self.a, "a"))
        object.__setattr__(self, "b", _check_finite(self.b, "b"))
        if abs(self.a) > 1.0 + TOL_SYM:
            raise ValueError(f"affine symbol needs |a| <= 1, got |a| = {abs(self.a)}")

    def __call__(self, z: complex) -> complex:
        return self.a * complex(z) + self.b

    @property
    def is_constant_map(self) -> bool:
        return abs(self.a) <= TOL_SYM

    @property
    def is_unit_modulus(self) -> bool:
        return abs(abs(self.a) - 1.0) <= TOL_SYM

    def compose(self, other: "AffineMap") -> "AffineMap":
        """self after other: z -> self(other(z))."""
        return AffineMap(self.a * other.a, self.a * other.b + self.b)

    def isclose(self, other: "AffineMap", tol: float = TOL_SYM) -> bool:
        return abs(self.a - other.a) <= tol and abs(self.b - other.b) <= tol


IDENTITY = AffineMap(1.0, 0.0)


def validate_fock_index(p: float) -> float:
    """Exponent of a Fock space: a finite positive real."""
    p = float(p)
    if not math.isfinite(p) or p <= 0:
        raise ValueError(f"Fock exponent must be finite and positive, got {p}")
    return p
