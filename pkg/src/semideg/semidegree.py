"""Divisorial semidegrees given by a generic degree-wise Puiseux datum.

A datum ``(phi, r, scale)`` defines

    delta(f) = scale * deg_x f(x, phi(x) + xi * x^r)

where ``xi`` is a fresh indeterminate, ``phi`` a xi-free Puiseux polynomial
and ``r`` a rational strictly below every exponent of ``phi``.  ``scale`` is
the value ``delta(x)``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm

from .exact import (
    BiLaurent,
    ParseError,
    PuiseuxPoly,
    ZeroPolynomialError,
    as_fraction,
    format_rational,
    parse_puiseux,
    parse_rational,
    substitute_y,
)

__all__ = [
    "SemidegreeSpec",
    "InvalidSpecError",
    "validate",
    "from_weights",
    "auto_scale",
    "evaluate",
    "generic_series",
    "parse_datum",
    "format_datum",
]


class InvalidSpecError(ValueError):
    def __init__(self, violations: list[str]):
        self.violations = violations
        super().__init__("; ".join(violations))


@dataclass(frozen=True, eq=True)
class SemidegreeSpec:
    phi: PuiseuxPoly
    r: Fraction
    scale: int

    def __post_init__(self):
        object.__setattr__(self, "r", as_fraction(self.r))

    @cached_property
    def generic(self) -> PuiseuxPoly:
        """``phi + xi * x^r``."""
        return self.phi + PuiseuxPoly.monomial(1, self.r, xi_degree=1)

    def __call__(self, f: BiLaurent) -> int:
        return evaluate(self, f)

    def is_weighted(self) -> bool:
        return self.phi.is_zero()

    def __str__(self) -> str:
        return format_datum(self)


def validate(spec: SemidegreeSpec) -> list[str]:
    """Return the list of violated invariants; empty means valid."""
    problems = []
    if not isinstance(spec.scale, int) or isinstance(spec.scale, bool) or spec.scale <= 0:
        problems.append(f"scale must be a positive integer, got {spec.scale!r}")
        return problems
    if not spec.phi.is_xi_free():
        problems.append("phi must not contain the generic marker xi")
    if not spec.phi.is_zero() and spec.r >= spec.phi.min_exponent():
        problems.append(
            f"r = {format_rational(spec.r)} is not below the minimal exponent "
            f"{format_rational(spec.phi.min_exponent())} of phi"
        )
    for e in spec.phi.exponents():
        if (spec.scale * e).denominator != 1:
            problems.append(f"scale*({format_rational(e)}) is not an integer")
    if (spec.scale * spec.r).denominator != 1:
        problems.append(f"scale*r = {format_rational(spec.scale * spec.r)} is not an integer")
    return problems


def check(spec: SemidegreeSpec) -> SemidegreeSpec:
    problems = validate(spec)
    if problems:
        raise InvalidSpecError(problems)
    return spec


def from_weights(p: int, q: int) -> SemidegreeSpec:
    """The weighted degree with weight ``p`` on x and ``q`` on y."""
    if p <= 0:
        raise InvalidSpecError([f"weight of x must be positive, got {p}"])
    return SemidegreeSpec(PuiseuxPoly.zero(), Fraction(q, p), p)


def auto_scale(phi: PuiseuxPoly, r) -> SemidegreeSpec:
    """Datum with the smallest admissible scale."""
    r = as_fraction(r)
    if not phi.is_zero() and r >= phi.min_exponent():
        raise InvalidSpecError([f"r = {format_rational(r)} is not below the exponents of phi"])
    scale = lcm(r.denominator, *(e.denominator for e in phi.exponents()))
    return check(SemidegreeSpec(phi, r, scale))


def generic_series(spec: SemidegreeSpec) -> PuiseuxPoly:
    return spec.generic


def evaluate(spec: SemidegreeSpec, f: BiLaurent) -> int:
    if f.is_zero():
        raise ZeroPolynomialError("delta(0) is undefined")
    exponent, _ = substitute_y(f, spec.generic).leading_term()
    value = spec.scale * exponent
    # Integrality is guaranteed by the scale invariant of a valid datum.
    assert value.denominator == 1, "datum violates the scale invariant"
    return int(value)


# -- text format ------------------------------------------------------------

_DATUM_RE = re.compile(
    r"^\s*phi\s*=\s*(?P<phi>[^;]*?)\s*;\s*r\s*=\s*(?P<r>[^;]*?)\s*;\s*scale\s*=\s*(?P<scale>[^;]*?)\s*;?\s*$"
)


def parse_scale(text: str, phi: PuiseuxPoly, r: Fraction) -> SemidegreeSpec:
    text = text.strip()
    if text == "auto":
        return auto_scale(phi, r)
    if not re.fullmatch(r"[+-]?\d+", text):
        raise ParseError(f"scale must be an integer or 'auto', got {text!r}", 0, text)
    return SemidegreeSpec(phi, r, int(text))


def parse_datum(text: str) -> SemidegreeSpec:
    """Parse ``phi = <expr>; r = <rational>; scale = <int|auto>``.

    The returned spec is not validated; call :func:`validate`.
    """
    m = _DATUM_RE.match(text)
    if not m:
        raise ParseError("expected 'phi = ...; r = ...; scale = ...'", 0, text)
    phi = parse_puiseux(m.group("phi"))
    r = parse_rational(m.group("r"))
    return parse_scale(m.group("scale"), phi, r)


def format_datum(spec: SemidegreeSpec) -> str:
    return f"phi = {spec.phi}; r = {format_rational(spec.r)}; scale = {spec.scale}"
